#include "wormlab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace wormlab {

const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::kDepolarizing: return "depolarizing";
    case NoiseKind::kCoherent: return "coherent";
    default: return "none";
  }
}

NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "none") return NoiseKind::kNone;
  if (s == "depolarizing") return NoiseKind::kDepolarizing;
  if (s == "coherent") return NoiseKind::kCoherent;
  throw std::invalid_argument("unknown noise kind '" + s + "' (expected none, depolarizing or coherent)");
}

void NoiseSpec::validate() const {
  if (!std::isfinite(strength)) throw std::invalid_argument("noise: strength must be finite");
  if (kind == NoiseKind::kDepolarizing && (strength < 0 || strength > 1))
    throw std::invalid_argument("noise: depolarizing p must lie in [0,1]");
}

void depolarize_in_place(Mat& rho, double p, int q) {
  long d = rho.rows();
  long b = 1L << q;
  if (q < 0 || b >= d) throw std::out_of_range("depolarize: qubit out of range");
  // (1-p) rho + p I/2 (x) Tr_q rho
  for (long j = 0; j < d; ++j) {
    if (j & b) continue;
    for (long i = 0; i < d; ++i) {
      if (i & b) continue;
      cplx a00 = rho(i, j), a11 = rho(i | b, j | b);
      cplx a01 = rho(i, j | b), a10 = rho(i | b, j);
      cplx avg = 0.5 * (a00 + a11);
      rho(i, j) = (1 - p) * a00 + p * avg;
      rho(i | b, j | b) = (1 - p) * a11 + p * avg;
      rho(i, j | b) = (1 - p) * a01;
      rho(i | b, j) = (1 - p) * a10;
    }
  }
}

DensityMatrix depolarize(const DensityMatrix& rho, double p, const std::vector<int>& qubits) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("depolarize: p must lie in [0,1]");
  Mat m = rho.matrix();
  for (int q : qubits) depolarize_in_place(m, p, q);
  return DensityMatrix(rho.n_qubits(), m);
}

namespace {

void coherent_kick(Mat& rho, double eps, int q) {
  // exp(-i eps Z_q / 2) rho exp(+i eps Z_q / 2)
  long d = rho.rows();
  long b = 1L << q;
  cplx ph = std::exp(cplx(0, -eps));  // row bit 0, column bit 1
  for (long j = 0; j < d; ++j)
    for (long i = 0; i < d; ++i) {
      bool bi = i & b, bj = j & b;
      if (bi == bj) continue;
      rho(i, j) *= bi ? std::conj(ph) : ph;
    }
}

void noisy_layer(Mat& rho, const Gate& g, const NoiseSpec& noise, ChannelStats& st) {
  apply_gate(rho, g);
  if (noise.kind != NoiseKind::kNone && !(g.kind == Gate::Kind::kRotation && g.pauli.weight() == 0)) {
    for (int q : g.support()) {
      if (noise.kind == NoiseKind::kDepolarizing) depolarize_in_place(rho, noise.strength, q);
      else coherent_kick(rho, noise.strength, q);
    }
  }
  st.max_trace_error = std::max(st.max_trace_error, std::abs(rho.trace() - cplx(1, 0)));
}

double min_eig(const Mat& rho) {
  Mat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TeleportationCurve noisy_protocol(const MajoranaHamiltonian& h, const ProtocolConfig& config, const NoiseSpec& noise,
                                  ChannelStats* stats, bool check_positivity) {
  noise.validate();
  config.validate();
  if (config.trotter_steps < 1) throw std::invalid_argument("noisy_protocol: requires trotter mode (steps >= 1)");
  DoubledSystem system = make_doubled(h, config.norm, config.inject, config.reuse_q_as_t);
  const auto& layout = system.layout;
  if (layout.n_qubits() > kMaxNoiseQubits)
    throw std::invalid_argument("noisy_protocol: density matrix exceeds 2^11 rows");
  Vec psi = protocol_initial_state(system, config);
  Mat rho = psi * psi.adjoint();
  ChannelStats st;
  auto pre = protocol_prefix_gates(system, config);
  for (const auto& g : pre) noisy_layer(rho, g, noise, st);
  if (check_positivity) {
    st.positivity_checked = true;
    st.min_eigenvalue = min_eig(rho);
  }
  std::vector<double> out(config.t1_grid.size());
  std::vector<ChannelStats> per(out.size());
  detail::parallel_for(out.size(), config.threads, [&](size_t k) {
    Mat r = rho;
    for (const auto& g : protocol_suffix_gates(system, config, config.t1_grid[k])) noisy_layer(r, g, noise, per[k]);
    if (check_positivity) per[k].min_eigenvalue = min_eig(r);
    out[k] = mutual_information(DensityMatrix(layout.n_qubits(), std::move(r)), {layout.p_qubit()}, {layout.t_qubit()});
  });
  for (const auto& s : per) {
    st.max_trace_error = std::max(st.max_trace_error, s.max_trace_error);
    if (check_positivity) st.min_eigenvalue = std::min(st.min_eigenvalue, s.min_eigenvalue);
  }
  if (stats) *stats = st;
  TeleportationCurve c;
  c.config = config;
  c.t1 = config.t1_grid;
  c.nats = std::move(out);
  for (double v : c.nats) c.bits.push_back(v / kLn2);
  c.peak = summarize_peak(c.t1, c.nats);
  c.gates.add(pre);
  c.gates.add(protocol_suffix_gates(system, config, config.t1_grid.front()));
  return c;
}

namespace {

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

}  // namespace

RobustnessReport coherent_vs_incoherent_report(const MajoranaHamiltonian& h, const ProtocolConfig& config,
                                               const std::vector<double>& p_grid,
                                               const std::vector<double>& eps_grid) {
  RobustnessReport rep;
  auto run = [&](NoiseKind kind, double strength) {
    RobustnessRow row;
    row.kind = kind;
    row.strength = strength;
    ProtocolConfig cn = config, cp = config;
    cn.mu = -std::abs(config.mu);
    cp.mu = std::abs(config.mu);
    ChannelStats a, b;
    row.negative = noisy_protocol(h, cn, {kind, strength}, &a);
    row.positive = noisy_protocol(h, cp, {kind, strength}, &b);
    rep.stats.max_trace_error = std::max({rep.stats.max_trace_error, a.max_trace_error, b.max_trace_error});
    row.asymmetry_preserved = row.negative.peak.max > row.positive.peak.max;
    rep.rows.push_back(std::move(row));
  };
  run(NoiseKind::kNone, 0.0);
  for (double p : p_grid) run(NoiseKind::kDepolarizing, p);
  for (double e : eps_grid) run(NoiseKind::kCoherent, e);

  const RobustnessRow& base = rep.rows.front();
  std::vector<const RobustnessRow*> dep, coh;
  for (const auto& r : rep.rows) {
    if (r.kind == NoiseKind::kDepolarizing) dep.push_back(&r);
    if (r.kind == NoiseKind::kCoherent) coh.push_back(&r);
  }
  // monotone in p, visiting the grid in increasing order from the baseline
  std::vector<const RobustnessRow*> ordered = dep;
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->strength < b->strength; });
  double prev = base.negative.peak.max;
  for (auto* r : ordered) {
    if (r->negative.peak.max > prev + 1e-6) rep.depolarizing_monotone = false;
    prev = r->negative.peak.max;
  }
  std::vector<double> tc{base.negative.peak.t_peak}, td{base.negative.peak.t_peak};
  for (auto* r : coh) tc.push_back(r->negative.peak.t_peak);
  for (auto* r : dep) td.push_back(r->negative.peak.t_peak);
  rep.coherent_peak_location_std = stddev(tc);
  rep.depolarizing_peak_location_std = stddev(td);
  double h0 = base.negative.peak.max;
  for (auto* c : coh) {
    if (dep.empty() || h0 <= 0) break;
    double att = c->negative.peak.max / h0;
    const RobustnessRow* best = dep.front();
    for (auto* d : dep)
      if (std::abs(d->negative.peak.max / h0 - att) < std::abs(best->negative.peak.max / h0 - att)) best = d;
    double sc = std::abs(c->negative.peak.t_peak - base.negative.peak.t_peak);
    double sd = std::abs(best->negative.peak.t_peak - base.negative.peak.t_peak);
    if (sc > sd + 1e-12) rep.coherent_spurious_shift = true;
  }
  return rep;
}

}  // namespace wormlab
