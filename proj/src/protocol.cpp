#include "wormlab/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace wormlab {

void ProtocolConfig::validate() const {
  if (!(t0 >= 0) || !std::isfinite(t0)) throw std::invalid_argument("protocol: t0 must be >= 0");
  if (t1_grid.empty()) throw std::invalid_argument("protocol: t1 grid is empty");
  for (size_t k = 0; k < t1_grid.size(); ++k) {
    if (!std::isfinite(t1_grid[k])) throw std::invalid_argument("protocol: non-finite t1");
    if (k > 0 && !(t1_grid[k] > t1_grid[k - 1])) throw std::invalid_argument("protocol: t1 grid must be increasing");
  }
  if (!std::isfinite(mu)) throw std::invalid_argument("protocol: mu must be finite");
  if (!(beta >= 0) || !std::isfinite(beta)) throw std::invalid_argument("protocol: beta must be finite and >= 0");
  if (trotter_steps < 0) throw std::invalid_argument("protocol: trotter steps must be >= 0");
  if (inject.first == inject.second) throw std::invalid_argument("protocol: injected fermions must differ");
}

std::string ProtocolConfig::mode() const {
  return trotter_steps == 0 ? "exact" : "trotter(" + std::to_string(trotter_steps) + ")";
}

PeakSummary summarize_peak(const std::vector<double>& t, const std::vector<double>& v) {
  PeakSummary p;
  if (v.empty()) return p;
  size_t arg = 0;
  for (size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[arg]) arg = k;
  p.t_peak = t[arg];
  p.max = v[arg];
  size_t q = std::max<size_t>(1, (v.size() + 3) / 4);
  double s = 0;
  for (size_t k = v.size() - q; k < v.size(); ++k) s += v[k];
  p.baseline = s / static_cast<double>(q);
  return p;
}

Vec protocol_initial_state(const DoubledSystem& system, const ProtocolConfig& config) {
  const auto& layout = system.layout;
  QuantumState tfd = tfd_state(system, {config.beta, config.convention});
  long ds = 1L << layout.n_system();
  long d = 1L << layout.n_qubits();
  Vec psi = Vec::Zero(d);
  double r = 1.0 / std::sqrt(2.0);
  long p_bit = 1L << layout.p_qubit(), q_bit = 1L << layout.q_qubit();
  for (long s = 0; s < ds; ++s) {
    psi(s) = r * tfd.amplitudes()(s);
    psi(s | p_bit | q_bit) = r * tfd.amplitudes()(s);
  }
  return psi;
}

namespace {

void check_model(const MajoranaHamiltonian& h, const ProtocolConfig& config) {
  config.validate();
  auto [a, b] = config.inject;
  if (a < 1 || b < 1 || a > h.n_majorana() || b > h.n_majorana())
    throw std::out_of_range("protocol: injected fermions out of range for this model");
}

DoubledSystem build_system(const MajoranaHamiltonian& h, const ProtocolConfig& config) {
  check_model(h, config);
  return make_doubled(h, config.norm, config.inject, config.reuse_q_as_t);
}

int left_carrier(const DoubledSystem& s, const ProtocolConfig& c) {
  return s.layout.carrier_qubit(Side::kLeft, c.inject.first, c.inject.second);
}

int right_carrier(const DoubledSystem& s, const ProtocolConfig& c) {
  return s.layout.carrier_qubit(Side::kRight, c.inject.first, c.inject.second);
}

double info(const Vec& psi, const RegisterLayout& layout) {
  QuantumState s(layout.n_qubits(), psi);
  return mutual_information(s, {layout.p_qubit()}, {layout.t_qubit()});
}

TeleportationCurve finish(const ProtocolConfig& config, std::vector<double> nats, const GateTally& tally) {
  TeleportationCurve c;
  c.config = config;
  c.t1 = config.t1_grid;
  c.nats = std::move(nats);
  for (double v : c.nats) c.bits.push_back(v / kLn2);
  c.peak = summarize_peak(c.t1, c.nats);
  c.gates = tally;
  return c;
}

Vec exact_prefix(const DoubledSystem& system, const ProtocolConfig& config) {
  const auto& layout = system.layout;
  int ns = layout.n_system();
  Vec psi = protocol_initial_state(system, config);
  apply_system_operator(psi, system.h_left.unitary(-config.t0), ns);
  apply_swap(psi, layout.q_qubit(), left_carrier(system, config));
  apply_system_operator(psi, system.h_left.unitary(config.t0), ns);
  apply_system_operator(psi, system.v.unitary(-config.mu), ns);
  return psi;
}

Vec exact_output(const DoubledSystem& system, const ProtocolConfig& config, const Vec& prefix, double t1) {
  Vec psi = prefix;
  apply_system_operator(psi, system.h_right.unitary(t1), system.layout.n_system());
  apply_swap(psi, right_carrier(system, config), system.layout.t_qubit());
  return psi;
}

}  // namespace

std::vector<Gate> protocol_prefix_gates(const DoubledSystem& system, const ProtocolConfig& config) {
  int steps = std::max(1, config.trotter_steps);
  int n = system.layout.n_qubits();
  auto left = side_terms(system, Side::kLeft, n);
  std::vector<Gate> g = trotter_layers(left, -config.t0, steps);
  g.push_back(Gate::swap(n, system.layout.q_qubit(), left_carrier(system, config)));
  auto fwd = trotter_layers(left, config.t0, steps);
  g.insert(g.end(), fwd.begin(), fwd.end());
  auto cpl = trotter_layers(coupling_terms(system, n), -config.mu, 1);
  g.insert(g.end(), cpl.begin(), cpl.end());
  return g;
}

std::vector<Gate> protocol_suffix_gates(const DoubledSystem& system, const ProtocolConfig& config, double t1) {
  int steps = std::max(1, config.trotter_steps);
  int n = system.layout.n_qubits();
  std::vector<Gate> g = trotter_layers(side_terms(system, Side::kRight, n), t1, steps);
  g.push_back(Gate::swap(n, right_carrier(system, config), system.layout.t_qubit()));
  return g;
}

TeleportationCurve run_trotterized(const MajoranaHamiltonian& h, const ProtocolConfig& config) {
  if (config.trotter_steps < 1) throw std::invalid_argument("run_trotterized: trotter steps must be >= 1");
  DoubledSystem system = build_system(h, config);
  Vec prefix = protocol_initial_state(system, config);
  auto pre = protocol_prefix_gates(system, config);
  for (const auto& g : pre) apply_gate(prefix, g);
  std::vector<double> out(config.t1_grid.size());
  detail::parallel_for(out.size(), config.threads, [&](size_t k) {
    Vec psi = prefix;
    for (const auto& g : protocol_suffix_gates(system, config, config.t1_grid[k])) apply_gate(psi, g);
    out[k] = info(psi, system.layout);
  });
  GateTally tally;
  tally.add(pre);
  tally.add(protocol_suffix_gates(system, config, config.t1_grid.front()));
  return finish(config, std::move(out), tally);
}

TeleportationCurve run_teleportation(const MajoranaHamiltonian& h, const ProtocolConfig& config) {
  if (config.trotter_steps > 0) return run_trotterized(h, config);
  DoubledSystem system = build_system(h, config);
  Vec prefix = exact_prefix(system, config);
  std::vector<double> out(config.t1_grid.size());
  detail::parallel_for(out.size(), config.threads, [&](size_t k) {
    out[k] = info(exact_output(system, config, prefix, config.t1_grid[k]), system.layout);
  });
  return finish(config, std::move(out), GateTally{});
}

std::vector<TeleportationCurve> mu_sweep(const MajoranaHamiltonian& h, const ProtocolConfig& config,
                                         const std::vector<double>& mus) {
  std::vector<TeleportationCurve> out;
  for (double mu : mus) {
    ProtocolConfig c = config;
    c.mu = mu;
    out.push_back(run_teleportation(h, c));
  }
  return out;
}

AsymmetryReport asymmetry(const TeleportationCurve& neg, const TeleportationCurve& pos) {
  AsymmetryReport r;
  r.negative_peak = neg.peak.max;
  r.negative_t_peak = neg.peak.t_peak;
  r.negative_baseline = neg.peak.baseline;
  r.positive_max = pos.peak.max;
  r.delta = r.negative_peak - r.positive_max;
  r.sign = r.delta > 0 ? 1 : (r.delta < 0 ? -1 : 0);
  return r;
}

QuantumState protocol_output_state(const MajoranaHamiltonian& h, const ProtocolConfig& config, double t1) {
  ProtocolConfig c = config;
  c.t1_grid = {t1};
  DoubledSystem system = build_system(h, c);
  if (c.trotter_steps == 0)
    return QuantumState(system.layout.n_qubits(), exact_output(system, c, exact_prefix(system, c), t1));
  Vec psi = protocol_initial_state(system, c);
  for (const auto& g : protocol_prefix_gates(system, c)) apply_gate(psi, g);
  for (const auto& g : protocol_suffix_gates(system, c, t1)) apply_gate(psi, g);
  return QuantumState(system.layout.n_qubits(), psi);
}

}  // namespace wormlab
