#include "wormlab/tfd.hpp"

#include <cmath>
#include <stdexcept>

namespace wormlab {

const char* to_string(TfdConvention c) { return c == TfdConvention::kHalf ? "half" : "paper_literal"; }

TfdConvention parse_tfd_convention(const std::string& s) {
  if (s == "half") return TfdConvention::kHalf;
  if (s == "paper_literal") return TfdConvention::kPaperLiteral;
  throw std::invalid_argument("unknown tfd convention '" + s + "' (expected half or paper_literal)");
}

Vec tfd_zero(const DoubledSystem& system) {
  int n = system.layout.n_system();
  long d = 1L << n;
  // (1 + S)/2 for each pairing string S projects onto its +1 eigenspace; the
  // N commuting strings leave a one-dimensional joint eigenspace.
  Vec v;
  for (long seed = 0; seed < d; ++seed) {
    v = Vec::Zero(d);
    v(seed) = 1.0;
    for (const auto& s : system.v_strings) v = 0.5 * (v + apply_pauli(s, v));
    if (v.norm() > 1e-6) break;
  }
  v.normalize();
  fix_phase(v);
  return v;
}

QuantumState tfd_state(const DoubledSystem& system, const TfdSpec& spec) {
  if (!(spec.beta >= 0) || !std::isfinite(spec.beta)) throw std::invalid_argument("tfd: beta must be finite and >= 0");
  Vec t0 = tfd_zero(system);
  double x = spec.convention == TfdConvention::kHalf ? spec.beta / 2 : spec.beta;
  // shift by the ground energy so large beta stays finite
  double e0 = system.h_left.eigenvalues()(0);
  Mat w = system.h_left.apply_function([x, e0](double e) { return cplx(std::exp(-x * (e - e0)), 0); });
  Vec v = w * t0;
  fix_phase(v);
  return QuantumState(system.layout.n_system(), v);
}

HermitianOperator h_tfd(const DoubledSystem& system, double mu) {
  return HermitianOperator(system.h_left.matrix() + system.h_right.matrix() + mu * system.v.matrix());
}

FidelityScan tfd_fidelity_scan(const DoubledSystem& system, double mu, const std::vector<double>& betas,
                               TfdConvention convention) {
  if (betas.empty()) throw std::invalid_argument("tfd_fidelity_scan: empty beta grid");
  FidelityScan out;
  out.betas = betas;
  out.convention = convention;
  auto [e, gs] = ground_state(h_tfd(system, mu));
  out.ground_energy = e;
  out.fidelity_max = -1;
  for (double b : betas) {
    QuantumState t = tfd_state(system, {b, convention});
    double f = std::norm(t.amplitudes().dot(gs.amplitudes()));
    f = std::min(1.0, std::max(0.0, f));
    out.fidelity.push_back(f);
    if (f > out.fidelity_max || (f == out.fidelity_max && b < out.beta_star)) {
      out.fidelity_max = f;
      out.beta_star = b;
    }
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi >= lo) || points < 1) throw std::invalid_argument("log_grid: need 0 < lo <= hi and points >= 1");
  std::vector<double> g;
  if (points == 1) return {lo};
  double r = std::log(hi / lo) / (points - 1);
  for (int k = 0; k < points; ++k) g.push_back(k == points - 1 ? hi : lo * std::exp(r * k));
  return g;
}

double left_thermal_residual(const DoubledSystem& system, const QuantumState& s, double beta) {
  const auto& layout = system.layout;
  int n_side = system.model.n_majorana();
  Mat rho = thermal_power(system.h_left, beta);
  cplx z = rho.trace();
  double worst = 0;
  for (uint64_t mask = 0; mask < (1ULL << n_side); ++mask) {
    PauliString p = PauliString::identity(layout.n_system());
    for (int j = 1; j <= n_side; ++j)
      if ((mask >> (j - 1)) & 1) p = p * majorana_string(layout, Side::kLeft, j);
    Vec pv = apply_pauli(p, s.amplitudes());
    cplx lhs = s.amplitudes().dot(pv);
    // Tr(rho P) = sum_i rho(i, i^x) amp(i)
    cplx rhs = 0;
    uint64_t d = 1ULL << layout.n_system();
    for (uint64_t i = 0; i < d; ++i) rhs += rho(i, i ^ p.x) * p.amplitude(i);
    worst = std::max(worst, std::abs(lhs - rhs / z));
  }
  return worst;
}

}  // namespace wormlab
