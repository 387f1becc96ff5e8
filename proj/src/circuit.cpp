#include "wormlab/circuit.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace wormlab {

Gate Gate::rotation(const PauliString& p, double theta) {
  if (p.phase != 0) throw std::invalid_argument("rotation: string must carry phase 0");
  Gate g;
  g.kind = Kind::kRotation;
  g.pauli = p;
  g.theta = theta;
  return g;
}

Gate Gate::swap(int n, int a, int b) {
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("swap: bad qubits");
  Gate g;
  g.kind = Kind::kSwap;
  g.pauli = PauliString::identity(n);
  g.a = a;
  g.b = b;
  return g;
}

std::vector<int> Gate::support() const {
  if (kind == Kind::kSwap) return {a, b};
  std::vector<int> s;
  uint64_t m = pauli.x | pauli.z;
  for (int q = 0; q < pauli.n_qubits; ++q)
    if ((m >> q) & 1) s.push_back(q);
  return s;
}

void GateTally::add(const Gate& g) {
  if (g.kind == Gate::Kind::kSwap) {
    ++swaps;
    two_qubit += 3;
    single_qubit += 6;
    return;
  }
  int w = g.pauli.weight();
  if (w == 0) return;
  ++rotations;
  int xy = std::popcount(g.pauli.x);
  two_qubit += 2 * (w - 1);
  single_qubit += 2 * xy + 1 + 4 * (w - 1);
}

void GateTally::add(const std::vector<Gate>& gs) {
  for (const auto& g : gs) add(g);
}

PauliString widen(const PauliString& p, int n) {
  if (n < p.n_qubits) throw std::invalid_argument("widen: target smaller than string");
  return PauliString(n, p.x, p.z, p.phase);
}

namespace {

PauliTerm hermitian_term(const PauliString& raw, cplx coeff, int n) {
  cplx c = coeff * raw.phase_value();
  if (std::abs(c.imag()) > 1e-12 * std::max(1.0, std::abs(c)))
    throw std::logic_error("term is not Hermitian");
  PauliString p = widen(raw, n);
  p.phase = 0;
  return {p, c.real()};
}

}  // namespace

std::vector<PauliTerm> side_terms(const DoubledSystem& system, Side side, int n) {
  std::vector<PauliTerm> out;
  double s = majorana_scale(system.norm);
  for (const auto& t : system.model.terms()) {
    int k = t.monomial.size();
    cplx c = t.coeff * std::pow(s, k) * hermitian_factor(k);
    out.push_back(hermitian_term(monomial_string(t.monomial, system.layout, side), c, n));
  }
  return out;
}

std::vector<PauliTerm> coupling_terms(const DoubledSystem& system, int n) {
  std::vector<PauliTerm> out;
  double s2 = std::pow(majorana_scale(system.norm), 2);
  for (const auto& p : system.v_strings) out.push_back(hermitian_term(p, s2, n));
  return out;
}

std::vector<Gate> trotter_layers(const std::vector<PauliTerm>& terms, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("trotter: steps must be >= 1");
  std::vector<Gate> out;
  double dt = t / steps;
  for (int s = 0; s < steps; ++s)
    for (const auto& term : terms) out.push_back(Gate::rotation(term.pauli, term.coeff * dt));
  return out;
}

void apply_swap(Vec& psi, int a, int b) {
  uint64_t ma = 1ULL << a, mb = 1ULL << b;
  for (long i = 0; i < psi.size(); ++i) {
    uint64_t u = static_cast<uint64_t>(i);
    // visit each pair once: bit a set, bit b clear
    if ((u & ma) && !(u & mb)) std::swap(psi(i), psi(static_cast<long>((u ^ ma) | mb)));
  }
}

void apply_gate(Vec& psi, const Gate& g) {
  if (g.kind == Gate::Kind::kSwap) {
    apply_swap(psi, g.a, g.b);
    return;
  }
  double c = std::cos(g.theta), s = std::sin(g.theta);
  Vec out = c * psi;
  const PauliString& p = g.pauli;
  cplx mis(0, -s);
  for (long i = 0; i < psi.size(); ++i) {
    uint64_t u = static_cast<uint64_t>(i);
    out(static_cast<long>(u ^ p.x)) += mis * p.amplitude(u) * psi(i);
  }
  psi.swap(out);
}

void apply_gate(Mat& rho, const Gate& g) {
  long d = rho.rows();
  if (g.kind == Gate::Kind::kSwap) {
    std::vector<long> perm(d);
    for (long i = 0; i < d; ++i) {
      uint64_t u = static_cast<uint64_t>(i);
      uint64_t ba = (u >> g.a) & 1, bb = (u >> g.b) & 1;
      uint64_t v = u & ~((1ULL << g.a) | (1ULL << g.b));
      v |= (ba << g.b) | (bb << g.a);
      perm[i] = static_cast<long>(v);
    }
    Mat out(d, d);
    for (long j = 0; j < d; ++j)
      for (long i = 0; i < d; ++i) out(perm[i], perm[j]) = rho(i, j);
    rho.swap(out);
    return;
  }
  // U rho U^dag = c^2 rho + s^2 P rho P + i c s (rho P - P rho)
  const PauliString& p = g.pauli;
  double c = std::cos(g.theta), s = std::sin(g.theta);
  std::vector<cplx> amp(d);
  std::vector<long> flip(d);
  for (long i = 0; i < d; ++i) {
    amp[i] = p.amplitude(static_cast<uint64_t>(i));
    flip[i] = static_cast<long>(static_cast<uint64_t>(i) ^ p.x);
  }
  // (P rho)(i^x, k) = amp(i) rho(i, k);  (rho P)(j, m) = rho(j, m^x) amp(m)
  Mat out(d, d);
  cplx ics(0, c * s);
  for (long m = 0; m < d; ++m) {
    long mf = flip[m];
    cplx am = amp[m];
    for (long i = 0; i < d; ++i) {
      long f = flip[i];
      // P rho P: (P rho P)(i, m) = amp(i^x) rho(i^x, m^x) amp(m)
      cplx prp = amp[f] * rho(f, mf) * am;
      cplx rp = rho(i, mf) * am;
      cplx pr = amp[f] * rho(f, m);
      out(i, m) = c * c * rho(i, m) + s * s * prp + ics * (rp - pr);
    }
  }
  rho.swap(out);
}

void apply_system_operator(Vec& psi, const Mat& u, int n_system) {
  long ds = 1L << n_system;
  if (u.rows() != ds || psi.size() % ds != 0) throw std::invalid_argument("apply_system_operator: dimension mismatch");
  Eigen::Map<Mat> m(psi.data(), ds, psi.size() / ds);
  Mat r = u * m;
  m = r;
}

}  // namespace wormlab
