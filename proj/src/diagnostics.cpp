#include "wormlab/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"
#include "wormlab/tfd.hpp"

namespace wormlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Spectral {
  RVec e;
  Mat u;
  RegisterLayout layout;
  MajoranaNorm norm;
};

Spectral spectral(const MajoranaHamiltonian& h, MajoranaNorm norm) {
  Spectral s{{}, {}, RegisterLayout::single_side(h.n_majorana()), norm};
  HermitianOperator m = to_matrix(h, s.layout, norm);
  s.e = m.eigenvalues();
  s.u = m.eigenvectors();
  return s;
}

Mat rotated_majorana(const Spectral& s, int j) {
  return s.u.adjoint() * majorana_matrix(s.layout, Side::kLeft, j, s.norm) * s.u;
}

// exp(-x (E - E0)) per level
RVec boltzmann(const RVec& e, double x) {
  RVec w(e.size());
  double e0 = e.minCoeff();
  for (long k = 0; k < e.size(); ++k) w(k) = std::exp(-x * (e(k) - e0));
  return w;
}

void check_fermion(const MajoranaHamiltonian& h, int j) {
  if (j < 1 || j > h.n_majorana()) throw std::out_of_range("fermion index " + std::to_string(j) + " out of range");
}

std::vector<cplx> two_point_values(const Spectral& s, int j, double beta, const std::vector<double>& t_grid) {
  Mat a = rotated_majorana(s, j);
  RVec p = boltzmann(s.e, beta);
  p /= p.sum();
  long d = s.e.size();
  Eigen::MatrixXd w(d, d);
  for (long m = 0; m < d; ++m)
    for (long n = 0; n < d; ++n) w(m, n) = p(m) * std::norm(a(m, n));
  std::vector<cplx> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    cplx c = 0;
    for (long n = 0; n < d; ++n) {
      cplx en = std::exp(cplx(0, -s.e(n) * t));
      for (long m = 0; m < d; ++m)
        if (w(m, n) != 0) c += w(m, n) * std::exp(cplx(0, s.e(m) * t)) * en;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

double revival_metric(const std::vector<double>& t, const std::vector<cplx>& v) {
  if (t.empty() || t.size() != v.size()) throw std::invalid_argument("revival_metric: bad series");
  double c0 = std::abs(v.front());
  if (c0 == 0) return kNaN;
  double cut = t.front() + (t.back() - t.front()) * 2.0 / 3.0;
  double m = 0;
  for (size_t k = 0; k < t.size(); ++k)
    if (t[k] >= cut - 1e-12) m = std::max(m, std::abs(v[k]));
  return m / c0;
}

double thermalization_time(const std::vector<double>& t, const std::vector<cplx>& v) {
  if (v.empty()) return kNaN;
  double c0 = std::abs(v.front());
  double thr = std::exp(-1.0);
  for (size_t k = 0; k + 2 < v.size(); ++k) {
    if (std::abs(v[k]) / c0 < thr && std::abs(v[k + 1]) / c0 < thr && std::abs(v[k + 2]) / c0 < thr) return t[k];
  }
  return kNaN;
}

double scrambling_time(const std::vector<double>& t, const std::vector<double>& v) {
  if (v.empty() || v.front() == 0) return kNaN;
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k] / v.front() < 0.5) return t[k];
  return kNaN;
}

CorrelatorSeries two_point(const MajoranaHamiltonian& h, int j, double beta, const std::vector<double>& t_grid,
                           MajoranaNorm norm) {
  check_fermion(h, j);
  if (beta < 0) throw std::invalid_argument("two_point: beta must be >= 0");
  Spectral s = spectral(h, norm);
  CorrelatorSeries out;
  out.fermion = j;
  out.beta = beta;
  out.t = t_grid;
  out.values = two_point_values(s, j, beta, t_grid);
  if (!t_grid.empty()) {
    out.revival_metric = revival_metric(out.t, out.values);
    out.thermalization_time = thermalization_time(out.t, out.values);
  }
  return out;
}

CorrelatorSeries two_point_average(const MajoranaHamiltonian& h, double beta, const std::vector<double>& t_grid,
                                   MajoranaNorm norm) {
  if (beta < 0) throw std::invalid_argument("two_point: beta must be >= 0");
  Spectral s = spectral(h, norm);
  CorrelatorSeries out;
  out.beta = beta;
  out.t = t_grid;
  out.values.assign(t_grid.size(), 0.0);
  int n = h.n_majorana();
  for (int j = 1; j <= n; ++j) {
    auto v = two_point_values(s, j, beta, t_grid);
    for (size_t k = 0; k < v.size(); ++k) out.values[k] += v[k] / static_cast<double>(n);
  }
  if (!t_grid.empty()) {
    out.revival_metric = revival_metric(out.t, out.values);
    out.thermalization_time = thermalization_time(out.t, out.values);
  }
  return out;
}

double mean_revival_metric(const MajoranaHamiltonian& h, double beta, const std::vector<double>& t_grid,
                           MajoranaNorm norm) {
  Spectral s = spectral(h, norm);
  double acc = 0;
  for (int j = 1; j <= h.n_majorana(); ++j) acc += revival_metric(t_grid, two_point_values(s, j, beta, t_grid));
  return acc / h.n_majorana();
}

OtocSeries otoc(const MajoranaHamiltonian& h, int i, int j, double beta, const std::vector<double>& t_grid,
                MajoranaNorm norm) {
  check_fermion(h, i);
  check_fermion(h, j);
  if (i == j) throw std::invalid_argument("otoc: need i != j");
  Spectral s = spectral(h, norm);
  Mat a = rotated_majorana(s, i);
  Mat b = rotated_majorana(s, j);
  RVec r = boltzmann(s.e, beta / 4);
  double z = r.array().pow(4).sum();
  Mat rb = r.asDiagonal() * b;
  OtocSeries out;
  out.i = i;
  out.j = j;
  out.beta = beta;
  out.t = t_grid;
  long d = s.e.size();
  for (double t : t_grid) {
    Vec ph(d);
    for (long k = 0; k < d; ++k) ph(k) = std::exp(cplx(0, s.e(k) * t));
    Mat at = ph.asDiagonal() * a * ph.conjugate().asDiagonal();
    Mat x = r.asDiagonal() * at * rb;  // r A(t) r B
    out.values.push_back((x * x).trace().real() / z);
  }
  out.scrambling_time = scrambling_time(out.t, out.values);
  return out;
}

std::pair<double, double> winding_quality(const std::vector<cplx>& q) {
  auto value = [&](double a) {
    cplx s = 0;
    for (size_t n = 0; n < q.size(); ++n) s += q[n] * std::exp(cplx(0, -2.0 * a * static_cast<double>(n)));
    return std::abs(s);
  };
  const int grid = 2048;
  const double pi = std::numbers::pi;
  double best = -1, best_a = 0;
  for (int k = 0; k < grid; ++k) {
    double a = pi * k / grid;
    double v = value(a);
    if (v > best) { best = v; best_a = a; }
  }
  // golden-section refine inside the neighbouring cells
  double lo = best_a - pi / grid, hi = best_a + pi / grid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 60; ++it) {
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    if (value(x1) < value(x2)) lo = x1;
    else hi = x2;
  }
  double a = 0.5 * (lo + hi);
  double v = value(a);
  if (v > best) { best = v; best_a = a; }
  best_a = std::fmod(best_a + pi, pi);
  return {best, best_a};
}

WindingReport size_distribution(const DoubledSystem& system, int j, double t, double beta, double mu_prime) {
  const auto& layout = system.layout;
  int n_side = system.model.n_majorana();
  if (j < 1 || j > n_side) throw std::out_of_range("size_distribution: fermion out of range");
  if (beta < 0) throw std::invalid_argument("size_distribution: beta must be >= 0");
  HermitianOperator h = mu_prime == 0.0 ? system.h_left : h_tfd(system, mu_prime);
  Mat u = h.unitary(t);
  Mat psi = majorana_matrix(layout, Side::kLeft, j, system.norm);
  Mat o = u.adjoint() * psi * u * thermal_sqrt(system.h_left, beta);
  double s = majorana_scale(system.norm);
  uint64_t d = 1ULL << layout.n_system();

  // monomials over left Majoranas, plus right ones once the sides are coupled
  std::vector<PauliString> gens;
  for (int k = 1; k <= n_side; ++k) gens.push_back(majorana_string(layout, Side::kLeft, k));
  if (mu_prime != 0.0)
    for (int k = 1; k <= layout.n_side(); ++k) gens.push_back(majorana_string(layout, Side::kRight, k));
  int g = static_cast<int>(gens.size());
  std::vector<double> p(g + 1, 0.0);
  std::vector<cplx> q(g + 1, 0.0);
  double total = 0;
  for (uint64_t mask = 0; mask < (1ULL << g); ++mask) {
    PauliString sig = PauliString::identity(layout.n_system());
    int n = 0;
    for (int k = 0; k < g; ++k)
      if ((mask >> k) & 1) { sig = sig * gens[k]; ++n; }
    // Tr(sig^dag O)/D, then rescale to the psi-normalized monomial
    cplx tr = 0;
    for (uint64_t i = 0; i < d; ++i) tr += std::conj(sig.amplitude(i)) * o(i ^ sig.x, i);
    cplx c = tr / static_cast<double>(d) / std::pow(s, n);
    p[n] += std::norm(c);
    q[n] += c * c;
    total += std::norm(c);
  }
  WindingReport r;
  r.fermion = j;
  r.t = t;
  r.beta = beta;
  r.mu_prime = mu_prime;
  for (int n = 0; n <= g; ++n) {
    p[n] /= total;
    q[n] /= total;
  }
  r.p = p;
  r.q = q;
  auto [w, a] = winding_quality(q);
  r.winding = w;
  r.alpha = a;
  return r;
}

std::vector<WindingReport> winding_sweep(const DoubledSystem& system, const std::vector<int>& fermions,
                                         const std::vector<double>& t_grid, double beta, double mu_prime,
                                         int threads) {
  std::vector<WindingReport> out(fermions.size() * t_grid.size());
  detail::parallel_for(out.size(), threads, [&](size_t k) {
    out[k] = size_distribution(system, fermions[k / t_grid.size()], t_grid[k % t_grid.size()], beta, mu_prime);
  });
  return out;
}

EigenphaseResult eigenphase_action_check(const DoubledSystem& system, const MajoranaMonomial& m) {
  if (m.max_index() > system.layout.n_side()) throw std::out_of_range("eigenphase_action_check: index out of range");
  Vec t0 = tfd_zero(system);
  Vec v = apply_pauli(monomial_string(m, system.layout, Side::kLeft), t0);
  Vec vv = system.v.matrix() * v;
  double lam = v.dot(vv).real() / v.squaredNorm();
  EigenphaseResult r;
  r.eigenvalue = lam;
  r.residual = (vv - lam * v).norm() / v.norm();
  r.is_eigenvector = r.residual < 1e-9;
  r.size = m.size();
  return r;
}

AffineFit eigenphase_affine_fit(const DoubledSystem& system) {
  int n = system.layout.n_side();
  std::vector<EigenphaseResult> rs;
  for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k)
      if ((mask >> k) & 1) idx.push_back(k + 1);
    rs.push_back(eigenphase_action_check(system, MajoranaMonomial(idx)));
  }
  AffineFit f;
  f.monomials = rs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = static_cast<double>(rs.size());
  for (const auto& r : rs) {
    f.all_eigenvectors = f.all_eigenvectors && r.is_eigenvector;
    sx += r.size;
    sy += r.eigenvalue;
    sxx += static_cast<double>(r.size) * r.size;
    sxy += r.size * r.eigenvalue;
  }
  double den = m * sxx - sx * sx;
  f.slope = den != 0 ? (m * sxy - sx * sy) / den : 0.0;
  f.intercept = (sy - f.slope * sx) / m;
  for (const auto& r : rs) f.max_residual = std::max(f.max_residual, std::abs(r.eigenvalue - f.slope * r.size - f.intercept));
  return f;
}

}  // namespace wormlab
