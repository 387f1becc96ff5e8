#include "wormlab/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace wormlab {

void check_qubit_count(int n) {
  if (n < 0 || n > kMaxQubits)
    throw std::invalid_argument("dimension overflow: " + std::to_string(n) + " qubits exceeds cap of " +
                                std::to_string(kMaxQubits));
}

namespace {

int qubits_for_dim(long d) {
  if (d <= 0 || (d & (d - 1)) != 0) throw std::invalid_argument("dimension is not a power of two");
  return std::countr_zero(static_cast<unsigned long>(d));
}

void check_region(const std::vector<int>& r, int n, const char* what) {
  std::set<int> s(r.begin(), r.end());
  if (s.size() != r.size()) throw std::invalid_argument(std::string(what) + ": repeated qubit");
  for (int q : r)
    if (q < 0 || q >= n) throw std::out_of_range(std::string(what) + ": qubit out of range");
}

// index -> (kept bits, rest bits)
void split_indices(int n, const std::vector<int>& keep, std::vector<uint64_t>& kept,
                   std::vector<uint64_t>& rest) {
  std::vector<int> other;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) other.push_back(q);
  uint64_t d = 1ULL << n;
  kept.resize(d);
  rest.resize(d);
  for (uint64_t i = 0; i < d; ++i) {
    uint64_t a = 0, b = 0;
    for (size_t k = 0; k < keep.size(); ++k) a |= ((i >> keep[k]) & 1ULL) << k;
    for (size_t k = 0; k < other.size(); ++k) b |= ((i >> other[k]) & 1ULL) << k;
    kept[i] = a;
    rest[i] = b;
  }
}

}  // namespace

// ---- states ----

QuantumState::QuantumState(int n, Vec amp) : n_(n), amp_(std::move(amp)) {
  check_qubit_count(n);
  if (amp_.size() != (1L << n)) throw std::invalid_argument("state: amplitude count does not match qubit count");
  double nrm = amp_.norm();
  if (!(nrm > 0) || !std::isfinite(nrm)) throw std::invalid_argument("state: zero or non-finite vector");
  amp_ /= nrm;
}

QuantumState QuantumState::basis(int n, uint64_t index) {
  check_qubit_count(n);
  Vec v = Vec::Zero(1L << n);
  if (index >= static_cast<uint64_t>(v.size())) throw std::out_of_range("basis state index out of range");
  v(index) = 1.0;
  return QuantumState(n, v);
}

DensityMatrix::DensityMatrix(int n, Mat m) : n_(n), m_(std::move(m)) {
  check_qubit_count(n);
  if (m_.rows() != (1L << n) || m_.cols() != m_.rows())
    throw std::invalid_argument("density matrix: shape does not match qubit count");
}

DensityMatrix DensityMatrix::from_state(const QuantumState& s) {
  return DensityMatrix(s.n_qubits(), s.amplitudes() * s.amplitudes().adjoint());
}

double DensityMatrix::hermiticity_residual() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  Mat h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid(double tol) const {
  return hermiticity_residual() < tol && std::abs(m_.trace() - cplx(1, 0)) < tol && min_eigenvalue() >= -tol;
}

// ---- operators ----

HermitianOperator::HermitianOperator(Mat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("operator: matrix not square");
  qubits_for_dim(m_.rows());
  if (m_.size() > 0) {
    double r = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (r > tol) throw std::invalid_argument("operator: matrix not Hermitian (residual " + std::to_string(r) + ")");
  }
}

int HermitianOperator::n_qubits() const { return qubits_for_dim(m_.rows()); }

void HermitianOperator::decompose() const {
  std::call_once(cache_->once, [this] {
    Mat h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    cache_->evals = es.eigenvalues();
    cache_->evecs = es.eigenvectors();
  });
}

const RVec& HermitianOperator::eigenvalues() const {
  decompose();
  return cache_->evals;
}

const Mat& HermitianOperator::eigenvectors() const {
  decompose();
  return cache_->evecs;
}

Mat HermitianOperator::apply_function(const std::function<cplx(double)>& f) const {
  const RVec& w = eigenvalues();
  const Mat& u = eigenvectors();
  Vec fw(w.size());
  for (long k = 0; k < w.size(); ++k) fw(k) = f(w(k));
  return u * fw.asDiagonal() * u.adjoint();
}

Mat HermitianOperator::unitary(double t) const {
  return apply_function([t](double e) { return std::exp(cplx(0, -e * t)); });
}

Mat pauli_matrix(const PauliString& p) {
  check_qubit_count(p.n_qubits);
  uint64_t d = 1ULL << p.n_qubits;
  Mat m = Mat::Zero(d, d);
  for (uint64_t i = 0; i < d; ++i) m(i ^ p.x, i) = p.amplitude(i);
  return m;
}

Vec apply_pauli(const PauliString& p, const Vec& v) {
  uint64_t d = 1ULL << p.n_qubits;
  if (static_cast<uint64_t>(v.size()) != d) throw std::invalid_argument("apply_pauli: dimension mismatch");
  Vec out(d);
  for (uint64_t i = 0; i < d; ++i) out(i ^ p.x) = p.amplitude(i) * v(i);
  return out;
}

HermitianOperator to_matrix(const PauliString& p) { return HermitianOperator(pauli_matrix(p)); }

HermitianOperator to_matrix(const MajoranaHamiltonian& h, const RegisterLayout& layout, MajoranaNorm norm,
                            Side side) {
  int n = layout.n_system();
  check_qubit_count(n);
  if (h.n_majorana() > layout.n_side())
    throw std::invalid_argument("to_matrix: Hamiltonian needs " + std::to_string(h.n_majorana()) +
                                " Majoranas, layout holds " + std::to_string(layout.n_side()));
  uint64_t d = 1ULL << n;
  Mat m = Mat::Zero(d, d);
  double s = majorana_scale(norm);
  for (const auto& t : h.terms()) {
    PauliString p = monomial_string(t.monomial, layout, side);
    cplx c = t.coeff * std::pow(s, t.monomial.size()) * hermitian_factor(t.monomial.size());
    for (uint64_t i = 0; i < d; ++i) m(i ^ p.x, i) += c * p.amplitude(i);
  }
  return HermitianOperator(std::move(m));
}

Mat majorana_matrix(const RegisterLayout& layout, Side side, int j, MajoranaNorm norm) {
  return majorana_scale(norm) * pauli_matrix(majorana_string(layout, side, j));
}

// ---- evolution and reduced states ----

QuantumState evolve(const QuantumState& s, const HermitianOperator& h, double t) {
  if (h.dim() != s.amplitudes().size()) throw std::invalid_argument("evolve: dimension mismatch");
  const RVec& w = h.eigenvalues();
  const Mat& u = h.eigenvectors();
  Vec c = u.adjoint() * s.amplitudes();
  for (long k = 0; k < w.size(); ++k) c(k) *= std::exp(cplx(0, -w(k) * t));
  return QuantumState(s.n_qubits(), u * c);
}

DensityMatrix partial_trace(const QuantumState& s, const std::vector<int>& keep) {
  int n = s.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  check_region(keep, n, "partial_trace");
  std::vector<uint64_t> kept, rest;
  split_indices(n, keep, kept, rest);
  long dk = 1L << keep.size(), dr = 1L << (n - keep.size());
  Mat a = Mat::Zero(dk, dr);
  const Vec& v = s.amplitudes();
  for (long i = 0; i < v.size(); ++i) a(kept[i], rest[i]) = v(i);
  return DensityMatrix(static_cast<int>(keep.size()), a * a.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  check_region(keep, n, "partial_trace");
  std::vector<uint64_t> kept, rest;
  split_indices(n, keep, kept, rest);
  long dk = 1L << keep.size();
  long d = 1L << n;
  // group full indices by their rest bits
  std::vector<std::vector<long>> by_rest(1L << (n - keep.size()));
  for (long i = 0; i < d; ++i) by_rest[rest[i]].push_back(i);
  Mat out = Mat::Zero(dk, dk);
  const Mat& m = rho.matrix();
  for (const auto& group : by_rest)
    for (long i : group)
      for (long j : group) out(kept[i], kept[j]) += m(i, j);
  return DensityMatrix(static_cast<int>(keep.size()), out);
}

double entropy(const DensityMatrix& rho) {
  Mat h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  double s = 0;
  for (long k = 0; k < es.eigenvalues().size(); ++k) {
    double l = es.eigenvalues()(k);
    if (l > 0) s -= l * std::log(l);
  }
  return s;
}

namespace {

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int q : a)
    if (std::find(b.begin(), b.end(), q) != b.end())
      throw std::invalid_argument("mutual_information: overlapping regions");
}

}  // namespace

double mutual_information(const QuantumState& s, const std::vector<int>& a, const std::vector<int>& b) {
  check_disjoint(a, b);
  std::vector<int> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return entropy(partial_trace(s, a)) + entropy(partial_trace(s, b)) - entropy(partial_trace(s, ab));
}

double mutual_information(const DensityMatrix& rho, const std::vector<int>& a, const std::vector<int>& b) {
  check_disjoint(a, b);
  std::vector<int> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  DensityMatrix rab = partial_trace(rho, ab);
  std::vector<int> ia, ib;
  for (size_t k = 0; k < a.size(); ++k) ia.push_back(static_cast<int>(k));
  for (size_t k = 0; k < b.size(); ++k) ib.push_back(static_cast<int>(a.size() + k));
  return entropy(partial_trace(rab, ia)) + entropy(partial_trace(rab, ib)) - entropy(rab);
}

void fix_phase(Vec& v, double tol) {
  for (long i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

std::pair<double, QuantumState> ground_state(const HermitianOperator& h) {
  const RVec& w = h.eigenvalues();
  Vec g = h.eigenvectors().col(0);
  fix_phase(g);
  return {w(0), QuantumState(h.n_qubits(), g)};
}

Mat thermal_power(const HermitianOperator& h, double x) {
  return h.apply_function([x](double e) { return cplx(std::exp(-x * e), 0); });
}

Mat thermal_sqrt(const HermitianOperator& h, double beta) {
  if (beta < 0) throw std::invalid_argument("thermal_sqrt: beta must be non-negative");
  return thermal_power(h, beta / 2);
}

}  // namespace wormlab
