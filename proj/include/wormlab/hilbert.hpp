#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "wormlab/majorana.hpp"
#include "wormlab/pauli.hpp"

namespace wormlab {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

class QuantumState {
 public:
  QuantumState() = default;
  QuantumState(int n_qubits, Vec amplitudes);  // normalizes; throws on zero vector
  static QuantumState basis(int n_qubits, uint64_t index);

  int n_qubits() const { return n_; }
  const Vec& amplitudes() const { return amp_; }
  Vec& amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }

 private:
  int n_ = 0;
  Vec amp_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(int n_qubits, Mat m);
  static DensityMatrix from_state(const QuantumState& s);

  int n_qubits() const { return n_; }
  const Mat& matrix() const { return m_; }
  Mat& matrix() { return m_; }
  double trace() const { return m_.trace().real(); }
  double hermiticity_residual() const;
  double min_eigenvalue() const;
  // Hermitian, unit trace, eigenvalues >= -tol
  bool is_valid(double tol = 1e-10) const;

 private:
  int n_ = 0;
  Mat m_;
};

class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Mat m, double tol = 1e-10);

  const Mat& matrix() const { return m_; }
  long dim() const { return m_.rows(); }
  int n_qubits() const;

  // Computed once on first use, safe under concurrent first access.
  const RVec& eigenvalues() const;
  const Mat& eigenvectors() const;

  Mat apply_function(const std::function<cplx(double)>& f) const;
  Mat unitary(double t) const;  // exp(-i H t)

 private:
  struct Cache {
    std::once_flag once;
    RVec evals;
    Mat evecs;
  };
  void decompose() const;
  Mat m_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Mat pauli_matrix(const PauliString& p);
Vec apply_pauli(const PauliString& p, const Vec& v);
void check_qubit_count(int n);

HermitianOperator to_matrix(const PauliString& p);
// Matrix of H on the layout's system register, psi scaled per norm.
HermitianOperator to_matrix(const MajoranaHamiltonian& h, const RegisterLayout& layout,
                            MajoranaNorm norm = MajoranaNorm::kPauli, Side side = Side::kLeft);
Mat majorana_matrix(const RegisterLayout& layout, Side side, int j, MajoranaNorm norm);

QuantumState evolve(const QuantumState& s, const HermitianOperator& h, double t);

// Kept qubits map to reduced-index bits in the order given.
DensityMatrix partial_trace(const QuantumState& s, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

double entropy(const DensityMatrix& rho);  // nats
double mutual_information(const QuantumState& s, const std::vector<int>& a, const std::vector<int>& b);
double mutual_information(const DensityMatrix& rho, const std::vector<int>& a, const std::vector<int>& b);

// Makes the first entry with |v_i| > tol real positive.
void fix_phase(Vec& v, double tol = 1e-12);
std::pair<double, QuantumState> ground_state(const HermitianOperator& h);

Mat thermal_sqrt(const HermitianOperator& h, double beta);  // exp(-beta H / 2)
Mat thermal_power(const HermitianOperator& h, double x);    // exp(-x H)

constexpr double kLn2 = 0.69314718055994530942;

}  // namespace wormlab
