#pragma once

#include <string>
#include <vector>

#include "wormlab/models.hpp"

namespace wormlab {

struct SparsifyConfig {
  double lambda_l1 = 0.05;
  double step_size = 1.0;
  int max_iters = 60;
  double prune_threshold = 0.02;
  double fd_epsilon = 1e-4;
  std::vector<double> t_grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
  double beta = 0.0;
  double grad_tol = 1e-7;
  bool reactivation = false;
  uint64_t seed = 0;
  double init_scale = 1.0;  // J of the Gaussian initial coefficients
  MajoranaNorm norm = MajoranaNorm::kSyk;
  int threads = 1;

  void validate() const;
};

// Fermion-averaged two-point values on the config grid.
struct TargetData {
  int n_majorana = 0;
  std::vector<double> t;
  std::vector<cplx> values;
};

TargetData target_observables(const MajoranaHamiltonian& h, const SparsifyConfig& config);

double observable_loss(const MajoranaHamiltonian& candidate, const TargetData& target, const SparsifyConfig& config);
// observable_loss + lambda * sum |J|
double loss(const MajoranaHamiltonian& candidate, const TargetData& target, const SparsifyConfig& config);

// Coefficients over every q-subset of 1..N in lexicographic order.
struct CandidateSet {
  int n_majorana = 0;
  int q = 4;
  std::vector<MajoranaMonomial> monomials;
  MajoranaHamiltonian build(const std::vector<double>& coeffs) const;  // drops zeros
  std::vector<double> coefficients_of(const MajoranaHamiltonian& h) const;
};

CandidateSet all_candidates(int n, int q);

// Central differences; coordinates with mask[k] == false get 0.
std::vector<double> fd_gradient(const CandidateSet& set, const std::vector<double>& coeffs,
                                const std::vector<bool>& mask, const TargetData& target,
                                const SparsifyConfig& config);

struct SparsifyIteration {
  int iter = 0;
  double loss = 0.0;
  double observable_loss = 0.0;
  double l1 = 0.0;
  int active_terms = 0;
  double step = 0.0;
};

struct SparsifyTrace {
  std::vector<SparsifyIteration> iterations;  // entry 0 is the starting point
  MajoranaHamiltonian final_model;
  std::string status;  // zero_gradient | line_search_exhausted | max_iters
};

// Projected gradient descent with backtracking and hard pruning.  Starts from
// `initial` when given, otherwise from seeded Gaussian coefficients.
SparsifyTrace sparsify(const MajoranaHamiltonian& target, const SparsifyConfig& config,
                       const MajoranaHamiltonian* initial = nullptr);

}  // namespace wormlab
