#pragma once

#include <vector>

#include "wormlab/hilbert.hpp"
#include "wormlab/models.hpp"

namespace wormlab {

struct CorrelatorSeries {
  int fermion = 0;  // 0 for a fermion average
  double beta = 0.0;
  std::vector<double> t;
  std::vector<cplx> values;
  double revival_metric = 0.0;
  double thermalization_time = 0.0;  // NaN if never reached
};

// Tr[rho psi^j(t) psi^j] on a single-side register.
CorrelatorSeries two_point(const MajoranaHamiltonian& h, int j, double beta, const std::vector<double>& t_grid,
                           MajoranaNorm norm = MajoranaNorm::kSyk);
// Average of two_point over j = 1..N.
CorrelatorSeries two_point_average(const MajoranaHamiltonian& h, double beta, const std::vector<double>& t_grid,
                                   MajoranaNorm norm = MajoranaNorm::kSyk);
// Mean over j of each fermion's own revival metric.
double mean_revival_metric(const MajoranaHamiltonian& h, double beta, const std::vector<double>& t_grid,
                           MajoranaNorm norm = MajoranaNorm::kSyk);

// max |C| over the final third of the grid divided by |C| at the first point.
double revival_metric(const std::vector<double>& t, const std::vector<cplx>& values);
// First t with |C|/|C(0)| < 1/e holding for three consecutive points.
double thermalization_time(const std::vector<double>& t, const std::vector<cplx>& values);

struct OtocSeries {
  int i = 0, j = 0;
  double beta = 0.0;
  std::vector<double> t;
  std::vector<double> values;
  double scrambling_time = 0.0;  // NaN if never reached
};

// Re Tr[r A(t) r B r A(t) r B], r = rho^{1/4}, A = psi^i, B = psi^j.
OtocSeries otoc(const MajoranaHamiltonian& h, int i, int j, double beta, const std::vector<double>& t_grid,
                MajoranaNorm norm = MajoranaNorm::kSyk);
// First t with F(t)/F(0) < 1/2.
double scrambling_time(const std::vector<double>& t, const std::vector<double>& values);

struct WindingReport {
  int fermion = 0;
  double t = 0.0;
  double beta = 0.0;
  double mu_prime = 0.0;
  std::vector<double> p;  // p(n), normalized
  std::vector<cplx> q;    // q(n) = sum c_P^2 / sum |c_P|^2
  double winding = 0.0;   // W
  double alpha = 0.0;
};

// O = psi_L^j(t) exp(-beta H_L/2) with psi_L^j(t) evolved by H_L + H_R + mu' V,
// expanded as O = sum c_P P over Majorana monomials, c_P = Tr(P^dag O)/Tr(P^dag P).
WindingReport size_distribution(const DoubledSystem& system, int j, double t, double beta, double mu_prime = 0.0);
std::vector<WindingReport> winding_sweep(const DoubledSystem& system, const std::vector<int>& fermions,
                                         const std::vector<double>& t_grid, double beta, double mu_prime = 0.0,
                                         int threads = 1);

// W = max_alpha |sum_n q(n) e^{-2 i alpha n}|, returns {W, alpha}.
std::pair<double, double> winding_quality(const std::vector<cplx>& q);

struct EigenphaseResult {
  bool is_eigenvector = false;
  double eigenvalue = 0.0;
  double residual = 0.0;
  int size = 0;
};

// Is (P (x) I)|TFD_0> an eigenvector of V?
EigenphaseResult eigenphase_action_check(const DoubledSystem& system, const MajoranaMonomial& p);

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  bool all_eigenvectors = true;
  size_t monomials = 0;
};

// Checks every left monomial and fits eigenvalue = slope * size + intercept.
AffineFit eigenphase_affine_fit(const DoubledSystem& system);

}  // namespace wormlab
