#pragma once

#include <string>
#include <vector>

#include "wormlab/hilbert.hpp"
#include "wormlab/models.hpp"

namespace wormlab {

// half: weights exp(-beta E/2), left-reduced state exp(-beta H_L)/Z.
// paper_literal: weights exp(-beta E).
enum class TfdConvention { kHalf = 0, kPaperLiteral = 1 };

const char* to_string(TfdConvention c);
TfdConvention parse_tfd_convention(const std::string& s);

struct TfdSpec {
  double beta = 0.0;
  TfdConvention convention = TfdConvention::kHalf;
};

// Joint +1 eigenstate of the strings i psi_L^j psi_R^j, phase fixed.
Vec tfd_zero(const DoubledSystem& system);
QuantumState tfd_state(const DoubledSystem& system, const TfdSpec& spec);

// H_L + H_R + mu V with V already Hermitian.
HermitianOperator h_tfd(const DoubledSystem& system, double mu);

struct FidelityScan {
  std::vector<double> betas;
  std::vector<double> fidelity;
  double beta_star = 0.0;
  double fidelity_max = 0.0;
  TfdConvention convention = TfdConvention::kHalf;
  double ground_energy = 0.0;
};

// |<TFD_beta|gs(H_TFD)>|^2 per beta; ties go to the smallest beta.
FidelityScan tfd_fidelity_scan(const DoubledSystem& system, double mu, const std::vector<double>& betas,
                               TfdConvention convention = TfdConvention::kHalf);

// Geometric grid from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

// max over left monomials P of |<s|P|s> - Tr(exp(-beta H_L) P)/Z|
double left_thermal_residual(const DoubledSystem& system, const QuantumState& s, double beta);

}  // namespace wormlab
