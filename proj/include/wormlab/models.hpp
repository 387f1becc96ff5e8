#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wormlab/hilbert.hpp"
#include "wormlab/majorana.hpp"

namespace wormlab {

MajoranaHamiltonian learned_h0();         // N=7, five commuting terms
MajoranaHamiltonian learned_h6();         // six terms, index 8 appears so N=8
MajoranaHamiltonian learned_n10_8term();  // N=10, eight terms
MajoranaHamiltonian perturbation_h1();    // +0.3 {1,2,3,5} on N=7

// Concatenate terms; n_majorana is the larger of the two.  Shared monomials add.
MajoranaHamiltonian add(const MajoranaHamiltonian& a, const MajoranaHamiltonian& b);

// Variance (q-1)! J^2 / N^(q-1).
double syk_variance(int n, int q, double j);
MajoranaHamiltonian dense_syk(int n, int q, double j, uint64_t seed);

// Same monomials, Gaussian coefficients with variance equal to the mean square
// of the input coefficients.  Throws if the input does not fully commute.
MajoranaHamiltonian random_commuting_variant(const MajoranaHamiltonian& h, uint64_t seed);

struct CatalogEntry {
  std::string name;
  std::string description;
  MajoranaHamiltonian (*make)();
};
const std::vector<CatalogEntry>& catalog();
// Catalog name, "h0_plus_h1", or throws.
MajoranaHamiltonian catalog_model(const std::string& name);

std::string to_json(const MajoranaHamiltonian& h);
MajoranaHamiltonian from_json(const std::string& text);

// H on two copies: H_R has the coefficients of H_L; V = sum_j i psi_L^j psi_R^j
// (Hermitian).  All matrices act on the layout's system register.
struct DoubledSystem {
  MajoranaHamiltonian model;
  RegisterLayout layout;
  MajoranaNorm norm = MajoranaNorm::kSyk;
  HermitianOperator h_left;
  HermitianOperator h_right;
  HermitianOperator v;
  std::vector<PauliString> v_strings;  // i psi_L^j psi_R^j as Hermitian strings, unscaled
};

DoubledSystem make_doubled(const MajoranaHamiltonian& h, const RegisterLayout& layout,
                           MajoranaNorm norm = MajoranaNorm::kSyk);
DoubledSystem make_doubled(const MajoranaHamiltonian& h, MajoranaNorm norm = MajoranaNorm::kSyk,
                           std::pair<int, int> inject = {1, 2}, bool reuse_q_as_t = false);

}  // namespace wormlab
