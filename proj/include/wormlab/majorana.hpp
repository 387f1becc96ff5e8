#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wormlab/pauli.hpp"

namespace wormlab {

// Product psi^{i1} psi^{i2} ... with strictly increasing 1-based indices.
class MajoranaMonomial {
 public:
  MajoranaMonomial() = default;
  explicit MajoranaMonomial(std::vector<int> indices);

  const std::vector<int>& indices() const { return idx_; }
  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  int max_index() const { return idx_.empty() ? 0 : idx_.back(); }
  std::string to_string() const;

  bool operator==(const MajoranaMonomial& o) const { return idx_ == o.idx_; }
  bool operator<(const MajoranaMonomial& o) const { return idx_ < o.idx_; }

 private:
  std::vector<int> idx_;
};

// A B = (-1)^{|A||B| - |A n B|} B A
bool monomials_commute(const MajoranaMonomial& a, const MajoranaMonomial& b);
int shared_count(const MajoranaMonomial& a, const MajoranaMonomial& b);

// Raw string product of the monomial's Majoranas on one side of a layout.
PauliString monomial_string(const MajoranaMonomial& m, const RegisterLayout& layout,
                            Side side = Side::kLeft);

// 1 for sizes 0,1 mod 4, i for 2,3 mod 4: makes coeff * h * monomial Hermitian.
cplx hermitian_factor(int size);

struct MajoranaTerm {
  MajoranaMonomial monomial;
  double coeff = 0.0;
};

class MajoranaHamiltonian {
 public:
  MajoranaHamiltonian() = default;
  MajoranaHamiltonian(int n_majorana, int q, std::vector<MajoranaTerm> terms);

  int n_majorana() const { return n_; }
  int q() const { return q_; }
  const std::vector<MajoranaTerm>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double coefficient(const std::vector<int>& indices) const;  // 0 if absent
  double l1_norm() const;

 private:
  int n_ = 0;
  int q_ = 4;
  std::vector<MajoranaTerm> terms_;
};

struct CommutativityReport {
  bool fully_commuting = true;
  std::vector<std::pair<int, int>> anticommuting_pairs;  // term indices, i < j
};

// Exhaustive pairwise check through the Pauli strings of a single-side encoding.
CommutativityReport commutativity_report(const MajoranaHamiltonian& h);

}  // namespace wormlab
