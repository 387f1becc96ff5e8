#include "wormlab/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace wormlab {

MajoranaMonomial::MajoranaMonomial(std::vector<int> indices) : idx_(std::move(indices)) {
  for (size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] < 1) throw std::invalid_argument("monomial: indices are 1-based");
    if (k > 0 && idx_[k] <= idx_[k - 1])
      throw std::invalid_argument("monomial: indices must be strictly increasing");
  }
}

std::string MajoranaMonomial::to_string() const {
  std::string s = "{";
  for (size_t k = 0; k < idx_.size(); ++k) s += (k ? "," : "") + std::to_string(idx_[k]);
  return s + "}";
}

int shared_count(const MajoranaMonomial& a, const MajoranaMonomial& b) {
  int k = 0;
  size_t i = 0, j = 0;
  const auto& x = a.indices();
  const auto& y = b.indices();
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) { ++k; ++i; ++j; }
    else if (x[i] < y[j]) ++i;
    else ++j;
  }
  return k;
}

bool monomials_commute(const MajoranaMonomial& a, const MajoranaMonomial& b) {
  return ((a.size() * b.size() - shared_count(a, b)) & 1) == 0;
}

PauliString monomial_string(const MajoranaMonomial& m, const RegisterLayout& layout, Side side) {
  PauliString p = PauliString::identity(layout.n_system());
  for (int j : m.indices()) p = p * majorana_string(layout, side, j);
  return p;
}

cplx hermitian_factor(int size) {
  int r = size % 4;
  return (r == 2 || r == 3) ? cplx(0, 1) : cplx(1, 0);
}

MajoranaHamiltonian::MajoranaHamiltonian(int n, int q, std::vector<MajoranaTerm> terms)
    : n_(n), q_(q), terms_(std::move(terms)) {
  if (n < 1) throw std::invalid_argument("hamiltonian: n_majorana must be positive");
  if (q < 1) throw std::invalid_argument("hamiltonian: q must be positive");
  std::set<std::vector<int>> seen;
  for (const auto& t : terms_) {
    if (t.monomial.size() != q)
      throw std::invalid_argument("hamiltonian: term " + t.monomial.to_string() + " does not have q indices");
    if (t.monomial.max_index() > n)
      throw std::invalid_argument("hamiltonian: term " + t.monomial.to_string() + " exceeds n_majorana");
    if (!std::isfinite(t.coeff)) throw std::invalid_argument("hamiltonian: non-finite coefficient");
    if (!seen.insert(t.monomial.indices()).second)
      throw std::invalid_argument("hamiltonian: duplicate term " + t.monomial.to_string());
  }
}

double MajoranaHamiltonian::coefficient(const std::vector<int>& indices) const {
  for (const auto& t : terms_)
    if (t.monomial.indices() == indices) return t.coeff;
  return 0.0;
}

double MajoranaHamiltonian::l1_norm() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

CommutativityReport commutativity_report(const MajoranaHamiltonian& h) {
  CommutativityReport r;
  auto layout = RegisterLayout::single_side(h.n_majorana());
  std::vector<PauliString> s;
  for (const auto& t : h.terms()) s.push_back(monomial_string(t.monomial, layout));
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (!commutes(s[i], s[j])) r.anticommuting_pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
  r.fully_commuting = r.anticommuting_pairs.empty();
  return r;
}

}  // namespace wormlab
