#include "wormlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace wormlab {

namespace {

MajoranaHamiltonian from_list(int n, std::initializer_list<std::pair<double, std::vector<int>>> list) {
  std::vector<MajoranaTerm> terms;
  for (const auto& [c, idx] : list) terms.push_back({MajoranaMonomial(idx), c});
  return MajoranaHamiltonian(n, 4, std::move(terms));
}

MajoranaHamiltonian h0_plus_h1() { return add(learned_h0(), perturbation_h1()); }

void combinations(int n, int q, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    combinations(n, q, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MajoranaHamiltonian learned_h0() {
  return from_list(7, {{-0.36, {1, 2, 4, 5}},
                       {0.19, {1, 3, 4, 7}},
                       {-0.71, {1, 3, 5, 6}},
                       {0.22, {2, 3, 4, 6}},
                       {0.49, {2, 3, 5, 7}}});
}

MajoranaHamiltonian learned_h6() {
  return from_list(8, {{-0.35, {1, 2, 3, 6}},
                       {0.11, {1, 2, 3, 8}},
                       {-0.17, {1, 2, 4, 7}},
                       {-0.67, {1, 3, 5, 7}},
                       {0.38, {2, 3, 6, 7}},
                       {-0.05, {2, 5, 6, 7}}});
}

MajoranaHamiltonian learned_n10_8term() {
  return from_list(10, {{0.60, {1, 3, 4, 5}},
                        {0.72, {1, 3, 5, 6}},
                        {0.49, {1, 5, 6, 9}},
                        {0.49, {1, 5, 7, 8}},
                        {0.64, {2, 4, 8, 10}},
                        {-0.75, {2, 5, 7, 8}},
                        {0.58, {2, 5, 7, 10}},
                        {-0.53, {2, 7, 8, 10}}});
}

MajoranaHamiltonian perturbation_h1() { return from_list(7, {{0.3, {1, 2, 3, 5}}}); }

MajoranaHamiltonian add(const MajoranaHamiltonian& a, const MajoranaHamiltonian& b) {
  if (a.q() != b.q()) throw std::invalid_argument("add: interaction orders differ");
  std::vector<MajoranaTerm> terms = a.terms();
  for (const auto& t : b.terms()) {
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const MajoranaTerm& u) { return u.monomial == t.monomial; });
    if (it != terms.end()) it->coeff += t.coeff;
    else terms.push_back(t);
  }
  return MajoranaHamiltonian(std::max(a.n_majorana(), b.n_majorana()), a.q(), std::move(terms));
}

double syk_variance(int n, int q, double j) {
  double fact = std::tgamma(static_cast<double>(q));  // (q-1)!
  return fact * j * j / std::pow(static_cast<double>(n), q - 1);
}

MajoranaHamiltonian dense_syk(int n, int q, double j, uint64_t seed) {
  if (q < 2 || q % 2 != 0 || q > n) throw std::invalid_argument("dense_syk: need even q with 2 <= q <= N");
  if (n > 2 * kMaxQubits) throw std::invalid_argument("dense_syk: N too large");
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  combinations(n, q, 1, cur, sets);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(syk_variance(n, q, j)));
  std::vector<MajoranaTerm> terms;
  terms.reserve(sets.size());
  for (auto& s : sets) terms.push_back({MajoranaMonomial(std::move(s)), gauss(rng)});
  return MajoranaHamiltonian(n, q, std::move(terms));
}

MajoranaHamiltonian random_commuting_variant(const MajoranaHamiltonian& h, uint64_t seed) {
  if (!commutativity_report(h).fully_commuting)
    throw std::invalid_argument("random_commuting_variant: input is not fully commuting");
  if (h.empty()) return h;
  double ms = 0;
  for (const auto& t : h.terms()) ms += t.coeff * t.coeff;
  ms /= static_cast<double>(h.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(ms));
  std::vector<MajoranaTerm> terms = h.terms();
  for (auto& t : terms) t.coeff = gauss(rng);
  return MajoranaHamiltonian(h.n_majorana(), h.q(), std::move(terms));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"learned_h0", "N=7 learned Hamiltonian, five commuting terms", &learned_h0},
      {"learned_h6", "six-term Hamiltonian with a non-commuting pair (N=8)", &learned_h6},
      {"learned_n10_8term", "N=10 eight-term Hamiltonian", &learned_n10_8term},
      {"perturbation_h1", "single non-commuting perturbation +0.3 {1,2,3,5}", &perturbation_h1},
      {"h0_plus_h1", "learned_h0 plus perturbation_h1", &h0_plus_h1},
  };
  return entries;
}

MajoranaHamiltonian catalog_model(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e.make();
  throw std::invalid_argument("unknown model '" + name + "'");
}

std::string to_json(const MajoranaHamiltonian& h) {
  nlohmann::ordered_json j;
  j["n_majorana"] = h.n_majorana();
  j["q"] = h.q();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : h.terms()) {
    nlohmann::ordered_json term;
    term["indices"] = t.monomial.indices();
    term["coeff"] = t.coeff;
    j["terms"].push_back(term);
  }
  return j.dump(2);
}

MajoranaHamiltonian from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_majorana") || !j.contains("terms"))
    throw std::invalid_argument("model json: expected {n_majorana, q, terms}");
  int n = j.at("n_majorana").get<int>();
  int q = j.value("q", 4);
  std::vector<MajoranaTerm> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("indices") || !t.contains("coeff")) throw std::invalid_argument("model json: term needs indices and coeff");
    terms.push_back({MajoranaMonomial(t.at("indices").get<std::vector<int>>()), t.at("coeff").get<double>()});
  }
  return MajoranaHamiltonian(n, q, std::move(terms));
}

DoubledSystem make_doubled(const MajoranaHamiltonian& h, const RegisterLayout& layout, MajoranaNorm norm) {
  if (!layout.is_doubled()) throw std::invalid_argument("make_doubled: layout is single-sided");
  if (h.n_majorana() > layout.n_side())
    throw std::invalid_argument("make_doubled: layout capacity exceeded");
  DoubledSystem d;
  d.model = h;
  d.layout = layout;
  d.norm = norm;
  d.h_left = to_matrix(h, layout, norm, Side::kLeft);
  d.h_right = to_matrix(h, layout, norm, Side::kRight);
  int n = layout.n_system();
  long dim = 1L << n;
  Mat v = Mat::Zero(dim, dim);
  double s2 = std::pow(majorana_scale(norm), 2);
  for (int j = 1; j <= layout.n_side(); ++j) {
    PauliString p = majorana_string(layout, Side::kLeft, j) * majorana_string(layout, Side::kRight, j);
    p.phase = (p.phase + 1) % 4;
    d.v_strings.push_back(p);
    v += s2 * pauli_matrix(p);
  }
  d.v = HermitianOperator(std::move(v));
  return d;
}

DoubledSystem make_doubled(const MajoranaHamiltonian& h, MajoranaNorm norm, std::pair<int, int> inject,
                           bool reuse_q_as_t) {
  return make_doubled(h, RegisterLayout::doubled(h.n_majorana(), inject, reuse_q_as_t), norm);
}

}  // namespace wormlab
