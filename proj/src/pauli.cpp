#include "wormlab/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wormlab {

namespace {

uint64_t mask_for(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

void check_size(int n) {
  if (n < 0 || n > 63) throw std::invalid_argument("pauli string: qubit count out of range");
}

}  // namespace

double majorana_scale(MajoranaNorm norm) {
  return norm == MajoranaNorm::kSyk ? 1.0 / std::sqrt(2.0) : 1.0;
}

const char* to_string(MajoranaNorm norm) { return norm == MajoranaNorm::kSyk ? "syk" : "pauli"; }

MajoranaNorm parse_majorana_norm(const std::string& s) {
  if (s == "syk") return MajoranaNorm::kSyk;
  if (s == "pauli") return MajoranaNorm::kPauli;
  throw std::invalid_argument("unknown majorana_norm '" + s + "' (expected pauli or syk)");
}

cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

PauliString::PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase_pow)
    : n_qubits(n), x(x_mask), z(z_mask), phase(((phase_pow % 4) + 4) % 4) {
  check_size(n);
  if ((x | z) & ~mask_for(n)) throw std::invalid_argument("pauli string: mask exceeds qubit count");
}

PauliString PauliString::single(int n, int qubit, char op) {
  if (qubit < 0 || qubit >= n) throw std::out_of_range("pauli string: qubit out of range");
  uint64_t b = 1ULL << qubit;
  switch (op) {
    case 'I': return PauliString(n, 0, 0);
    case 'X': return PauliString(n, b, 0);
    case 'Y': return PauliString(n, b, b);
    case 'Z': return PauliString(n, 0, b);
    default: throw std::invalid_argument(std::string("pauli string: bad operator '") + op + "'");
  }
}

PauliString PauliString::parse(const std::string& s) {
  std::string body = s;
  int ph = 0;
  if (body.rfind("-i", 0) == 0) { ph = 3; body = body.substr(2); }
  else if (body.rfind("+i", 0) == 0) { ph = 1; body = body.substr(2); }
  else if (body.rfind("i", 0) == 0) { ph = 1; body = body.substr(1); }
  else if (body.rfind("-", 0) == 0) { ph = 2; body = body.substr(1); }
  else if (body.rfind("+", 0) == 0) { body = body.substr(1); }
  int n = static_cast<int>(body.size());
  PauliString p(n, 0, 0, ph);
  for (int q = 0; q < n; ++q) {
    char c = body[q] == '_' ? 'I' : body[q];
    PauliString one = single(n, q, c);
    p.x |= one.x;
    p.z |= one.z;
  }
  return p;
}

int PauliString::weight() const { return std::popcount(x | z); }

cplx PauliString::phase_value() const { return ipow(phase); }

char PauliString::op_at(int q) const {
  bool bx = (x >> q) & 1, bz = (z >> q) & 1;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return '_';
}

std::string PauliString::to_string() const {
  static const char* pre[] = {"+", "+i", "-", "-i"};
  std::string s = pre[phase];
  for (int q = 0; q < n_qubits; ++q) s += op_at(q);
  return s;
}

cplx PauliString::amplitude(uint64_t i) const {
  // Y = i X Z, so sigma(x,z) = i^{|x&z|} X^x Z^z and Z acts first.
  int k = phase + std::popcount(x & z) + 2 * (std::popcount(z & i) & 1);
  return ipow(k);
}

bool PauliString::operator==(const PauliString& o) const {
  return n_qubits == o.n_qubits && x == o.x && z == o.z && phase == o.phase;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) throw std::invalid_argument("multiply: qubit count mismatch");
  // X^xa Z^za X^xb Z^zb = (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}
  int pa = a.phase + std::popcount(a.x & a.z);
  int pb = b.phase + std::popcount(b.x & b.z);
  int k = pa + pb + 2 * std::popcount(a.z & b.x);
  uint64_t x = a.x ^ b.x, z = a.z ^ b.z;
  return PauliString(a.n_qubits, x, z, k - std::popcount(x & z));
}

PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) throw std::invalid_argument("commutes: qubit count mismatch");
  return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

PauliString jw_majorana(int f, int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("jw_majorana: qubit count out of range");
  if (f < 1 || f > 2 * n) throw std::out_of_range("jw_majorana: index " + std::to_string(f) + " out of range");
  int q = (f - 1) / 2;
  uint64_t tail = (1ULL << q) - 1;
  uint64_t b = 1ULL << q;
  return f % 2 == 1 ? PauliString(n, b, tail) : PauliString(n, b, tail | b);
}

PauliString jw_majorana(int f, const RegisterLayout& layout) {
  return jw_majorana(f, layout.n_system());
}

PauliString majorana_string(const RegisterLayout& layout, Side side, int j) {
  return jw_majorana(layout.flat_index(side, j), layout.n_system());
}

// ---- RegisterLayout ----

RegisterLayout RegisterLayout::single_side(int n) {
  if (n < 1 || n > 2 * kMaxQubits) throw std::invalid_argument("single_side: bad Majorana count");
  RegisterLayout l;
  l.n_side_ = n;
  l.n_system_ = (n + 1) / 2;
  l.n_qubits_ = l.n_system_;
  l.left_.resize(n);
  for (int j = 1; j <= n; ++j) l.left_[j - 1] = j;
  return l;
}

RegisterLayout RegisterLayout::custom(int n, const std::vector<std::pair<Side, int>>& chain,
                                      bool with_aux, bool reuse) {
  if (n < 1) throw std::invalid_argument("layout: bad Majorana count");
  if (static_cast<int>(chain.size()) != 2 * n) throw std::invalid_argument("layout: chain must list 2N Majoranas");
  RegisterLayout l;
  l.doubled_ = true;
  l.n_side_ = n;
  l.n_system_ = n;
  l.left_.assign(n, 0);
  l.right_.assign(n, 0);
  for (size_t k = 0; k < chain.size(); ++k) {
    auto [side, j] = chain[k];
    if (j < 1 || j > n) throw std::out_of_range("layout: Majorana index out of range");
    auto& slot = side == Side::kLeft ? l.left_[j - 1] : l.right_[j - 1];
    if (slot != 0) throw std::invalid_argument("layout: Majorana listed twice");
    slot = static_cast<int>(k) + 1;
  }
  l.reuse_ = reuse;
  if (with_aux) {
    l.p_ = n;
    l.q_ = n + 1;
    l.t_ = reuse ? l.q_ : n + 2;
    l.n_qubits_ = reuse ? n + 2 : n + 3;
  } else {
    l.n_qubits_ = n;
  }
  if (l.n_qubits_ > kMaxQubits) throw std::invalid_argument("layout: exceeds qubit cap");
  return l;
}

RegisterLayout RegisterLayout::doubled(int n, std::pair<int, int> inject, bool reuse) {
  auto [a, b] = inject;
  if (n < 2) throw std::invalid_argument("doubled: need at least two Majoranas per side");
  if (a < 1 || a > n || b < 1 || b > n || a == b)
    throw std::out_of_range("doubled: injected pair out of range");
  std::vector<int> rest;
  for (int j = 1; j <= n; ++j)
    if (j != a && j != b) rest.push_back(j);
  int odd = -1;
  if (rest.size() % 2 == 1) {
    odd = rest.back();
    rest.pop_back();
  }
  std::vector<std::pair<Side, int>> chain;
  chain.push_back({Side::kLeft, a});
  chain.push_back({Side::kLeft, b});
  for (int j : rest) chain.push_back({Side::kLeft, j});
  if (odd > 0) {
    chain.push_back({Side::kLeft, odd});
    chain.push_back({Side::kRight, odd});
  }
  for (int j : rest) chain.push_back({Side::kRight, j});
  chain.push_back({Side::kRight, a});
  chain.push_back({Side::kRight, b});
  RegisterLayout l = custom(n, chain, true, reuse);
  l.inject_ = inject;
  return l;
}

int RegisterLayout::flat_index(Side side, int j) const {
  if (j < 1 || j > n_side_) throw std::out_of_range("layout: Majorana " + std::to_string(j) + " out of range");
  if (side == Side::kRight) {
    if (!doubled_) throw std::invalid_argument("layout: single-side layout has no right Majoranas");
    return right_[j - 1];
  }
  return left_[j - 1];
}

int RegisterLayout::carrier_qubit(Side side, int a, int b) const {
  int qa = qubit_of(side, a), qb = qubit_of(side, b);
  if (qa != qb)
    throw std::invalid_argument("layout: fermions " + std::to_string(a) + "," + std::to_string(b) +
                                " are not co-located on one qubit");
  return qa;
}

std::string RegisterLayout::describe() const {
  std::ostringstream os;
  std::vector<std::string> names(2 * n_system_, "-");
  for (int j = 1; j <= n_side_; ++j) {
    names[left_[j - 1] - 1] = (doubled_ ? "L" : "") + std::to_string(j);
    if (doubled_) names[right_[j - 1] - 1] = "R" + std::to_string(j);
  }
  for (int q = 0; q < n_system_; ++q) {
    os << "q" << q << ":" << names[2 * q] << "," << names[2 * q + 1] << " ";
  }
  if (p_ >= 0) os << "P=q" << p_ << " Q=q" << q_ << " T=q" << t_;
  return os.str();
}

}  // namespace wormlab
