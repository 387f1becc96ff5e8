#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wormlab {

using cplx = std::complex<double>;

constexpr int kMaxQubits = 14;

// pauli: psi = string, psi^2 = 1.  syk: psi = string / sqrt(2), psi^2 = 1/2.
enum class MajoranaNorm { kPauli = 0, kSyk = 1 };

double majorana_scale(MajoranaNorm norm);
const char* to_string(MajoranaNorm norm);
MajoranaNorm parse_majorana_norm(const std::string& s);

// i^phase * (sigma_0 (x) sigma_1 (x) ...), sigma(x,z) in {I, X, Z, Y} for
// (x,z) = (0,0), (1,0), (0,1), (1,1).  Qubit q is bit q of a basis index.
struct PauliString {
  int n_qubits = 0;
  uint64_t x = 0;
  uint64_t z = 0;
  int phase = 0;

  PauliString() = default;
  PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase_pow = 0);

  static PauliString identity(int n) { return PauliString(n, 0, 0, 0); }
  static PauliString single(int n, int qubit, char op);
  static PauliString parse(const std::string& s);  // "X_Z" style, qubit 0 first, optional +,-,i,-i prefix

  int weight() const;
  bool is_identity_up_to_phase() const { return x == 0 && z == 0; }
  cplx phase_value() const;
  char op_at(int qubit) const;
  std::string to_string() const;

  // P|i> = amplitude(i) |i ^ x>
  cplx amplitude(uint64_t i) const;

  bool operator==(const PauliString& o) const;
  bool operator!=(const PauliString& o) const { return !(*this == o); }
};

PauliString multiply(const PauliString& a, const PauliString& b);
PauliString operator*(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);
cplx ipow(int k);

enum class Side { kLeft = 0, kRight = 1 };

// Where each Majorana lives on the Jordan-Wigner chain, plus the auxiliary
// registers of the teleportation protocol.
class RegisterLayout {
 public:
  // N Majoranas on ceil(N/2) qubits, flat index j -> psi^j.
  static RegisterLayout single_side(int n_majorana);

  // 2N Majoranas on N system qubits followed by P, Q, T.  Chain order:
  // the injected left pair, the remaining left pairs, a shared (L,R) qubit
  // when N is odd, the remaining right pairs, the readout right pair.
  static RegisterLayout doubled(int n_side, std::pair<int, int> inject = {1, 2},
                                bool reuse_q_as_t = false);

  // Explicit chain: element k is (side, j) for flat index k+1.
  static RegisterLayout custom(int n_side, const std::vector<std::pair<Side, int>>& chain,
                               bool with_aux, bool reuse_q_as_t = false);

  bool is_doubled() const { return doubled_; }
  int n_side() const { return n_side_; }
  int n_system() const { return n_system_; }
  int n_qubits() const { return n_qubits_; }
  int p_qubit() const { return p_; }
  int q_qubit() const { return q_; }
  int t_qubit() const { return t_; }
  bool reuse_q_as_t() const { return reuse_; }
  std::pair<int, int> inject_pair() const { return inject_; }

  int flat_index(Side side, int j) const;
  int qubit_of(Side side, int j) const { return (flat_index(side, j) - 1) / 2; }
  // The qubit hosting both psi^a and psi^b on one side; throws if split.
  int carrier_qubit(Side side, int a, int b) const;
  std::string describe() const;

 private:
  bool doubled_ = false;
  int n_side_ = 0;
  int n_system_ = 0;
  int n_qubits_ = 0;
  int p_ = -1, q_ = -1, t_ = -1;
  bool reuse_ = false;
  std::pair<int, int> inject_{1, 2};
  std::vector<int> left_;
  std::vector<int> right_;
};

// Raw Jordan-Wigner string: X (odd f) or Y (even f) on qubit (f-1)/2 with a Z tail.
PauliString jw_majorana(int flat_index, int n_qubits);
PauliString jw_majorana(int flat_index, const RegisterLayout& layout);
PauliString majorana_string(const RegisterLayout& layout, Side side, int j);

}  // namespace wormlab
