#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "wormlab/hilbert.hpp"
#include "wormlab/pauli.hpp"

using namespace wormlab;

namespace {

PauliString random_string(std::mt19937_64& rng, int n) {
  uint64_t mask = (1ULL << n) - 1;
  return PauliString(n, rng() & mask, rng() & mask, static_cast<int>(rng() % 4));
}

oracle::Mat via_kron(const PauliString& p) {
  std::string ops;
  for (int q = 0; q < p.n_qubits; ++q) ops += p.op_at(q) == '_' ? 'I' : p.op_at(q);
  return p.phase_value() * oracle::string_matrix(ops);
}

}  // namespace

TEST(Pauli, MatrixMatchesKroneckerProduct) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      PauliString p = random_string(rng, n);
      EXPECT_LT((pauli_matrix(p) - via_kron(p)).cwiseAbs().maxCoeff(), 1e-14) << p.to_string();
    }
}

TEST(Pauli, ProductMatchesMatrixProduct) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 1 + static_cast<int>(rng() % 5);
    PauliString a = random_string(rng, n), b = random_string(rng, n);
    EXPECT_LT((pauli_matrix(a * b) - via_kron(a) * via_kron(b)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Pauli, CommutesAgreesWithCommutatorNorm) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + static_cast<int>(rng() % 5);
    PauliString a = random_string(rng, n), b = random_string(rng, n);
    oracle::Mat ma = via_kron(a), mb = via_kron(b);
    double c = (ma * mb - mb * ma).norm();
    EXPECT_EQ(commutes(a, b), c < 1e-12);
  }
}

TEST(Pauli, AmplitudeIsTheMatrixColumn) {
  std::mt19937_64 rng(14);
  PauliString p = random_string(rng, 4);
  oracle::Mat m = via_kron(p);
  for (uint64_t i = 0; i < 16; ++i) EXPECT_LT(std::abs(m(static_cast<long>(i ^ p.x), static_cast<long>(i)) - p.amplitude(i)), 1e-15);
}

TEST(Pauli, ParseRoundTrip) {
  PauliString p = PauliString::parse("-iXZ_Y");
  EXPECT_EQ(p.n_qubits, 4);
  EXPECT_EQ(p.op_at(0), 'X');
  EXPECT_EQ(p.op_at(2), '_');
  EXPECT_EQ(p.op_at(3), 'Y');
  EXPECT_EQ(PauliString::parse(p.to_string()), p);
  EXPECT_EQ(p.weight(), 3);
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(Pauli, SquareOfHermitianStringIsIdentity) {
  PauliString p = PauliString::parse("XYZ_");
  PauliString sq = p * p;
  EXPECT_TRUE(sq.is_identity_up_to_phase());
  EXPECT_EQ(sq.phase, 0);
}

TEST(JordanWigner, MajoranasAnticommuteAndSquareToOne) {
  int nq = 4;
  for (int f = 1; f <= 2 * nq; ++f) {
    PauliString a = jw_majorana(f, nq);
    EXPECT_EQ((a * a), PauliString::identity(nq));
    for (int g = f + 1; g <= 2 * nq; ++g) EXPECT_FALSE(commutes(a, jw_majorana(g, nq)));
  }
  EXPECT_LT((pauli_matrix(jw_majorana(5, 3)) - oracle::chain_majorana(5, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Layout, DoubledPlacesInjectedPairsAtTheEnds) {
  auto l = RegisterLayout::doubled(7);
  EXPECT_EQ(l.n_system(), 7);
  EXPECT_EQ(l.n_qubits(), 10);
  EXPECT_EQ(l.carrier_qubit(Side::kLeft, 1, 2), 0);
  EXPECT_EQ(l.carrier_qubit(Side::kRight, 1, 2), 6);
  EXPECT_EQ(l.p_qubit(), 7);
  EXPECT_EQ(l.q_qubit(), 8);
  EXPECT_EQ(l.t_qubit(), 9);
  // odd N shares one qubit between the two sides
  EXPECT_EQ(l.qubit_of(Side::kLeft, 7), l.qubit_of(Side::kRight, 7));
  auto c = oracle::doubled_chain(7);
  for (int j = 1; j <= 7; ++j) {
    EXPECT_EQ(l.flat_index(Side::kLeft, j), c.left[j - 1]);
    EXPECT_EQ(l.flat_index(Side::kRight, j), c.right[j - 1]);
  }
}

TEST(Layout, ReuseShrinksTheRegister) {
  auto l = RegisterLayout::doubled(6, {3, 5}, true);
  EXPECT_EQ(l.n_qubits(), 8);
  EXPECT_EQ(l.t_qubit(), l.q_qubit());
  EXPECT_EQ(l.carrier_qubit(Side::kLeft, 3, 5), 0);
}

TEST(Layout, Errors) {
  EXPECT_THROW(RegisterLayout::doubled(7, {1, 9}), std::out_of_range);
  EXPECT_THROW(RegisterLayout::doubled(7, {2, 2}), std::out_of_range);
  EXPECT_THROW(RegisterLayout::doubled(13), std::invalid_argument);  // 16 qubits
  auto l = RegisterLayout::doubled(7);
  EXPECT_THROW(l.carrier_qubit(Side::kLeft, 1, 3), std::invalid_argument);
  EXPECT_THROW(l.flat_index(Side::kLeft, 8), std::out_of_range);
  EXPECT_THROW(RegisterLayout::single_side(7).flat_index(Side::kRight, 1), std::invalid_argument);
}

TEST(Norm, ParseAndScale) {
  EXPECT_EQ(parse_majorana_norm("syk"), MajoranaNorm::kSyk);
  EXPECT_EQ(parse_majorana_norm("pauli"), MajoranaNorm::kPauli);
  EXPECT_THROW(parse_majorana_norm("dirac"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(majorana_scale(MajoranaNorm::kPauli), 1.0);
  EXPECT_NEAR(majorana_scale(MajoranaNorm::kSyk) * majorana_scale(MajoranaNorm::kSyk), 0.5, 1e-15);
}
