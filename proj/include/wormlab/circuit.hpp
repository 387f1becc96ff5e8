#pragma once

#include <vector>

#include "wormlab/hilbert.hpp"
#include "wormlab/models.hpp"

namespace wormlab {

// exp(-i theta P) for a Hermitian string P (phase 0), or a SWAP.
struct Gate {
  enum class Kind { kRotation, kSwap };
  Kind kind = Kind::kRotation;
  PauliString pauli;
  double theta = 0.0;
  int a = -1, b = -1;

  static Gate rotation(const PauliString& p, double theta);
  static Gate swap(int n_qubits, int a, int b);
  std::vector<int> support() const;
};

struct GateTally {
  long rotations = 0;
  long swaps = 0;
  long two_qubit = 0;     // CZ
  long single_qubit = 0;  // H, S-type basis changes and Rz
  void add(const Gate& g);
  void add(const std::vector<Gate>& gs);
};

// coeff * P with P Hermitian, phase 0, on n_qubits.
struct PauliTerm {
  PauliString pauli;
  double coeff = 0.0;
};

// One side's Hamiltonian as Hermitian strings widened to n_qubits.
std::vector<PauliTerm> side_terms(const DoubledSystem& system, Side side, int n_qubits);
// V as Hermitian strings widened to n_qubits.
std::vector<PauliTerm> coupling_terms(const DoubledSystem& system, int n_qubits);

// Ordered product approximating exp(-i t sum_k c_k P_k) with `steps` repetitions.
std::vector<Gate> trotter_layers(const std::vector<PauliTerm>& terms, double t, int steps);

PauliString widen(const PauliString& p, int n_qubits);

void apply_gate(Vec& psi, const Gate& g);
void apply_gate(Mat& rho, const Gate& g);
void apply_swap(Vec& psi, int a, int b);

// Applies a system-register matrix to the low n_system qubits of a larger state.
void apply_system_operator(Vec& psi, const Mat& u, int n_system);

}  // namespace wormlab
