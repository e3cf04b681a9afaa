#pragma once

#include <map>
#include <utility>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::qcore {

// Scalar ZZ couplings J_ij in hertz between qubit pairs (1-based, i < j).
class SpinSystem {
 public:
  explicit SpinSystem(int n_qubits);

  SpinSystem& set_coupling(int i, int j, double j_hz);
  bool has_coupling(int i, int j) const;
  // Throws MissingCoupling.
  double coupling(int i, int j) const;

  int n_qubits() const { return n_qubits_; }

  // Two system qubits and a meter qubit with representative couplings
  // J_12 = 69.65 Hz, J_13 = -128.32 Hz, J_23 = 47.67 Hz.
  static SpinSystem three_qubit_default();

 private:
  int n_qubits_;
  std::map<std::pair<int, int>, double> couplings_;
};

// exp(-i 2 pi J_ij I_iz I_jz t) with I_z = sigma_z / 2, embedded in the full
// register: a diagonal unitary with phase -(pi J t / 2) z_i z_j per basis
// state. t may be any real number; compiled circuits keep durations
// nonnegative by flipping frames instead.
linalg::ComplexMatrix j_evolution(const SpinSystem& s, int i, int j, double t);

}  // namespace wmtomo::qcore
