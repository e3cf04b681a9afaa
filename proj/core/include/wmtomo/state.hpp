#pragma once

#include <complex>
#include <string>
#include <vector>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::qcore {

// Validated density matrix: Hermitian within 1e-8, trace within 1e-8 of 1,
// eigenvalues >= -1e-8. Raw tomographic estimates live outside this type.
class QState {
 public:
  static QState from_density(int n_qubits, linalg::ComplexMatrix rho);
  // Pure state from an amplitude vector (must be normalized within 1e-8).
  static QState pure(int n_qubits, const std::vector<std::complex<double>>& amps);
  // Computational basis state from a bit-string label such as "00".
  static QState basis_state(int n_qubits, const std::string& label);

  int n_qubits() const { return n_qubits_; }
  const linalg::ComplexMatrix& rho() const { return rho_; }

 private:
  QState(int n_qubits, linalg::ComplexMatrix rho)
      : n_qubits_(n_qubits), rho_(std::move(rho)) {}

  int n_qubits_;
  linalg::ComplexMatrix rho_;
};

// Index of a bit-string label within the computational basis (qubit 1 is the
// most significant bit). Throws BadLabel on length or character mismatch.
std::size_t basis_index(const std::string& label, int n_qubits);

// Inverse of basis_index.
std::string basis_label(std::size_t index, int n_qubits);

}  // namespace wmtomo::qcore
