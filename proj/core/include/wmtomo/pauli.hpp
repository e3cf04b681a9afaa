#pragma once

#include <string>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::qcore {

// Symbolic n-qubit Pauli word over {I, X, Y, Z}. The leftmost letter acts on
// qubit 1, the slowest tensor index.
class PauliString {
 public:
  explicit PauliString(std::string word);

  const std::string& word() const { return word_; }
  std::size_t n_qubits() const { return word_.size(); }
  char letter(std::size_t qubit_1based) const { return word_[qubit_1based - 1]; }
  bool is_identity() const;

  bool operator==(const PauliString& other) const { return word_ == other.word_; }
  bool operator<(const PauliString& other) const { return word_ < other.word_; }

 private:
  std::string word_;
};

const linalg::ComplexMatrix& pauli_i();
const linalg::ComplexMatrix& pauli_x();
const linalg::ComplexMatrix& pauli_y();
const linalg::ComplexMatrix& pauli_z();

// Tensor product in word order. Hermitian and unitary, dim 2^n.
linalg::ComplexMatrix pauli_matrix(const PauliString& p);

}  // namespace wmtomo::qcore
