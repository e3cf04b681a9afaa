#include "wmtomo/pauli.hpp"

#include <algorithm>

namespace wmtomo::qcore {

PauliString::PauliString(std::string word) : word_(std::move(word)) {
  if (word_.empty()) throw Error("PauliString: empty word");
  for (char c : word_)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw Error(std::string("PauliString: invalid letter '") + c + "'");
}

bool PauliString::is_identity() const {
  return std::all_of(word_.begin(), word_.end(), [](char c) { return c == 'I'; });
}

namespace {

using linalg::ComplexMatrix;

ComplexMatrix make_i() { return ComplexMatrix::identity(2); }

ComplexMatrix make_x() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

ComplexMatrix make_y() {
  using c = std::complex<double>;
  return ComplexMatrix::from_rows({{c(0.0), c(0.0, -1.0)}, {c(0.0, 1.0), c(0.0)}});
}

ComplexMatrix make_z() {
  return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

}  // namespace

const linalg::ComplexMatrix& pauli_i() {
  static const ComplexMatrix m = make_i();
  return m;
}

const linalg::ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = make_x();
  return m;
}

const linalg::ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = make_y();
  return m;
}

const linalg::ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = make_z();
  return m;
}

linalg::ComplexMatrix pauli_matrix(const PauliString& p) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (char c : p.word()) {
    const ComplexMatrix* f = nullptr;
    switch (c) {
      case 'I': f = &pauli_i(); break;
      case 'X': f = &pauli_x(); break;
      case 'Y': f = &pauli_y(); break;
      case 'Z': f = &pauli_z(); break;
    }
    out = linalg::kron(out, *f);
  }
  return out;
}

}  // namespace wmtomo::qcore
