#include "wmtomo/state.hpp"

#include <cmath>

#include "wmtomo/eig.hpp"

namespace wmtomo::qcore {

using linalg::ComplexMatrix;

QState QState::from_density(int n_qubits, ComplexMatrix rho) {
  if (n_qubits < 1) throw Error("QState: need at least one qubit");
  if (rho.dim() != (std::size_t{1} << n_qubits))
    throw DimensionMismatch("QState: density matrix dimension is not 2^n");
  if (!rho.all_finite()) throw Error("QState: nonfinite entry");
  if (!rho.is_hermitian(1e-8)) throw NotHermitian("QState: density matrix not Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-8)
    throw Error("QState: trace differs from 1");
  const auto e = linalg::eigh(rho);
  for (double v : e.eigenvalues)
    if (v < -1e-8) throw Error("QState: negative eigenvalue " + std::to_string(v));
  return QState(n_qubits, std::move(rho));
}

QState QState::pure(int n_qubits, const std::vector<std::complex<double>>& amps) {
  if (n_qubits < 1) throw Error("QState: need at least one qubit");
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (amps.size() != dim)
    throw DimensionMismatch("QState: amplitude vector dimension is not 2^n");
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-8)
    throw Error("QState: amplitude vector is not normalized");
  ComplexMatrix rho(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rho(r, c) = amps[r] * std::conj(amps[c]);
  return QState(n_qubits, std::move(rho));
}

QState QState::basis_state(int n_qubits, const std::string& label) {
  const std::size_t idx = basis_index(label, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix rho(dim);
  rho(idx, idx) = 1.0;
  return QState(n_qubits, std::move(rho));
}

std::size_t basis_index(const std::string& label, int n_qubits) {
  if (static_cast<int>(label.size()) != n_qubits)
    throw BadLabel("basis label '" + label + "' does not have " +
                   std::to_string(n_qubits) + " bits");
  std::size_t idx = 0;
  for (char c : label) {
    if (c != '0' && c != '1')
      throw BadLabel("basis label '" + label + "' contains a non-bit character");
    idx = (idx << 1) | static_cast<std::size_t>(c - '0');
  }
  return idx;
}

std::string basis_label(std::size_t index, int n_qubits) {
  std::string label(static_cast<std::size_t>(n_qubits), '0');
  for (int q = n_qubits - 1; q >= 0; --q) {
    label[q] = static_cast<char>('0' + (index & 1));
    index >>= 1;
  }
  return label;
}

}  // namespace wmtomo::qcore
