#include "wmtomo/gates.hpp"

#include <cmath>
#include <set>

#include "wmtomo/pauli.hpp"

namespace wmtomo::qcore {

using linalg::ComplexMatrix;

ComplexMatrix standard_gate(const std::string& name) {
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{s, s}, {s, -s}});
  }
  if (name == "CNOT")
    return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                     {0.0, 1.0, 0.0, 0.0},
                                     {0.0, 0.0, 0.0, 1.0},
                                     {0.0, 0.0, 1.0, 0.0}});
  if (name == "Rx" || name == "Ry" || name == "Rz")
    throw UnknownGate("standard_gate: '" + name + "' requires an angle");
  throw UnknownGate("standard_gate: unknown gate '" + name + "'");
}

ComplexMatrix standard_gate(const std::string& name, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  using z = std::complex<double>;
  if (name == "Rx")
    return ComplexMatrix::from_rows({{z(c), z(0.0, -s)}, {z(0.0, -s), z(c)}});
  if (name == "Ry") return ComplexMatrix::from_rows({{z(c), z(-s)}, {z(s), z(c)}});
  if (name == "Rz")
    return ComplexMatrix::from_rows({{z(c, -s), z(0.0)}, {z(0.0), z(c, s)}});
  throw UnknownGate("standard_gate: '" + name + "' does not take an angle");
}

ComplexMatrix embed(const ComplexMatrix& u, const std::vector<int>& targets,
                    int n_qubits) {
  if (n_qubits < 1) throw BadTargets("embed: register must have at least one qubit");
  const std::size_t n_t = targets.size();
  if (u.dim() != (std::size_t{1} << n_t))
    throw BadTargets("embed: unitary dimension does not match target count");
  std::set<int> seen;
  for (int t : targets) {
    if (t < 1 || t > n_qubits) throw BadTargets("embed: target out of range");
    if (!seen.insert(t).second) throw BadTargets("embed: duplicate target");
  }

  // Qubit q (1-based) owns bit n_qubits - q of the basis index.
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexMatrix out(dim);
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t ur = 0;
    for (std::size_t k = 0; k < n_t; ++k)
      ur = (ur << 1) | ((row >> (n_qubits - targets[k])) & 1);
    for (std::size_t col = 0; col < dim; ++col) {
      bool spectator_match = true;
      for (int q = 1; q <= n_qubits && spectator_match; ++q) {
        if (seen.count(q)) continue;
        const int shift = n_qubits - q;
        spectator_match = ((row >> shift) & 1) == ((col >> shift) & 1);
      }
      if (!spectator_match) continue;
      std::size_t uc = 0;
      for (std::size_t k = 0; k < n_t; ++k)
        uc = (uc << 1) | ((col >> (n_qubits - targets[k])) & 1);
      out(row, col) = u(ur, uc);
    }
  }
  return out;
}

}  // namespace wmtomo::qcore
