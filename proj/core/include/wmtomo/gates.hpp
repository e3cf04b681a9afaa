#pragma once

#include <string>
#include <vector>

#include "wmtomo/complex_matrix.hpp"

namespace wmtomo::qcore {

// Fixed gates: H, CNOT (control = first qubit), X, Y, Z. Throws UnknownGate.
linalg::ComplexMatrix standard_gate(const std::string& name);

// Rotation gates Rx, Ry, Rz with R_a(theta) = exp(-i theta sigma_a / 2).
// Throws UnknownGate for other names.
linalg::ComplexMatrix standard_gate(const std::string& name, double angle);

// Places u on the given qubits (1-based, qubit 1 = leftmost factor) within an
// n-qubit register, identity elsewhere. Targets may be in any order; the
// first target receives u's slowest index. Throws BadTargets.
linalg::ComplexMatrix embed(const linalg::ComplexMatrix& u,
                            const std::vector<int>& targets, int n_qubits);

}  // namespace wmtomo::qcore
