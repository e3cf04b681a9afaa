#include "wmtomo/sequence.hpp"

namespace wmtomo::qcore {

using linalg::ComplexMatrix;

GateSequence::GateSequence(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw Error("GateSequence: need at least one qubit");
}

void GateSequence::append(std::string label, ComplexMatrix u) {
  if (u.dim() != (std::size_t{1} << n_qubits_))
    throw DimensionMismatch("GateSequence: step '" + label +
                            "' does not match the register dimension");
  if (!u.is_unitary(1e-10))
    throw Error("GateSequence: step '" + label + "' is not unitary");
  steps_.push_back({std::move(label), std::move(u)});
}

ComplexMatrix GateSequence::total_unitary() const {
  ComplexMatrix total = ComplexMatrix::identity(std::size_t{1} << n_qubits_);
  for (const auto& step : steps_) total = step.unitary * total;
  return total;
}

QState apply_sequence(const GateSequence& seq, const QState& state) {
  if (seq.n_qubits() != state.n_qubits())
    throw DimensionMismatch("apply_sequence: register size mismatch");
  const ComplexMatrix u = seq.total_unitary();
  return QState::from_density(state.n_qubits(), u * state.rho() * u.adjoint());
}

}  // namespace wmtomo::qcore
