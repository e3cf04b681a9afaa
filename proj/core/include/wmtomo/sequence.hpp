#pragma once

#include <string>
#include <vector>

#include "wmtomo/complex_matrix.hpp"
#include "wmtomo/state.hpp"

namespace wmtomo::qcore {

struct GateStep {
  std::string label;
  linalg::ComplexMatrix unitary;  // full-register, dim 2^n
};

// Ordered list of labeled unitaries; the first step acts first. Steps carry
// their global phases; unitary comparisons elsewhere are phase-insensitive.
class GateSequence {
 public:
  explicit GateSequence(int n_qubits);

  // Checks unitarity within 1e-10 and the register dimension.
  void append(std::string label, linalg::ComplexMatrix u);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateStep>& steps() const { return steps_; }

  // Product of all steps, first step applied first (rightmost factor).
  linalg::ComplexMatrix total_unitary() const;

 private:
  int n_qubits_;
  std::vector<GateStep> steps_;
};

// rho -> U rho U' with U the sequence's total unitary.
QState apply_sequence(const GateSequence& seq, const QState& state);

}  // namespace wmtomo::qcore
