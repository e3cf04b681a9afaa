#pragma once

#include <vector>

#include "wmtomo/complex_matrix.hpp"
#include "wmtomo/state.hpp"

namespace wmtomo::qcore {

// Trace-preserving quantum channel given by Kraus operators.
class ChannelSpec {
 public:
  enum class Kind { Unitary, Kraus };

  static ChannelSpec unitary(linalg::ComplexMatrix u);
  // Throws NotTracePreserving unless sum K' K = I within 1e-8.
  static ChannelSpec kraus(std::vector<linalg::ComplexMatrix> ops);

  Kind kind() const { return kind_; }
  const std::vector<linalg::ComplexMatrix>& operators() const { return ops_; }
  int n_qubits() const { return n_qubits_; }

 private:
  ChannelSpec(Kind kind, int n_qubits, std::vector<linalg::ComplexMatrix> ops)
      : kind_(kind), n_qubits_(n_qubits), ops_(std::move(ops)) {}

  Kind kind_;
  int n_qubits_;
  std::vector<linalg::ComplexMatrix> ops_;
};

// Kraus sum on the target qubits (1-based), identity elsewhere.
QState apply_channel(const ChannelSpec& c, const QState& state,
                     const std::vector<int>& targets);

// Normalized overlap Re tr(a' b) / sqrt(tr(a' a) tr(b' b)). Equals 1 iff the
// arguments are proportional with a positive real factor.
// Throws ZeroMatrix and DimensionMismatch.
double fidelity(const linalg::ComplexMatrix& a, const linalg::ComplexMatrix& b);

}  // namespace wmtomo::qcore
