#pragma once

#include <vector>

#include "wmtomo/channel.hpp"
#include "wmtomo/complex_matrix.hpp"
#include "wmtomo/schedule.hpp"
#include "wmtomo/spin_system.hpp"
#include "wmtomo/state.hpp"
#include "wmtomo/weak.hpp"

namespace wmtomo::noise {
struct NoiseModel;
}

namespace wmtomo::tomography {

enum class TargetKind { State, Process };

// Output of one full reconstruction. raw is Hermitian by construction
// (diagonal imaginary parts zeroed, lower triangle conjugated); projected
// additionally satisfies the physical constraints of its kind. Fidelities
// compare against the known input (the state itself, or the theoretical
// process matrix).
struct TomographyResult {
  TargetKind target_kind;
  linalg::ComplexMatrix raw;
  linalg::ComplexMatrix projected;
  std::vector<weakmeas::MeasurementRecord> records;
  double fidelity_raw;
  double fidelity_projected;
  bool projection_converged;
  int projection_iterations;
};

// Direct state tomography: one weak-measurement run per schedule observable
// (every post-selection readout harvested from that single run), element
// estimates assembled per the schedule, then projected to the nearest
// density matrix. CompiledCircuit mode falls back to the default three-qubit
// couplings when spin is null.
TomographyResult run_dqst(const qcore::QState& state, weakmeas::WeakCoupling g,
                          weakmeas::EvolutionMode mode,
                          const noise::NoiseModel* noise = nullptr,
                          const qcore::SpinSystem* spin = nullptr);

// Choi state of the channel: the maximally entangled pair ladder (H on each
// ancilla, CNOT onto its partner) followed by the channel on the second half
// of the register.
qcore::QState prepare_choi(const qcore::ChannelSpec& channel);

// Basis-change unitary mapping the Choi state to the process matrix:
// entry (m, j*d + k) = conj(E_m[k, j]) / sqrt(d). Throws NotOrthogonalBasis
// and DimensionMismatch.
linalg::ComplexMatrix build_uchi(
    const std::vector<linalg::ComplexMatrix>& basis, int n_qubits);

// All 4^n Pauli words as matrices, qubit 1 slowest, letters ordered
// I, X, Y, Z per qubit.
std::vector<linalg::ComplexMatrix> pauli_basis(int n_qubits);

// Process matrix of the channel in the given basis: expand each Kraus
// operator as K_i = sum_m c_im E_m, then chi = sum_i c_i c_i'. Trace 1 for
// trace-preserving channels.
linalg::ComplexMatrix chi_theory(
    const qcore::ChannelSpec& channel,
    const std::vector<linalg::ComplexMatrix>& basis);

// Direct process tomography: Choi state, conjugation by build_uchi, the
// state-tomography schedule on the transformed register, then projection
// with the process constraints. Fidelities compare against chi_theory.
TomographyResult run_dqpt(const qcore::ChannelSpec& channel,
                          weakmeas::WeakCoupling g, weakmeas::EvolutionMode mode,
                          const noise::NoiseModel* noise = nullptr,
                          const qcore::SpinSystem* spin = nullptr);

}  // namespace wmtomo::tomography
