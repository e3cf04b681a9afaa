#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wmtomo/pauli.hpp"
#include "wmtomo/sequence.hpp"
#include "wmtomo/spin_system.hpp"
#include "wmtomo/state.hpp"

namespace wmtomo::weakmeas {

// Dimensionless system-meter coupling strength. The estimator divides by 2g,
// so zero is rejected; |g| <= 0.5 is the policy bound.
class WeakCoupling {
 public:
  explicit WeakCoupling(double g);
  double value() const { return g_; }

 private:
  double g_;
};

enum class EvolutionMode { FirstOrder, ExactCoupling, CompiledCircuit };

std::string to_string(EvolutionMode mode);
EvolutionMode mode_from_string(const std::string& name);

// One weak-measurement run: every computational basis label of the system
// register maps to its meter readout pair (ox, oy).
struct MeasurementRecord {
  std::string pauli;
  double g = 0.0;
  std::map<std::string, std::pair<double, double>> readouts;
};

// System-meter interaction for observable p with meter operator sigma_x on
// the appended (last) qubit. FirstOrder returns the non-unitary truncation
// I - i g P (x) sigma_x; ExactCoupling the full exponential; CompiledCircuit
// the product of the compiled sequence (two system qubits only, spin system
// required). Throws UnsupportedPauli for the all-identity word.
linalg::ComplexMatrix weak_unitary(const qcore::PauliString& p, WeakCoupling g,
                                   EvolutionMode mode,
                                   const qcore::SpinSystem* spin = nullptr);

// Local-rotation and J-evolution steps realizing the weak interaction for one
// of the 15 nontrivial two-qubit words on a (system, system, meter) register.
// Emitted J steps always have nonnegative durations; a negative required
// angle is absorbed by an X frame flip around the step.
qcore::GateSequence compile_table1(const qcore::PauliString& p,
                                   const qcore::SpinSystem& spin, double g);

// The rotation block of the compiled sequence: the local product turning
// sigma_z on the coupled qubit into the target word, times Ry(pi/2) on the
// meter. Conjugating sigma_z(coupled) sigma_z(meter) by it gives
// P (x) sigma_x, which is what makes the compiled interaction exact.
linalg::ComplexMatrix table1_rotation(const qcore::PauliString& p,
                                      const qcore::SpinSystem& spin);

// System qubit whose z operator the rotation block conjugates (1 or 2).
int table1_coupled_qubit(const qcore::PauliString& p);

// Joint state after the weak interaction, meter appended in |0>. FirstOrder
// renormalizes the truncated state's trace so the result is a valid QState.
qcore::QState evolve_joint(const qcore::QState& system, const qcore::PauliString& p,
                           WeakCoupling g, EvolutionMode mode,
                           const qcore::SpinSystem* spin = nullptr);

// ox = tr(rho (|phi><phi| (x) sigma_x)), oy likewise with sigma_y, for each
// requested post-selection label. The meter is the last qubit of joint.
// A single joint state yields all labels at once. Throws BadLabel.
std::map<std::string, std::pair<double, double>> meter_expectations(
    const qcore::QState& joint, const std::vector<std::string>& phis);

// Full record for one observable: one evolution, readouts for every system
// basis label. Expectations in FirstOrder mode are taken on the unnormalized
// truncated state, which is what makes the estimator exact at any g.
MeasurementRecord measure_record(const qcore::QState& system,
                                 const qcore::PauliString& p, WeakCoupling g,
                                 EvolutionMode mode,
                                 const qcore::SpinSystem* spin = nullptr);

// (oy - i ox) / (-2g): the matrix-element estimate behind every readout.
std::complex<double> estimate_element(double ox, double oy, WeakCoupling g);

}  // namespace wmtomo::weakmeas
