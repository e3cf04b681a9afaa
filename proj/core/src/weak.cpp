#include "wmtomo/weak.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "wmtomo/eig.hpp"
#include "wmtomo/errors.hpp"
#include "wmtomo/gates.hpp"

namespace wmtomo::weakmeas {

namespace {

using linalg::ComplexMatrix;
using qcore::GateSequence;
using qcore::PauliString;
using qcore::QState;
using qcore::SpinSystem;

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// One local-rotation token of a compiled row: quarter-turn about an axis,
// sign -1 for the barred symbols.
struct Token {
  char axis;   // 'X', 'Y', 'Z', or 'J' for the fixed ZZ quarter-cycle
  int sign;    // +1 plain, -1 barred
  int qubit;   // 1-based system qubit ('J' acts on the pair 1,2)
};

struct CompiledRow {
  const char* word;
  std::vector<Token> tokens;  // printed operator order: first entry acts last
  int coupled_qubit;          // system qubit the meter couples to
};

// The 15 nontrivial words. Token lists transcribe the rotation products that
// turn sigma_z on the coupled qubit into the target word.
const std::vector<CompiledRow>& compiled_rows() {
  static const std::vector<CompiledRow> rows = {
      {"IX", {{'Y', 1, 2}}, 2},
      {"IY", {{'X', -1, 2}}, 2},
      {"IZ", {}, 2},
      {"XI", {{'Y', 1, 1}}, 1},
      {"XX", {{'Z', -1, 1}, {'Y', 1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"XY", {{'Z', -1, 1}, {'X', -1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"XZ", {{'Z', -1, 1}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"YI", {{'X', -1, 1}}, 1},
      {"YX", {{'Y', 1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"YY", {{'X', -1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"YZ", {{'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"ZI", {}, 1},
      {"ZX", {{'X', 1, 1}, {'Y', 1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"ZY", {{'X', 1, 1}, {'X', -1, 2}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
      {"ZZ", {{'X', 1, 1}, {'J', 1, 1}, {'Y', 1, 1}}, 1},
  };
  return rows;
}

const CompiledRow& row_for(const PauliString& p) {
  for (const auto& row : compiled_rows()) {
    if (p.word() == row.word) return row;
  }
  throw UnsupportedPauli("no compiled sequence for word '" + p.word() + "'");
}

std::string rotation_label(char axis, double angle, int qubit, int n_qubits) {
  std::ostringstream out;
  out << 'R' << static_cast<char>(axis - 'A' + 'a') << '('
      << (angle > 0 ? "+" : "-") << "pi/2) ";
  if (qubit == n_qubits) {
    out << "meter";
  } else {
    out << 'q' << qubit;
  }
  return out.str();
}

void append_rotation(GateSequence& seq, char axis, double angle, int qubit) {
  const std::string name = {'R', static_cast<char>(axis - 'A' + 'a')};
  const ComplexMatrix u = qcore::standard_gate(name, angle);
  seq.append(rotation_label(axis, angle, qubit, seq.n_qubits()),
             qcore::embed(u, {qubit}, seq.n_qubits()));
}

// ZZ evolution between qubits i and j for signed time t. Negative t is
// realized with nonnegative duration by flipping qubit i's frame:
// X_i U_ij(|t|) X_i = U_ij(-|t|).
void append_zz_step(GateSequence& seq, const SpinSystem& spin, int i, int j,
                    double t) {
  const int n = seq.n_qubits();
  const bool flip = t < 0.0;
  const double duration = std::abs(t);
  std::ostringstream label;
  label << "UJ(" << i << "," << j << ") t=" << duration;
  const ComplexMatrix x = qcore::standard_gate("X");
  if (flip) seq.append("X q" + std::to_string(i), qcore::embed(x, {i}, n));
  seq.append(label.str(), qcore::j_evolution(spin, i, j, duration));
  if (flip) seq.append("X q" + std::to_string(i), qcore::embed(x, {i}, n));
}

// Emits one printed token (or its adjoint). The fixed ZZ step 'J' runs the
// 1,2 coupling for 1/(2 J_12): a quarter cycle exp(-i pi/4 sigma_z sigma_z).
void emit_token(GateSequence& seq, const SpinSystem& spin, const Token& tok,
                bool dagger) {
  if (tok.axis == 'J') {
    double t = 1.0 / (2.0 * spin.coupling(1, 2));
    if (dagger) t = -t;
    append_zz_step(seq, spin, 1, 2, t);
    return;
  }
  double angle = tok.sign * kHalfPi;
  if (dagger) angle = -angle;
  append_rotation(seq, tok.axis, angle, tok.qubit);
}

// Joint state rho_system (x) |0><0| on system plus meter.
ComplexMatrix joint_input(const QState& system) {
  ComplexMatrix meter(2);
  meter(0, 0) = 1.0;
  return linalg::kron(system.rho(), meter);
}

// Unnormalized joint density matrix after the interaction. FirstOrder keeps
// the truncation's trace excess; expectations taken here make the element
// estimator exact at any g.
ComplexMatrix raw_joint_after(const QState& system, const PauliString& p,
                              WeakCoupling g, EvolutionMode mode,
                              const SpinSystem* spin) {
  const ComplexMatrix u = weak_unitary(p, g, mode, spin);
  const ComplexMatrix rho = joint_input(system);
  return u * rho * u.adjoint();
}

std::pair<double, double> readout_pair(const ComplexMatrix& joint,
                                       std::size_t basis) {
  // tr(rho (|phi><phi| (x) sigma_x)) reduces to the single coherence between
  // |phi,0> and |phi,1>; likewise sigma_y with the imaginary part.
  const std::complex<double> z = joint(2 * basis, 2 * basis + 1);
  return {2.0 * z.real(), -2.0 * z.imag()};
}

}  // namespace

WeakCoupling::WeakCoupling(double g) : g_(g) {
  if (!std::isfinite(g) || g == 0.0 || std::abs(g) > 0.5) {
    throw ConfigError("g", "coupling strength must satisfy 0 < |g| <= 0.5");
  }
}

std::string to_string(EvolutionMode mode) {
  switch (mode) {
    case EvolutionMode::FirstOrder:
      return "FirstOrder";
    case EvolutionMode::ExactCoupling:
      return "ExactCoupling";
    case EvolutionMode::CompiledCircuit:
      return "CompiledCircuit";
  }
  throw Error("invalid evolution mode value");
}

EvolutionMode mode_from_string(const std::string& name) {
  if (name == "FirstOrder") return EvolutionMode::FirstOrder;
  if (name == "ExactCoupling") return EvolutionMode::ExactCoupling;
  if (name == "CompiledCircuit") return EvolutionMode::CompiledCircuit;
  throw ConfigError("mode", "unknown evolution mode '" + name +
                                "' (expected FirstOrder, ExactCoupling, or "
                                "CompiledCircuit)");
}

linalg::ComplexMatrix weak_unitary(const qcore::PauliString& p, WeakCoupling g,
                                   EvolutionMode mode,
                                   const qcore::SpinSystem* spin) {
  if (p.is_identity()) {
    throw UnsupportedPauli("the all-identity word has no weak interaction");
  }
  if (mode == EvolutionMode::CompiledCircuit) {
    if (p.n_qubits() != 2) {
      throw UnsupportedPauli(
          "compiled sequences support two-qubit words only, got '" + p.word() +
          "'");
    }
    if (spin == nullptr) {
      throw MissingCoupling(
          "compiled mode needs a spin system with couplings");
    }
    return compile_table1(p, *spin, g.value()).total_unitary();
  }
  ComplexMatrix sx(2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const ComplexMatrix generator = linalg::kron(qcore::pauli_matrix(p), sx);
  if (mode == EvolutionMode::FirstOrder) {
    ComplexMatrix u = ComplexMatrix::identity(generator.dim());
    u += std::complex<double>(0.0, -g.value()) * generator;
    return u;
  }
  // (P (x) sigma_x)^2 = I, so this is cos g I - i sin g (P (x) sigma_x).
  return linalg::exp_generator(generator, g.value());
}

qcore::GateSequence compile_table1(const qcore::PauliString& p,
                                   const qcore::SpinSystem& spin, double g) {
  if (p.is_identity()) {
    throw UnsupportedPauli("the all-identity word has no weak interaction");
  }
  if (p.n_qubits() != 2) {
    throw UnsupportedPauli(
        "compiled sequences support two-qubit words only, got '" + p.word() +
        "'");
  }
  if (spin.n_qubits() != 3) {
    throw DimensionMismatch(
        "compiled sequences need a three-qubit spin system (two system "
        "qubits plus meter)");
  }
  const CompiledRow& row = row_for(p);
  const int meter = 3;
  GateSequence seq(3);

  // The sequence realizes U_rot * U_zz * U_rot' with U_rot the printed token
  // product times Ry(pi/2) on the meter. Conjugating the ZZ step maps
  // sigma_z on the coupled qubit to the target word and sigma_z on the meter
  // to sigma_x, so the total equals exp(-i g P (x) sigma_x) exactly.
  append_rotation(seq, 'Y', -kHalfPi, meter);
  for (const Token& tok : row.tokens) emit_token(seq, spin, tok, true);

  const double j_hz = spin.coupling(row.coupled_qubit, meter);
  append_zz_step(seq, spin, row.coupled_qubit, meter, 2.0 * g / (kPi * j_hz));

  for (auto it = row.tokens.rbegin(); it != row.tokens.rend(); ++it) {
    emit_token(seq, spin, *it, false);
  }
  append_rotation(seq, 'Y', kHalfPi, meter);
  return seq;
}

linalg::ComplexMatrix table1_rotation(const qcore::PauliString& p,
                                      const qcore::SpinSystem& spin) {
  if (p.is_identity()) {
    throw UnsupportedPauli("the all-identity word has no weak interaction");
  }
  if (p.n_qubits() != 2) {
    throw UnsupportedPauli(
        "compiled sequences support two-qubit words only, got '" + p.word() +
        "'");
  }
  if (spin.n_qubits() != 3) {
    throw DimensionMismatch(
        "compiled sequences need a three-qubit spin system (two system "
        "qubits plus meter)");
  }
  const CompiledRow& row = row_for(p);
  GateSequence seq(3);
  for (auto it = row.tokens.rbegin(); it != row.tokens.rend(); ++it) {
    emit_token(seq, spin, *it, false);
  }
  append_rotation(seq, 'Y', kHalfPi, 3);
  return seq.total_unitary();
}

int table1_coupled_qubit(const qcore::PauliString& p) {
  if (p.is_identity() || p.n_qubits() != 2) {
    throw UnsupportedPauli("coupled qubit is defined for the 15 two-qubit "
                           "words only");
  }
  return row_for(p).coupled_qubit;
}

qcore::QState evolve_joint(const qcore::QState& system,
                           const qcore::PauliString& p, WeakCoupling g,
                           EvolutionMode mode, const qcore::SpinSystem* spin) {
  ComplexMatrix rho = raw_joint_after(system, p, g, mode, spin);
  if (mode == EvolutionMode::FirstOrder) {
    const double trace = rho.trace().real();
    rho *= std::complex<double>(1.0 / trace, 0.0);
  }
  return QState::from_density(system.n_qubits() + 1, std::move(rho));
}

std::map<std::string, std::pair<double, double>> meter_expectations(
    const qcore::QState& joint, const std::vector<std::string>& phis) {
  const int n_system = joint.n_qubits() - 1;
  if (n_system < 1) {
    throw DimensionMismatch("joint state must include a system and the meter");
  }
  std::map<std::string, std::pair<double, double>> readouts;
  for (const std::string& phi : phis) {
    const std::size_t basis = qcore::basis_index(phi, n_system);
    readouts[phi] = readout_pair(joint.rho(), basis);
  }
  return readouts;
}

MeasurementRecord measure_record(const qcore::QState& system,
                                 const qcore::PauliString& p, WeakCoupling g,
                                 EvolutionMode mode,
                                 const qcore::SpinSystem* spin) {
  const ComplexMatrix joint = raw_joint_after(system, p, g, mode, spin);
  MeasurementRecord record;
  record.pauli = p.word();
  record.g = g.value();
  const std::size_t count = std::size_t{1} << system.n_qubits();
  for (std::size_t b = 0; b < count; ++b) {
    record.readouts[qcore::basis_label(b, system.n_qubits())] =
        readout_pair(joint, b);
  }
  return record;
}

std::complex<double> estimate_element(double ox, double oy, WeakCoupling g) {
  return std::complex<double>(oy, -ox) / (-2.0 * g.value());
}

}  // namespace wmtomo::weakmeas
