#include "wmtomo/tomography.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "wmtomo/errors.hpp"
#include "wmtomo/gates.hpp"
#include "wmtomo/noise.hpp"
#include "wmtomo/pauli.hpp"
#include "wmtomo/projection.hpp"
#include "wmtomo/sequence.hpp"

namespace wmtomo::tomography {

namespace {

using linalg::ComplexMatrix;
using qcore::QState;
using weakmeas::MeasurementRecord;

struct RawAssembly {
  ComplexMatrix raw;
  std::vector<MeasurementRecord> records;
};

// One record per schedule observable, optionally perturbed, then the element
// estimates placed per the schedule. Hermitian by construction.
RawAssembly measure_and_assemble(const QState& state, weakmeas::WeakCoupling g,
                                 weakmeas::EvolutionMode mode,
                                 const noise::NoiseModel* noise_model,
                                 const qcore::SpinSystem* spin) {
  const TomographySchedule schedule = build_schedule(state.n_qubits());

  qcore::SpinSystem fallback = qcore::SpinSystem::three_qubit_default();
  if (mode == weakmeas::EvolutionMode::CompiledCircuit && spin == nullptr) {
    spin = &fallback;
  }

  RawAssembly out{ComplexMatrix(std::size_t{1} << state.n_qubits()), {}};
  std::map<std::string, std::size_t> record_index;
  for (std::size_t i = 0; i < schedule.pauli_set.size(); ++i) {
    MeasurementRecord record =
        weakmeas::measure_record(state, schedule.pauli_set[i], g, mode, spin);
    if (noise_model != nullptr) {
      record = noise::perturb(record, *noise_model, i);
    }
    record_index[record.pauli] = i;
    out.records.push_back(std::move(record));
  }

  for (const ScheduleEntry& entry : schedule.entries) {
    const MeasurementRecord& record =
        out.records[record_index.at(entry.pauli.word())];
    const auto [ox, oy] = record.readouts.at(entry.phi);
    const std::complex<double> est =
        static_cast<double>(entry.sign) * weakmeas::estimate_element(ox, oy, g);
    if (entry.row == entry.col) {
      // Diagonal entries are real; the estimate's imaginary part is noise.
      out.raw(entry.row, entry.row) = est.real();
    } else {
      out.raw(entry.row, entry.col) = est;
      out.raw(entry.col, entry.row) = std::conj(est);
    }
  }
  return out;
}

}  // namespace

TomographyResult run_dqst(const qcore::QState& state, weakmeas::WeakCoupling g,
                          weakmeas::EvolutionMode mode,
                          const noise::NoiseModel* noise_model,
                          const qcore::SpinSystem* spin) {
  RawAssembly assembly = measure_and_assemble(state, g, mode, noise_model, spin);
  ComplexMatrix projected = projection::project_state(assembly.raw);
  const double f_raw = qcore::fidelity(assembly.raw, state.rho());
  const double f_proj = qcore::fidelity(projected, state.rho());
  return {TargetKind::State,
          std::move(assembly.raw),
          std::move(projected),
          std::move(assembly.records),
          f_raw,
          f_proj,
          true,
          0};
}

qcore::QState prepare_choi(const qcore::ChannelSpec& channel) {
  const int n = channel.n_qubits();
  const int total = 2 * n;
  qcore::GateSequence ladder(total);
  const ComplexMatrix h = qcore::standard_gate("H");
  const ComplexMatrix cnot = qcore::standard_gate("CNOT");
  for (int i = 1; i <= n; ++i) {
    ladder.append("H q" + std::to_string(i), qcore::embed(h, {i}, total));
  }
  for (int i = 1; i <= n; ++i) {
    ladder.append("CNOT q" + std::to_string(i) + "->q" + std::to_string(n + i),
                  qcore::embed(cnot, {i, n + i}, total));
  }
  const QState pairs = qcore::apply_sequence(
      ladder, QState::basis_state(total, std::string(total, '0')));
  std::vector<int> second_half;
  for (int i = n + 1; i <= total; ++i) second_half.push_back(i);
  return qcore::apply_channel(channel, pairs, second_half);
}

linalg::ComplexMatrix build_uchi(
    const std::vector<linalg::ComplexMatrix>& basis, int n_qubits) {
  projection::check_operator_basis(basis);
  const std::size_t d = std::size_t{1} << n_qubits;
  if (basis.front().dim() != d) {
    throw DimensionMismatch("basis dimension does not match the qubit count");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix u(d * d);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        u(m, j * d + k) = scale * std::conj(basis[m](k, j));
      }
    }
  }
  return u;
}

std::vector<linalg::ComplexMatrix> pauli_basis(int n_qubits) {
  if (n_qubits < 1) {
    throw Error("pauli basis needs at least one qubit");
  }
  const std::size_t count = std::size_t{1} << (2 * n_qubits);
  std::vector<ComplexMatrix> basis;
  basis.reserve(count);
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::string word(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
      const std::size_t digit = (idx >> (2 * (n_qubits - 1 - q))) & 3u;
      word[q] = letters[digit];
    }
    basis.push_back(qcore::pauli_matrix(qcore::PauliString(word)));
  }
  return basis;
}

linalg::ComplexMatrix chi_theory(
    const qcore::ChannelSpec& channel,
    const std::vector<linalg::ComplexMatrix>& basis) {
  projection::check_operator_basis(basis);
  const std::size_t d = basis.front().dim();
  if (channel.operators().front().dim() != d) {
    throw DimensionMismatch("channel dimension does not match the basis");
  }
  const std::size_t chi_dim = basis.size();
  ComplexMatrix chi(chi_dim);
  for (const ComplexMatrix& kraus : channel.operators()) {
    std::vector<std::complex<double>> c(chi_dim);
    for (std::size_t m = 0; m < chi_dim; ++m) {
      c[m] = (basis[m].adjoint() * kraus).trace() / static_cast<double>(d);
    }
    for (std::size_t m = 0; m < chi_dim; ++m) {
      for (std::size_t n = 0; n < chi_dim; ++n) {
        chi(m, n) += c[m] * std::conj(c[n]);
      }
    }
  }
  return chi;
}

TomographyResult run_dqpt(const qcore::ChannelSpec& channel,
                          weakmeas::WeakCoupling g, weakmeas::EvolutionMode mode,
                          const noise::NoiseModel* noise_model,
                          const qcore::SpinSystem* spin) {
  const int n = channel.n_qubits();
  const std::vector<ComplexMatrix> basis = pauli_basis(n);
  const ComplexMatrix uchi = build_uchi(basis, n);
  const QState choi = prepare_choi(channel);
  const QState chi_state = QState::from_density(
      2 * n, uchi * choi.rho() * uchi.adjoint());

  RawAssembly assembly =
      measure_and_assemble(chi_state, g, mode, noise_model, spin);
  projection::ProcessProjection proj =
      projection::project_process(assembly.raw, basis);
  const ComplexMatrix reference = chi_theory(channel, basis);
  const double f_raw = qcore::fidelity(assembly.raw, reference);
  const double f_proj = qcore::fidelity(proj.chi, reference);
  return {TargetKind::Process,
          std::move(assembly.raw),
          std::move(proj.chi),
          std::move(assembly.records),
          f_raw,
          f_proj,
          proj.converged,
          proj.iterations};
}

}  // namespace wmtomo::tomography
