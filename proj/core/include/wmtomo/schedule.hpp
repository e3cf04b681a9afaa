#pragma once

#include <cstddef>
#include <vector>

#include "wmtomo/pauli.hpp"

namespace wmtomo::tomography {

// One matrix element assignment: measuring pauli with post-selection phi
// yields sign * <phi| pauli rho |phi> = rho(row, col). Indices are 0-based
// with row <= col; the lower triangle follows by conjugation.
struct ScheduleEntry {
  std::size_t row;
  std::size_t col;
  std::string phi;
  qcore::PauliString pauli;
  int sign;
};

// Complete upper-triangle coverage for an n-qubit register. pauli_set holds
// the deduplicated observables: sigma_z on qubit 1 for the diagonal plus the
// 2^n - 1 nontrivial {I, X} words for the off-diagonals.
struct TomographySchedule {
  int n_qubits = 0;
  std::vector<ScheduleEntry> entries;
  std::vector<qcore::PauliString> pauli_set;
};

// Diagonal (m, m): phi = bits of m, sigma_1z, sign = its eigenvalue on |m>.
// Off-diagonal (m, n), m < n: phi = bits of n, X string on the bits where m
// and n differ, sign +1. Each X string serves 2^(n-1) elements.
TomographySchedule build_schedule(int n_qubits);

}  // namespace wmtomo::tomography
