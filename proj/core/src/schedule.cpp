#include "wmtomo/schedule.hpp"

#include <string>

#include "wmtomo/errors.hpp"
#include "wmtomo/state.hpp"

namespace wmtomo::tomography {

namespace {

// 'X' on every qubit whose bit is set in mask, identity elsewhere. Qubit 1
// owns the most significant bit.
std::string x_word(std::size_t mask, int n_qubits) {
  std::string word(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 1; q <= n_qubits; ++q) {
    if ((mask >> (n_qubits - q)) & 1u) word[q - 1] = 'X';
  }
  return word;
}

}  // namespace

TomographySchedule build_schedule(int n_qubits) {
  if (n_qubits < 1) {
    throw Error("schedule needs at least one qubit");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::string z_word(static_cast<std::size_t>(n_qubits), 'I');
  z_word[0] = 'Z';

  TomographySchedule schedule;
  schedule.n_qubits = n_qubits;
  schedule.pauli_set.emplace_back(z_word);
  for (std::size_t mask = 1; mask < dim; ++mask) {
    schedule.pauli_set.emplace_back(x_word(mask, n_qubits));
  }

  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t c = m; c < dim; ++c) {
      const std::string phi = qcore::basis_label(c, n_qubits);
      if (c == m) {
        // sigma_1z |m> = +-|m>; the sign restores the diagonal value.
        const int sign = ((m >> (n_qubits - 1)) & 1u) ? -1 : 1;
        schedule.entries.push_back(
            {m, c, phi, qcore::PauliString(z_word), sign});
      } else {
        schedule.entries.push_back(
            {m, c, phi, qcore::PauliString(x_word(m ^ c, n_qubits)), 1});
      }
    }
  }
  return schedule;
}

}  // namespace wmtomo::tomography
