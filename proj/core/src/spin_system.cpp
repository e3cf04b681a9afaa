#include "wmtomo/spin_system.hpp"

#include <cmath>
#include <string>

namespace wmtomo::qcore {

using linalg::ComplexMatrix;

namespace {

std::pair<int, int> ordered_pair(int i, int j) {
  return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

}  // namespace

SpinSystem::SpinSystem(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 2) throw Error("SpinSystem: need at least two qubits");
}

SpinSystem& SpinSystem::set_coupling(int i, int j, double j_hz) {
  if (i == j || i < 1 || j < 1 || i > n_qubits_ || j > n_qubits_)
    throw Error("SpinSystem: invalid qubit pair");
  if (j_hz == 0.0) throw Error("SpinSystem: coupling must be nonzero");
  couplings_[ordered_pair(i, j)] = j_hz;
  return *this;
}

bool SpinSystem::has_coupling(int i, int j) const {
  return couplings_.count(ordered_pair(i, j)) > 0;
}

double SpinSystem::coupling(int i, int j) const {
  const auto it = couplings_.find(ordered_pair(i, j));
  if (it == couplings_.end())
    throw MissingCoupling("SpinSystem: no coupling between qubits " +
                          std::to_string(i) + " and " + std::to_string(j));
  return it->second;
}

SpinSystem SpinSystem::three_qubit_default() {
  SpinSystem s(3);
  s.set_coupling(1, 2, 69.65);
  s.set_coupling(1, 3, -128.32);
  s.set_coupling(2, 3, 47.67);
  return s;
}

ComplexMatrix j_evolution(const SpinSystem& s, int i, int j, double t) {
  const double j_hz = s.coupling(i, j);
  const int n = s.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const double half_angle = M_PI * j_hz * t / 2.0;

  ComplexMatrix out(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const int zi = ((b >> (n - i)) & 1) ? -1 : 1;
    const int zj = ((b >> (n - j)) & 1) ? -1 : 1;
    out(b, b) = std::exp(std::complex<double>(0.0, -half_angle * zi * zj));
  }
  return out;
}

}  // namespace wmtomo::qcore
