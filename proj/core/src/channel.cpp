#include "wmtomo/channel.hpp"

#include <cmath>

#include "wmtomo/gates.hpp"

namespace wmtomo::qcore {

using linalg::ComplexMatrix;

namespace {

int qubit_count_for_dim(std::size_t dim) {
  int n = 0;
  std::size_t d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw DimensionMismatch("ChannelSpec: dimension is not 2^n");
    d /= 2;
    ++n;
  }
  if (n == 0) throw DimensionMismatch("ChannelSpec: dimension must be at least 2");
  return n;
}

}  // namespace

ChannelSpec ChannelSpec::unitary(ComplexMatrix u) {
  const int n = qubit_count_for_dim(u.dim());
  if (!u.is_unitary(1e-8)) throw NotTracePreserving("ChannelSpec: matrix is not unitary");
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::move(u));
  return ChannelSpec(Kind::Unitary, n, std::move(ops));
}

ChannelSpec ChannelSpec::kraus(std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw Error("ChannelSpec: need at least one Kraus operator");
  const std::size_t dim = ops.front().dim();
  const int n = qubit_count_for_dim(dim);
  ComplexMatrix sum(dim);
  for (const auto& k : ops) {
    if (k.dim() != dim)
      throw DimensionMismatch("ChannelSpec: Kraus operators differ in dimension");
    sum += k.adjoint() * k;
  }
  if (linalg::frobenius_distance(sum, ComplexMatrix::identity(dim)) > 1e-8)
    throw NotTracePreserving("ChannelSpec: Kraus operators do not sum to identity");
  return ChannelSpec(Kind::Kraus, n, std::move(ops));
}

QState apply_channel(const ChannelSpec& c, const QState& state,
                     const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != c.n_qubits())
    throw DimensionMismatch("apply_channel: channel dimension does not match targets");
  const std::size_t dim = state.rho().dim();
  ComplexMatrix out(dim);
  for (const auto& k : c.operators()) {
    const ComplexMatrix full = embed(k, targets, state.n_qubits());
    out += full * state.rho() * full.adjoint();
  }
  return QState::from_density(state.n_qubits(), std::move(out));
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  std::complex<double> overlap(0.0, 0.0);
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) {
      overlap += std::conj(a(r, c)) * b(r, c);
      na += std::norm(a(r, c));
      nb += std::norm(b(r, c));
    }
  if (na == 0.0 || nb == 0.0) throw ZeroMatrix("fidelity: zero matrix");
  return overlap.real() / std::sqrt(na * nb);
}

}  // namespace wmtomo::qcore
