// Microbenchmarks for the hot paths: dense linear algebra, sequence
// compilation, the two projections, and full single-shot reconstructions.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "wmtomo/channel.hpp"
#include "wmtomo/complex_matrix.hpp"
#include "wmtomo/eig.hpp"
#include "wmtomo/gates.hpp"
#include "wmtomo/pauli.hpp"
#include "wmtomo/projection.hpp"
#include "wmtomo/spin_system.hpp"
#include "wmtomo/state.hpp"
#include "wmtomo/tomography.hpp"
#include "wmtomo/weak.hpp"

namespace {

using wmtomo::linalg::ComplexMatrix;

// Small deterministic generator so benchmark inputs are stable across runs.
class BenchRng {
 public:
  explicit BenchRng(std::uint64_t seed) : state_(seed ? seed : 1u) {}

  double uniform() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return static_cast<double>((state_ * 0x2545F4914F6CDD1Dull) >> 11) *
           0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  BenchRng rng(seed);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      m(r, c) = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
  return wmtomo::linalg::hermitize(m);
}

wmtomo::qcore::QState bell_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return wmtomo::qcore::QState::pure(2, {r, 0.0, 0.0, r});
}

void BM_eigh(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix m = random_hermitian(dim, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::linalg::eigh(m));
  }
}
BENCHMARK(BM_eigh)->Arg(4)->Arg(8)->Arg(16);

void BM_kron(benchmark::State& state) {
  const ComplexMatrix a = random_hermitian(4, 1);
  const ComplexMatrix b = random_hermitian(4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::linalg::kron(a, b));
  }
}
BENCHMARK(BM_kron);

void BM_exp_generator(benchmark::State& state) {
  const ComplexMatrix gen = wmtomo::linalg::kron(
      wmtomo::qcore::pauli_matrix(wmtomo::qcore::PauliString("XY")),
      wmtomo::qcore::pauli_x());
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::linalg::exp_generator(gen, 0.2));
  }
}
BENCHMARK(BM_exp_generator);

void BM_project_state(benchmark::State& state) {
  // Indefinite Hermitian input, the shape the projection exists for.
  const ComplexMatrix raw = random_hermitian(4, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::projection::project_state(raw));
  }
}
BENCHMARK(BM_project_state);

void BM_project_process(benchmark::State& state) {
  const auto basis = wmtomo::tomography::pauli_basis(1);
  ComplexMatrix chi = wmtomo::tomography::chi_theory(
      wmtomo::qcore::ChannelSpec::unitary(wmtomo::qcore::standard_gate("H")),
      basis);
  // Deterministic off-feasible perturbation so Dykstra has work to do.
  const ComplexMatrix bump = random_hermitian(4, 11);
  chi += std::complex<double>(0.02, 0.0) * bump;
  chi = wmtomo::linalg::hermitize(chi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::projection::project_process(chi, basis));
  }
}
BENCHMARK(BM_project_process);

void BM_compile_table1(benchmark::State& state) {
  const wmtomo::qcore::SpinSystem spin =
      wmtomo::qcore::SpinSystem::three_qubit_default();
  const wmtomo::qcore::PauliString word("YZ");
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::weakmeas::compile_table1(word, spin, 0.2));
  }
}
BENCHMARK(BM_compile_table1);

void BM_run_dqst(benchmark::State& state) {
  const auto mode = state.range(0) == 0
                        ? wmtomo::weakmeas::EvolutionMode::FirstOrder
                        : wmtomo::weakmeas::EvolutionMode::ExactCoupling;
  const wmtomo::qcore::QState bell = bell_state();
  const wmtomo::weakmeas::WeakCoupling g(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wmtomo::tomography::run_dqst(bell, g, mode));
  }
}
BENCHMARK(BM_run_dqst)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
