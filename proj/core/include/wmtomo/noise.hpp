#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "wmtomo/complex_matrix.hpp"
#include "wmtomo/tomography.hpp"
#include "wmtomo/weak.hpp"

namespace wmtomo::noise {

// Gaussian error on every meter expectation value, seeded for bit-exact
// reproducibility. sigma is the standard deviation per readout component.
struct NoiseModel {
  double sigma = 0.004;
  std::uint64_t seed = 0;
  int trials = 1;
};

// Generator identifier echoed into result files so seeded runs can be
// reproduced by other implementations of the same algorithm.
std::string rng_name();

// Stable child seed for an indexed substream (records, labels, components,
// trials all branch through this).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Adds N(0, sigma^2) independently to each ox/oy, clamped to [-1, 1]. The
// draw for a given (seed, record_index, label position, component) never
// depends on evaluation order. sigma = 0 returns the record unchanged.
weakmeas::MeasurementRecord perturb(const weakmeas::MeasurementRecord& record,
                                    const NoiseModel& model,
                                    std::size_t record_index);

// Sample statistics over noisy repetitions. element_std stores the sample
// std of the real parts in re and of the imaginary parts in im, per element;
// mean_element_std averages both components over all elements. Single-trial
// runs report zero spread by convention.
struct MonteCarloStats {
  linalg::ComplexMatrix element_mean;
  linalg::ComplexMatrix element_std;
  double mean_element_std;
  double fidelity_raw_mean;
  double fidelity_raw_std;
  double fidelity_projected_mean;
  double fidelity_projected_std;
  int trials;
};

// Runs the experiment once per trial with a per-trial derived seed and
// aggregates the raw-matrix elements and both fidelities.
MonteCarloStats monte_carlo(
    const std::function<tomography::TomographyResult(const NoiseModel&)>& run,
    const NoiseModel& model);

}  // namespace wmtomo::noise
