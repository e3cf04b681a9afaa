#include "wmtomo/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wmtomo/errors.hpp"

namespace wmtomo::noise {

namespace {

using linalg::ComplexMatrix;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// One standard normal draw from the substream's first two outputs.
// u1 lies in (0, 1] so the logarithm is always finite.
double normal_draw(std::uint64_t stream_seed) {
  std::uint64_t state = stream_seed;
  const std::uint64_t a = splitmix64_next(state);
  const std::uint64_t b = splitmix64_next(state);
  const double u1 =
      (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

void validate(const NoiseModel& model) {
  if (!(model.sigma >= 0.0) || !std::isfinite(model.sigma)) {
    throw ConfigError("sigma", "noise level must be finite and >= 0");
  }
  if (model.trials < 1) {
    throw ConfigError("trials", "trial count must be >= 1");
  }
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string rng_name() { return "splitmix64-boxmuller"; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed + (index + 1) * kGolden;
  return splitmix64_next(state);
}

weakmeas::MeasurementRecord perturb(const weakmeas::MeasurementRecord& record,
                                    const NoiseModel& model,
                                    std::size_t record_index) {
  validate(model);
  if (model.sigma == 0.0) return record;
  weakmeas::MeasurementRecord out = record;
  const std::uint64_t record_seed = derive_seed(model.seed, record_index);
  std::size_t position = 0;
  for (auto& [label, readout] : out.readouts) {
    const std::uint64_t label_seed = derive_seed(record_seed, position);
    const double dx = normal_draw(derive_seed(label_seed, 0));
    const double dy = normal_draw(derive_seed(label_seed, 1));
    readout.first =
        std::clamp(readout.first + model.sigma * dx, -1.0, 1.0);
    readout.second =
        std::clamp(readout.second + model.sigma * dy, -1.0, 1.0);
    ++position;
  }
  return out;
}

MonteCarloStats monte_carlo(
    const std::function<tomography::TomographyResult(const NoiseModel&)>& run,
    const NoiseModel& model) {
  validate(model);
  std::vector<ComplexMatrix> raws;
  std::vector<double> f_raw;
  std::vector<double> f_proj;
  for (int t = 0; t < model.trials; ++t) {
    NoiseModel trial = model;
    trial.seed = derive_seed(model.seed, static_cast<std::uint64_t>(t));
    tomography::TomographyResult result = run(trial);
    raws.push_back(std::move(result.raw));
    f_raw.push_back(result.fidelity_raw);
    f_proj.push_back(result.fidelity_projected);
  }

  const std::size_t dim = raws.front().dim();
  ComplexMatrix mean(dim);
  for (const ComplexMatrix& raw : raws) {
    if (raw.dim() != dim) {
      throw DimensionMismatch("trial outputs differ in dimension");
    }
    mean += raw;
  }
  mean *= std::complex<double>(1.0 / static_cast<double>(raws.size()), 0.0);

  ComplexMatrix spread(dim);
  double std_total = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<double> res;
      std::vector<double> ims;
      for (const ComplexMatrix& raw : raws) {
        res.push_back(raw(r, c).real());
        ims.push_back(raw(r, c).imag());
      }
      const double sr = sample_std(res, mean(r, c).real());
      const double si = sample_std(ims, mean(r, c).imag());
      spread(r, c) = {sr, si};
      std_total += sr + si;
    }
  }

  double fr_mean = 0.0;
  double fp_mean = 0.0;
  for (double f : f_raw) fr_mean += f;
  for (double f : f_proj) fp_mean += f;
  fr_mean /= static_cast<double>(f_raw.size());
  fp_mean /= static_cast<double>(f_proj.size());

  return {std::move(mean),
          std::move(spread),
          std_total / static_cast<double>(2 * dim * dim),
          fr_mean,
          sample_std(f_raw, fr_mean),
          fp_mean,
          sample_std(f_proj, fp_mean),
          model.trials};
}

}  // namespace wmtomo::noise
