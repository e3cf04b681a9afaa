#include "wmtomo/experiment.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "wmtomo/channel.hpp"
#include "wmtomo/errors.hpp"
#include "wmtomo/gates.hpp"
#include "wmtomo/matrix_io.hpp"
#include "wmtomo/pauli.hpp"
#include "wmtomo/schedule.hpp"
#include "wmtomo/tomography.hpp"
#include "wmtomo/version.hpp"

namespace wmtomo::cli {

namespace {

using linalg::ComplexMatrix;
using nlohmann::json;
using qcore::ChannelSpec;
using qcore::QState;
using weakmeas::EvolutionMode;
using weakmeas::WeakCoupling;

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

bool is_bit_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return true;
}

int qubits_from_dim(std::size_t dim) {
  int n = 0;
  std::size_t d = dim;
  while (d > 1 && (d & 1u) == 0) {
    d >>= 1;
    ++n;
  }
  if (d != 1 || n == 0) {
    throw Error("matrix dimension must be a power of two, got " +
                std::to_string(dim));
  }
  return n;
}

QState resolve_state(const std::string& target) {
  if (target.empty()) {
    throw ConfigError("target", "a target is required for this task");
  }
  const double r = 1.0 / std::numbers::sqrt2;
  try {
    if (target == "bell1") return QState::pure(2, {r, 0.0, 0.0, r});
    if (target == "bell2") return QState::pure(2, {0.0, r, r, 0.0});
    if (target == "hadamard" || target == "rx90") {
      throw Error("'" + target + "' names a channel, not a state");
    }
    if (is_bit_label(target)) {
      return QState::basis_state(static_cast<int>(target.size()), target);
    }
    const ComplexMatrix m = io::load_matrix(target);
    return QState::from_density(qubits_from_dim(m.dim()), m);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("target", e.what());
  }
}

ChannelSpec resolve_channel(const std::string& target) {
  if (target.empty()) {
    throw ConfigError("target", "a target is required for this task");
  }
  try {
    if (target == "hadamard") {
      return ChannelSpec::unitary(qcore::standard_gate("H"));
    }
    if (target == "rx90") {
      return ChannelSpec::unitary(
          qcore::standard_gate("Rx", std::numbers::pi / 2.0));
    }
    if (target == "bell1" || target == "bell2" || is_bit_label(target)) {
      throw Error("'" + target + "' names a state, not a channel");
    }
    return ChannelSpec::unitary(io::load_matrix(target));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("target", e.what());
  }
}

qcore::PauliString resolve_observable(const std::string& word) {
  try {
    return qcore::PauliString(word);
  } catch (const Error& e) {
    throw ConfigError("observable", e.what());
  }
}

double first_g(const ExperimentConfig& cfg) {
  if (cfg.g_values.empty()) {
    throw ConfigError("g", "at least one coupling value is required");
  }
  return cfg.g_values.front();
}

// Estimates carry the interaction's response factor: exact evolution scales
// every element by sin(2g)/(2g), the first-order engine by exactly 1.
double response_factor(EvolutionMode mode, double g) {
  if (mode == EvolutionMode::FirstOrder) return 1.0;
  return std::sin(2.0 * g) / (2.0 * g);
}

json matrix_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    entries.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

json records_json(const std::vector<weakmeas::MeasurementRecord>& records) {
  json out = json::array();
  for (const auto& record : records) {
    json readouts = json::object();
    for (const auto& [label, pair] : record.readouts) {
      readouts[label] = {pair.first, pair.second};
    }
    out.push_back({{"pauli", record.pauli},
                   {"g", record.g},
                   {"readouts", std::move(readouts)}});
  }
  return out;
}

json config_json(const ExperimentConfig& cfg) {
  json noise_block;
  if (cfg.noise.has_value()) {
    noise_block = {{"sigma", cfg.noise->sigma},
                   {"seed", cfg.noise->seed},
                   {"trials", cfg.noise->trials}};
  } else {
    noise_block = nullptr;
  }
  return {{"task", to_string(cfg.task)},
          {"target", cfg.target},
          {"g", cfg.g_values},
          {"mode", weakmeas::to_string(cfg.mode)},
          {"noise", std::move(noise_block)},
          {"out", cfg.out},
          {"observable", cfg.observable},
          {"thetas", cfg.thetas}};
}

json result_frame(const ExperimentConfig& cfg) {
  json doc = {{"tool", "wmtomo"},
              {"version", wmtomo::version},
              {"timestamp", timestamp_utc()},
              {"config", config_json(cfg)}};
  if (cfg.noise.has_value()) doc["rng"] = noise::rng_name();
  return doc;
}

void write_json(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write result file '" + path + "'");
  }
  out << doc.dump(2) << '\n';
}

json monte_carlo_json(const noise::MonteCarloStats& stats) {
  return {{"element_mean", matrix_json(stats.element_mean)},
          {"element_std", matrix_json(stats.element_std)},
          {"mean_element_std", stats.mean_element_std},
          {"fidelity_raw_mean", stats.fidelity_raw_mean},
          {"fidelity_raw_std", stats.fidelity_raw_std},
          {"fidelity_projected_mean", stats.fidelity_projected_mean},
          {"fidelity_projected_std", stats.fidelity_projected_std},
          {"trials", stats.trials}};
}

int run_reconstruction(const ExperimentConfig& cfg, std::ostream& log) {
  const WeakCoupling g(first_g(cfg));
  const noise::NoiseModel* noise_ptr =
      cfg.noise.has_value() ? &*cfg.noise : nullptr;

  tomography::TomographyResult result =
      cfg.task == Task::Dqst
          ? tomography::run_dqst(resolve_state(cfg.target), g, cfg.mode,
                                 noise_ptr)
          : tomography::run_dqpt(resolve_channel(cfg.target), g, cfg.mode,
                                 noise_ptr);

  json doc = result_frame(cfg);
  doc["result"] = {
      {"raw", matrix_json(result.raw)},
      {"projected", matrix_json(result.projected)},
      {"fidelity_raw", result.fidelity_raw},
      {"fidelity_projected", result.fidelity_projected},
      {"projection_converged", result.projection_converged},
      {"projection_iterations", result.projection_iterations},
      {"records", records_json(result.records)},
  };

  if (cfg.noise.has_value() && cfg.noise->trials >= 2) {
    const auto runner = [&](const noise::NoiseModel& trial) {
      return cfg.task == Task::Dqst
                 ? tomography::run_dqst(resolve_state(cfg.target), g, cfg.mode,
                                        &trial)
                 : tomography::run_dqpt(resolve_channel(cfg.target), g,
                                        cfg.mode, &trial);
    };
    doc["monte_carlo"] = monte_carlo_json(noise::monte_carlo(runner, *cfg.noise));
  }

  const std::string path = cfg.out + ".json";
  write_json(doc, path);
  log << to_string(cfg.task) << " " << cfg.target << " g=" << g.value()
      << " mode=" << weakmeas::to_string(cfg.mode) << "\n"
      << "fidelity_raw " << result.fidelity_raw << "\n"
      << "fidelity_projected " << result.fidelity_projected << "\n"
      << "wrote " << path << "\n";
  if (!result.projection_converged) {
    log << "projection did not converge within the iteration budget\n";
    return 3;
  }
  return 0;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  const qcore::PauliString observable = resolve_observable(cfg.observable);
  const qcore::SpinSystem default_spin = qcore::SpinSystem::three_qubit_default();
  const qcore::SpinSystem* spin =
      cfg.mode == EvolutionMode::CompiledCircuit ? &default_spin : nullptr;

  // One sweep point = one state and coupling; rows fan out over the
  // post-selection labels of that point's single record.
  struct Point {
    double var;
    QState state;
    double g;
  };
  std::vector<Point> points;
  if (cfg.task == Task::SweepG) {
    if (cfg.g_values.empty()) {
      throw ConfigError("g", "sweep-g needs a nonempty coupling list");
    }
    const QState state = resolve_state(cfg.target);
    for (double gi : cfg.g_values) points.push_back({gi, state, gi});
  } else {
    std::vector<double> thetas = cfg.thetas;
    if (thetas.empty()) {
      for (int n = 0; n <= 10; ++n) {
        thetas.push_back(static_cast<double>(n) * std::numbers::pi / 20.0);
      }
    }
    const double gi = first_g(cfg);
    for (double theta : thetas) {
      points.push_back(
          {theta,
           QState::pure(2, {std::cos(theta), 0.0, std::sin(theta), 0.0}), gi});
    }
  }

  const ComplexMatrix p_matrix = qcore::pauli_matrix(observable);
  const std::string csv_path = cfg.out + ".csv";
  std::ofstream csv(csv_path);
  if (!csv) {
    throw Error("cannot write sweep file '" + csv_path + "'");
  }
  csv << "sweep_var,phi,ox_raw,oy_raw,re_estimate,im_estimate,theory,"
         "abs_error\n";

  std::size_t rows = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& point = points[i];
    const WeakCoupling gi(point.g);
    weakmeas::MeasurementRecord record =
        weakmeas::measure_record(point.state, observable, gi, cfg.mode, spin);
    if (cfg.noise.has_value()) {
      record = noise::perturb(record, *cfg.noise, i);
    }
    const double factor = response_factor(cfg.mode, point.g);
    const ComplexMatrix p_rho = p_matrix * point.state.rho();
    for (const auto& [phi, readout] : record.readouts) {
      const std::complex<double> est =
          weakmeas::estimate_element(readout.first, readout.second, gi);
      const std::size_t b = qcore::basis_index(phi, point.state.n_qubits());
      const std::complex<double> theory = factor * p_rho(b, b);
      csv << fmt6(point.var) << ',' << phi << ',' << fmt6(readout.first) << ','
          << fmt6(readout.second) << ',' << fmt6(est.real()) << ','
          << fmt6(est.imag()) << ',' << fmt6(theory.real()) << ','
          << fmt6(std::abs(est - theory)) << '\n';
      ++rows;
    }
  }
  csv.close();

  json doc = result_frame(cfg);
  doc["sweep"] = {{"csv", csv_path},
                  {"points", points.size()},
                  {"rows", rows},
                  {"columns",
                   {"sweep_var", "phi", "ox_raw", "oy_raw", "re_estimate",
                    "im_estimate", "theory", "abs_error"}}};
  const std::string json_path = cfg.out + ".json";
  write_json(doc, json_path);
  log << to_string(cfg.task) << " " << points.size() << " points, " << rows
      << " rows\n"
      << "wrote " << csv_path << "\n"
      << "wrote " << json_path << "\n";
  return 0;
}

int run_validate(const ExperimentConfig&, std::ostream& log) {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok,
                         const std::string& detail = "") {
    log << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) log << " (" << detail << ")";
    log << "\n";
    if (!ok) ++failures;
  };

  const qcore::SpinSystem spin = qcore::SpinSystem::three_qubit_default();
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  ComplexMatrix sx(2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  for (char a : letters) {
    for (char b : letters) {
      if (a == 'I' && b == 'I') continue;
      const qcore::PauliString word(std::string{a, b});

      double worst = 0.0;
      for (double g : {0.01, 0.1, 0.3}) {
        const ComplexMatrix compiled =
            weakmeas::compile_table1(word, spin, g).total_unitary();
        const ComplexMatrix exact = weakmeas::weak_unitary(
            word, WeakCoupling(g), EvolutionMode::ExactCoupling);
        worst = std::max(worst,
                         linalg::phase_aligned_distance(compiled, exact));
      }
      check("compiled sequence matches exact coupling: " + word.word(),
            worst <= 1e-10, "distance " + fmt6(worst));

      const ComplexMatrix rot = weakmeas::table1_rotation(word, spin);
      const int cq = weakmeas::table1_coupled_qubit(word);
      const ComplexMatrix zz =
          qcore::embed(qcore::pauli_z(), {cq}, 3) *
          qcore::embed(qcore::pauli_z(), {3}, 3);
      const ComplexMatrix conjugated = rot * zz * rot.adjoint();
      const ComplexMatrix target =
          linalg::kron(qcore::pauli_matrix(word), sx);
      const double dist = (conjugated - target).max_abs();
      check("rotation block conjugates the coupling into " + word.word(),
            dist <= 1e-10, "distance " + fmt6(dist));
    }
  }

  {
    const ComplexMatrix uchi =
        tomography::build_uchi(tomography::pauli_basis(1), 1);
    const double r = 1.0 / std::numbers::sqrt2;
    const std::complex<double> ir(0.0, r);
    ComplexMatrix expected(4);
    expected(0, 0) = r;
    expected(0, 3) = r;
    expected(1, 1) = r;
    expected(1, 2) = r;
    expected(2, 1) = -ir;
    expected(2, 2) = ir;
    expected(3, 0) = r;
    expected(3, 3) = -r;
    const double dist = (uchi - expected).max_abs();
    check("single-qubit process basis change matches its closed form",
          dist <= 1e-12, "distance " + fmt6(dist));
  }

  for (int n = 1; n <= 4; ++n) {
    const tomography::TomographySchedule schedule =
        tomography::build_schedule(n);
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t expected_entries = dim * (dim + 1) / 2;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& entry : schedule.entries) {
      seen.insert({entry.row, entry.col});
    }
    const bool counts = schedule.pauli_set.size() == dim &&
                        schedule.entries.size() == expected_entries &&
                        seen.size() == expected_entries;
    check("schedule for " + std::to_string(n) + " qubit(s): " +
              std::to_string(schedule.pauli_set.size()) + " operators, " +
              std::to_string(schedule.entries.size()) + " entries",
          counts);
  }

  if (failures == 0) {
    log << "all checks passed\n";
    return 0;
  }
  log << failures << " check(s) failed\n";
  return 1;
}

}  // namespace

std::string to_string(Task task) {
  switch (task) {
    case Task::Dqst:
      return "dqst";
    case Task::Dqpt:
      return "dqpt";
    case Task::SweepG:
      return "sweep-g";
    case Task::SweepState:
      return "sweep-state";
    case Task::Validate:
      return "validate";
  }
  throw Error("invalid task value");
}

Task task_from_string(const std::string& name) {
  if (name == "dqst") return Task::Dqst;
  if (name == "dqpt") return Task::Dqpt;
  if (name == "sweep-g") return Task::SweepG;
  if (name == "sweep-state") return Task::SweepState;
  if (name == "validate") return Task::Validate;
  throw ConfigError("task", "unknown task '" + name +
                                "' (expected dqst, dqpt, sweep-g, "
                                "sweep-state, or validate)");
}

std::uint64_t fallback_seed() {
  const char* env = std::getenv("WMTOMO_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw ConfigError("seed", "WMTOMO_SEED must be a nonnegative integer");
  }
  return value;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config", "top level must be a JSON object");
  }

  static const std::set<std::string> known = {
      "task", "target", "g", "mode", "noise", "out", "observable", "thetas"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (known.find(it.key()) == known.end()) {
      throw ConfigError(it.key(), "unknown field");
    }
  }

  ExperimentConfig cfg;
  if (!doc.contains("task")) {
    throw ConfigError("task", "required field is missing");
  }
  try {
    cfg.task = task_from_string(doc.at("task").get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError("task", e.what());
  }

  const auto get_string = [&doc](const char* field, std::string& out) {
    if (!doc.contains(field)) return;
    try {
      out = doc.at(field).get<std::string>();
    } catch (const json::exception& e) {
      throw ConfigError(field, e.what());
    }
  };
  get_string("target", cfg.target);
  get_string("observable", cfg.observable);
  get_string("out", cfg.out);
  if (cfg.out.empty()) {
    throw ConfigError("out", "output stem must be nonempty");
  }

  const auto get_numbers = [&doc](const char* field,
                                  std::vector<double>& out) {
    if (!doc.contains(field)) return;
    try {
      const json& value = doc.at(field);
      out.clear();
      if (value.is_number()) {
        out.push_back(value.get<double>());
      } else {
        for (const json& x : value) out.push_back(x.get<double>());
      }
    } catch (const json::exception& e) {
      throw ConfigError(field, e.what());
    }
  };
  get_numbers("g", cfg.g_values);
  if (cfg.g_values.empty()) {
    throw ConfigError("g", "coupling list must be nonempty");
  }
  get_numbers("thetas", cfg.thetas);

  if (doc.contains("mode")) {
    try {
      cfg.mode = weakmeas::mode_from_string(doc.at("mode").get<std::string>());
    } catch (const ConfigError&) {
      throw;
    } catch (const json::exception& e) {
      throw ConfigError("mode", e.what());
    }
  }

  if (doc.contains("noise") && !doc.at("noise").is_null()) {
    const json& block = doc.at("noise");
    if (!block.is_object()) {
      throw ConfigError("noise", "must be an object");
    }
    static const std::set<std::string> noise_known = {"sigma", "seed",
                                                      "trials"};
    for (auto it = block.begin(); it != block.end(); ++it) {
      if (noise_known.find(it.key()) == noise_known.end()) {
        throw ConfigError("noise." + it.key(), "unknown field");
      }
    }
    noise::NoiseModel model;
    try {
      model.sigma = block.value("sigma", model.sigma);
      model.trials = block.value("trials", model.trials);
      model.seed = block.contains("seed")
                       ? block.at("seed").get<std::uint64_t>()
                       : fallback_seed();
    } catch (const json::exception& e) {
      throw ConfigError("noise", e.what());
    }
    if (!(model.sigma >= 0.0)) {
      throw ConfigError("noise.sigma", "must be >= 0");
    }
    if (model.trials < 1) {
      throw ConfigError("noise.trials", "must be >= 1");
    }
    cfg.noise = model;
  }

  return cfg;
}

int run(const ExperimentConfig& config, std::ostream& log) {
  switch (config.task) {
    case Task::Dqst:
    case Task::Dqpt:
      return run_reconstruction(config, log);
    case Task::SweepG:
    case Task::SweepState:
      return run_sweep(config, log);
    case Task::Validate:
      return run_validate(config, log);
  }
  throw Error("invalid task value");
}

}  // namespace wmtomo::cli
