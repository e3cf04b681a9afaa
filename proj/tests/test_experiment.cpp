#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "test_util.hpp"
#include "wmtomo/errors.hpp"
#include "wmtomo/experiment.hpp"
#include "wmtomo/matrix_io.hpp"
#include "wmtomo/state.hpp"

using namespace wmtomo;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Fresh per-use scratch directory under the system temp root.
class ScratchDir {
 public:
  ScratchDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("wmtomo_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string write_json_file(const ScratchDir& dir, const std::string& name,
                            const json& doc) {
  const std::string path = dir.file(name);
  std::ofstream out(path);
  out << doc.dump(2);
  return path;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json doc;
  in >> doc;
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

int run_cli(const std::string& args) {
  const std::string command =
      std::string(WMTOMO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("task names round-trip") {
  using cli::Task;
  for (Task task : {Task::Dqst, Task::Dqpt, Task::SweepG, Task::SweepState,
                    Task::Validate})
    CHECK(cli::task_from_string(cli::to_string(task)) == task);
  CHECK_THROWS_AS(cli::task_from_string("render"), ConfigError);
}

TEST_CASE("fallback seed reads the environment") {
  unsetenv("WMTOMO_SEED");
  CHECK(cli::fallback_seed() == 0);
  setenv("WMTOMO_SEED", "12345", 1);
  CHECK(cli::fallback_seed() == 12345);
  setenv("WMTOMO_SEED", "not-a-number", 1);
  CHECK_THROWS_AS(cli::fallback_seed(), ConfigError);
  unsetenv("WMTOMO_SEED");
}

TEST_CASE("load_config parses a full configuration") {
  ScratchDir dir;
  const json doc = {{"task", "dqst"},
                    {"target", "bell1"},
                    {"g", {0.1, 0.2}},
                    {"mode", "ExactCoupling"},
                    {"noise", {{"sigma", 0.01}, {"seed", 9}, {"trials", 5}}},
                    {"out", dir.file("result")},
                    {"observable", "XX"},
                    {"thetas", {0.0, 0.5}}};
  const cli::ExperimentConfig cfg =
      cli::load_config(write_json_file(dir, "config.json", doc));
  CHECK(cfg.task == cli::Task::Dqst);
  CHECK(cfg.target == "bell1");
  CHECK(cfg.g_values == std::vector<double>{0.1, 0.2});
  CHECK(cfg.mode == weakmeas::EvolutionMode::ExactCoupling);
  REQUIRE(cfg.noise.has_value());
  CHECK(cfg.noise->sigma == 0.01);
  CHECK(cfg.noise->seed == 9);
  CHECK(cfg.noise->trials == 5);
  CHECK(cfg.observable == "XX");
  CHECK(cfg.thetas == std::vector<double>{0.0, 0.5});
}

TEST_CASE("load_config accepts scalar g and defaults") {
  ScratchDir dir;
  const json doc = {{"task", "dqpt"}, {"target", "hadamard"}, {"g", 0.25}};
  const cli::ExperimentConfig cfg =
      cli::load_config(write_json_file(dir, "config.json", doc));
  CHECK(cfg.g_values == std::vector<double>{0.25});
  CHECK(cfg.mode == weakmeas::EvolutionMode::FirstOrder);
  CHECK_FALSE(cfg.noise.has_value());
  CHECK(cfg.out == "wmtomo_result");
}

TEST_CASE("load_config rejects malformed input") {
  ScratchDir dir;
  CHECK_THROWS_AS(cli::load_config(dir.file("missing.json")), ConfigError);

  const std::string garbled = dir.file("garbled.json");
  std::ofstream(garbled) << "{not json";
  CHECK_THROWS_AS(cli::load_config(garbled), ConfigError);

  const auto expect_field = [&](const json& doc, const std::string& field) {
    const std::string path = write_json_file(dir, "bad.json", doc);
    try {
      cli::load_config(path);
      FAIL(("expected ConfigError for field " + field));
    } catch (const ConfigError& e) {
      CHECK(e.field() == field);
    }
  };
  expect_field({{"target", "bell1"}}, "task");
  expect_field({{"task", "dqst"}, {"colour", 1}}, "colour");
  expect_field({{"task", "dqst"}, {"g", "big"}}, "g");
  expect_field({{"task", "dqst"}, {"g", json::array()}}, "g");
  expect_field({{"task", "dqst"}, {"mode", "loose"}}, "mode");
  expect_field({{"task", "dqst"}, {"noise", {{"sigma", -1.0}}}}, "noise.sigma");
  expect_field({{"task", "dqst"}, {"noise", {{"level", 1}}}}, "noise.level");
  expect_field({{"task", "dqst"}, {"out", ""}}, "out");
}

TEST_CASE("noise seed falls back to the environment") {
  ScratchDir dir;
  setenv("WMTOMO_SEED", "777", 1);
  const json doc = {{"task", "dqst"},
                    {"target", "bell1"},
                    {"noise", {{"sigma", 0.004}}}};
  const cli::ExperimentConfig cfg =
      cli::load_config(write_json_file(dir, "config.json", doc));
  unsetenv("WMTOMO_SEED");
  REQUIRE(cfg.noise.has_value());
  CHECK(cfg.noise->seed == 777);
  CHECK(cfg.noise->trials == 1);
}

TEST_CASE("state reconstruction runs end to end") {
  ScratchDir dir;
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Dqst;
  cfg.target = "bell1";
  cfg.out = dir.file("bell");
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);

  const json doc = read_json_file(dir.file("bell.json"));
  CHECK(doc.at("tool") == "wmtomo");
  CHECK(doc.at("config").at("task") == "dqst");
  CHECK(doc.at("config").at("target") == "bell1");
  CHECK(doc.at("result").at("fidelity_raw").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc.at("result").at("projection_converged").get<bool>());
  CHECK(doc.at("result").at("raw").at("dim") == 4);
  CHECK(doc.at("result").at("records").size() == 4);
  CHECK_FALSE(doc.contains("monte_carlo"));
  CHECK(log.str().find("fidelity_raw") != std::string::npos);
}

TEST_CASE("process reconstruction runs end to end") {
  ScratchDir dir;
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Dqpt;
  cfg.target = "hadamard";
  cfg.out = dir.file("had");
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);
  const json doc = read_json_file(dir.file("had.json"));
  CHECK(doc.at("result").at("fidelity_raw").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  // The raw process matrix carries the four-element 0.5 pattern.
  const auto& entries = doc.at("result").at("raw").at("entries");
  CHECK(entries[1][1][0].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(entries[1][3][0].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(entries[0][0][0].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("result files are deterministic apart from the timestamp") {
  ScratchDir dir;
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Dqst;
  cfg.target = "bell2";
  cfg.noise = noise::NoiseModel{0.004, 31, 3};
  std::ostringstream log;

  cfg.out = dir.file("first");
  CHECK(cli::run(cfg, log) == 0);
  cfg.out = dir.file("second");
  CHECK(cli::run(cfg, log) == 0);

  json a = read_json_file(dir.file("first.json"));
  json b = read_json_file(dir.file("second.json"));
  CHECK(a.at("rng") == noise::rng_name());
  CHECK(a.at("monte_carlo").at("trials") == 3);
  a.erase("timestamp");
  b.erase("timestamp");
  // The echoed output stems differ by construction; align them.
  a.at("config").erase("out");
  b.at("config").erase("out");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("matrix-file targets are accepted") {
  ScratchDir dir;
  testutil::TestRng rng(71);
  const auto rho = testutil::random_density_matrix(4, rng);
  const std::string path = dir.file("state.json");
  io::save_matrix(rho, path);

  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Dqst;
  cfg.target = path;
  cfg.out = dir.file("custom");
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);
  const json doc = read_json_file(dir.file("custom.json"));
  CHECK(doc.at("result").at("fidelity_raw").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unknown targets raise config errors") {
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Dqst;
  cfg.target = "bell9";
  std::ostringstream log;
  CHECK_THROWS_AS(cli::run(cfg, log), ConfigError);
  cfg.task = cli::Task::Dqpt;
  cfg.target = "";
  CHECK_THROWS_AS(cli::run(cfg, log), ConfigError);
}

TEST_CASE("coupling sweep emits the documented CSV") {
  ScratchDir dir;
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::SweepG;
  cfg.target = "00";
  cfg.observable = "ZI";
  cfg.mode = weakmeas::EvolutionMode::ExactCoupling;
  cfg.g_values = {0.05, 0.5};
  cfg.out = dir.file("sweep");
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);

  const std::string text = read_text_file(dir.file("sweep.csv"));
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("sweep_var,phi,ox_raw,oy_raw,re_estimate,im_estimate,"
                   "theory,abs_error\n",
                   0) == 0);
  CHECK(count_lines(text) == 1 + 2 * 4);  // header + |g values| * |labels|

  // The recorded theory column follows sin(2g)/(2g) on the diagonal.
  std::istringstream rows(text);
  std::string line;
  std::getline(rows, line);  // header
  bool saw_first = false;
  bool saw_last = false;
  while (std::getline(rows, line)) {
    std::vector<std::string> cells;
    std::istringstream split(line);
    std::string cell;
    while (std::getline(split, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::abs(std::stod(cells[7])) < 1e-9);  // exact-mode residual
    if (cells[0] == "0.05" && cells[1] == "00") {
      CHECK(std::stod(cells[6]) == doctest::Approx(0.998334).epsilon(1e-4));
      saw_first = true;
    }
    if (cells[0] == "0.5" && cells[1] == "00") {
      CHECK(std::stod(cells[6]) == doctest::Approx(0.841471).epsilon(1e-4));
      saw_last = true;
    }
  }
  CHECK(saw_first);
  CHECK(saw_last);

  const json doc = read_json_file(dir.file("sweep.json"));
  CHECK(doc.at("sweep").at("rows") == 8);
  CHECK(doc.at("sweep").at("csv") == dir.file("sweep.csv"));
}

TEST_CASE("state sweep covers the default preparation angles") {
  ScratchDir dir;
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::SweepState;
  cfg.observable = "ZI";
  cfg.g_values = {0.1};
  cfg.out = dir.file("angles");
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);
  const std::string text = read_text_file(dir.file("angles.csv"));
  CHECK(count_lines(text) == 1 + 11 * 4);  // 11 default angles, 4 labels
}

TEST_CASE("validation task passes on the shipped configuration") {
  cli::ExperimentConfig cfg;
  cfg.task = cli::Task::Validate;
  std::ostringstream log;
  CHECK(cli::run(cfg, log) == 0);
  CHECK(log.str().find("[PASS]") != std::string::npos);
  CHECK(log.str().find("[FAIL]") == std::string::npos);
}

TEST_CASE("matrix io round-trips bit-exactly and reports malformed files") {
  ScratchDir dir;
  testutil::TestRng rng(72);
  const auto m = testutil::random_matrix(4, rng);
  const std::string path = dir.file("matrix.json");
  io::save_matrix(m, path);
  const auto back = io::load_matrix(path);
  CHECK(testutil::max_abs_diff(m, back) == 0.0);

  const std::string bad = dir.file("bad.json");
  std::ofstream(bad) << "{\"dim\": 2}";
  try {
    io::load_matrix(bad);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
  CHECK_THROWS_AS(io::load_matrix(dir.file("absent.json")), Error);

  const std::string ragged = dir.file("ragged.json");
  std::ofstream(ragged) << R"({"dim": 2, "entries": [[[1,0]],[[0,0],[1,0]]]})";
  CHECK_THROWS_AS(io::load_matrix(ragged), Error);
}

TEST_CASE("bundled reference datasets load with the expected entries") {
  const auto bell_raw = io::load_matrix(testutil::data_path("bell_raw.json"));
  REQUIRE(bell_raw.dim() == 4);
  CHECK(bell_raw(0, 0) == std::complex<double>(0.6089, 0.0));
  CHECK(bell_raw(0, 1) == std::complex<double>(-0.0104, 0.0566));
  CHECK(bell_raw(3, 0) == std::complex<double>(0.6314, 0.1126));

  const auto chi_raw =
      io::load_matrix(testutil::data_path("chi_hadamard_raw.json"));
  REQUIRE(chi_raw.dim() == 4);
  CHECK(chi_raw(1, 2) == std::complex<double>(-0.0827, -0.0664));
  CHECK(chi_raw(2, 1) == std::complex<double>(-0.08269, 0.0664));

  const auto bell_rec =
      io::load_matrix(testutil::data_path("bell_recovered.json"));
  CHECK(bell_rec(0, 3) == std::complex<double>(0.4858, -0.0811));
  const auto chi_rec =
      io::load_matrix(testutil::data_path("chi_hadamard_recovered.json"));
  CHECK(chi_rec(3, 3) == std::complex<double>(0.4829, 0.0));
}

TEST_CASE("command line entry point maps outcomes to exit codes") {
  ScratchDir dir;
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("validate --out " + dir.file("check")) == 0);
  CHECK(run_cli("dqst --config " + dir.file("nonexistent.json")) == 2);

  // A config whose task disagrees with the subcommand is a usage error.
  const json doc = {{"task", "dqpt"}, {"target", "hadamard"}};
  const std::string path = write_json_file(dir, "mismatch.json", doc);
  CHECK(run_cli("dqst --config " + path) == 2);
  CHECK(run_cli("definitely-not-a-subcommand") != 0);
}

}  // TEST_SUITE
