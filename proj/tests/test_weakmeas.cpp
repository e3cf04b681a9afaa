#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"
#include "wmtomo/errors.hpp"
#include "wmtomo/gates.hpp"
#include "wmtomo/pauli.hpp"
#include "wmtomo/state.hpp"
#include "wmtomo/weak.hpp"

using namespace wmtomo;
using linalg::ComplexMatrix;
using value = std::complex<double>;
using weakmeas::EvolutionMode;
using weakmeas::WeakCoupling;

namespace {

const std::vector<std::string> kTwoQubitWords = {
    "IX", "IY", "IZ", "XI", "XX", "XY", "XZ", "YI",
    "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};

// Interaction generator P (x) sigma_x with the meter as the last qubit.
ComplexMatrix joint_generator(const std::string& word) {
  return linalg::kron(qcore::pauli_matrix(qcore::PauliString(word)),
                      qcore::pauli_x());
}

// Direct trace oracle for the meter expectations: tr(rho (|phi><phi| (x) m)).
double meter_oracle(const ComplexMatrix& joint_rho, const std::string& phi,
                    const ComplexMatrix& meter_op, int n_system) {
  const std::size_t d = std::size_t{1} << n_system;
  ComplexMatrix projector(d);
  const std::size_t b = qcore::basis_index(phi, n_system);
  projector(b, b) = value(1.0);
  const ComplexMatrix op = linalg::kron(projector, meter_op);
  return (joint_rho * op).trace().real();
}

}  // namespace

TEST_SUITE("weakmeas") {

TEST_CASE("WeakCoupling enforces the policy bounds") {
  CHECK(WeakCoupling(0.1).value() == 0.1);
  CHECK(WeakCoupling(-0.3).value() == -0.3);
  CHECK(WeakCoupling(0.5).value() == 0.5);
  CHECK_THROWS_AS(WeakCoupling(0.0), ConfigError);
  CHECK_THROWS_AS(WeakCoupling(0.6), ConfigError);
  CHECK_THROWS_AS(WeakCoupling(std::nan("")), ConfigError);
  CHECK_THROWS_AS(WeakCoupling(std::numeric_limits<double>::infinity()),
                  ConfigError);
  try {
    WeakCoupling(2.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "g");
  }
}

TEST_CASE("evolution mode names round-trip") {
  for (EvolutionMode mode : {EvolutionMode::FirstOrder, EvolutionMode::ExactCoupling,
                             EvolutionMode::CompiledCircuit})
    CHECK(weakmeas::mode_from_string(weakmeas::to_string(mode)) == mode);
  CHECK_THROWS_AS(weakmeas::mode_from_string("secondorder"), ConfigError);
}

TEST_CASE("weak_unitary first-order form is the literal truncation") {
  const double g = 0.23;
  const ComplexMatrix got = weakmeas::weak_unitary(
      qcore::PauliString("ZI"), WeakCoupling(g), EvolutionMode::FirstOrder);
  ComplexMatrix expect = ComplexMatrix::identity(8);
  expect += joint_generator("ZI") * value(0.0, -g);
  CHECK(testutil::max_abs_diff(got, expect) < 1e-15);
}

TEST_CASE("weak_unitary exact form is the involutory closed form") {
  const double g = 0.41;
  for (const std::string word : {"XX", "YZ", "Z"}) {
    const ComplexMatrix got = weakmeas::weak_unitary(
        qcore::PauliString(word), WeakCoupling(g), EvolutionMode::ExactCoupling);
    ComplexMatrix expect =
        ComplexMatrix::identity(got.dim()) * value(std::cos(g), 0.0);
    expect += joint_generator(word) * value(0.0, -std::sin(g));
    CHECK(testutil::max_abs_diff(got, expect) < 1e-12);
    CHECK(got.is_unitary(1e-12));
  }
}

TEST_CASE("weak_unitary rejects unsupported inputs") {
  const WeakCoupling g(0.1);
  CHECK_THROWS_AS(weakmeas::weak_unitary(qcore::PauliString("II"), g,
                                         EvolutionMode::FirstOrder),
                  UnsupportedPauli);
  CHECK_THROWS_AS(weakmeas::weak_unitary(qcore::PauliString("X"), g,
                                         EvolutionMode::CompiledCircuit),
                  UnsupportedPauli);
  CHECK_THROWS_AS(weakmeas::weak_unitary(qcore::PauliString("XX"), g,
                                         EvolutionMode::CompiledCircuit),
                  MissingCoupling);
}

TEST_CASE("compiled circuits match the exact interaction for all 15 words") {
  const qcore::SpinSystem spin = qcore::SpinSystem::three_qubit_default();
  for (const std::string& word : kTwoQubitWords) {
    for (double g : {0.05, 0.37}) {
      const qcore::PauliString p(word);
      const ComplexMatrix compiled =
          weakmeas::weak_unitary(p, WeakCoupling(g), EvolutionMode::CompiledCircuit,
                                 &spin);
      const ComplexMatrix exact = weakmeas::weak_unitary(
          p, WeakCoupling(g), EvolutionMode::ExactCoupling);
      CHECK(linalg::phase_aligned_distance(compiled, exact) < 1e-10);
    }
  }
}

TEST_CASE("compiled circuits match at random couplings too") {
  const qcore::SpinSystem spin = qcore::SpinSystem::three_qubit_default();
  testutil::TestRng rng(41);
  for (int i = 0; i < 20; ++i) {
    const std::string& word =
        kTwoQubitWords[rng.next() % kTwoQubitWords.size()];
    const double mag = rng.uniform(1e-3, 0.5);
    const double g = rng.uniform() < 0.5 ? mag : -mag;
    const qcore::PauliString p(word);
    const ComplexMatrix compiled = weakmeas::weak_unitary(
        p, WeakCoupling(g), EvolutionMode::CompiledCircuit, &spin);
    const ComplexMatrix exact = weakmeas::weak_unitary(
        p, WeakCoupling(g), EvolutionMode::ExactCoupling);
    CHECK(linalg::phase_aligned_distance(compiled, exact) < 1e-10);
  }
}

TEST_CASE("compiled sequences never schedule negative durations") {
  const qcore::SpinSystem spin = qcore::SpinSystem::three_qubit_default();
  for (const std::string& word : kTwoQubitWords) {
    const qcore::GateSequence seq =
        weakmeas::compile_table1(qcore::PauliString(word), spin, 0.2);
    for (const qcore::GateStep& step : seq.steps()) {
      CHECK(step.label.find("t=-") == std::string::npos);
      CHECK(step.unitary.is_unitary(1e-10));
    }
    CHECK_FALSE(seq.steps().empty());
  }
  // The negative default coupling J_13 < 0 and daggered mid-steps force frame
  // flips somewhere; make sure they appear as paired X steps.
  const qcore::GateSequence zz =
      weakmeas::compile_table1(qcore::PauliString("ZZ"), spin, 0.2);
  int x_steps = 0;
  for (const qcore::GateStep& step : zz.steps())
    if (step.label.rfind("X q", 0) == 0) ++x_steps;
  CHECK(x_steps % 2 == 0);
}

TEST_CASE("rotation block turns the bare coupling into the target word") {
  const qcore::SpinSystem spin = qcore::SpinSystem::three_qubit_default();
  for (const std::string& word : kTwoQubitWords) {
    const qcore::PauliString p(word);
    const int cq = weakmeas::table1_coupled_qubit(p);
    CHECK((cq == 1 || cq == 2));
    const ComplexMatrix rot = weakmeas::table1_rotation(p, spin);
    CHECK(rot.is_unitary(1e-12));
    const ComplexMatrix bare =
        qcore::embed(qcore::pauli_z(), {cq}, 3) *
        qcore::embed(qcore::pauli_z(), {3}, 3);
    const ComplexMatrix conj = rot * bare * rot.adjoint();
    CHECK(testutil::max_abs_diff(conj, joint_generator(word)) < 1e-10);
  }
}

TEST_CASE("evolve_joint conjugates the joint input state") {
  testutil::TestRng rng(42);
  const qcore::QState system = testutil::random_state(2, rng);
  const qcore::PauliString p("XY");
  const double g = 0.3;

  ComplexMatrix meter0(2);
  meter0(0, 0) = value(1.0);
  const ComplexMatrix joint_in = linalg::kron(system.rho(), meter0);

  SUBCASE("exact mode") {
    const ComplexMatrix u = weakmeas::weak_unitary(p, WeakCoupling(g),
                                                   EvolutionMode::ExactCoupling);
    const ComplexMatrix expect = u * joint_in * u.adjoint();
    const qcore::QState out =
        weakmeas::evolve_joint(system, p, WeakCoupling(g),
                               EvolutionMode::ExactCoupling);
    CHECK(out.n_qubits() == 3);
    CHECK(testutil::max_abs_diff(out.rho(), expect) < 1e-12);
  }

  SUBCASE("first-order mode renormalizes the truncated state") {
    const ComplexMatrix w = weakmeas::weak_unitary(p, WeakCoupling(g),
                                                   EvolutionMode::FirstOrder);
    ComplexMatrix expect = w * joint_in * w.adjoint();
    expect *= value(1.0 / expect.trace().real(), 0.0);
    const qcore::QState out = weakmeas::evolve_joint(
        system, p, WeakCoupling(g), EvolutionMode::FirstOrder);
    CHECK(std::abs(out.rho().trace() - value(1.0)) < 1e-12);
    CHECK(testutil::max_abs_diff(out.rho(), expect) < 1e-12);
  }
}

TEST_CASE("meter_expectations agrees with the explicit trace oracle") {
  testutil::TestRng rng(43);
  const qcore::QState system = testutil::random_state(2, rng);
  for (EvolutionMode mode :
       {EvolutionMode::FirstOrder, EvolutionMode::ExactCoupling}) {
    const qcore::QState joint =
        weakmeas::evolve_joint(system, qcore::PauliString("ZX"),
                               WeakCoupling(0.2), mode);
    const auto got = weakmeas::meter_expectations(
        joint, {"00", "01", "10", "11"});
    REQUIRE(got.size() == 4);
    for (const auto& [phi, readout] : got) {
      CHECK(std::abs(readout.first -
                     meter_oracle(joint.rho(), phi, qcore::pauli_x(), 2)) < 1e-12);
      CHECK(std::abs(readout.second -
                     meter_oracle(joint.rho(), phi, qcore::pauli_y(), 2)) < 1e-12);
    }
  }
  const qcore::QState joint = weakmeas::evolve_joint(
      system, qcore::PauliString("ZX"), WeakCoupling(0.2),
      EvolutionMode::ExactCoupling);
  CHECK_THROWS_AS(weakmeas::meter_expectations(joint, {"001"}), BadLabel);
  CHECK_THROWS_AS(weakmeas::meter_expectations(joint, {"0b"}), BadLabel);
}

TEST_CASE("estimate_element inverts the readout pair") {
  // (oy - i ox) / (-2g).
  const value est = weakmeas::estimate_element(0.0272, -0.1821, WeakCoupling(0.1));
  CHECK(est.real() == doctest::Approx(0.9105).epsilon(1e-12));
  CHECK(est.imag() == doctest::Approx(0.136).epsilon(1e-12));

  CHECK(std::abs(weakmeas::estimate_element(0.0, 0.0, WeakCoupling(0.25))) == 0.0);
  const value neg = weakmeas::estimate_element(0.1, 0.2, WeakCoupling(-0.2));
  CHECK(neg.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(neg.imag() == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("first-order records give exact weak values at any coupling") {
  // The headline estimator property: in first-order mode the assembled
  // estimate equals <phi| P rho |phi> exactly, independent of g.
  testutil::TestRng rng(44);
  const qcore::QState system = testutil::random_state(2, rng);
  for (double g : {0.05, 0.2, 0.5}) {
    for (const std::string word : {"ZI", "XX", "IX", "YZ"}) {
      const qcore::PauliString p(word);
      const auto record = weakmeas::measure_record(
          system, p, WeakCoupling(g), EvolutionMode::FirstOrder);
      CHECK(record.pauli == word);
      CHECK(record.g == g);
      REQUIRE(record.readouts.size() == 4);
      const ComplexMatrix prod = qcore::pauli_matrix(p) * system.rho();
      for (const auto& [phi, readout] : record.readouts) {
        const std::size_t b = qcore::basis_index(phi, 2);
        const value est = weakmeas::estimate_element(
            readout.first, readout.second, WeakCoupling(g));
        CHECK(std::abs(est - prod(b, b)) < 1e-12);
      }
    }
  }
}

TEST_CASE("exact-coupling records scale every element by sin(2g)/(2g)") {
  testutil::TestRng rng(45);
  const qcore::QState system = testutil::random_state(2, rng);
  for (double g : {0.1, 0.4}) {
    const double sinc = std::sin(2.0 * g) / (2.0 * g);
    for (const std::string word : {"ZI", "XX"}) {
      const qcore::PauliString p(word);
      const auto record = weakmeas::measure_record(
          system, p, WeakCoupling(g), EvolutionMode::ExactCoupling);
      const ComplexMatrix prod = qcore::pauli_matrix(p) * system.rho();
      for (const auto& [phi, readout] : record.readouts) {
        const std::size_t b = qcore::basis_index(phi, 2);
        const value est = weakmeas::estimate_element(
            readout.first, readout.second, WeakCoupling(g));
        CHECK(std::abs(est - value(sinc, 0.0) * prod(b, b)) < 1e-12);
      }
    }
  }
}

TEST_CASE("single-qubit records work end to end") {
  testutil::TestRng rng(46);
  const qcore::QState system = testutil::random_state(1, rng);
  const auto record = weakmeas::measure_record(
      system, qcore::PauliString("Z"), WeakCoupling(0.2),
      EvolutionMode::FirstOrder);
  REQUIRE(record.readouts.size() == 2);
  const value est0 = weakmeas::estimate_element(record.readouts.at("0").first,
                                                record.readouts.at("0").second,
                                                WeakCoupling(0.2));
  CHECK(std::abs(est0 - system.rho()(0, 0)) < 1e-12);
  const value est1 = weakmeas::estimate_element(record.readouts.at("1").first,
                                                record.readouts.at("1").second,
                                                WeakCoupling(0.2));
  CHECK(std::abs(est1 + system.rho()(1, 1)) < 1e-12);
}

}  // TEST_SUITE
