#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scramblab/analytic.hpp"
#include "scramblab/ensembles.hpp"
#include "scramblab/rng.hpp"

using namespace scramblab;

TEST_CASE("haar samples are unitary and deterministic") {
  Rng a(42), b(42);
  const Matrix u = sample_haar(2, a);
  const Matrix v = sample_haar(2, b);
  CHECK(unitarity_error(u) < 1e-12);
  CHECK((u - v).norm() == 0.0);

  Rng c(43);
  CHECK((u - sample_haar(2, c)).norm() > 1e-3);
}

TEST_CASE("haar isometry equals the leading columns of the full sample") {
  Rng a(7), b(7);
  const Matrix thin = sample_haar_isometry(8, 2, a);
  const Matrix full = sample_haar(8, b);
  CHECK((thin - full.leftCols(2)).norm() < 1e-10);
  CHECK((thin.adjoint() * thin - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("haar first moment: E|U00|^2 = 1/d") {
  const int n = 10000;
  const std::int64_t d = 4;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(1001, static_cast<std::uint64_t>(i));
    const Matrix u = sample_haar(d, rng);
    const double x = std::norm(u(0, 0));
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  const double se = std::sqrt(m2 / (n - 1.0) / n);
  CHECK(std::abs(mean - 0.25) <= 3 * se);
}

TEST_CASE("haar first moment twirl: E[U rho U*] ~ I/d") {
  const std::int64_t d = 4;
  Rng seed_rng(55);
  Matrix rho = Matrix::Zero(d, d);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;  // arbitrary fixed input state
  const int n = 1000;
  Matrix acc = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(2002, static_cast<std::uint64_t>(i));
    const Matrix u = sample_haar(d, rng);
    acc += u * rho * u.adjoint();
  }
  acc /= n;
  CHECK((acc - Matrix::Identity(d, d) / static_cast<double>(d)).norm() < 5.0 / std::sqrt(n));
}

TEST_CASE("left invariance: fixed V shifts leave moments unchanged") {
  const std::int64_t d = 4;
  Rng vr(66);
  const Matrix v = sample_haar(d, vr);
  const int n = 2000;
  double mean_u = 0.0, mean_vu = 0.0, var_u = 0.0, var_vu = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(3003, static_cast<std::uint64_t>(i));
    const Matrix u = sample_haar(d, rng);
    const double xu = std::norm(u(0, 0));
    const double xvu = std::norm((v * u)(0, 0));
    mean_u += xu;
    mean_vu += xvu;
    var_u += xu * xu;
    var_vu += xvu * xvu;
  }
  mean_u /= n;
  mean_vu /= n;
  const double se = std::sqrt((var_u / n - mean_u * mean_u) / n) +
                    std::sqrt((var_vu / n - mean_vu * mean_vu) / n);
  CHECK(std::abs(mean_u - mean_vu) <= 3 * se);
}

TEST_CASE("clifford circuits stay in the gate set and size bound") {
  Rng rng(5);
  const auto c = sample_clifford_circuit(4, rng);
  CHECK(c.gates.size() == 6 * 16);
  for (const auto& g : c.gates) {
    CHECK(g.a >= 0);
    CHECK(g.a < 4);
    if (g.kind == Gate::CNOT) {
      CHECK(g.b >= 0);
      CHECK(g.b < 4);
      CHECK(g.a != g.b);
    }
  }
  Rng single(6);
  for (const auto& g : sample_clifford_circuit(1, single).gates) {
    CHECK(g.kind != Gate::CNOT);
  }
  CHECK_THROWS_AS(sample_clifford_circuit(0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_clifford_circuit(13, rng), std::invalid_argument);
}

TEST_CASE("circuit serialization round trip") {
  Rng rng(8);
  const auto c = sample_clifford_circuit(5, rng);
  const auto back = CircuitDescription::from_text(c.to_text());
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(back.gates[i].kind == c.gates[i].kind);
    CHECK(back.gates[i].a == c.gates[i].a);
    CHECK(back.gates[i].b == c.gates[i].b);
  }
  CHECK_THROWS_AS(CircuitDescription::from_text("CNOT 2 2"), std::invalid_argument);
  CHECK_THROWS_AS(CircuitDescription::from_text("T 1"), std::invalid_argument);
}

TEST_CASE("circuit_to_unitary basics") {
  CHECK((circuit_to_unitary({}, 2) - Matrix::Identity(4, 4)).norm() == 0.0);

  CircuitDescription h1;
  h1.gates.push_back({Gate::H, 0, -1});
  Matrix expect(2, 2);
  expect << 1, 1, 1, -1;
  expect /= std::sqrt(2.0);
  CHECK((circuit_to_unitary(h1, 1) - expect).norm() < 1e-12);

  CircuitDescription cnot2;
  cnot2.gates.push_back({Gate::CNOT, 0, 1});
  cnot2.gates.push_back({Gate::CNOT, 0, 1});
  CHECK((circuit_to_unitary(cnot2, 2) - Matrix::Identity(4, 4)).norm() == 0.0);

  Rng rng(12);
  const auto c = sample_clifford_circuit(3, rng);
  CHECK(unitarity_error(circuit_to_unitary(c, 3)) < 1e-9);
}

TEST_CASE("frame potential of haar matches t!") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::Haar;
  spec.n_sites = 2;
  spec.samples = 1500;
  spec.seed = 99;
  const auto f1 = frame_potential(spec, 1);
  CHECK(std::abs(f1.estimate - 1.0) <= 3 * f1.std_error);
  const auto f2 = frame_potential(spec, 2);
  CHECK(std::abs(f2.estimate - 2.0) <= 3 * f2.std_error);
}

TEST_CASE("frame potential of the clifford walk certifies a 2-design") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::Clifford;
  spec.n_sites = 3;
  spec.samples = 1500;
  spec.seed = 123;
  const auto f2 = frame_potential(spec, 2);
  CHECK(std::abs(f2.estimate - 2.0) <= 3 * f2.std_error);

  EnsembleSpec bad = spec;
  bad.samples = 50;
  CHECK_THROWS_AS(frame_potential(bad, 2), std::invalid_argument);
  CHECK_THROWS_AS(frame_potential(spec, 3), std::invalid_argument);
}

TEST_CASE("ensemble spec validation") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::Clifford;
  spec.site_dim = 3;
  spec.samples = 10;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.site_dim = 2;
  spec.samples = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ensemble_from_name("fourier"), std::invalid_argument);
}
