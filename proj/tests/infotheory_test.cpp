#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scramblab/ensembles.hpp"
#include "scramblab/infotheory.hpp"
#include "scramblab/rng.hpp"

using namespace scramblab;

namespace {

DensityMatrix random_density(int dim, Rng& rng, int env_dim = 0) {
  if (env_dim == 0) env_dim = dim;
  const Matrix column = sample_haar_isometry(std::int64_t(dim) * env_dim, 1, rng);
  Eigen::Map<const Matrix> psi(column.data(), dim, env_dim);
  return DensityMatrix{RegisterLayout({dim}), psi * psi.adjoint()};
}

PureState random_state(const RegisterLayout& layout, Rng& rng) {
  Vector amp(layout.total_dim());
  for (Eigen::Index i = 0; i < amp.size(); ++i) amp[i] = rng.next_complex_gaussian();
  amp.normalize();
  return PureState{layout, std::move(amp)};
}

PureState ghz3() {
  RegisterLayout layout({2, 2, 2});
  Vector amp = Vector::Zero(8);
  amp[0] = amp[7] = 1.0 / std::sqrt(2.0);
  return PureState{std::move(layout), std::move(amp)};
}

}  // namespace

TEST_CASE("von Neumann entropy reference values") {
  DensityMatrix pure{RegisterLayout({2}), Matrix::Zero(2, 2)};
  pure.matrix(0, 0) = 1.0;
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));

  DensityMatrix mixed4{RegisterLayout({4}), Matrix::Identity(4, 4) / 4};
  CHECK(von_neumann_entropy(mixed4) == doctest::Approx(2.0).epsilon(1e-12));

  DensityMatrix diag{RegisterLayout({2}), Matrix::Zero(2, 2)};
  diag.matrix(0, 0) = 0.75;
  diag.matrix(1, 1) = 0.25;
  // -(3/4)log2(3/4) - (1/4)log2(1/4)
  CHECK(von_neumann_entropy(diag) == doctest::Approx(0.811278124459).epsilon(1e-10));
}

TEST_CASE("renyi entropy values and limit") {
  DensityMatrix mixed{RegisterLayout({2}), Matrix::Identity(2, 2) / 2};
  CHECK(renyi_entropy(mixed, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  DensityMatrix pure{RegisterLayout({2}), Matrix::Zero(2, 2)};
  pure.matrix(1, 1) = 1.0;
  CHECK(renyi_entropy(pure, 2.0) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(3);
  const auto rho = random_density(4, rng);
  const double s = von_neumann_entropy(rho);
  const double above = renyi_entropy(rho, 1.000001);
  const double below = renyi_entropy(rho, 0.999999);
  CHECK(above <= s + 1e-4);
  CHECK(s <= below + 1e-4);
  CHECK(std::abs(above - s) < 1e-4);
  CHECK(std::abs(below - s) < 1e-4);

  CHECK_THROWS_AS(renyi_entropy(rho, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(renyi_entropy(rho, -0.5), std::invalid_argument);
}

TEST_CASE("entropy additivity on product states") {
  Rng rng(9);
  const auto a = random_density(3, rng);
  const auto b = random_density(4, rng);
  const auto ab = tensor_product(a, b);
  CHECK(von_neumann_entropy(ab) ==
        doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-8));
}

TEST_CASE("mutual information examples") {
  const auto bell = max_entangled_pair(2);
  CHECK(mutual_information(bell, SubsystemMask({0}), SubsystemMask({1})) ==
        doctest::Approx(2.0).epsilon(1e-10));

  Rng rng(17);
  const auto prod = tensor(random_state(RegisterLayout({2}), rng),
                           random_state(RegisterLayout({2}), rng));
  CHECK(std::abs(mutual_information(prod, SubsystemMask({0}), SubsystemMask({1}))) < 1e-9);

  CHECK(mutual_information(ghz3(), SubsystemMask({0}), SubsystemMask({1})) ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(mutual_information(bell, SubsystemMask({0}), SubsystemMask({0, 1})),
                  std::invalid_argument);
}

TEST_CASE("pure-state complementarity of entropies") {
  Rng rng(19);
  const RegisterLayout layout({2, 2, 2, 2});
  const auto psi = random_state(layout, rng);
  const SubsystemMask x({0, 2});
  const double sx = entropy_from_spectrum(reduced_spectrum(psi, x));
  const double sy = entropy_from_spectrum(reduced_spectrum(psi, x.complement(layout)));
  CHECK(std::abs(sx - sy) < 1e-9);
}

TEST_CASE("tripartite information cases") {
  // R-C bell pair with an uncorrelated D qubit: I3 = 0.
  const auto rc = max_entangled_pair(2);
  const auto with_d = tensor(rc, basis_state(RegisterLayout({2}), {0}));
  CHECK(std::abs(tripartite_information(with_d, SubsystemMask({0}), SubsystemMask({1}),
                                        SubsystemMask({2}))) < 1e-9);
  CHECK_THROWS_AS(tripartite_information(with_d, SubsystemMask({0}), SubsystemMask({1}),
                                         SubsystemMask({1})),
                  std::invalid_argument);
}

TEST_CASE("trace distance and fidelity endpoints") {
  DensityMatrix z0{RegisterLayout({2}), Matrix::Zero(2, 2)};
  z0.matrix(0, 0) = 1.0;
  DensityMatrix z1{RegisterLayout({2}), Matrix::Zero(2, 2)};
  z1.matrix(1, 1) = 1.0;
  CHECK(trace_distance(z0, z0) == doctest::Approx(0.0));
  CHECK(fidelity(z0, z0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(trace_distance(z0, z1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(z0, z1) == doctest::Approx(0.0).epsilon(1e-12));

  DensityMatrix plus{RegisterLayout({2}), Matrix::Zero(2, 2)};
  plus.matrix << 0.5, 0.5, 0.5, 0.5;
  CHECK(fidelity(z0, plus) == doctest::Approx(0.5).epsilon(1e-10));
  // pure states: Delta = sqrt(1 - F)
  CHECK(trace_distance(z0, plus) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));

  DensityMatrix wrong{RegisterLayout({4}), Matrix::Identity(4, 4) / 4};
  CHECK_THROWS_AS(trace_distance(z0, wrong), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(z0, wrong), std::invalid_argument);
}

TEST_CASE("pinsker slack on reference states and random sweep") {
  Rng rng(23);
  const auto prod = tensor(random_state(RegisterLayout({2}), rng),
                           random_state(RegisterLayout({2}), rng));
  CHECK(std::abs(pinsker_slack(prod, SubsystemMask({0}), SubsystemMask({1}))) < 1e-9);

  const auto bell = max_entangled_pair(2);
  CHECK(pinsker_slack(bell, SubsystemMask({0}), SubsystemMask({1})) > 0.0);

  double worst = 1e300;
  for (int i = 0; i < 100; ++i) {
    const auto psi = random_state(RegisterLayout({2, 2}), rng);
    worst = std::min(worst, pinsker_slack(psi, SubsystemMask({0}), SubsystemMask({1})));
  }
  CHECK(worst >= -1e-8);
}

TEST_CASE("pinsker slack is basis-order safe") {
  Rng rng(29);
  const auto psi = random_state(RegisterLayout({2, 2, 2}), rng);
  // y's site index below x's exercises the permuted product basis
  CHECK(pinsker_slack(psi, SubsystemMask({2}), SubsystemMask({0})) >= -1e-8);
}

TEST_CASE("fuchs-van de graaf slacks") {
  Rng rng(31);
  DensityMatrix z0{RegisterLayout({2}), Matrix::Zero(2, 2)};
  z0.matrix(0, 0) = 1.0;
  auto [lo, hi] = fuchs_van_de_graaf_slacks(z0, z0);
  CHECK(std::abs(lo) < 1e-9);
  CHECK(std::abs(hi) < 1e-9);

  DensityMatrix z1{RegisterLayout({2}), Matrix::Zero(2, 2)};
  z1.matrix(1, 1) = 1.0;
  std::tie(lo, hi) = fuchs_van_de_graaf_slacks(z0, z1);
  CHECK(std::abs(lo) < 1e-9);
  CHECK(std::abs(hi) < 1e-9);

  for (int i = 0; i < 100; ++i) {
    const auto a = random_density(3, rng);
    const auto b = random_density(3, rng);
    std::tie(lo, hi) = fuchs_van_de_graaf_slacks(a, b);
    CHECK(lo >= -1e-8);
    CHECK(hi >= -1e-8);
  }
}

TEST_CASE("renyi-2 bound applies when the reference is maximally mixed") {
  // S(R) = log2|R| exactly, S(C) <= log2|C|, S2 <= S: unconditional chain.
  Rng rng(37);
  for (int i = 0; i < 25; ++i) {
    const auto bell = max_entangled_pair(2);
    const auto env = random_state(RegisterLayout({2, 2}), rng);
    auto psi = tensor(bell, env);  // R = site 0, rest arbitrary
    psi = apply_unitary(psi, sample_haar(8, rng), SubsystemMask({1, 2, 3}));
    const SubsystemMask r({0}), c({1, 2});
    const double mi = mutual_information(psi, r, c);
    const double s2_rc = renyi_from_spectrum(reduced_spectrum(psi, r.unite(c)), 2.0);
    CHECK(mi <= 1.0 + 2.0 - s2_rc + 1e-8);
  }
}
