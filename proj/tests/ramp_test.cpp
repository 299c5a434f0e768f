#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scramblab/infotheory.hpp"
#include "scramblab/ramp.hpp"
#include "scramblab/rng.hpp"

using namespace scramblab;

namespace {

MICurve synthetic_curve(const std::vector<double>& means) {
  MICurve c;
  c.n_players = static_cast<int>(means.size()) - 1;
  c.samples = 100;
  for (std::size_t l = 0; l < means.size(); ++l) {
    MIRow r;
    r.l = static_cast<int>(l);
    r.mean_i = means[l];
    r.min_i = means[l];
    r.max_i = means[l];
    r.std_error = 0.0;
    r.subsets = 10;
    r.samples = 100;
    c.rows.push_back(r);
  }
  return c;
}

}  // namespace

TEST_CASE("classify an ideal step curve") {
  // 0 below the threshold k=3, full 2 bits from k on
  const auto curve = synthetic_curve({0, 0, 0, 2, 2, 2});
  const auto p = classify(curve, 0.05, 0.05, 2.0);
  CHECK(p.b == 2);
  CHECK(p.g == 3);
  CHECK(p.gap == 1);
  CHECK_FALSE(p.degenerate);
}

TEST_CASE("classify a ramp curve") {
  const auto curve = synthetic_curve({0, 0.01, 0.03, 0.4, 1.6, 1.97, 1.99, 2});
  const auto p = classify(curve, 0.05, 0.05, 2.0);
  CHECK(p.n_players == 7);
  CHECK(p.b == 2);
  CHECK(p.g == 5);
  CHECK(p.gap == 3);
  CHECK(p.rampiness == doctest::Approx(3.0 / 7));
}

TEST_CASE("all-zero curves have no valid scheme") {
  const auto curve = synthetic_curve({0, 0, 0, 0, 0});
  CHECK_THROWS_AS(classify(curve, 0.05, 0.05, 2.0), NoValidSchemeError);
}

TEST_CASE("absurdly loose tolerances collapse to a near-threshold scheme") {
  const auto curve = synthetic_curve({0, 0.2, 0.9, 1.5, 2});
  const auto p = classify(curve, 10.0, 10.0, 2.0);
  CHECK(p.degenerate);
  CHECK(p.g == 1);
  CHECK(p.b == 0);
  CHECK(p.gap == 1);
}

TEST_CASE("classification is monotone in each tolerance") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(6));
    std::vector<double> means(static_cast<std::size_t>(n) + 1);
    double acc = 0.0;
    for (auto& m : means) {
      acc += 2.0 * rng.next_unit() / n;
      m = std::min(acc, 2.0);
    }
    means.back() = 2.0;
    const auto curve = synthetic_curve(means);
    const double gamma = 0.02 + 0.3 * rng.next_unit();
    const double delta = 0.02 + 0.3 * rng.next_unit();
    RampParams base;
    try {
      base = classify(curve, gamma, delta, 2.0);
    } catch (const NoValidSchemeError&) {
      continue;
    }
    const auto wider_gamma = classify(curve, gamma * 2, delta, 2.0);
    CHECK(wider_gamma.b >= base.b);
    CHECK(wider_gamma.g <= base.g);
    const auto wider_delta = classify(curve, gamma, delta * 2, 2.0);
    CHECK(wider_delta.g <= base.g);
    if (!wider_delta.degenerate) {
      CHECK(wider_delta.b >= base.b);
    }
  }
}

TEST_CASE("worst mode is at least as conservative as mean mode") {
  MICurve c = synthetic_curve({0, 0.02, 0.2, 1.8, 1.98, 2});
  // spread min/max around the means; pin the exact end rows
  for (auto& r : c.rows) {
    r.min_i = r.l == c.n_players ? 2.0 : std::max(0.0, r.mean_i - 0.1);
    r.max_i = r.l == 0 ? 0.0 : std::min(2.0, r.mean_i + 0.1);
  }
  const auto mean_p = classify(c, 0.05, 0.05, 2.0, ClassifyMode::Mean);
  const auto worst_p = classify(c, 0.05, 0.05, 2.0, ClassifyMode::Worst);
  CHECK(worst_p.b <= mean_p.b);
  CHECK(worst_p.g >= mean_p.g);
}

TEST_CASE("classify validates tolerances and row coverage") {
  const auto curve = synthetic_curve({0, 0, 2, 2});
  CHECK_THROWS_AS(classify(curve, 0.0, 0.05, 2.0), std::invalid_argument);
  MICurve broken = curve;
  broken.rows.pop_back();
  CHECK_THROWS_AS(classify(broken, 0.05, 0.05, 2.0), std::invalid_argument);
}

TEST_CASE("theory comparison for the pure case") {
  const auto curve = synthetic_curve({0, 0.001, 0.01, 0.04, 0.3, 1, 1.7, 1.92, 1.94, 1.96, 1.99, 1.999, 2});
  const auto p = classify(curve, 0.05, 0.05, 2.0);
  CHECK(p.n_players == 12);
  CHECK(p.b == 3);
  CHECK(p.g == 9);
  const auto cmp = validate_against_theory(p, 3.0);
  CHECK(cmp.matches_user);
  CHECK(cmp.theory_user.gap == doctest::Approx(6.0));
  const auto text = theory_report_text(cmp);
  CHECK(text.find("match") != std::string::npos);
  CHECK(text.find("N=12") != std::string::npos);
}

TEST_CASE("encode233 produces the exact isometry image") {
  const auto shares = encode233(1.0, 0.0, 0.0);
  const double c = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(shares.state.amplitudes[0] - Complex(c)) < 1e-14);       // |000>
  CHECK(std::abs(shares.state.amplitudes[1 + 3 + 9] - Complex(c)) < 1e-14);   // |111>
  CHECK(std::abs(shares.state.amplitudes[2 + 6 + 18] - Complex(c)) < 1e-14);  // |222>
  CHECK(shares.state.amplitudes.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(encode233(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("encode233 is an isometry") {
  Rng rng(3);
  auto random_secret = [&rng] {
    Eigen::Vector3cd v;
    for (int i = 0; i < 3; ++i) v[i] = rng.next_complex_gaussian();
    v.normalize();
    return v;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_secret();
    const auto y = random_secret();
    const auto ex = encode233(x[0], x[1], x[2]);
    const auto ey = encode233(y[0], y[1], y[2]);
    const Complex inner_secrets = x.dot(y);     // conj(x) . y
    const Complex inner_images = ex.state.amplitudes.dot(ey.state.amplitudes);
    CHECK(std::abs(inner_secrets - inner_images) < 1e-10);
  }
}

TEST_CASE("single-share marginals are maximally mixed and secret independent") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Vector3cd v;
    for (int i = 0; i < 3; ++i) v[i] = rng.next_complex_gaussian();
    v.normalize();
    const auto shares = encode233(v[0], v[1], v[2]);
    for (int site = 0; site < 3; ++site) {
      const auto rho = partial_trace(shares.state, SubsystemMask({site}));
      CHECK((rho.matrix - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("reconstruction recovers the secret from every pair") {
  SUBCASE("basis secret from shares (1,2)") {
    const auto shares = encode233(1.0, 0.0, 0.0);
    const auto rec = reconstruct233(shares, 1, 2);
    CHECK(rec.secret_site == 0);
    CHECK(rec.fidelity_with_input == doctest::Approx(1.0).epsilon(1e-12));
    // residual (|00>+|12>+|21>)/sqrt(3) on the other two sites
    const auto residual = partial_trace(rec.state, SubsystemMask({1, 2}));
    Vector expect = Vector::Zero(9);
    expect[0] = expect[2 + 3] = expect[1 + 6] = 1.0 / std::sqrt(3.0);
    CHECK((residual.matrix - expect * expect.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("random secrets, all pairs") {
    Rng rng(11);
    double worst = 1.0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::Vector3cd v;
      for (int i = 0; i < 3; ++i) v[i] = rng.next_complex_gaussian();
      v.normalize();
      const auto shares = encode233(v[0], v[1], v[2]);
      for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
        worst = std::min(worst, reconstruct233(shares, i, j).fidelity_with_input);
      }
    }
    CHECK(worst >= 1.0 - 1e-10);
  }
  SUBCASE("residual shares stay secret independent") {
    const auto a = reconstruct233(encode233(1.0, 0.0, 0.0), 2, 3);
    Eigen::Vector3cd v(0.3, Complex(0.1, 0.7), 0.2);
    v.normalize();
    const auto b = reconstruct233(encode233(v[0], v[1], v[2]), 2, 3);
    CHECK(a.secret_site == 1);
    for (int site : {0, 2}) {
      const auto ra = partial_trace(a.state, SubsystemMask({site}));
      const auto rb = partial_trace(b.state, SubsystemMask({site}));
      CHECK(trace_distance(ra, rb) < 1e-10);
    }
  }
  CHECK_THROWS_AS(reconstruct233(encode233(1.0, 0.0, 0.0), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct233(encode233(1.0, 0.0, 0.0), 0, 2), std::invalid_argument);
}

TEST_CASE("two shares plus reference carry the full mutual information") {
  // Purify a maximally mixed qutrit secret against a reference, encode
  // the secret half, and check I(R : two shares) = I(R:S) = 2 log2(3).
  const auto ref_pair = max_entangled_pair(3);
  // encode site 1 of the pair: build the joint state by linearity
  Vector joint = Vector::Zero(3 * 27);
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3cd basis = Eigen::Vector3cd::Zero();
    basis[k] = 1.0;
    const auto enc = encode233(basis[0], basis[1], basis[2]);
    for (int x = 0; x < 27; ++x) {
      joint[k + 3 * x] = enc.state.amplitudes[x] / std::sqrt(3.0);
    }
  }
  PureState state{RegisterLayout({3, 3, 3, 3}), std::move(joint)};
  const double irs = 2.0 * std::log2(3.0);
  CHECK(mutual_information(state, SubsystemMask({0}), SubsystemMask({1, 2})) ==
        doctest::Approx(irs).epsilon(1e-9));
  CHECK(mutual_information(state, SubsystemMask({0}), SubsystemMask({3})) ==
        doctest::Approx(0.0).epsilon(1e-9));
}
