#include "scramblab/ramp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "scramblab/infotheory.hpp"

namespace scramblab {

std::string classify_mode_name(ClassifyMode m) {
  return m == ClassifyMode::Mean ? "mean" : "worst";
}

ClassifyMode classify_mode_from_name(const std::string& name) {
  if (name == "mean") return ClassifyMode::Mean;
  if (name == "worst") return ClassifyMode::Worst;
  throw std::invalid_argument("unknown classify mode: " + name);
}

RampParams classify(const MICurve& curve, double gamma, double delta, double i_rs,
                    ClassifyMode mode) {
  if (gamma <= 0.0 || delta <= 0.0) throw std::invalid_argument("tolerances must be positive");
  const int n = curve.n_players;
  if (static_cast<int>(curve.rows.size()) != n + 1) {
    throw std::invalid_argument("curve must have a row for every l in [0, N]");
  }
  const auto secrecy_stat = [&](int l) {
    const auto& r = curve.row(l);
    return mode == ClassifyMode::Mean ? r.mean_i : r.max_i;
  };
  const auto recovery_stat = [&](int l) {
    const auto& r = curve.row(l);
    return mode == ClassifyMode::Mean ? r.mean_i : r.min_i;
  };

  int b_raw = -1;
  for (int l = 0; l <= n; ++l) {
    if (secrecy_stat(l) > gamma) break;
    b_raw = l;
  }
  int g_raw = -1;
  for (int l = n; l >= 0; --l) {
    if (recovery_stat(l) < i_rs - delta) break;
    g_raw = l;
  }
  if (g_raw < 0) throw NoValidSchemeError("curve never reaches I(R:S) - delta");
  if (b_raw < 0) throw NoValidSchemeError("secrecy fails even for the empty subset");

  RampParams p;
  p.n_players = n;
  p.s = curve.s_mixed;
  p.gamma = gamma;
  p.delta = delta;
  p.mode = mode;
  p.g = std::max(g_raw, 1);
  p.b = b_raw;
  if (p.b >= p.g) {
    p.b = p.g - 1;
    p.degenerate = true;
  }
  p.gap = p.g - p.b;
  p.rampiness = static_cast<double>(p.gap) / n;
  if (p.gap < analytic::gap_lower_bound(1)) {
    throw NoValidSchemeError("classified gap below the one-qubit secret floor");
  }
  std::int64_t min_evals = std::numeric_limits<std::int64_t>::max();
  for (const auto& r : curve.rows) {
    if (r.l == 0 || r.l == n) continue;  // endpoint rows are single-subset by nature
    min_evals = std::min(min_evals, r.subsets);
  }
  p.evaluated_subsets_min = min_evals == std::numeric_limits<std::int64_t>::max() ? 0 : min_evals;
  return p;
}

namespace {

// b is a floor constraint (largest safe size) and g a ceiling (smallest
// recovering size), so half-integer predictions round outward.
bool matches_theory(const RampParams& p, const analytic::TheoreticalRamp& t) {
  return p.b == static_cast<int>(std::floor(t.b + 1e-9)) &&
         p.g == static_cast<int>(std::ceil(t.g - 1e-9));
}

}  // namespace

TheoryComparison validate_against_theory(const RampParams& params, double epsilon) {
  TheoryComparison cmp;
  cmp.measured = params;
  cmp.epsilon_user = epsilon;
  cmp.theory_user = analytic::theoretical_ramp_params(params.n_players, params.s, epsilon);
  cmp.matches_user = matches_theory(params, cmp.theory_user);
  cmp.epsilon_searched = analytic::epsilon_for_gamma(params.n_players, params.gamma);
  cmp.theory_searched =
      analytic::theoretical_ramp_params(params.n_players, params.s, cmp.epsilon_searched);
  cmp.matches_searched = matches_theory(params, cmp.theory_searched);
  for (int n : {4, 6, 8, 10, 12, 16, 20, 24}) {
    cmp.rampiness_table.emplace_back(n, 2.0 * cmp.epsilon_searched / n);
  }
  return cmp;
}

std::string theory_report_text(const TheoryComparison& cmp) {
  std::ostringstream out;
  const auto& m = cmp.measured;
  out << "measured: N=" << m.n_players << " s=" << m.s << " (b,g)=(" << m.b << "," << m.g
      << ") gap=" << m.gap << " rampiness=" << m.rampiness
      << (m.degenerate ? " [degenerate near-threshold]" : "") << "\n";
  out << "tolerances: gamma=" << m.gamma << " delta=" << m.delta
      << " mode=" << classify_mode_name(m.mode) << "\n";
  out << "theory (eps=" << cmp.epsilon_user << "): (b,g)=(" << cmp.theory_user.b << ","
      << cmp.theory_user.g << ") -> " << (cmp.matches_user ? "match" : "mismatch") << "\n";
  out << "theory (searched eps=" << cmp.epsilon_searched << "): (b,g)=(" << cmp.theory_searched.b
      << "," << cmp.theory_searched.g << ") -> " << (cmp.matches_searched ? "match" : "mismatch")
      << "\n";
  out << "rampiness decay 2*eps/N at searched eps:\n";
  for (const auto& [n, r] : cmp.rampiness_table) {
    out << "  N=" << n << "  R=" << r << "\n";
  }
  out << "note: sizes above b are certified only over the evaluated subsets (min "
      << m.evaluated_subsets_min << " per size)\n";
  return out.str();
}

namespace {

// |x,y> -> |x, y+x mod 3> as an explicit 9x9 permutation; the pair mask
// orders (control, target) by site index, `control_low` says which one
// controls.
Matrix cadd_matrix(bool control_low) {
  Matrix m = Matrix::Zero(9, 9);
  for (int lo = 0; lo < 3; ++lo) {
    for (int hi = 0; hi < 3; ++hi) {
      const int in = lo + 3 * hi;
      const int out = control_low ? (lo + 3 * ((hi + lo) % 3)) : (((lo + hi) % 3) + 3 * hi);
      m(out, in) = 1.0;
    }
  }
  return m;
}

void apply_cadd(PureState& state, int control_site, int target_site) {
  const bool control_low = control_site < target_site;
  const SubsystemMask pair({std::min(control_site, target_site), std::max(control_site, target_site)});
  state = apply_unitary(state, cadd_matrix(control_low), pair);
}

}  // namespace

QutritShares encode233(const std::complex<double>& alpha, const std::complex<double>& beta,
                       const std::complex<double>& gamma_c) {
  const double norm2 = std::norm(alpha) + std::norm(beta) + std::norm(gamma_c);
  if (std::abs(norm2 - 1.0) > 1e-10) throw std::invalid_argument("secret must be normalized");
  RegisterLayout layout({3, 3, 3});
  Vector amp = Vector::Zero(27);
  const double c = 1.0 / std::sqrt(3.0);
  const auto idx = [](int s1, int s2, int s3) { return s1 + 3 * s2 + 9 * s3; };
  for (int k = 0; k < 3; ++k) amp[idx(k, k, k)] = c * alpha;
  amp[idx(0, 1, 2)] = c * beta;
  amp[idx(1, 2, 0)] = c * beta;
  amp[idx(2, 0, 1)] = c * beta;
  amp[idx(0, 2, 1)] = c * gamma_c;
  amp[idx(1, 0, 2)] = c * gamma_c;
  amp[idx(2, 1, 0)] = c * gamma_c;
  QutritShares out{PureState{std::move(layout), std::move(amp)}, {alpha, beta, gamma_c}};
  return out;
}

Reconstruction233 reconstruct233(const QutritShares& shares, int share_i, int share_j) {
  const int lo = std::min(share_i, share_j), hi = std::max(share_i, share_j);
  if (lo < 1 || hi > 3 || lo == hi) throw std::invalid_argument("invalid share pair");
  // Cyclic order of the pair: (1,2), (2,3), (3,1); the first of the pair
  // receives the secret.
  int first, second;
  if (lo == 1 && hi == 2) {
    first = 1;
    second = 2;
  } else if (lo == 2 && hi == 3) {
    first = 2;
    second = 3;
  } else {
    first = 3;
    second = 1;
  }
  Reconstruction233 res;
  res.state = shares.state;
  apply_cadd(res.state, first - 1, second - 1);
  apply_cadd(res.state, second - 1, first - 1);
  res.secret_site = first - 1;
  res.secret_marginal = partial_trace(res.state, SubsystemMask({res.secret_site}));
  Matrix pure_secret = shares.secret * shares.secret.adjoint();
  res.fidelity_with_input =
      fidelity(res.secret_marginal, DensityMatrix{res.secret_marginal.layout, pure_secret});
  return res;
}

}  // namespace scramblab
