#pragma once

#include <complex>
#include <string>
#include <vector>

#include "scramblab/analytic.hpp"
#include "scramblab/register.hpp"
#include "scramblab/scrambling.hpp"

namespace scramblab {

struct NoValidSchemeError : std::runtime_error {
  explicit NoValidSchemeError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ClassifyMode { Mean, Worst };

std::string classify_mode_name(ClassifyMode m);
ClassifyMode classify_mode_from_name(const std::string& name);

struct RampParams {
  int n_players = 0;
  double s = 0.0;
  int b = 0;
  int g = 0;
  int gap = 0;
  double rampiness = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  ClassifyMode mode = ClassifyMode::Mean;
  // Set when the raw thresholds overlapped (b >= g) and b was pulled down
  // to g-1, i.e. the scheme degenerated toward a threshold scheme.
  bool degenerate = false;
  // Sizes above b may contain subsets that were never evaluated when the
  // curve was subsampled; Def-9-style guarantees only cover what was seen.
  std::int64_t evaluated_subsets_min = 0;
};

// Ramp classification of an MI curve:
//   b = largest l with the chosen statistic <= gamma at every l' <= l,
//   g = smallest l (>= 1) with the statistic >= i_rs - delta at every l' >= l.
// Mode Mean reads mean_I on both sides, mode Worst reads max_I for
// secrecy and min_I for recoverability. Throws NoValidSchemeError when
// the curve never reaches i_rs - delta.
RampParams classify(const MICurve& curve, double gamma, double delta, double i_rs,
                    ClassifyMode mode = ClassifyMode::Mean);

struct TheoryComparison {
  RampParams measured;
  double epsilon_user = 0.0;
  analytic::TheoreticalRamp theory_user;
  bool matches_user = false;
  double epsilon_searched = 0.0;
  analytic::TheoreticalRamp theory_searched;
  bool matches_searched = false;
  // Rampiness decay 2*eps/N for a range of player counts.
  std::vector<std::pair<int, double>> rampiness_table;
};

TheoryComparison validate_against_theory(const RampParams& params, double epsilon);

std::string theory_report_text(const TheoryComparison& cmp);

// Exact ((2,3)) qutrit threshold scheme of the three-share isometry
//   V(a|0> + b|1> + c|2>) = (1/sqrt3)(a(|000>+|111>+|222>)
//                                   + b(|012>+|120>+|201>)
//                                   + c(|021>+|102>+|210>)).
struct QutritShares {
  PureState state;           // three qutrit sites
  Eigen::Vector3cd secret;
};

QutritShares encode233(const std::complex<double>& alpha, const std::complex<double>& beta,
                       const std::complex<double>& gamma_c);

struct Reconstruction233 {
  PureState state;        // post reconstruction
  int secret_site = 0;    // site carrying the secret afterwards
  DensityMatrix secret_marginal;
  double fidelity_with_input = 0.0;
};

// Reconstructs from two shares by modular additions: for the pair {i,j}
// taken in cyclic order the first share absorbs the secret. Shares are
// 1-based; valid pairs are {1,2}, {2,3}, {1,3}.
Reconstruction233 reconstruct233(const QutritShares& shares, int share_i, int share_j);

}  // namespace scramblab
