#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scramblab::analytic {

// Closed-form Haar averages and ramp-parameter formulas used as oracles
// for every Monte Carlo estimate in the project. All outputs are bits.

struct FormulaDomainError : std::runtime_error {
  explicit FormulaDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PartitionDims {
  std::int64_t d_a = 1, d_b = 1, d_c = 1, d_d = 1;

  std::int64_t total() const;
  void validate() const;  // requires d_a*d_b == d_c*d_d
};

// Second moment of the unitary group,
//   int dU U_{i1 j1} U_{i2 j2} U*_{i1' j1'} U*_{i2' j2'}
// via the four-delta Weingarten expression with weights 1/(d^2-1) and
// -1/(d(d^2-1)).
double haar_second_moment(int i1, int j1, int i2, int j2, int i1p, int j1p, int i2p, int j2p,
                          std::int64_t d);

// Average output purity int dU Tr(rho_AC^2) for a maximally mixed input,
// exact rational expression and its large-d four-term approximation.
double avg_purity_exact(const PartitionDims& p);
double avg_purity_approx(const PartitionDims& p);

// Renyi-2 upper bound on I(R:P(p)) for N players with initial player
// entropy s, evaluated exactly as printed:
//   1 + log2(2 - 3(1 - 2^(2p-2N)) / (2 + (2^-s - 2^-(N-1)) 4^(p-N/2))).
// Throws FormulaDomainError if the log argument is not positive.
double renyi2_mi_bound_mixed(double n_players, double s, double p);

// Pure-player bound I(P(l)) <= 2l - N + log2(1 + 2^(N-2l)).
double pure_bound(double n_players, double l);

// Maximally mixed players: I2(l) = log2(1 + 3*4^(l-N)).
double maximally_mixed_mi(double n_players, double l);

struct TheoreticalRamp {
  double b = 0.0;
  double g = 0.0;
  double gap = 0.0;
  double rampiness = 0.0;
};

// Predicted ramp parameters b,g = (N+s)/2 -+ eps, clamped to [0, N]; the gap is
// 2*eps and rampiness 2*eps/N before clamping.
TheoreticalRamp theoretical_ramp_params(double n_players, double s, double eps);

// Typical deviation bound int dU ||rho_A - I/|A|||_1 <= sqrt((|A|^2-1)/(|A||B|+1)).
double page_deviation_bound(std::int64_t d_a, std::int64_t d_b);

// The gap of any valid scheme is at least the secret size in qubits.
int gap_lower_bound(int secret_qubits);

// Smallest half-integer eps >= 0 with pure_bound(N, N/2 - eps) <= gamma,
// searched directly; used to report a data-driven accuracy parameter.
double epsilon_for_gamma(double n_players, double gamma);

struct BoundCurve {
  int n_players = 0;
  double s = 0.0;
  // per l: {l, pure, pure_clamped, mixed, mixed_clamped, maximally_mixed}
  struct Row {
    int l;
    double pure;
    double pure_clamped;
    double mixed;
    double mixed_clamped;
    double max_mixed;
  };
  std::vector<Row> rows;
};

// Bounds are reported raw and clamped to min(bound, 2 bits per secret qubit).
BoundCurve bound_curve(int n_players, double s, int secret_qubits = 1);

}  // namespace scramblab::analytic
