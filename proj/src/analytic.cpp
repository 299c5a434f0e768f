#include "scramblab/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace scramblab::analytic {

namespace {
const double kLog2e = 1.0 / std::log(2.0);
double log2_checked(double x, const char* what) {
  if (!(x > 0.0)) throw FormulaDomainError(std::string(what) + ": log argument <= 0");
  return std::log(x) * kLog2e;
}
}  // namespace

std::int64_t PartitionDims::total() const { return d_a * d_b; }

void PartitionDims::validate() const {
  if (d_a < 1 || d_b < 1 || d_c < 1 || d_d < 1) throw std::invalid_argument("dims must be >= 1");
  if (d_a * d_b != d_c * d_d) throw std::invalid_argument("input/output dimensions differ");
}

double haar_second_moment(int i1, int j1, int i2, int j2, int i1p, int j1p, int i2p, int j2p,
                          std::int64_t d) {
  for (int idx : {i1, j1, i2, j2, i1p, j1p, i2p, j2p}) {
    if (idx < 0 || idx >= d) throw std::invalid_argument("index out of range");
  }
  const auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  const double dd = static_cast<double>(d);
  const double direct = kd(i1, i1p) * kd(i2, i2p) * kd(j1, j1p) * kd(j2, j2p) +
                        kd(i1, i2p) * kd(i2, i1p) * kd(j1, j2p) * kd(j2, j1p);
  const double crossed = kd(i1, i1p) * kd(i2, i2p) * kd(j1, j2p) * kd(j2, j1p) +
                         kd(i1, i2p) * kd(i2, i1p) * kd(j1, j1p) * kd(j2, j2p);
  return direct / (dd * dd - 1.0) - crossed / (dd * (dd * dd - 1.0));
}

double avg_purity_exact(const PartitionDims& p) {
  p.validate();
  const double da = static_cast<double>(p.d_a), db = static_cast<double>(p.d_b);
  const double dc = static_cast<double>(p.d_c), dd = static_cast<double>(p.d_d);
  const double d = da * db;
  const double direct = da * db * db * dc * dd * dd + da * da * db * dc * dc * dd;
  const double crossed = da * db * db * dc * dc * dd + da * da * db * dc * dd * dd;
  return (direct / (d * d - 1.0) - crossed / (d * (d * d - 1.0))) / (d * d);
}

double avg_purity_approx(const PartitionDims& p) {
  p.validate();
  const double da = static_cast<double>(p.d_a), db = static_cast<double>(p.d_b);
  const double dc = static_cast<double>(p.d_c), dd = static_cast<double>(p.d_d);
  const double d = da * db;
  return 1.0 / (da * dc) + 1.0 / (db * dd) - 1.0 / (d * da * dd) - 1.0 / (d * db * dc);
}

double renyi2_mi_bound_mixed(double n_players, double s, double p) {
  if (p < 0.0 || p > n_players || s < 0.0 || s > n_players) {
    throw std::invalid_argument("renyi2_mi_bound_mixed: need 0 <= p,s <= N");
  }
  const double numerator = 3.0 * (1.0 - std::exp2(2.0 * p - 2.0 * n_players));
  const double denominator =
      2.0 + (std::exp2(-s) - std::exp2(-(n_players - 1.0))) * std::exp2(2.0 * p - n_players);
  if (!(denominator > 0.0)) throw FormulaDomainError("renyi2_mi_bound_mixed: denominator <= 0");
  return 1.0 + log2_checked(2.0 - numerator / denominator, "renyi2_mi_bound_mixed");
}

double pure_bound(double n_players, double l) {
  if (l < 0.0 || l > n_players) throw std::invalid_argument("pure_bound: need 0 <= l <= N");
  return 2.0 * l - n_players + std::log2(1.0 + std::exp2(n_players - 2.0 * l));
}

double maximally_mixed_mi(double n_players, double l) {
  if (l < 0.0 || l > n_players) throw std::invalid_argument("maximally_mixed_mi: need 0 <= l <= N");
  return std::log2(1.0 + 3.0 * std::exp2(2.0 * (l - n_players)));
}

TheoreticalRamp theoretical_ramp_params(double n_players, double s, double eps) {
  if (s < 0.0 || s > n_players) throw std::invalid_argument("need 0 <= s <= N");
  if (eps < 0.0) throw std::invalid_argument("need eps >= 0");
  TheoreticalRamp t;
  t.b = std::clamp((n_players + s) / 2.0 - eps, 0.0, n_players);
  t.g = std::clamp((n_players + s) / 2.0 + eps, 0.0, n_players);
  t.gap = 2.0 * eps;
  t.rampiness = n_players > 0 ? 2.0 * eps / n_players : 0.0;
  return t;
}

double page_deviation_bound(std::int64_t d_a, std::int64_t d_b) {
  if (d_a < 1 || d_b < 1) throw std::invalid_argument("dims must be >= 1");
  const double a = static_cast<double>(d_a), b = static_cast<double>(d_b);
  return std::sqrt((a * a - 1.0) / (a * b + 1.0));
}

int gap_lower_bound(int secret_qubits) {
  if (secret_qubits < 1) throw std::invalid_argument("secret must have at least one qubit");
  return secret_qubits;
}

double epsilon_for_gamma(double n_players, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  for (double eps = 0.0; eps <= n_players / 2.0; eps += 0.5) {
    if (pure_bound(n_players, n_players / 2.0 - eps) <= gamma) return eps;
  }
  return n_players / 2.0;
}

BoundCurve bound_curve(int n_players, double s, int secret_qubits) {
  BoundCurve c;
  c.n_players = n_players;
  c.s = s;
  const double ceiling = 2.0 * secret_qubits;
  for (int l = 0; l <= n_players; ++l) {
    BoundCurve::Row row{};
    row.l = l;
    row.pure = pure_bound(n_players, l);
    row.pure_clamped = std::min(row.pure, ceiling);
    row.mixed = renyi2_mi_bound_mixed(n_players, s, l);
    row.mixed_clamped = std::min(row.mixed, ceiling);
    row.max_mixed = maximally_mixed_mi(n_players, l);
    c.rows.push_back(row);
  }
  return c;
}

}  // namespace scramblab::analytic
