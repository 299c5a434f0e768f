#include "scramblab/scrambling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "scramblab/analytic.hpp"
#include "scramblab/infotheory.hpp"

namespace scramblab {

namespace {

constexpr int kSiteR = 0;
constexpr int kSiteA = 1;

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

void ExperimentConfig::validate() const {
  const int sites = 1 + n_players + s_mixed;
  if (sites > 24) throw BudgetError("experiment needs " + std::to_string(sites) + " sites, cap is 24");
  if (n_players < 1) throw std::invalid_argument("need at least one player");
  if (s_mixed < 0 || s_mixed > n_players - 1) {
    throw std::invalid_argument("mixed players must satisfy 0 <= s <= N-1");
  }
  if (subsets.cap < 1 && !subsets.exhaustive) throw std::invalid_argument("subset cap must be >= 1");
  ensemble.validate();
  if (ensemble.site_dim != 2) throw std::invalid_argument("experiments run on qubits");
}

const MIRow& MICurve::row(int l) const {
  for (const auto& r : rows) {
    if (r.l == l) return r;
  }
  throw std::out_of_range("no row for l=" + std::to_string(l));
}

PureState build_initial_state(int n_players, int s_mixed) {
  ExperimentConfig probe;
  probe.n_players = n_players;
  probe.s_mixed = s_mixed;
  probe.ensemble.n_sites = n_players;
  probe.validate();

  const int n_sites = 1 + n_players + s_mixed;
  std::map<Role, std::vector<int>> roles;
  roles[Role::R] = {kSiteR};
  roles[Role::A] = {kSiteA};
  std::vector<int> b_sites;
  for (int k = 0; k < n_players - 1; ++k) b_sites.push_back(2 + k);
  roles[Role::B] = b_sites;
  std::vector<int> mem_sites;
  for (int k = 0; k < s_mixed; ++k) mem_sites.push_back(1 + n_players + k);
  if (!mem_sites.empty()) roles[Role::Bmem] = mem_sites;

  RegisterLayout layout(std::vector<int>(static_cast<std::size_t>(n_sites), 2), std::move(roles));
  Vector amp = Vector::Zero(layout.total_dim());
  const std::int64_t k_dim = std::int64_t(1) << (1 + s_mixed);
  const double coeff = 1.0 / std::sqrt(static_cast<double>(k_dim));
  const std::int64_t mem_base = std::int64_t(1) << (1 + n_players);
  for (std::int64_t m = 0; m < (std::int64_t(1) << s_mixed); ++m) {
    for (std::int64_t r = 0; r < 2; ++r) {
      // R=r, A=r, first s B qubits = bits of m, matching memory = m.
      const std::int64_t idx = r + 2 * (r + 2 * m) + mem_base * m;
      amp[idx] = coeff;
    }
  }
  return PureState{std::move(layout), std::move(amp)};
}

namespace {

// Scrambles the players of the initial state with sample stream `index`.
PureState make_sample_state(const ExperimentConfig& cfg, const PureState& initial, Rng& rng) {
  const int n = cfg.n_players;
  if (cfg.ensemble.kind == EnsembleKind::Clifford) {
    PureState state = initial;
    const auto circuit = sample_clifford_circuit(n, rng);
    std::vector<int> site_of_qubit;
    for (int q = 0; q < n; ++q) site_of_qubit.push_back(1 + q);
    for (const auto& g : circuit.gates) apply_gate_in_place(state, g, site_of_qubit);
    return state;
  }
  // Haar: only the action on the 2^(1+s)-dimensional input span matters,
  // so draw that many Haar-isometry columns instead of a full unitary.
  // Column j is U|in_j> where in_j = r + 2m is exactly the little-endian
  // player-basis index populated by build_initial_state.
  const std::int64_t dim = std::int64_t(1) << n;
  const std::int64_t cols = std::int64_t(1) << (1 + cfg.s_mixed);
  const Matrix q = sample_haar_isometry(dim, cols, rng);
  Vector amp = Vector::Zero(initial.layout.total_dim());
  const double coeff = 1.0 / std::sqrt(static_cast<double>(cols));
  const std::int64_t mem_base = std::int64_t(1) << (1 + n);
  for (std::int64_t m = 0; m < (cols >> 1); ++m) {
    for (std::int64_t r = 0; r < 2; ++r) {
      const std::int64_t col = r + 2 * m;
      for (std::int64_t ab = 0; ab < dim; ++ab) {
        amp[r + 2 * ab + mem_base * m] += coeff * q(ab, col);
      }
    }
  }
  return PureState{initial.layout, std::move(amp)};
}

std::vector<std::vector<int>> all_subsets(const std::vector<int>& pool, int l) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(pool.size());
  std::vector<int> idx(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> subset;
    subset.reserve(static_cast<std::size_t>(l));
    for (int i : idx) subset.push_back(pool[static_cast<std::size_t>(i)]);
    out.push_back(std::move(subset));
    int k = l - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - l + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < l; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<std::vector<int>> draw_subsets(const std::vector<int>& pool, int l,
                                           const SubsetStrategy& strategy, Rng& rng) {
  const int n = static_cast<int>(pool.size());
  if (l == 0) return {{}};
  const std::int64_t count = binomial(n, l);
  if (strategy.exhaustive || count <= strategy.cap) {
    auto subsets = all_subsets(pool, l);
    if (2 * l == n) {
      // Self-complementary size: keep only subsets containing the lowest
      // site so each complement pair is evaluated once.
      std::vector<std::vector<int>> kept;
      for (auto& s : subsets) {
        if (s.front() == pool.front()) kept.push_back(std::move(s));
      }
      return kept;
    }
    return subsets;
  }
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  std::vector<int> scratch = pool;
  int attempts = 0;
  while (static_cast<int>(out.size()) < strategy.cap && attempts < strategy.cap * 64) {
    ++attempts;
    for (int i = 0; i < l; ++i) {
      const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(j)]);
    }
    std::vector<int> subset(scratch.begin(), scratch.begin() + l);
    std::sort(subset.begin(), subset.end());
    if (seen.insert(subset).second) out.push_back(std::move(subset));
  }
  return out;
}

struct RowAccumulator {
  double mean = 0.0;
  double m2 = 0.0;
  double min_i = std::numeric_limits<double>::infinity();
  double max_i = -std::numeric_limits<double>::infinity();
  std::int64_t evaluations = 0;
  int samples = 0;

  void fold(double sample_mean, double sample_min, double sample_max, std::int64_t count) {
    ++samples;
    const double delta = sample_mean - mean;
    mean += delta / samples;
    m2 += delta * (sample_mean - mean);
    min_i = std::min(min_i, sample_min);
    max_i = std::max(max_i, sample_max);
    evaluations += count;
  }
};

struct SampleRow {
  double sum = 0.0;
  double min_i = std::numeric_limits<double>::infinity();
  double max_i = -std::numeric_limits<double>::infinity();
  std::int64_t count = 0;

  void add(double v) {
    sum += v;
    min_i = std::min(min_i, v);
    max_i = std::max(max_i, v);
    ++count;
  }
};

struct SampleResult {
  std::vector<SampleRow> rows;
  double pair_residual = 0.0;
  double spectator_deviation = 0.0;
};

// Entropies of P, RP, Pbar, RPbar for one subset of player sites.
struct PairInfo {
  double i_p;
  double i_pbar;
};

PairInfo evaluate_pair(const PureState& state, const std::vector<int>& subset,
                       const std::vector<int>& pool, double s_r, bool pure_shortcut) {
  std::vector<int> rp = subset;
  rp.insert(rp.begin(), kSiteR);
  std::vector<int> pbar;
  std::set_difference(pool.begin(), pool.end(), subset.begin(), subset.end(),
                      std::back_inserter(pbar));
  const double s_p = entropy_from_spectrum(reduced_spectrum(state, SubsystemMask(subset)));
  const double s_rp = entropy_from_spectrum(reduced_spectrum(state, SubsystemMask(rp)));
  if (pure_shortcut) {
    // Global state pure on R+players: S(Pbar) = S(RP) and S(RPbar) = S(P).
    return {s_r + s_p - s_rp, s_r + s_rp - s_p};
  }
  std::vector<int> rpbar = pbar;
  rpbar.insert(rpbar.begin(), kSiteR);
  const double s_pbar = entropy_from_spectrum(reduced_spectrum(state, SubsystemMask(pbar)));
  const double s_rpbar = entropy_from_spectrum(reduced_spectrum(state, SubsystemMask(rpbar)));
  return {s_r + s_p - s_rp, s_r + s_pbar - s_rpbar};
}

MICurve run_core(const ExperimentConfig& cfg, int n_total_players, int discard) {
  cfg.validate();
  const int n_retained = n_total_players - discard;
  const bool pure_global = cfg.s_mixed == 0 && discard == 0;

  const PureState initial = build_initial_state(n_total_players, cfg.s_mixed);
  std::vector<int> pool;  // retained player sites, the subset universe
  for (int k = 0; k < n_retained; ++k) pool.push_back(1 + k);

  // Spectator marginal: R plus memory plus any discarded output shares
  // would not stay invariant, so only R+memory is checked.
  std::vector<int> spectator_sites{kSiteR};
  for (int k = 0; k < cfg.s_mixed; ++k) spectator_sites.push_back(1 + n_total_players + k);
  const SubsystemMask spectator(spectator_sites);
  const std::int64_t spectator_dim = std::int64_t(1) << (1 + cfg.s_mixed);

  const int n_samples = cfg.ensemble.samples;
  std::vector<SampleResult> results(static_cast<std::size_t>(n_samples));

  auto run_sample = [&](int index) {
    Rng rng = Rng::stream(cfg.ensemble.seed, static_cast<std::uint64_t>(index));
    const PureState state = make_sample_state(cfg, initial, rng);

    SampleResult res;
    res.rows.resize(static_cast<std::size_t>(n_retained) + 1);

    const auto rho_spec = partial_trace(state, spectator);
    res.spectator_deviation =
        (rho_spec.matrix - Matrix::Identity(spectator_dim, spectator_dim) /
                               static_cast<double>(spectator_dim))
            .cwiseAbs()
            .maxCoeff();

    const double s_r =
        entropy_from_spectrum(reduced_spectrum(state, SubsystemMask({kSiteR})));

    for (int l = 0; 2 * l <= n_retained; ++l) {
      const auto subsets = draw_subsets(pool, l, cfg.subsets, rng);
      for (const auto& subset : subsets) {
        const auto pair = evaluate_pair(state, subset, pool, s_r, pure_global);
        res.rows[static_cast<std::size_t>(l)].add(pair.i_p);
        res.rows[static_cast<std::size_t>(n_retained - l)].add(pair.i_pbar);
        if (pure_global) {
          res.pair_residual =
              std::max(res.pair_residual, std::abs(pair.i_p + pair.i_pbar - 2.0));
        }
      }
    }
    results[static_cast<std::size_t>(index)] = std::move(res);
  };

  const int n_threads = std::max(1, std::min(cfg.threads, n_samples));
  if (n_threads == 1) {
    for (int i = 0; i < n_samples; ++i) run_sample(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < n_threads; ++t) {
      workers.emplace_back([&] {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= n_samples) return;
          run_sample(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  // Deterministic reduction in sample-index order.
  MICurve curve;
  curve.n_players = n_retained;
  curve.s_mixed = cfg.s_mixed;
  curve.kind = cfg.ensemble.kind;
  curve.seed = cfg.ensemble.seed;
  curve.samples = n_samples;
  curve.subset_cap = cfg.subsets.exhaustive ? 0 : cfg.subsets.cap;
  curve.discarded = discard;
  std::vector<RowAccumulator> acc(static_cast<std::size_t>(n_retained) + 1);
  for (const auto& res : results) {
    curve.max_pair_residual = std::max(curve.max_pair_residual, res.pair_residual);
    curve.max_spectator_deviation =
        std::max(curve.max_spectator_deviation, res.spectator_deviation);
    for (int l = 0; l <= n_retained; ++l) {
      const auto& row = res.rows[static_cast<std::size_t>(l)];
      acc[static_cast<std::size_t>(l)].fold(row.sum / static_cast<double>(row.count), row.min_i,
                                            row.max_i, row.count);
    }
  }
  for (int l = 0; l <= n_retained; ++l) {
    const auto& a = acc[static_cast<std::size_t>(l)];
    MIRow row;
    row.l = l;
    row.mean_i = a.mean;
    row.min_i = a.min_i;
    row.max_i = a.max_i;
    row.std_error = a.samples > 1 ? std::sqrt(a.m2 / (a.samples - 1.0) / a.samples) : 0.0;
    row.subsets = a.evaluations / a.samples;
    row.samples = a.samples;
    curve.rows.push_back(row);
  }
  return curve;
}

}  // namespace

PureState scrambled_state(const ExperimentConfig& cfg, int index) {
  cfg.validate();
  Rng rng = Rng::stream(cfg.ensemble.seed, static_cast<std::uint64_t>(index));
  return make_sample_state(cfg, build_initial_state(cfg.n_players, cfg.s_mixed), rng);
}

MICurve run_experiment(const ExperimentConfig& cfg) {
  return run_core(cfg, cfg.n_players, 0);
}

MICurve discard_shares(const ExperimentConfig& pure_cfg, int discard) {
  if (pure_cfg.s_mixed != 0) throw std::invalid_argument("discard path starts from a pure run");
  if (discard < 0 || discard >= pure_cfg.n_players) {
    throw std::invalid_argument("must discard fewer shares than players");
  }
  return run_core(pure_cfg, pure_cfg.n_players, discard);
}

double decoupling_fidelity(const PureState& state, const SubsystemMask& c) {
  c.validate_for(state.layout);
  if (c.contains(kSiteR)) throw std::invalid_argument("subsystem may not contain R");
  if (state.layout.has_role(Role::Bmem)) {
    for (int s : state.layout.role_sites(Role::Bmem)) {
      if (c.contains(s)) throw std::invalid_argument("subsystem may not contain memory");
    }
  }
  if (c.empty()) return 1.0;
  const auto joint = partial_trace(state, SubsystemMask({kSiteR}).unite(c));
  const auto product =
      tensor_product(partial_trace(state, SubsystemMask({kSiteR})), partial_trace(state, c));
  return fidelity(joint, DensityMatrix{joint.layout, product.matrix});
}

LScramblingVerdict is_l_scrambling(const std::vector<PureState>& samples, int l, double eps_tol) {
  LScramblingVerdict verdict;
  verdict.pass = true;
  for (const auto& state : samples) {
    std::vector<int> pool = state.layout.role_sites(Role::A);
    for (int s : state.layout.role_sites(Role::B)) pool.push_back(s);
    std::sort(pool.begin(), pool.end());
    for (int size = 1; size < l; ++size) {
      for (const auto& subset : all_subsets(pool, size)) {
        const double f = decoupling_fidelity(state, SubsystemMask(subset));
        if (f < verdict.worst_fidelity) {
          verdict.worst_fidelity = f;
          verdict.worst_subset = subset;
        }
      }
    }
  }
  verdict.pass = verdict.worst_fidelity >= 1.0 - eps_tol;
  return verdict;
}

double max_tripartite_information(const PureState& state) {
  std::vector<int> pool = state.layout.role_sites(Role::A);
  for (int s : state.layout.role_sites(Role::B)) pool.push_back(s);
  std::sort(pool.begin(), pool.end());
  const int n = static_cast<int>(pool.size());
  const SubsystemMask r({kSiteR});
  double worst = -std::numeric_limits<double>::infinity();
  for (int size = 1; size <= n - 1; ++size) {
    for (const auto& c_sites : all_subsets(pool, size)) {
      if (2 * size == n && c_sites.front() != pool.front()) continue;
      if (2 * size > n) continue;  // complements cover the rest
      const SubsystemMask c(c_sites);
      std::vector<int> d_sites;
      std::set_difference(pool.begin(), pool.end(), c_sites.begin(), c_sites.end(),
                          std::back_inserter(d_sites));
      const SubsystemMask d(d_sites);
      worst = std::max(worst, tripartite_information(state, r, c, d));
    }
  }
  return worst;
}

namespace {

Matrix embed_operator(const Matrix& op, const SubsystemMask& sites, int n_qubits) {
  const std::int64_t dim = std::int64_t(1) << n_qubits;
  const std::int64_t d_op = op.rows();
  if ((std::int64_t(1) << sites.size()) != d_op) {
    throw std::invalid_argument("operator dimension does not match sites");
  }
  Matrix full = Matrix::Zero(dim, dim);
  std::int64_t sub_mask = 0;
  for (int s : sites.sites()) sub_mask |= std::int64_t(1) << s;
  const auto compress = [&](std::int64_t idx) {
    std::int64_t out = 0;
    int bit = 0;
    for (int s : sites.sites()) {
      out |= ((idx >> s) & 1) << bit;
      ++bit;
    }
    return out;
  };
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::int64_t rest = i & ~sub_mask;
    const std::int64_t oi = compress(i);
    for (std::int64_t oj = 0; oj < d_op; ++oj) {
      std::int64_t j = rest;
      int bit = 0;
      for (int s : sites.sites()) {
        j |= ((oj >> bit) & 1) << s;
        ++bit;
      }
      full(i, j) = op(oi, oj);
    }
  }
  return full;
}

}  // namespace

OTOCResult otoc(const Matrix& u, int n_qubits, const SubsystemMask& w_sites, const Matrix& w_op,
                const SubsystemMask& v_sites, const Matrix& v_op) {
  if (!w_sites.disjoint(v_sites)) throw std::invalid_argument("otoc: overlapping supports");
  if (unitarity_error(w_op) > 1e-9 || unitarity_error(v_op) > 1e-9) {
    throw std::invalid_argument("otoc: operators must be unitary");
  }
  const std::int64_t dim = std::int64_t(1) << n_qubits;
  if (u.rows() != dim) throw std::invalid_argument("otoc: unitary dimension mismatch");
  const Matrix w_full = embed_operator(w_op, w_sites, n_qubits);
  const Matrix v_full = embed_operator(v_op, v_sites, n_qubits);
  const Matrix w_t = u.adjoint() * w_full * u;
  OTOCResult res;
  res.d_w = w_op.rows();
  res.d_v = v_op.rows();
  res.f = (w_t.adjoint() * v_full.adjoint() * w_t * v_full).trace() / static_cast<double>(dim);
  const Matrix comm = v_full * w_t - w_t * v_full;
  res.commutator = comm.squaredNorm() / static_cast<double>(dim);
  return res;
}

double chaotic_criterion_value(std::int64_t d_a, std::int64_t d_d) {
  if (d_a < 1 || d_d < 1) throw std::invalid_argument("dims must be >= 1");
  const double a2 = static_cast<double>(d_a) * static_cast<double>(d_a);
  const double d2 = static_cast<double>(d_d) * static_cast<double>(d_d);
  return 1.0 / a2 + 1.0 / d2 - 1.0 / (a2 * d2);
}

Matrix random_pauli_string(int n_sites, Rng& rng) {
  static const Matrix kPauli[4] = {
      (Matrix(2, 2) << 1, 0, 0, 1).finished(),
      (Matrix(2, 2) << 0, 1, 1, 0).finished(),
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Matrix(2, 2) << 1, 0, 0, -1).finished(),
  };
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    const auto& p = kPauli[rng.next_below(4)];
    // kron with the new site as the high (slow) factor
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) = p(i, j) * out;
      }
    }
    out = std::move(next);
  }
  return out;
}

OTOCMCResult otoc_mc(int n_qubits, EnsembleKind kind, int samples, std::uint64_t seed,
                     const std::vector<int>& w_sites, const std::vector<int>& v_sites) {
  if (samples < 1) throw std::invalid_argument("otoc_mc: need samples >= 1");
  const SubsystemMask wm(w_sites), vm(v_sites);
  if (!wm.disjoint(vm)) throw std::invalid_argument("otoc_mc: overlapping supports");
  const std::int64_t dim = std::int64_t(1) << n_qubits;
  OTOCMCResult res;
  res.target = chaotic_criterion_value(std::int64_t(1) << wm.size(), std::int64_t(1) << vm.size());
  double mean_re = 0.0, m2_re = 0.0, mean_im = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    Matrix u;
    if (kind == EnsembleKind::Haar) {
      u = sample_haar(dim, rng);
    } else {
      u = circuit_to_unitary(sample_clifford_circuit(n_qubits, rng), n_qubits);
    }
    const Matrix w = random_pauli_string(wm.size(), rng);
    const Matrix v = random_pauli_string(vm.size(), rng);
    const auto r = otoc(u, n_qubits, wm, w, vm, v);
    res.per_sample.push_back({r.f, r.commutator});
    const double re = r.f.real();
    const double delta = re - mean_re;
    mean_re += delta / (i + 1);
    m2_re += delta * (re - mean_re);
    mean_im += (r.f.imag() - mean_im) / (i + 1);
  }
  res.mean_f = {mean_re, mean_im};
  res.mean_abs = std::abs(res.mean_f);
  res.std_error =
      samples > 1 ? std::sqrt(m2_re / (samples - 1.0) / samples) : 0.0;
  return res;
}

PageDeviationResult page_deviation_mc(std::int64_t d_a, std::int64_t d_b, int samples,
                                      std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("page_deviation_mc: need samples >= 1");
  PageDeviationResult res;
  res.bound = analytic::page_deviation_bound(d_a, d_b);
  res.samples = samples;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Matrix column = sample_haar_isometry(d_a * d_b, 1, rng);
    // rho_A of the Haar state, A the fast index of the reshape.
    Eigen::Map<const Matrix> psi(column.data(), d_a, d_b);
    Matrix rho = psi * psi.adjoint();
    rho -= Matrix::Identity(d_a, d_a) / static_cast<double>(d_a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    const double x = es.eigenvalues().cwiseAbs().sum();
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  res.mean = mean;
  res.std_error = samples > 1 ? std::sqrt(m2 / (samples - 1.0) / samples) : 0.0;
  return res;
}

}  // namespace scramblab
