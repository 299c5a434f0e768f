// scramblab: scrambling experiments, closed-form oracles and ramp
// classification from the command line. Every run writes its artifacts
// plus a manifest.json into --out-dir; identical flags and seed give
// byte-identical data files.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "scramblab/analytic.hpp"
#include "scramblab/ensembles.hpp"
#include "scramblab/io.hpp"
#include "scramblab/ramp.hpp"
#include "scramblab/scrambling.hpp"
#include "scramblab/svg.hpp"

namespace fs = std::filesystem;
using namespace scramblab;
using nlohmann::json;

namespace {

struct CommonOpts {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::uint64_t resolve_seed(const CommonOpts& common) {
  if (common.seed_given) return common.seed;
  if (const char* env = std::getenv("SCRAMBLAB_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return common.seed;
}

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->fallthrough();  // lets --config after the subcommand reach the app
  cmd->add_option("--out-dir", common.out_dir, "directory for all artifacts");
  cmd->add_option("--seed", common.seed, "rng seed (fallback: SCRAMBLAB_SEED, then 0)")
      ->each([&common](const std::string&) { common.seed_given = true; });
}

std::string out_path(const CommonOpts& common, const std::string& name) {
  fs::create_directories(common.out_dir);
  return (fs::path(common.out_dir) / name).string();
}

class ManifestWriter {
 public:
  ManifestWriter(std::string subcommand, const CommonOpts& common)
      : subcommand_(std::move(subcommand)), common_(common),
        start_(std::chrono::steady_clock::now()) {}

  void add_artifact(const std::string& path, const std::string& content) {
    io::write_file(path, content);
    artifacts_.push_back(fs::path(path).filename().string());
  }

  // written last: its presence marks a completed run
  void finish(const json& config, std::uint64_t seed) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    const json manifest = io::make_manifest(subcommand_, config, seed, artifacts_, ms);
    io::write_file(out_path(common_, "manifest.json"), manifest.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  const CommonOpts& common_;
  std::vector<std::string> artifacts_;
  std::chrono::steady_clock::time_point start_;
};

int cmd_mi_curve(const CommonOpts& common, int n, int s, const std::string& ensemble, int samples,
                 int subsets, int threads, int discard) {
  ExperimentConfig cfg;
  cfg.n_players = n;
  cfg.s_mixed = s;
  cfg.ensemble.kind = ensemble_from_name(ensemble);
  cfg.ensemble.n_sites = n;
  cfg.ensemble.samples = samples;
  cfg.ensemble.seed = resolve_seed(common);
  cfg.subsets.cap = subsets;
  cfg.threads = threads;

  ManifestWriter manifest("mi-curve", common);
  const MICurve curve = discard > 0 ? discard_shares(cfg, discard) : run_experiment(cfg);
  manifest.add_artifact(out_path(common, "curve.csv"), io::curve_to_csv(curve));
  manifest.add_artifact(out_path(common, "curve.json"), io::curve_metadata(curve).dump(2) + "\n");

  json config{{"n", n},           {"s", s},           {"ensemble", ensemble},
              {"samples", samples}, {"subsets", subsets}, {"threads", threads},
              {"discard", discard}};
  manifest.finish(config, cfg.ensemble.seed);
  return 0;
}

int cmd_ramp_classify(const CommonOpts& common, const std::string& curve_path, double gamma,
                      double delta, const std::string& mode, double epsilon, double i_rs,
                      int s_override) {
  MICurve curve = io::curve_from_csv(io::read_file(curve_path));
  const fs::path sidecar = fs::path(curve_path).replace_extension(".json");
  if (fs::exists(sidecar)) {
    io::curve_metadata_into(curve, json::parse(io::read_file(sidecar.string())));
  }
  if (s_override >= 0) curve.s_mixed = s_override;

  ManifestWriter manifest("ramp-classify", common);
  const RampParams params = classify(curve, gamma, delta, i_rs, classify_mode_from_name(mode));
  const auto cmp = validate_against_theory(
      params, epsilon >= 0 ? epsilon : analytic::epsilon_for_gamma(params.n_players, gamma));
  manifest.add_artifact(out_path(common, "ramp.json"),
                        io::ramp_to_json(params, cmp.epsilon_searched).dump(2) + "\n");
  manifest.add_artifact(out_path(common, "report.txt"), theory_report_text(cmp));

  json config{{"curve", curve_path}, {"gamma", gamma}, {"delta", delta},
              {"mode", mode},        {"epsilon", epsilon}, {"i_rs", i_rs}};
  manifest.finish(config, curve.seed);
  return 0;
}

int cmd_bounds(const CommonOpts& common, int n, const std::vector<double>& s_list,
               const std::string& out_name) {
  std::vector<analytic::BoundCurve> curves;
  for (double s : s_list) curves.push_back(analytic::bound_curve(n, s));
  ManifestWriter manifest("bounds", common);
  manifest.add_artifact(out_path(common, out_name), io::bounds_to_csv(curves));
  json config{{"n", n}, {"s_list", s_list}, {"out", out_name}};
  manifest.finish(config, 0);
  return 0;
}

int cmd_verify_moments(const CommonOpts& common, std::int64_t dim, int samples) {
  // dim is the total Hilbert-space dimension; the input and output are
  // split evenly, so dim must be a perfect square (4 -> 2|2 splits).
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (root < 2 || root * root != dim) {
    throw std::invalid_argument("verify-moments: --n must be a perfect square >= 4");
  }
  const std::uint64_t seed = resolve_seed(common);
  ManifestWriter manifest("verify-moments", common);

  const auto purity = avg_purity_mc(root, root, root, samples, seed);
  const auto diag = second_moment_mc(0, 0, 0, 0, 0, 0, 0, 0, dim, samples, seed ^ 1);
  const auto cross = second_moment_mc(0, 0, 1, 1, 0, 0, 1, 1, dim, samples, seed ^ 2);

  const auto block = [](const MomentEstimate& e) {
    return json{{"mc_mean", e.mc_mean},
                {"std_error", e.std_error},
                {"exact", e.exact},
                {"z", e.std_error > 0 ? std::abs(e.mc_mean - e.exact) / e.std_error : 0.0},
                {"samples", e.samples}};
  };
  json report{{"dim", dim},
              {"d_a", root},
              {"d_b", root},
              {"d_c", root},
              {"d_d", root},
              {"purity", block(purity)},
              {"purity_approx", analytic::avg_purity_approx({root, root, root, root})},
              {"second_moment_diagonal", block(diag)},
              {"second_moment_cross", block(cross)}};
  manifest.add_artifact(out_path(common, "moments.json"), report.dump(2) + "\n");
  manifest.finish(json{{"n", dim}, {"samples", samples}}, seed);
  return 0;
}

int cmd_qutrit233(const CommonOpts& common, int trials) {
  const std::uint64_t seed = resolve_seed(common);
  ManifestWriter manifest("qutrit233", common);
  Rng rng(seed);
  double min_fidelity = 1.0;
  double worst_marginal = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::Vector3cd secret;
    for (int i = 0; i < 3; ++i) secret[i] = rng.next_complex_gaussian();
    secret.normalize();
    const auto shares = encode233(secret[0], secret[1], secret[2]);
    for (int site = 0; site < 3; ++site) {
      const auto rho = partial_trace(shares.state, SubsystemMask({site}));
      worst_marginal = std::max(
          worst_marginal,
          (rho.matrix - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff());
    }
    for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
      min_fidelity = std::min(min_fidelity, reconstruct233(shares, i, j).fidelity_with_input);
    }
  }
  json report{{"trials", trials},
              {"min_fidelity", min_fidelity},
              {"max_single_share_marginal_deviation", worst_marginal}};
  manifest.add_artifact(out_path(common, "qutrit.json"), report.dump(2) + "\n");
  manifest.finish(json{{"trials", trials}}, seed);
  return 0;
}

int cmd_otoc(const CommonOpts& common, int n, const std::string& ensemble, int samples,
             std::vector<int> wa_sites, std::vector<int> vd_sites) {
  if (wa_sites.empty()) wa_sites = {0};
  if (vd_sites.empty()) {
    for (int site = 1; site < n; ++site) vd_sites.push_back(site);
  }
  const std::uint64_t seed = resolve_seed(common);
  ManifestWriter manifest("otoc", common);
  const auto res = otoc_mc(n, ensemble_from_name(ensemble), samples, seed, wa_sites, vd_sites);

  std::ostringstream csv;
  csv << "sample,re_F,im_F,abs_F,C\n";
  for (std::size_t i = 0; i < res.per_sample.size(); ++i) {
    const auto& s = res.per_sample[i];
    csv << i << ',' << io::format_number(s.f.real()) << ',' << io::format_number(s.f.imag())
        << ',' << io::format_number(std::abs(s.f)) << ',' << io::format_number(s.commutator)
        << "\n";
  }
  manifest.add_artifact(out_path(common, "otoc.csv"), csv.str());
  json summary{{"mean_re", res.mean_f.real()},
               {"mean_im", res.mean_f.imag()},
               {"mean_abs", res.mean_abs},
               {"std_error", res.std_error},
               {"chaotic_value", res.target},
               {"samples", samples}};
  manifest.add_artifact(out_path(common, "otoc.json"), summary.dump(2) + "\n");
  json config{{"n", n}, {"ensemble", ensemble}, {"samples", samples},
              {"wa_sites", wa_sites}, {"vd_sites", vd_sites}};
  manifest.finish(config, seed);
  return 0;
}

int cmd_frame_potential(const CommonOpts& common, int n, const std::string& ensemble, int t,
                        int samples) {
  EnsembleSpec spec;
  spec.kind = ensemble_from_name(ensemble);
  spec.n_sites = n;
  spec.samples = samples;
  spec.seed = resolve_seed(common);
  ManifestWriter manifest("frame-potential", common);
  const auto est = frame_potential(spec, t);
  json report{{"ensemble", ensemble},
              {"n", n},
              {"t", t},
              {"samples", samples},
              {"estimate", est.estimate},
              {"std_error", est.std_error},
              {"design_value", t == 1 ? 1.0 : 2.0}};
  manifest.add_artifact(out_path(common, "fp.json"), report.dump(2) + "\n");
  manifest.finish(json{{"n", n}, {"ensemble", ensemble}, {"t", t}, {"samples", samples}},
                  spec.seed);
  return 0;
}

int cmd_plot(const CommonOpts& common, const std::vector<std::string>& curves,
             const std::string& bounds_path, const std::string& out_name) {
  std::vector<svg::Series> series;
  for (const auto& path : curves) {
    const auto curve = io::curve_from_csv(io::read_file(path));
    svg::Series s;
    s.label = fs::path(path).stem().string();
    for (const auto& r : curve.rows) {
      s.x.push_back(r.l);
      s.y.push_back(r.mean_i);
    }
    series.push_back(std::move(s));
  }
  if (!bounds_path.empty()) {
    // bounds csv: s,l,pure,pure_clamped,mixed,mixed_clamped,max_mixed
    std::istringstream in(io::read_file(bounds_path));
    std::string line;
    std::getline(in, line);
    svg::Series pure;
    pure.label = "pure bound (clamped)";
    pure.dashed = true;
    std::map<double, svg::Series> mixed_by_s;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string field;
      std::vector<double> f;
      while (std::getline(ls, field, ',')) f.push_back(std::stod(field));
      if (f.size() != 7) throw io::IOError("bad bounds row: " + line);
      if (pure.x.empty() || f[1] > pure.x.back()) {
        pure.x.push_back(f[1]);
        pure.y.push_back(f[3]);
      }
      auto& mixed = mixed_by_s[f[0]];
      if (mixed.x.empty()) {
        mixed.label = "mixed bound s=" + io::format_number(f[0]);
        mixed.dashed = true;
      }
      mixed.x.push_back(f[1]);
      mixed.y.push_back(f[5]);
    }
    if (!pure.x.empty()) series.push_back(std::move(pure));
    for (auto& [sv, ser] : mixed_by_s) {
      (void)sv;
      series.push_back(std::move(ser));
    }
  }
  if (series.empty()) throw NoValidSchemeError("nothing to plot");
  ManifestWriter manifest("plot", common);
  manifest.add_artifact(out_path(common, out_name),
                        svg::line_chart(series, "subset size l", "mutual information [bits]"));
  json config{{"curves", curves}, {"bounds", bounds_path}, {"out", out_name}};
  manifest.finish(config, 0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scramblab: haar/clifford scrambling as approximate ramp secret sharing"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style config file ([subcommand] sections)");
  app.set_version_flag("--version", std::string(io::kToolVersion));

  CommonOpts common;

  // mi-curve
  int n = 6, s = 0, samples = 100, subsets = 64, threads = 1, discard = 0;
  std::string ensemble = "haar";
  auto* mi = app.add_subcommand("mi-curve", "monte carlo I(R:P(l)) curve over subsets");
  add_common(mi, common);
  mi->add_option("--n", n, "number of player qubits")->required();
  mi->add_option("--s", s, "initially maximally mixed player qubits");
  mi->add_option("--ensemble", ensemble, "haar | clifford");
  mi->add_option("--samples", samples, "unitary samples");
  mi->add_option("--subsets", subsets, "random subsets per size (exhaustive when fewer exist)");
  mi->add_option("--threads", threads, "worker threads");
  mi->add_option("--discard", discard, "run pure on n players, then drop this many shares");

  // ramp-classify
  std::string curve_path, mode = "mean";
  double gamma = 0.05, delta = 0.05, epsilon = -1.0, i_rs = 2.0;
  int s_override = -1;
  auto* rc = app.add_subcommand("ramp-classify", "extract (b,g) ramp parameters from a curve");
  add_common(rc, common);
  rc->add_option("--curve", curve_path, "curve.csv from mi-curve")->required();
  rc->add_option("--gamma", gamma, "secrecy tolerance in bits");
  rc->add_option("--delta", delta, "recoverability tolerance in bits");
  rc->add_option("--mode", mode, "mean | worst");
  rc->add_option("--epsilon", epsilon, "accuracy parameter for the theory comparison");
  rc->add_option("--irs", i_rs, "I(R:S) of the secret in bits");
  rc->add_option("--s", s_override, "player entropy override when no sidecar is present");

  // bounds
  int bn = 12;
  std::vector<double> s_list{0.0};
  std::string bounds_out = "bounds.csv";
  auto* bd = app.add_subcommand("bounds", "closed-form bound curves as csv");
  add_common(bd, common);
  bd->add_option("--n", bn, "number of player qubits")->required();
  bd->add_option("--s-list", s_list, "player entropies")->delimiter(',');
  bd->add_option("--out", bounds_out, "output csv name");

  // verify-moments
  std::int64_t vm_dim = 4;
  int vm_samples = 400;
  auto* vm = app.add_subcommand("verify-moments", "monte carlo haar moments vs closed forms");
  add_common(vm, common);
  vm->add_option("--n", vm_dim, "total hilbert dimension (perfect square, equal splits)");
  vm->add_option("--samples", vm_samples, "haar samples");

  // qutrit233
  int trials = 100;
  auto* qt = app.add_subcommand("qutrit233", "exact ((2,3)) qutrit codec round trips");
  add_common(qt, common);
  qt->add_option("--trials", trials, "random secrets");

  // otoc
  int on = 4, osamples = 500;
  std::string oensemble = "haar";
  std::vector<int> wa_sites, vd_sites;
  auto* ot = app.add_subcommand("otoc", "out-of-time-ordered correlator monte carlo");
  add_common(ot, common);
  ot->add_option("--n", on, "qubits");
  ot->add_option("--ensemble", oensemble, "haar | clifford");
  ot->add_option("--samples", osamples, "unitary samples");
  ot->add_option("--wa-site", wa_sites, "W support sites (default 0)")->delimiter(',');
  ot->add_option("--vd-site", vd_sites, "V support sites (default all but 0)")->delimiter(',');

  // frame-potential
  int fn = 3, ft = 2, fsamples = 1000;
  std::string fensemble = "clifford";
  auto* fp = app.add_subcommand("frame-potential", "t-design certificate E|Tr(U'V)|^2t");
  add_common(fp, common);
  fp->add_option("--n", fn, "qubits");
  fp->add_option("--ensemble", fensemble, "haar | clifford");
  fp->add_option("--t", ft, "moment order (1 or 2)");
  fp->add_option("--samples", fsamples, "independent pairs");

  // plot
  std::vector<std::string> plot_curves;
  std::string plot_bounds, plot_out = "figure.svg";
  auto* pl = app.add_subcommand("plot", "render curves and bounds as svg");
  add_common(pl, common);
  pl->add_option("--curve", plot_curves, "curve.csv paths")->take_all();
  pl->add_option("--bounds", plot_bounds, "bounds.csv path");
  pl->add_option("--out", plot_out, "output svg name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (mi->parsed()) return cmd_mi_curve(common, n, s, ensemble, samples, subsets, threads, discard);
    if (rc->parsed())
      return cmd_ramp_classify(common, curve_path, gamma, delta, mode, epsilon, i_rs, s_override);
    if (bd->parsed()) return cmd_bounds(common, bn, s_list, bounds_out);
    if (vm->parsed()) return cmd_verify_moments(common, vm_dim, vm_samples);
    if (qt->parsed()) return cmd_qutrit233(common, trials);
    if (ot->parsed()) return cmd_otoc(common, on, oensemble, osamples, wa_sites, vd_sites);
    if (fp->parsed()) return cmd_frame_potential(common, fn, fensemble, ft, fsamples);
    if (pl->parsed()) return cmd_plot(common, plot_curves, plot_bounds, plot_out);
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const NoValidSchemeError& e) {
    std::cerr << "empty result: " << e.what() << "\n";
    return 4;
  } catch (const io::IOError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
