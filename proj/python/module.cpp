#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scramblab/analytic.hpp"
#include "scramblab/ensembles.hpp"
#include "scramblab/infotheory.hpp"
#include "scramblab/ramp.hpp"
#include "scramblab/register.hpp"
#include "scramblab/scrambling.hpp"

namespace py = pybind11;
using namespace scramblab;

namespace {

py::array_t<std::complex<double>> to_numpy(const Matrix& m) {
  py::array_t<std::complex<double>> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  }
  return out;
}

Matrix from_numpy(const py::array_t<std::complex<double>>& a) {
  const auto buf = a.unchecked<2>();
  Matrix m(buf.shape(0), buf.shape(1));
  for (py::ssize_t i = 0; i < buf.shape(0); ++i) {
    for (py::ssize_t j = 0; j < buf.shape(1); ++j) m(i, j) = buf(i, j);
  }
  return m;
}

py::dict row_to_dict(const MIRow& r) {
  py::dict d;
  d["l"] = r.l;
  d["mean_I"] = r.mean_i;
  d["min_I"] = r.min_i;
  d["max_I"] = r.max_i;
  d["std_error"] = r.std_error;
  d["subsets"] = r.subsets;
  d["samples"] = r.samples;
  return d;
}

MICurve curve_from_rows(const std::vector<py::dict>& rows, int s_mixed) {
  MICurve c;
  c.s_mixed = s_mixed;
  for (const auto& d : rows) {
    MIRow r;
    r.l = d["l"].cast<int>();
    r.mean_i = d["mean_I"].cast<double>();
    r.min_i = d.contains("min_I") ? d["min_I"].cast<double>() : r.mean_i;
    r.max_i = d.contains("max_I") ? d["max_I"].cast<double>() : r.mean_i;
    r.std_error = d.contains("std_error") ? d["std_error"].cast<double>() : 0.0;
    r.subsets = d.contains("subsets") ? d["subsets"].cast<std::int64_t>() : 1;
    r.samples = d.contains("samples") ? d["samples"].cast<int>() : 1;
    c.rows.push_back(r);
  }
  c.n_players = c.rows.empty() ? 0 : c.rows.back().l;
  return c;
}

}  // namespace

PYBIND11_MODULE(_scramblab, m) {
  m.doc() = "Scrambling experiments, entropic diagnostics and ramp classification";

  m.def("pure_bound", &analytic::pure_bound, py::arg("n"), py::arg("l"));
  m.def("renyi2_mi_bound_mixed", &analytic::renyi2_mi_bound_mixed, py::arg("n"), py::arg("s"),
        py::arg("p"));
  m.def("maximally_mixed_mi", &analytic::maximally_mixed_mi, py::arg("n"), py::arg("l"));
  m.def(
      "avg_purity_exact",
      [](std::int64_t da, std::int64_t db, std::int64_t dc, std::int64_t dd) {
        return analytic::avg_purity_exact({da, db, dc, dd});
      },
      py::arg("d_a"), py::arg("d_b"), py::arg("d_c"), py::arg("d_d"));
  m.def(
      "avg_purity_approx",
      [](std::int64_t da, std::int64_t db, std::int64_t dc, std::int64_t dd) {
        return analytic::avg_purity_approx({da, db, dc, dd});
      },
      py::arg("d_a"), py::arg("d_b"), py::arg("d_c"), py::arg("d_d"));
  m.def("haar_second_moment", &analytic::haar_second_moment);
  m.def("page_deviation_bound", &analytic::page_deviation_bound, py::arg("d_a"), py::arg("d_b"));
  m.def("chaotic_criterion_value", &chaotic_criterion_value, py::arg("d_a"), py::arg("d_d"));
  m.def("epsilon_for_gamma", &analytic::epsilon_for_gamma, py::arg("n"), py::arg("gamma"));
  m.def(
      "theoretical_ramp_params",
      [](double n, double s, double eps) {
        const auto t = analytic::theoretical_ramp_params(n, s, eps);
        py::dict d;
        d["b"] = t.b;
        d["g"] = t.g;
        d["gap"] = t.gap;
        d["rampiness"] = t.rampiness;
        return d;
      },
      py::arg("n"), py::arg("s"), py::arg("eps"));

  m.def(
      "sample_haar",
      [](std::int64_t dim, std::uint64_t seed) {
        Rng rng(seed);
        return to_numpy(sample_haar(dim, rng));
      },
      py::arg("dim"), py::arg("seed") = 0);
  m.def(
      "frame_potential",
      [](const std::string& kind, int n, int t, int samples, std::uint64_t seed) {
        EnsembleSpec spec;
        spec.kind = ensemble_from_name(kind);
        spec.n_sites = n;
        spec.samples = samples;
        spec.seed = seed;
        const auto est = frame_potential(spec, t);
        return py::make_tuple(est.estimate, est.std_error);
      },
      py::arg("kind"), py::arg("n"), py::arg("t") = 2, py::arg("samples") = 500,
      py::arg("seed") = 0);

  m.def(
      "von_neumann_entropy",
      [](const py::array_t<std::complex<double>>& rho) {
        const Matrix mm = from_numpy(rho);
        return von_neumann_entropy(
            DensityMatrix{RegisterLayout({static_cast<int>(mm.rows())}), mm});
      },
      py::arg("rho"));
  m.def(
      "renyi_entropy",
      [](const py::array_t<std::complex<double>>& rho, double alpha) {
        const Matrix mm = from_numpy(rho);
        return renyi_entropy(DensityMatrix{RegisterLayout({static_cast<int>(mm.rows())}), mm},
                             alpha);
      },
      py::arg("rho"), py::arg("alpha"));

  m.def(
      "mi_curve",
      [](int n, int s, const std::string& kind, int samples, std::uint64_t seed, int subsets,
         int threads) {
        ExperimentConfig cfg;
        cfg.n_players = n;
        cfg.s_mixed = s;
        cfg.ensemble.kind = ensemble_from_name(kind);
        cfg.ensemble.n_sites = n;
        cfg.ensemble.samples = samples;
        cfg.ensemble.seed = seed;
        cfg.subsets.cap = subsets;
        cfg.threads = threads;
        const auto curve = run_experiment(cfg);
        std::vector<py::dict> rows;
        for (const auto& r : curve.rows) rows.push_back(row_to_dict(r));
        return rows;
      },
      py::arg("n"), py::arg("s") = 0, py::arg("kind") = "haar", py::arg("samples") = 50,
      py::arg("seed") = 0, py::arg("subsets") = 64, py::arg("threads") = 1);

  m.def(
      "classify",
      [](const std::vector<py::dict>& rows, double gamma, double delta, double i_rs,
         const std::string& mode, int s) {
        const auto curve = curve_from_rows(rows, s);
        const auto p = classify(curve, gamma, delta, i_rs, classify_mode_from_name(mode));
        py::dict d;
        d["N"] = p.n_players;
        d["s"] = p.s;
        d["b"] = p.b;
        d["g"] = p.g;
        d["gap"] = p.gap;
        d["rampiness"] = p.rampiness;
        d["degenerate"] = p.degenerate;
        return d;
      },
      py::arg("rows"), py::arg("gamma") = 0.05, py::arg("delta") = 0.05, py::arg("i_rs") = 2.0,
      py::arg("mode") = "mean", py::arg("s") = 0);

  m.def(
      "encode233",
      [](const std::complex<double>& a, const std::complex<double>& b,
         const std::complex<double>& c) {
        const auto shares = encode233(a, b, c);
        py::array_t<std::complex<double>> out(27);
        auto buf = out.mutable_unchecked<1>();
        for (int i = 0; i < 27; ++i) buf(i) = shares.state.amplitudes[i];
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
  m.def(
      "reconstruct233_fidelity",
      [](const std::complex<double>& a, const std::complex<double>& b,
         const std::complex<double>& c, int share_i, int share_j) {
        return reconstruct233(encode233(a, b, c), share_i, share_j).fidelity_with_input;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("share_i"),
      py::arg("share_j"));

  m.def(
      "otoc_mc",
      [](int n, const std::string& kind, int samples, std::uint64_t seed,
         const std::vector<int>& w_sites, const std::vector<int>& v_sites) {
        const auto r = otoc_mc(n, ensemble_from_name(kind), samples, seed, w_sites, v_sites);
        py::dict d;
        d["mean_re"] = r.mean_f.real();
        d["mean_im"] = r.mean_f.imag();
        d["mean_abs"] = r.mean_abs;
        d["std_error"] = r.std_error;
        d["target"] = r.target;
        return d;
      },
      py::arg("n"), py::arg("kind") = "haar", py::arg("samples") = 500, py::arg("seed") = 0,
      py::arg("w_sites") = std::vector<int>{0}, py::arg("v_sites") = std::vector<int>{1, 2, 3});

  m.def(
      "page_deviation_mc",
      [](std::int64_t d_a, std::int64_t d_b, int samples, std::uint64_t seed) {
        const auto r = page_deviation_mc(d_a, d_b, samples, seed);
        return py::make_tuple(r.mean, r.std_error, r.bound);
      },
      py::arg("d_a"), py::arg("d_b"), py::arg("samples") = 300, py::arg("seed") = 0);

  m.attr("__version__") = "0.1.0";
}
