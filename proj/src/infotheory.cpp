#include "scramblab/infotheory.hpp"

#include <cmath>

namespace scramblab {

namespace {

constexpr double kEigFloor = 1e-12;
constexpr double kNegTol = 1e-10;
const double kLog2e = 1.0 / std::log(2.0);

double checked(double lambda) {
  if (lambda < -kNegTol) {
    throw std::invalid_argument("spectrum has negative eigenvalue beyond tolerance");
  }
  return lambda < kEigFloor ? 0.0 : lambda;
}

Eigen::VectorXd spectrum_of(const DensityMatrix& rho) {
  if ((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("density matrix not hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Principal square root of a PSD matrix.
Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::sqrt(checked(lam[i]));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = checked(eigenvalues[i]);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s * kLog2e;
}

double renyi_from_spectrum(const Eigen::VectorXd& eigenvalues, double alpha) {
  if (alpha < 0.0 || std::abs(alpha - 1.0) < 5e-7) {
    throw std::invalid_argument("renyi order must be >= 0 and away from 1");
  }
  double t = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = checked(eigenvalues[i]);
    if (l > 0.0) t += std::pow(l, alpha);
  }
  return std::log(t) * kLog2e / (1.0 - alpha);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_from_spectrum(spectrum_of(rho));
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  return renyi_from_spectrum(spectrum_of(rho), alpha);
}

double mutual_information(const PureState& state, const SubsystemMask& x, const SubsystemMask& y,
                          std::optional<double> alpha) {
  if (!x.disjoint(y)) throw std::invalid_argument("mutual_information: overlapping masks");
  const auto xy = x.unite(y);
  const auto sx = reduced_spectrum(state, x);
  const auto sy = reduced_spectrum(state, y);
  const auto sxy = reduced_spectrum(state, xy);
  if (alpha) {
    return renyi_from_spectrum(sx, *alpha) + renyi_from_spectrum(sy, *alpha) -
           renyi_from_spectrum(sxy, *alpha);
  }
  return entropy_from_spectrum(sx) + entropy_from_spectrum(sy) - entropy_from_spectrum(sxy);
}

double mutual_information(const DensityMatrix& rho, const SubsystemMask& x, const SubsystemMask& y,
                          std::optional<double> alpha) {
  if (!x.disjoint(y)) throw std::invalid_argument("mutual_information: overlapping masks");
  const auto xy = x.unite(y);
  const auto sx = spectrum_of(partial_trace(rho, x));
  const auto sy = spectrum_of(partial_trace(rho, y));
  const auto sxy = spectrum_of(partial_trace(rho, xy));
  if (alpha) {
    return renyi_from_spectrum(sx, *alpha) + renyi_from_spectrum(sy, *alpha) -
           renyi_from_spectrum(sxy, *alpha);
  }
  return entropy_from_spectrum(sx) + entropy_from_spectrum(sy) - entropy_from_spectrum(sxy);
}

double tripartite_information(const PureState& state, const SubsystemMask& r,
                              const SubsystemMask& c, const SubsystemMask& d) {
  if (!r.disjoint(c) || !r.disjoint(d) || !c.disjoint(d)) {
    throw std::invalid_argument("tripartite_information: masks overlap");
  }
  return mutual_information(state, r, c) + mutual_information(state, r, d) -
         mutual_information(state, r, c.unite(d));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.matrix.rows() != sigma.matrix.rows()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix - sigma.matrix, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.matrix.rows() != sigma.matrix.rows()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Matrix root = psd_sqrt(rho.matrix);
  Matrix inner = root * sigma.matrix * root;
  // Hermitize away rounding noise before taking the PSD square root.
  inner = 0.5 * (inner + Matrix(inner.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    f += std::sqrt(checked(es.eigenvalues()[i]));
  }
  return f * f;
}

double pinsker_slack(const PureState& state, const SubsystemMask& x, const SubsystemMask& y) {
  const double mi = mutual_information(state, x, y);
  const auto joint = partial_trace(state, x.unite(y));
  const auto rx = partial_trace(state, x);
  const auto ry = partial_trace(state, y);

  // rho_x (x) rho_y written in the joint's basis, whose sites run in
  // sorted-union order rather than x-before-y.
  const auto union_mask = x.unite(y);
  const auto& union_sites = union_mask.sites();
  const std::int64_t du = joint.matrix.rows();
  std::vector<std::int64_t> to_x(union_sites.size(), 0), to_y(union_sites.size(), 0);
  std::int64_t sx = 1, sy = 1;
  for (std::size_t p = 0; p < union_sites.size(); ++p) {
    if (x.contains(union_sites[p])) {
      to_x[p] = sx;
      sx *= joint.layout.site_dim(static_cast<int>(p));
    } else {
      to_y[p] = sy;
      sy *= joint.layout.site_dim(static_cast<int>(p));
    }
  }
  auto split = [&](std::int64_t u) {
    std::int64_t ix = 0, iy = 0;
    for (std::size_t p = 0; p < union_sites.size(); ++p) {
      const int d = joint.layout.site_dim(static_cast<int>(p));
      const std::int64_t digit = u % d;
      u /= d;
      ix += digit * to_x[p];
      iy += digit * to_y[p];
    }
    return std::pair<std::int64_t, std::int64_t>{ix, iy};
  };
  Matrix product(du, du);
  for (std::int64_t u = 0; u < du; ++u) {
    const auto [uxi, uyi] = split(u);
    for (std::int64_t v = 0; v < du; ++v) {
      const auto [vxi, vyi] = split(v);
      product(u, v) = rx.matrix(uxi, vxi) * ry.matrix(uyi, vyi);
    }
  }
  const double delta = trace_distance(joint, DensityMatrix{joint.layout, std::move(product)});
  return mi - 2.0 * kLog2e * delta * delta;
}

std::pair<double, double> fuchs_van_de_graaf_slacks(const DensityMatrix& rho,
                                                    const DensityMatrix& sigma) {
  const double f = fidelity(rho, sigma);
  const double delta = trace_distance(rho, sigma);
  const double root = std::sqrt(std::max(0.0, f));
  return {delta - (1.0 - root), std::sqrt(std::max(0.0, 1.0 - f)) - delta};
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.layout.site_dims();
  dims.insert(dims.end(), b.layout.site_dims().begin(), b.layout.site_dims().end());
  RegisterLayout layout(std::move(dims));
  const std::int64_t da = a.matrix.rows();
  const std::int64_t db = b.matrix.rows();
  Matrix out(da * db, da * db);
  for (std::int64_t i = 0; i < db; ++i) {
    for (std::int64_t j = 0; j < db; ++j) {
      out.block(i * da, j * da, da, da) = b.matrix(i, j) * a.matrix;
    }
  }
  return DensityMatrix{std::move(layout), std::move(out)};
}

}  // namespace scramblab
