#include "scramblab/register.hpp"

#include <algorithm>
#include <set>

namespace scramblab {

std::string role_name(Role r) {
  switch (r) {
    case Role::R: return "R";
    case Role::A: return "A";
    case Role::B: return "B";
    case Role::Bmem: return "Bmem";
  }
  return "?";
}

RegisterLayout::RegisterLayout(std::vector<int> site_dims, std::map<Role, std::vector<int>> roles)
    : dims_(std::move(site_dims)), roles_(std::move(roles)) {
  strides_.reserve(dims_.size());
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("site dimension must be >= 1");
    strides_.push_back(total_);
    total_ *= d;
    if (total_ > kMaxAmplitudes) {
      throw BudgetError("register exceeds the 2^24 amplitude budget");
    }
  }
  std::set<int> seen;
  for (const auto& [role, sites] : roles_) {
    (void)role;
    for (int s : sites) {
      if (s < 0 || s >= num_sites()) throw std::invalid_argument("role site out of range");
      if (!seen.insert(s).second) throw std::invalid_argument("role site lists overlap");
    }
    if (!std::is_sorted(sites.begin(), sites.end())) {
      throw std::invalid_argument("role site lists must be sorted");
    }
  }
}

const std::vector<int>& RegisterLayout::role_sites(Role r) const {
  auto it = roles_.find(r);
  if (it == roles_.end()) throw std::invalid_argument("layout has no role " + role_name(r));
  return it->second;
}

SubsystemMask::SubsystemMask(std::vector<int> sites) : sites_(std::move(sites)) {
  for (std::size_t i = 1; i < sites_.size(); ++i) {
    if (sites_[i] <= sites_[i - 1]) {
      throw std::invalid_argument("mask sites must be strictly increasing");
    }
  }
  if (!sites_.empty() && sites_.front() < 0) throw std::invalid_argument("negative site index");
}

bool SubsystemMask::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

void SubsystemMask::validate_for(const RegisterLayout& layout) const {
  if (!sites_.empty() && sites_.back() >= layout.num_sites()) {
    throw std::invalid_argument("mask site outside layout");
  }
}

std::int64_t SubsystemMask::dim(const RegisterLayout& layout) const {
  validate_for(layout);
  std::int64_t d = 1;
  for (int s : sites_) d *= layout.site_dim(s);
  return d;
}

SubsystemMask SubsystemMask::complement(const RegisterLayout& layout) const {
  validate_for(layout);
  std::vector<int> rest;
  for (int s = 0; s < layout.num_sites(); ++s) {
    if (!contains(s)) rest.push_back(s);
  }
  return SubsystemMask(rest);
}

SubsystemMask SubsystemMask::unite(const SubsystemMask& other) const {
  std::vector<int> merged;
  std::merge(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
             std::back_inserter(merged));
  return SubsystemMask(merged);  // throws if not strictly increasing, i.e. overlap
}

bool SubsystemMask::disjoint(const SubsystemMask& other) const {
  for (int s : other.sites_) {
    if (contains(s)) return false;
  }
  return true;
}

void validate_density(const DensityMatrix& rho, double tol) {
  const Matrix& m = rho.matrix;
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("density matrix not hermitian within tolerance");
  }
  if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol) {
    throw std::invalid_argument("density matrix trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("density matrix has negative eigenvalues beyond tolerance");
  }
}

PureState basis_state(const RegisterLayout& layout, const std::vector<int>& digits) {
  if (static_cast<int>(digits.size()) != layout.num_sites()) {
    throw std::invalid_argument("digit count != site count");
  }
  std::int64_t idx = 0;
  for (int s = 0; s < layout.num_sites(); ++s) {
    if (digits[s] < 0 || digits[s] >= layout.site_dim(s)) {
      throw std::invalid_argument("digit out of range");
    }
    idx += digits[s] * layout.stride(s);
  }
  Vector amp = Vector::Zero(layout.total_dim());
  amp[idx] = 1.0;
  return PureState{layout, std::move(amp)};
}

PureState max_entangled_pair(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled_pair needs d >= 2");
  RegisterLayout layout({d, d});
  Vector amp = Vector::Zero(layout.total_dim());
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amp[i + std::int64_t(d) * i] = c;
  return PureState{std::move(layout), std::move(amp)};
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.layout.site_dims();
  dims.insert(dims.end(), b.layout.site_dims().begin(), b.layout.site_dims().end());
  std::map<Role, std::vector<int>> roles = a.layout.roles();
  const int shift = a.layout.num_sites();
  for (const auto& [role, sites] : b.layout.roles()) {
    auto& out = roles[role];
    for (int s : sites) out.push_back(s + shift);
    std::sort(out.begin(), out.end());
  }
  RegisterLayout layout(std::move(dims), std::move(roles));  // budget check happens here
  const std::int64_t da = a.layout.total_dim();
  const std::int64_t db = b.layout.total_dim();
  Vector amp(da * db);
  for (std::int64_t j = 0; j < db; ++j) {
    amp.segment(j * da, da) = b.amplitudes[j] * a.amplitudes;
  }
  return PureState{std::move(layout), std::move(amp)};
}

namespace {

// Offset table for a site list: entry k is the amplitude offset of the
// k-th little-endian digit combination on those sites.
std::vector<std::int64_t> offset_table(const RegisterLayout& layout, const std::vector<int>& sites) {
  std::int64_t dim = 1;
  for (int s : sites) dim *= layout.site_dim(s);
  std::vector<std::int64_t> offs(static_cast<std::size_t>(dim));
  offs[0] = 0;
  std::int64_t filled = 1;
  for (int s : sites) {
    const std::int64_t stride = layout.stride(s);
    const int d = layout.site_dim(s);
    for (int digit = 1; digit < d; ++digit) {
      for (std::int64_t k = 0; k < filled; ++k) {
        offs[static_cast<std::size_t>(digit * filled + k)] = offs[static_cast<std::size_t>(k)] + digit * stride;
      }
    }
    filled *= d;
  }
  return offs;
}

// Reshape of a pure state into a (keep x rest) matrix.
Matrix unfold(const PureState& state, const SubsystemMask& keep) {
  keep.validate_for(state.layout);
  const auto rest = keep.complement(state.layout);
  const auto keep_offs = offset_table(state.layout, keep.sites());
  const auto rest_offs = offset_table(state.layout, rest.sites());
  Matrix psi(keep_offs.size(), rest_offs.size());
  for (std::size_t e = 0; e < rest_offs.size(); ++e) {
    const std::int64_t base = rest_offs[e];
    Complex* col = psi.data() + e * keep_offs.size();
    for (std::size_t k = 0; k < keep_offs.size(); ++k) {
      col[k] = state.amplitudes[base + keep_offs[k]];
    }
  }
  return psi;
}

RegisterLayout sub_layout(const RegisterLayout& layout, const std::vector<int>& sites) {
  std::vector<int> dims;
  dims.reserve(sites.size());
  for (int s : sites) dims.push_back(layout.site_dim(s));
  std::map<Role, std::vector<int>> roles;
  for (const auto& [role, rsites] : layout.roles()) {
    std::vector<int> mapped;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (std::binary_search(rsites.begin(), rsites.end(), sites[i])) {
        mapped.push_back(static_cast<int>(i));
      }
    }
    if (!mapped.empty()) roles[role] = std::move(mapped);
  }
  return RegisterLayout(std::move(dims), std::move(roles));
}

}  // namespace

PureState apply_unitary(const PureState& state, const Matrix& u, const SubsystemMask& targets) {
  targets.validate_for(state.layout);
  const std::int64_t dt = targets.dim(state.layout);
  if (u.rows() != dt || u.cols() != dt) {
    throw std::invalid_argument("unitary dimension does not match target sites");
  }
  const auto rest = targets.complement(state.layout);
  const auto t_offs = offset_table(state.layout, targets.sites());
  const auto r_offs = offset_table(state.layout, rest.sites());
  Vector out(state.amplitudes.size());
  Vector x(dt), y(dt);
  for (std::int64_t base : r_offs) {
    for (std::int64_t t = 0; t < dt; ++t) x[t] = state.amplitudes[base + t_offs[static_cast<std::size_t>(t)]];
    y.noalias() = u * x;
    for (std::int64_t t = 0; t < dt; ++t) out[base + t_offs[static_cast<std::size_t>(t)]] = y[t];
  }
  return PureState{state.layout, std::move(out)};
}

DensityMatrix partial_trace(const PureState& state, const SubsystemMask& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep mask");
  Matrix psi = unfold(state, keep);
  Matrix rho = Matrix::Zero(psi.rows(), psi.rows());
  rho.selfadjointView<Eigen::Lower>().rankUpdate(psi);
  rho.triangularView<Eigen::StrictlyUpper>() = rho.adjoint();
  return DensityMatrix{sub_layout(state.layout, keep.sites()), std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemMask& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep mask");
  keep.validate_for(rho.layout);
  const auto rest = keep.complement(rho.layout);
  const auto k_offs = offset_table(rho.layout, keep.sites());
  const auto r_offs = offset_table(rho.layout, rest.sites());
  const std::int64_t dk = static_cast<std::int64_t>(k_offs.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (std::int64_t i = 0; i < dk; ++i) {
    for (std::int64_t j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::int64_t e : r_offs) {
        acc += rho.matrix(e + k_offs[static_cast<std::size_t>(i)], e + k_offs[static_cast<std::size_t>(j)]);
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix{sub_layout(rho.layout, keep.sites()), std::move(out)};
}

Eigen::VectorXd reduced_spectrum(const PureState& state, const SubsystemMask& keep) {
  keep.validate_for(state.layout);
  if (keep.empty()) {
    Eigen::VectorXd one(1);
    one[0] = 1.0;
    return one;
  }
  const std::int64_t dk = keep.dim(state.layout);
  const std::int64_t de = state.layout.total_dim() / dk;
  const SubsystemMask side = (dk <= de) ? keep : keep.complement(state.layout);
  Matrix psi = unfold(state, side);
  Matrix gram = Matrix::Zero(psi.rows(), psi.rows());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(psi);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

PureState purify(const DensityMatrix& rho) {
  validate_density(rho, 1e-8);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
  const auto& evals = es.eigenvalues();
  const auto& evecs = es.eigenvectors();
  const std::int64_t n = evals.size();

  std::vector<int> order;  // descending eigenvalue, truncated below 1e-12
  for (std::int64_t i = n - 1; i >= 0; --i) {
    if (evals[i] < -1e-10) throw std::invalid_argument("purify: input not PSD");
    if (evals[i] > 1e-12) order.push_back(static_cast<int>(i));
  }
  const int rank = static_cast<int>(order.size());
  if (rank == 0) throw std::invalid_argument("purify: zero-rank input");

  std::vector<int> dims = rho.layout.site_dims();
  dims.push_back(rank);
  RegisterLayout layout(std::move(dims), rho.layout.roles());
  Vector amp = Vector::Zero(layout.total_dim());
  for (int k = 0; k < rank; ++k) {
    Vector v = evecs.col(order[static_cast<std::size_t>(k)]);
    // Phase convention: largest-modulus component real-positive.
    int arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    const Complex pivot = v[arg];
    if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
    const double w = std::sqrt(evals[order[static_cast<std::size_t>(k)]]);
    amp.segment(std::int64_t(k) * n, n) = w * v;
  }
  return PureState{std::move(layout), std::move(amp)};
}

}  // namespace scramblab
