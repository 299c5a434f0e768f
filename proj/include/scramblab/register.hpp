#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace scramblab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Thrown when a register would exceed the amplitude budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Role { R, A, B, Bmem };

std::string role_name(Role r);

// A register of qudits with named roles. Amplitude indexing is
// little-endian: site 0 varies fastest, index = sum_k digit_k * stride_k
// with stride_0 = 1 and stride_{k+1} = stride_k * dim_k. Every reshape in
// the project follows this convention.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<int> site_dims,
                          std::map<Role, std::vector<int>> roles = {});

  int num_sites() const { return static_cast<int>(dims_.size()); }
  int site_dim(int site) const { return dims_.at(static_cast<std::size_t>(site)); }
  const std::vector<int>& site_dims() const { return dims_; }
  std::int64_t stride(int site) const { return strides_.at(static_cast<std::size_t>(site)); }
  std::int64_t total_dim() const { return total_; }

  const std::map<Role, std::vector<int>>& roles() const { return roles_; }
  const std::vector<int>& role_sites(Role r) const;
  bool has_role(Role r) const { return roles_.count(r) != 0; }

  static constexpr std::int64_t kMaxAmplitudes = std::int64_t(1) << 24;

 private:
  std::vector<int> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t total_ = 1;
  std::map<Role, std::vector<int>> roles_;
};

// Strictly increasing site indices selecting a subsystem.
class SubsystemMask {
 public:
  SubsystemMask() = default;
  explicit SubsystemMask(std::vector<int> sites);

  const std::vector<int>& sites() const { return sites_; }
  bool empty() const { return sites_.empty(); }
  int size() const { return static_cast<int>(sites_.size()); }
  bool contains(int site) const;

  void validate_for(const RegisterLayout& layout) const;
  std::int64_t dim(const RegisterLayout& layout) const;
  SubsystemMask complement(const RegisterLayout& layout) const;
  SubsystemMask unite(const SubsystemMask& other) const;
  bool disjoint(const SubsystemMask& other) const;

 private:
  std::vector<int> sites_;
};

struct PureState {
  RegisterLayout layout;
  Vector amplitudes;

  // || |amplitudes|_2 - 1 ||
  double norm_error() const { return std::abs(amplitudes.norm() - 1.0); }
};

struct DensityMatrix {
  RegisterLayout layout;
  Matrix matrix;
};

// Checks the DensityMatrix invariants (hermitian, unit trace, eigenvalues
// >= -1e-10) and throws std::invalid_argument on violation.
void validate_density(const DensityMatrix& rho, double tol = 1e-10);

PureState basis_state(const RegisterLayout& layout, const std::vector<int>& digits);

// (1/sqrt(d)) sum_i |ii> on a fresh two-site layout of dimension d each.
PureState max_entangled_pair(int d);

// Kronecker product; a occupies the low (fast) sites, b is shifted up.
PureState tensor(const PureState& a, const PureState& b);

// Applies u to the target sites (identity elsewhere). dim(u) must equal
// the product of the target site dimensions; targets follow the
// little-endian order of the mask within u's own indexing.
PureState apply_unitary(const PureState& state, const Matrix& u, const SubsystemMask& targets);

DensityMatrix partial_trace(const PureState& state, const SubsystemMask& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemMask& keep);

// Eigenvalues of the reduced density matrix on `keep`, obtained from the
// Gram matrix of the smaller side of the bipartition (the two sides share
// their nonzero spectrum for a pure state). Ascending order, may include
// small negative rounding noise near zero.
Eigen::VectorXd reduced_spectrum(const PureState& state, const SubsystemMask& keep);

// Purification sum_k sqrt(l_k) |v_k>|k> with eigenvalues below 1e-12
// truncated; the memory is a single appended site whose dimension is the
// rank of rho. Eigenvector phases are fixed by making the largest-modulus
// component real-positive, so the result is deterministic.
PureState purify(const DensityMatrix& rho);

}  // namespace scramblab
