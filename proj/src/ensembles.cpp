#include "scramblab/ensembles.hpp"

#include <cmath>
#include <sstream>

#include "scramblab/analytic.hpp"

namespace scramblab {

std::string ensemble_name(EnsembleKind k) {
  return k == EnsembleKind::Haar ? "haar" : "clifford";
}

EnsembleKind ensemble_from_name(const std::string& name) {
  if (name == "haar") return EnsembleKind::Haar;
  if (name == "clifford") return EnsembleKind::Clifford;
  throw std::invalid_argument("unknown ensemble: " + name);
}

std::int64_t EnsembleSpec::dim() const {
  std::int64_t d = 1;
  for (int i = 0; i < n_sites; ++i) {
    d *= site_dim;
    if (d > RegisterLayout::kMaxAmplitudes) throw BudgetError("ensemble dimension over budget");
  }
  return d;
}

void EnsembleSpec::validate() const {
  if (samples < 1) throw std::invalid_argument("ensemble needs samples >= 1");
  if (n_sites < 1) throw std::invalid_argument("ensemble needs n_sites >= 1");
  if (kind == EnsembleKind::Clifford && site_dim != 2) {
    throw std::invalid_argument("clifford ensemble requires qubits");
  }
  (void)dim();
}

std::string CircuitDescription::to_text() const {
  std::ostringstream out;
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::H: out << "H " << g.a << "\n"; break;
      case Gate::S: out << "S " << g.a << "\n"; break;
      case Gate::CNOT: out << "CNOT " << g.a << " " << g.b << "\n"; break;
    }
  }
  return out.str();
}

CircuitDescription CircuitDescription::from_text(const std::string& text) {
  CircuitDescription c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    Gate g{};
    if (name == "H") {
      g.kind = Gate::H;
      if (!(ls >> g.a)) throw std::invalid_argument("bad gate line: " + line);
    } else if (name == "S") {
      g.kind = Gate::S;
      if (!(ls >> g.a)) throw std::invalid_argument("bad gate line: " + line);
    } else if (name == "CNOT") {
      g.kind = Gate::CNOT;
      if (!(ls >> g.a >> g.b)) throw std::invalid_argument("bad gate line: " + line);
      if (g.a == g.b) throw std::invalid_argument("CNOT targets must differ");
    } else {
      throw std::invalid_argument("unknown gate: " + name);
    }
    c.gates.push_back(g);
  }
  return c;
}

Matrix sample_haar_isometry(std::int64_t dim, std::int64_t cols, Rng& rng) {
  if (dim < 2 || cols < 1 || cols > dim) throw std::invalid_argument("bad isometry shape");
  if (dim > RegisterLayout::kMaxAmplitudes) throw BudgetError("haar dimension over budget");
  Matrix g(dim, cols);
  for (std::int64_t j = 0; j < cols; ++j) {
    for (std::int64_t i = 0; i < dim; ++i) g(i, j) = rng.next_complex_gaussian();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, cols);
  for (std::int64_t j = 0; j < cols; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0) q.col(j) *= r / mag;
  }
  return q;
}

Matrix sample_haar(std::int64_t dim, Rng& rng) { return sample_haar_isometry(dim, dim, rng); }

CircuitDescription sample_clifford_circuit(int n_qubits, Rng& rng) {
  if (n_qubits < 1 || n_qubits > 12) throw std::invalid_argument("clifford sampler: 1 <= n <= 12");
  const int n = n_qubits;
  const std::uint64_t n_instances =
      static_cast<std::uint64_t>(n) * 2 + static_cast<std::uint64_t>(n) * (n - 1);
  CircuitDescription c;
  c.gates.reserve(6 * static_cast<std::size_t>(n) * n);
  for (int k = 0; k < 6 * n * n; ++k) {
    const auto pick = rng.next_below(n_instances);
    Gate g{};
    if (pick < static_cast<std::uint64_t>(n)) {
      g.kind = Gate::H;
      g.a = static_cast<int>(pick);
    } else if (pick < static_cast<std::uint64_t>(2 * n)) {
      g.kind = Gate::S;
      g.a = static_cast<int>(pick) - n;
    } else {
      const auto p = pick - 2 * static_cast<std::uint64_t>(n);
      const int control = static_cast<int>(p / (n - 1));
      int target = static_cast<int>(p % (n - 1));
      if (target >= control) ++target;
      g.kind = Gate::CNOT;
      g.a = control;
      g.b = target;
    }
    c.gates.push_back(g);
  }
  return c;
}

namespace {

const double kInvSqrt2 = 0.70710678118654752440;

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("gate target out of range");
}

// Applies one gate to every column of m, interpreting row indices as
// little-endian qubit strings.
void apply_gate_to_matrix(Matrix& m, const Gate& g, int n_qubits) {
  const std::int64_t dim = m.rows();
  check_qubit(g.a, n_qubits);
  if (g.kind == Gate::CNOT) check_qubit(g.b, n_qubits);
  const std::int64_t bit_a = std::int64_t(1) << g.a;
  for (std::int64_t col = 0; col < m.cols(); ++col) {
    Complex* v = m.data() + col * dim;
    switch (g.kind) {
      case Gate::H:
        for (std::int64_t i = 0; i < dim; ++i) {
          if (i & bit_a) continue;
          const Complex lo = v[i], hi = v[i | bit_a];
          v[i] = kInvSqrt2 * (lo + hi);
          v[i | bit_a] = kInvSqrt2 * (lo - hi);
        }
        break;
      case Gate::S:
        for (std::int64_t i = 0; i < dim; ++i) {
          if (i & bit_a) v[i] *= Complex(0.0, 1.0);
        }
        break;
      case Gate::CNOT: {
        const std::int64_t bit_b = std::int64_t(1) << g.b;
        for (std::int64_t i = 0; i < dim; ++i) {
          if ((i & bit_a) && !(i & bit_b)) std::swap(v[i], v[i | bit_b]);
        }
        break;
      }
    }
  }
}

}  // namespace

Matrix circuit_to_unitary(const CircuitDescription& circuit, int n_qubits) {
  const std::int64_t dim = std::int64_t(1) << n_qubits;
  if (dim > RegisterLayout::kMaxAmplitudes) throw BudgetError("circuit unitary over budget");
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& g : circuit.gates) apply_gate_to_matrix(u, g, n_qubits);
  return u;
}

void apply_gate_in_place(PureState& state, const Gate& gate, const std::vector<int>& site_of_qubit) {
  const auto site = [&](int q) {
    const int s = site_of_qubit.at(static_cast<std::size_t>(q));
    if (state.layout.site_dim(s) != 2) throw std::invalid_argument("gate on non-qubit site");
    return s;
  };
  const std::int64_t total = state.layout.total_dim();
  Complex* v = state.amplitudes.data();
  const std::int64_t stride_a = state.layout.stride(site(gate.a));
  switch (gate.kind) {
    case Gate::H:
      for (std::int64_t i = 0; i < total; ++i) {
        if ((i / stride_a) & 1) continue;
        const Complex lo = v[i], hi = v[i + stride_a];
        v[i] = kInvSqrt2 * (lo + hi);
        v[i + stride_a] = kInvSqrt2 * (lo - hi);
      }
      break;
    case Gate::S:
      for (std::int64_t i = 0; i < total; ++i) {
        if ((i / stride_a) & 1) v[i] *= Complex(0.0, 1.0);
      }
      break;
    case Gate::CNOT: {
      const std::int64_t stride_b = state.layout.stride(site(gate.b));
      for (std::int64_t i = 0; i < total; ++i) {
        if (((i / stride_a) & 1) && !((i / stride_b) & 1)) std::swap(v[i], v[i + stride_b]);
      }
      break;
    }
  }
}

FramePotentialEstimate frame_potential(const EnsembleSpec& spec, int t) {
  spec.validate();
  if (t != 1 && t != 2) throw std::invalid_argument("frame_potential: t must be 1 or 2");
  if (spec.samples < 100) throw std::invalid_argument("frame_potential: need >= 100 samples");
  const std::int64_t dim = spec.dim();

  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < spec.samples; ++i) {
    Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(i));
    Matrix u, v;
    if (spec.kind == EnsembleKind::Haar) {
      u = sample_haar(dim, rng);
      v = sample_haar(dim, rng);
    } else {
      u = circuit_to_unitary(sample_clifford_circuit(spec.n_sites, rng), spec.n_sites);
      v = circuit_to_unitary(sample_clifford_circuit(spec.n_sites, rng), spec.n_sites);
    }
    const Complex tr = u.conjugate().cwiseProduct(v).sum();  // Tr(U^dag V)
    const double overlap2 = std::norm(tr);
    const double x = (t == 1) ? overlap2 : overlap2 * overlap2;
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  const int n = spec.samples;
  return {mean, std::sqrt(m2 / (static_cast<double>(n) - 1.0) / n), n};
}

double unitarity_error(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

MomentEstimate avg_purity_mc(std::int64_t d_a, std::int64_t d_b, std::int64_t d_c, int samples,
                             std::uint64_t seed) {
  const std::int64_t d = d_a * d_b;
  if (d_c < 1 || d % d_c != 0) throw std::invalid_argument("d_c must divide d_a*d_b");
  const std::int64_t d_d = d / d_c;
  analytic::PartitionDims dims{d_a, d_b, d_c, d_d};
  MomentEstimate est;
  est.exact = analytic::avg_purity_exact(dims);
  est.samples = samples;
  double mean = 0.0, m2 = 0.0;
  Matrix psi(d_a * d_c, d_b * d_d);
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Matrix u = sample_haar(d, rng);
    // Choi state amplitude psi[(c,d),(a,b)] = U[(c,d),(a,b)] / sqrt(d),
    // regrouped as (a_ref, c) x (b_ref, d).
    for (std::int64_t a = 0; a < d_a; ++a) {
      for (std::int64_t b = 0; b < d_b; ++b) {
        for (std::int64_t c = 0; c < d_c; ++c) {
          for (std::int64_t dd = 0; dd < d_d; ++dd) {
            psi(a + d_a * c, b + d_b * dd) = u(c + d_c * dd, a + d_a * b);
          }
        }
      }
    }
    psi /= std::sqrt(static_cast<double>(d));
    const double x = (psi * psi.adjoint()).squaredNorm();
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  est.mc_mean = mean;
  est.std_error = samples > 1 ? std::sqrt(m2 / (samples - 1.0) / samples) : 0.0;
  return est;
}

MomentEstimate second_moment_mc(int i1, int j1, int i2, int j2, int i1p, int j1p, int i2p, int j2p,
                                std::int64_t dim, int samples, std::uint64_t seed) {
  MomentEstimate est;
  est.exact = analytic::haar_second_moment(i1, j1, i2, j2, i1p, j1p, i2p, j2p, dim);
  est.samples = samples;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const Matrix u = sample_haar(dim, rng);
    const double x =
        (u(i1, j1) * u(i2, j2) * std::conj(u(i1p, j1p)) * std::conj(u(i2p, j2p))).real();
    const double delta = x - mean;
    mean += delta / (i + 1);
    m2 += delta * (x - mean);
  }
  est.mc_mean = mean;
  est.std_error = samples > 1 ? std::sqrt(m2 / (samples - 1.0) / samples) : 0.0;
  return est;
}

}  // namespace scramblab
