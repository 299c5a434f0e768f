#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scramblab/register.hpp"
#include "scramblab/rng.hpp"

namespace scramblab {

enum class EnsembleKind { Haar, Clifford };

std::string ensemble_name(EnsembleKind k);
EnsembleKind ensemble_from_name(const std::string& name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Haar;
  int n_sites = 1;
  int site_dim = 2;
  int samples = 1;
  std::uint64_t seed = 0;

  std::int64_t dim() const;
  void validate() const;
};

struct Gate {
  enum Kind { H, S, CNOT } kind;
  int a = 0;   // target for H/S, control for CNOT
  int b = -1;  // CNOT target
};

struct CircuitDescription {
  std::vector<Gate> gates;

  std::string to_text() const;  // one gate per line: "H 3" / "S 0" / "CNOT 2 5"
  static CircuitDescription from_text(const std::string& text);
};

// Exact Haar sample: complex Ginibre -> QR -> rescale each column by the
// phase of the matching diagonal entry of the triangular factor.
Matrix sample_haar(std::int64_t dim, Rng& rng);

// First `cols` columns of a Haar unitary (identical in distribution, and
// bit-compatible with sample_haar because the Ginibre matrix is filled
// column-major and Householder QR factors column by column).
Matrix sample_haar_isometry(std::int64_t dim, std::int64_t cols, Rng& rng);

// Random walk of 6*n^2 gates drawn uniformly from {H(i), S(i), CNOT(i,j)};
// design quality is certified by the frame-potential estimator rather
// than a canonical-form uniform sampler.
CircuitDescription sample_clifford_circuit(int n_qubits, Rng& rng);

Matrix circuit_to_unitary(const CircuitDescription& circuit, int n_qubits);

// Applies a gate to explicit qubit sites of a register (all of dimension 2).
void apply_gate_in_place(PureState& state, const Gate& gate, const std::vector<int>& site_of_qubit);

struct FramePotentialEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Monte Carlo estimate of E |Tr(U^dag V)|^(2t) over independent pairs.
// Equals t! for a t-design (and for Haar).
FramePotentialEstimate frame_potential(const EnsembleSpec& spec, int t);

struct MomentEstimate {
  double mc_mean = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
  int samples = 0;
};

// Monte Carlo check of the average output purity E Tr(rho_AC^2) against
// its closed form: the input of the d_a*d_b unitary is maximally
// entangled with references and rho_AC keeps the A reference and the
// low-dimensional output factor C.
MomentEstimate avg_purity_mc(std::int64_t d_a, std::int64_t d_b, std::int64_t d_c, int samples,
                             std::uint64_t seed);

// Monte Carlo check of E[U_i1j1 U_i2j2 U*_i1'j1' U*_i2'j2'] against the
// four-delta second-moment formula (real part; the imaginary part
// averages to zero).
MomentEstimate second_moment_mc(int i1, int j1, int i2, int j2, int i1p, int j1p, int i2p, int j2p,
                                std::int64_t dim, int samples, std::uint64_t seed);

double unitarity_error(const Matrix& u);

}  // namespace scramblab
