#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "scramblab/ensembles.hpp"
#include "scramblab/register.hpp"

namespace scramblab {

struct SubsetStrategy {
  bool exhaustive = false;  // enumerate every subset at every size
  int cap = 64;             // otherwise: all subsets when the count fits, else `cap` random ones
};

// One scrambling experiment: reference qubit R maximally entangled with
// Alice's qubit A, N-1 further player qubits of which the first s are
// maximally entangled with memory qubits, a sampled unitary on the N
// player qubits, and I(R : P(l)) statistics over subsets P of the output.
struct ExperimentConfig {
  int n_players = 4;
  int s_mixed = 0;
  EnsembleSpec ensemble;
  SubsetStrategy subsets;
  int threads = 1;

  void validate() const;
};

struct MIRow {
  int l = 0;
  double mean_i = 0.0;
  double min_i = 0.0;
  double max_i = 0.0;
  double std_error = 0.0;
  std::int64_t subsets = 0;  // evaluations pooled into this row
  int samples = 0;
};

struct MICurve {
  int n_players = 0;
  int s_mixed = 0;
  EnsembleKind kind = EnsembleKind::Haar;
  std::uint64_t seed = 0;
  int samples = 0;
  int subset_cap = 0;
  int discarded = 0;  // shares dropped from a larger pure run, 0 for direct runs
  // Worst per-sample deviation of I(R:P) + I(R:Pbar) from 2 over all
  // evaluated complementary pairs; only tracked for pure direct runs.
  double max_pair_residual = 0.0;
  // Worst max-norm deviation of the R+memory marginal from I/dim.
  double max_spectator_deviation = 0.0;
  std::vector<MIRow> rows;

  const MIRow& row(int l) const;
};

// Initial state |Phi>_{RA} (x) |sqrt(rho)>_{B,Bmem}: roles
// R (1 qubit), A (1), B (N-1), Bmem (s); the first s B qubits are each
// maximally entangled with one memory qubit, the rest start in |0>.
PureState build_initial_state(int n_players, int s_mixed);

// The scrambled state of sample `index` under cfg (unitary on A+B only).
PureState scrambled_state(const ExperimentConfig& cfg, int index);

MICurve run_experiment(const ExperimentConfig& cfg);

// Purify-then-discard path: runs the pure experiment on n_players + discard qubits
// with the same seed and evaluates subsets among the first n_players
// output sites only; discard = 0 reproduces run_experiment exactly.
MICurve discard_shares(const ExperimentConfig& pure_cfg, int discard);

// F(rho_RC, rho_R (x) rho_C) for a subsystem C of the players.
double decoupling_fidelity(const PureState& state, const SubsystemMask& c);

struct LScramblingVerdict {
  bool pass = false;
  std::vector<int> worst_subset;
  double worst_fidelity = 1.0;
};

// Worst-case decoupling check over every subset of fewer than l player
// sites and every provided sample state.
LScramblingVerdict is_l_scrambling(const std::vector<PureState>& samples, int l, double eps_tol);

// Largest I3(R:C:D) over all bipartitions C|D of the player outputs.
double max_tripartite_information(const PureState& state);

struct OTOCResult {
  std::complex<double> f;  // <W'(t) V' W(t) V> in the maximally mixed state
  double commutator = 0.0; // <[V, W(t)]' [V, W(t)]>
  std::int64_t d_w = 0;
  std::int64_t d_v = 0;
};

OTOCResult otoc(const Matrix& u, int n_qubits, const SubsystemMask& w_sites, const Matrix& w_op,
                const SubsystemMask& v_sites, const Matrix& v_op);

// Arithmetic value 1/d_A^2 + 1/d_D^2 - 1/(d_A^2 d_D^2) that a chaotic
// scrambler's operator-averaged OTOC approaches.
double chaotic_criterion_value(std::int64_t d_a, std::int64_t d_d);

struct OTOCMCResult {
  struct Sample {
    std::complex<double> f;
    double commutator;
  };
  std::vector<Sample> per_sample;
  std::complex<double> mean_f;
  double mean_abs = 0.0;  // |mean_f|
  double std_error = 0.0; // of Re F
  double target = 0.0;    // chaotic_criterion_value for the partition
};

// OTOC Monte Carlo: per sample draws the scrambler plus uniformly random
// Pauli strings (identity included) on the W and V regions.
OTOCMCResult otoc_mc(int n_qubits, EnsembleKind kind, int samples, std::uint64_t seed,
                     const std::vector<int>& w_sites, const std::vector<int>& v_sites);

struct PageDeviationResult {
  double mean = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  int samples = 0;
};

// Mean of ||rho_A - I/d_a||_1 over Haar-random pure states on d_a*d_b.
PageDeviationResult page_deviation_mc(std::int64_t d_a, std::int64_t d_b, int samples,
                                      std::uint64_t seed);

// Uniform random Pauli string (I/X/Y/Z per site, identity allowed).
Matrix random_pauli_string(int n_sites, Rng& rng);

}  // namespace scramblab
