#pragma once

// Quantum discord for three qubits: measurement-optimized conditional
// entropies, classical correlation over party permutations, and the
// total / bipartite / genuine tripartite split. Entropies are in nats.
//
// Measurements are restricted to rank-1 projective pairs on single qubits.
// The minimum is located by a Bloch-angle grid followed by Nelder-Mead
// refinement from the best grid cells.

#include <array>
#include <string>

#include <Eigen/Dense>

#include "qcorr/core.hpp"

namespace qcorr {

// Projectors onto +/- n with n = (sin t cos f, sin t sin f, cos t).
struct ProjectivePair {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Eigen::Vector2cd plus_vector() const;
  Eigen::Matrix2cd plus() const;
  Eigen::Matrix2cd minus() const;

  // Same projectors with the angles folded back into their canonical ranges.
  ProjectivePair canonical() const;
};

// Which qubit of a two-qubit state is measured.
enum class Side { kFirst = 0, kSecond = 1 };

enum class Orientations { kBoth, kFirst };

struct DiscordOptions {
  int grid = 24;              // points per Bloch angle and measured party
  double refine_tol = 1e-8;   // simplex spread at which refinement stops
  int max_iterations = 200;   // per refinement run
  int refine_starts = 3;      // best grid cells refined
  Orientations orientations = Orientations::kBoth;
};

struct ConditionalEntropy {
  double value;
  ProjectivePair best;
  int iterations;
};

struct ConditionalEntropyTwo {
  double value;
  ProjectivePair first;   // on the lower-index measured party
  ProjectivePair second;  // on the higher-index measured party
  int iterations;
};

// min over projective pairs on the measured qubit of the average entropy of
// the other qubit's conditional state.
ConditionalEntropy conditional_entropy_one(const DensityMatrix& rho_ij, Side measured,
                                           const DiscordOptions& opts = {});

// Same with independent projective pairs on two measured parties of an
// A,B,E state and the remaining party as target.
ConditionalEntropyTwo conditional_entropy_two(const DensityMatrix& rho, int measured_a, int measured_b,
                                              const DiscordOptions& opts = {});

// S(rho_A) + S(rho_B) + S(rho_E) - S(rho).
double total_information(const DensityMatrix& rho);

struct ClassicalCorrelation {
  double value;
  std::array<int, 3> permutation;  // (i, j, k): i measured first, then i and j
};

// max over permutations of S(j) - S(j|i) + S(k) - S(k|ij); ties resolve to
// the lexicographically first permutation.
ClassicalCorrelation classical_correlation(const DensityMatrix& rho, const DiscordOptions& opts = {});

// T - J.
double total_discord(const DensityMatrix& rho, const DiscordOptions& opts = {});

// S(rho_i) - S(rho_ij) + S(j|i) with i the measured side.
double bipartite_discord(const DensityMatrix& rho_ij, Side measured, const DiscordOptions& opts = {});

struct DiscordReport {
  double total_information = 0.0;  // T
  double classical = 0.0;          // J
  double total_discord = 0.0;      // D = T - J
  double bipartite = 0.0;          // D2 = T2 - J2
  double genuine = 0.0;            // D3 = D - D2

  // Pieces of D2: the largest pairwise mutual information and the largest
  // one-way classical correlation over pairs (and orientations).
  double max_mutual_information = 0.0;
  std::string mutual_information_pair;  // e.g. "AB"
  double max_pair_classical = 0.0;
  std::string classical_pair;  // e.g. "B->E": B measured

  // Largest pairwise discord, reported for comparison with D2.
  double max_pair_discord = 0.0;
  std::string discord_pair;

  std::array<int, 3> permutation{0, 1, 2};
  ProjectivePair best_single;     // optimum for S(j|i) in the winning permutation
  ProjectivePair best_pair_first;  // optimum for S(k|ij)
  ProjectivePair best_pair_second;
  int refinement_iterations = 0;
};

// Full tripartite ledger for an A,B,E state.
DiscordReport genuine_discord(const DensityMatrix& rho, const DiscordOptions& opts = {});

struct PureGenuineDiscord {
  double value;  // min_i S(rho_i)
  int argmin;    // lowest index on ties
  bool tie;
};

// Closed form of the genuine discord valid for pure states.
PureGenuineDiscord pure_genuine_discord(const StateVector& psi);

struct MonogamyCheck {
  double lhs;  // min_i C^2_{i(jk)}
  double rhs;  // min_i (C^2_ij + C^2_ik)
};

// Requires three_tangle_ckw(psi) < 1e-6; throws ConfigError otherwise.
MonogamyCheck discord_entanglement_monogamy_check(const StateVector& psi);

std::string party_name(int party);

}  // namespace qcorr
