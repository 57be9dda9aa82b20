#pragma once

// Simulated three-qubit tomography: 64 product-projector settings drawn from
// {|0>, |1>, |+>, |+i>} per qubit, Poissonian coincidence counts, linear
// inversion with an eigenvalue-clipping physicality projection, and Monte
// Carlo error bars.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qcorr/core.hpp"

namespace qcorr {

enum class Projector : int { kP0 = 0, kP1 = 1, kPlus = 2, kPlusI = 3 };

inline constexpr std::size_t kNumSettings = 64;

struct TomographySetting {
  std::array<Projector, 3> labels{};

  // Settings enumerate as 16 a + 4 b + e over projector codes.
  static TomographySetting from_index(std::size_t index);
  std::size_t index() const;
  Vector projector_state() const;  // rank-1 product ket
};

struct CountRecord {
  TomographySetting setting;
  std::uint64_t counts = 0;
  double n0 = 0.0;  // expected coincidences for a unit-probability projector
};

// Counts file labels: Z0 = |0>, Z1 = |1>, X0 = |+>, Y0 = |+i>.
std::string projector_label(Projector p);
Projector parse_projector_label(const std::string& label);

std::array<TomographySetting, kNumSettings> full_design();

// Tr(rho Pi_s) for every setting, in setting-index order.
std::array<double, kNumSettings> setting_probabilities(const DensityMatrix& rho);

// counts_s ~ Poisson(n0 Tr(rho Pi_s)); deterministic for a given seed.
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, double n0, std::uint64_t seed);

// Linear inversion of per-setting frequencies (setting-index order) followed
// by clipping negative eigenvalues and renormalizing the trace.
DensityMatrix reconstruct_from_frequencies(const std::array<double, kNumSettings>& frequencies);

// Requires every one of the 64 settings exactly once (any order).
DensityMatrix reconstruct(const std::vector<CountRecord>& records);

using Statistic = std::function<double(const DensityMatrix&)>;

struct MonteCarloEstimate {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (M - 1 denominator)
};

// M resamples of simulate_counts -> reconstruct -> statistic. Resample m
// draws from stream (seed, m), so results do not depend on evaluation order.
MonteCarloEstimate monte_carlo_errors(const DensityMatrix& rho_hat, double n0, int resamples, std::uint64_t seed,
                                      const Statistic& statistic);
std::vector<MonteCarloEstimate> monte_carlo_errors(const DensityMatrix& rho_hat, double n0, int resamples,
                                                   std::uint64_t seed, const std::vector<Statistic>& statistics);

struct QuasiPure {
  StateVector psi;
  double mu_max;
  bool degenerate;
};

// Dominant eigenvector of a reconstructed state and its weight.
QuasiPure quasi_pure_pipeline(const DensityMatrix& rho_hat);

// CSV with header setting_a,setting_b,setting_e,counts,N0.
std::string format_counts(const std::vector<CountRecord>& records);
std::vector<CountRecord> parse_counts(const std::string& text);
void write_counts(const std::filesystem::path& path, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts(const std::filesystem::path& path);

}  // namespace qcorr
