#pragma once

// Samplers for randomized property checks and acceptance runs.

#include <cstdint>
#include <random>

#include "qcorr/core.hpp"

namespace qcorr {

struct KrausPair;
struct InitialState;

using Rng = std::mt19937_64;

// Independent stream for (seed, index); the same pair always yields the same stream.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

// Haar-distributed pure state (normalized complex Gaussian amplitudes).
StateVector haar_state(const Dims& dims, Rng& rng);
Matrix haar_unitary(int n, Rng& rng);

// Ginibre-induced mixed state of the given rank.
DensityMatrix random_density_matrix(const Dims& dims, int rank, Rng& rng);

// Kraus pair read off the first two columns of a Haar 4x4 unitary:
// K0 = rows 0-1, K1 = rows 2-3.
KrausPair random_kraus_pair(Rng& rng);
InitialState random_initial_state(Rng& rng);

}  // namespace qcorr
