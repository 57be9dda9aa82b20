#pragma once

// Entanglement quantifiers for the A,B,E register: Wootters concurrence,
// one-vs-rest tangles, three routes to the 3-tangle, and fidelity witnesses.

#include "qcorr/channels.hpp"
#include "qcorr/core.hpp"

namespace qcorr {

enum Party : int { kA = 0, kB = 1, kE = 2 };

struct TangleSet {
  double c2_ab = 0.0;
  double c2_ae = 0.0;
  double c2_be = 0.0;
  double tau = 0.0;
  double invariant = 0.0;  // c2_ab + tau
  double tau_raw = 0.0;    // before clipping negative round-off to zero
};

struct WitnessW {
  double fidelity;
  bool genuine;  // fidelity >= 2/3
};

struct WitnessGhz {
  double fidelity;
  bool nonbiseparable;  // fidelity > 1/2
  bool genuine_ghz;     // fidelity > 3/4
};

StateVector ghz_state();  // (|000> + |111>)/sqrt2
StateVector w_state();    // (|001> + |010> + |100>)/sqrt3

// max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)} over the spectrum of
// rho (sy x sy) rho* (sy x sy). Eigenvalues of rho at or below 1e-14 are
// treated as zero. Throws NumericalError if rho has an eigenvalue below -1e-8.
double concurrence(const DensityMatrix& rho);

// 4 det(rho_i) = 2(1 - Tr rho_i^2) for the marginal of party i.
double tangle_one_vs_rest(const StateVector& psi, int party);

// C^2_{i(jk)} - C^2_ij - C^2_ik with the given pivot. Values down to -1e-8
// are clipped to zero; anything more negative throws NumericalError.
double three_tangle_ckw(const StateVector& psi, int pivot = kA);

// E0^2 |f(K0, K1)|.
double three_tangle_factorized(const InitialState& initial, const KrausPair& kraus);

// 4 det rho_A - C^2(rho_AB) - C^2(rho_AE), clipped at zero. Exact only for
// pure input; on mixed states it is the quasi-pure estimator.
double three_tangle_mixed_estimate(const DensityMatrix& rho);

// 4 |alpha delta - gamma beta|^2.
double initial_entanglement(const InitialState& initial);

// Pairwise tangles of an A,B,E state; tau via the CKW route.
TangleSet tangle_set(const StateVector& psi);
// Pairwise tangles of a mixed A,B,E state; tau via the mixed estimator.
TangleSet tangle_set(const DensityMatrix& rho);

WitnessW witness_w(const DensityMatrix& rho);
WitnessGhz witness_ghz(const DensityMatrix& rho);

}  // namespace qcorr
