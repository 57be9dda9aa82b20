#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qcorr/entanglement.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Concurrence straight from the non-Hermitian product rho (sy x sy) rho* (sy x sy).
double concurrence_oracle(const Matrix& rho) {
  Matrix sy(2, 2);
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  Matrix syy(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) syy(r, c) = sy(r / 2, c / 2) * sy(r % 2, c % 2);
  const Matrix product = rho * syy * rho.conjugate() * syy;
  Eigen::ComplexEigenSolver<Matrix> es(product);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

DensityMatrix werner(double w) {
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = kInvSqrt2;
  return {{2, 2}, w * phi * phi.adjoint() + (1 - w) * Matrix::Identity(4, 4) / 4.0};
}

StateVector ad_state(double p) {
  return dilate(InitialState(0, kInvSqrt2, kInvSqrt2, 0), amplitude_damping(ChannelParameter(p)));
}

StateVector pd_state(double p) {
  return dilate(InitialState(kInvSqrt2, 0, 0, kInvSqrt2), phase_damping(ChannelParameter(p)));
}

}  // namespace

TEST(Concurrence, Examples) {
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = kInvSqrt2;
  EXPECT_NEAR(concurrence(StateVector({2, 2}, phi).projector()), 1.0, 1e-12);
  EXPECT_NEAR(concurrence(StateVector::basis({2, 2}, 1).projector()), 0.0, 1e-12);
  EXPECT_NEAR(concurrence(werner(0.5)), 0.25, 1e-12);
  EXPECT_NEAR(concurrence_oracle(werner(0.5).matrix()), 0.25, 1e-12);
}

TEST(Concurrence, WernerFamily) {
  for (double w = 0.0; w <= 1.0; w += 0.05) {
    EXPECT_NEAR(concurrence(werner(w)), std::max(0.0, (3 * w - 1) / 2), 1e-10) << w;
  }
}

TEST(Concurrence, AgreesWithOracleOnRandomStates) {
  Rng rng = make_stream(21, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const DensityMatrix rho = random_density_matrix({2, 2}, 2 + trial % 3, rng);
    EXPECT_NEAR(concurrence(rho), concurrence_oracle(rho.matrix()), 1e-7);
  }
}

TEST(Concurrence, PureStatesMatchTwiceDeterminant) {
  Rng rng = make_stream(22, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const StateVector psi = haar_state({2, 2}, rng);
    const double expected = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
    EXPECT_NEAR(concurrence(psi.projector()), expected, 1e-10);
  }
}

TEST(Concurrence, RejectsWrongDimensions) {
  EXPECT_THROW(concurrence(DensityMatrix::maximally_mixed({2, 2, 2})), ConfigError);
}

TEST(OneVsRest, Examples) {
  EXPECT_NEAR(tangle_one_vs_rest(ghz_state(), kA), 1.0, 1e-14);
  EXPECT_NEAR(tangle_one_vs_rest(ghz_state(), kE), 1.0, 1e-14);
  EXPECT_NEAR(tangle_one_vs_rest(StateVector::basis({2, 2, 2}, 3), kB), 0.0, 1e-14);
  for (double p : {0.0, 0.3, 0.6, 1.0}) EXPECT_NEAR(tangle_one_vs_rest(ad_state(p), kA), 1.0, 1e-14);
}

TEST(ThreeTangle, Examples) {
  EXPECT_NEAR(three_tangle_ckw(ghz_state()), 1.0, 1e-10);
  EXPECT_NEAR(three_tangle_ckw(w_state()), 0.0, 1e-10);
  EXPECT_NEAR(three_tangle_ckw(pd_state(0.5)), 0.5, 1e-10);
}

TEST(ThreeTangle, PivotInvariance) {
  Rng rng = make_stream(23, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const StateVector psi = haar_state({2, 2, 2}, rng);
    const double a = three_tangle_ckw(psi, kA);
    EXPECT_NEAR(three_tangle_ckw(psi, kB), a, 1e-8);
    EXPECT_NEAR(three_tangle_ckw(psi, kE), a, 1e-8);
  }
}

TEST(ThreeTangle, MatchesCayleyHyperdeterminant) {
  // tau = 4 |d1 - 2 d2 + 4 d3|.
  Rng rng = make_stream(24, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const StateVector s = haar_state({2, 2, 2}, rng);
    auto a = [&](int i, int j, int k) { return s[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
    const cplx d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                    a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                    a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    EXPECT_NEAR(three_tangle_ckw(s), 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3), 1e-8);
  }
}

TEST(ThreeTangle, FactorizedClosedForms) {
  Rng rng = make_stream(25, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const InitialState init = random_initial_state(rng);
    const double p = 0.02 * trial;
    const double norm = std::sqrt(std::norm(init.alpha()) + std::norm(init.delta()));
    const InitialState pd_init(init.alpha() / norm, 0, 0, init.delta() / norm);
    const double e0 = 4.0 * std::norm(pd_init.alpha() * pd_init.delta());
    EXPECT_NEAR(three_tangle_factorized(pd_init, phase_damping(ChannelParameter(p))), e0 * p, 1e-12);
    EXPECT_NEAR(three_tangle_factorized(init, amplitude_damping(ChannelParameter(p))), 0.0, 1e-14);
  }
  EXPECT_EQ(three_tangle_factorized(InitialState(1, 0, 0, 0), phase_damping(ChannelParameter(0.4))), 0.0);
}

TEST(ThreeTangle, FactorizationAgreesWithCkwOnRandomChannels) {
  Rng rng = make_stream(26, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const InitialState init = random_initial_state(rng);
    const KrausPair k = random_kraus_pair(rng);
    EXPECT_NEAR(three_tangle_ckw(dilate(init, k)), three_tangle_factorized(init, k), 1e-8);
  }
}

TEST(InitialEntanglement, Examples) {
  EXPECT_NEAR(initial_entanglement(InitialState(kInvSqrt2, 0, 0, kInvSqrt2)), 1.0, 1e-15);
  EXPECT_NEAR(initial_entanglement(InitialState(0, kInvSqrt2, kInvSqrt2, 0)), 1.0, 1e-15);
  EXPECT_EQ(initial_entanglement(InitialState(1, 0, 0, 0)), 0.0);
}

TEST(TangleSet, PhaseDampingTrajectory) {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const TangleSet t = tangle_set(pd_state(p));
    EXPECT_NEAR(t.c2_ab, 1 - p, 1e-10);
    EXPECT_NEAR(t.c2_ae, 0.0, 1e-10);
    EXPECT_NEAR(t.c2_be, 0.0, 1e-10);
    EXPECT_NEAR(t.tau, p, 1e-10);
    EXPECT_NEAR(t.invariant, 1.0, 1e-10);
  }
}

TEST(TangleSet, AmplitudeDampingTrajectoryWithUnequalWeights) {
  const double b = 0.6, g = 0.8;
  const double e0 = 4 * b * b * g * g;
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const TangleSet t = tangle_set(dilate(InitialState(0, b, g, 0), amplitude_damping(ChannelParameter(p))));
    EXPECT_NEAR(t.c2_ab, e0 * (1 - p), 1e-10);
    EXPECT_NEAR(t.c2_ae, e0 * p, 1e-10);
    EXPECT_NEAR(t.c2_be, 4 * std::pow(g, 4) * p * (1 - p), 1e-10);
    EXPECT_NEAR(t.tau, 0.0, 1e-10);
  }
}

TEST(TangleSet, SwapEndpoint) {
  const TangleSet t = tangle_set(ad_state(1.0));
  EXPECT_NEAR(t.c2_ae, 1.0, 1e-12);
  EXPECT_NEAR(t.c2_ab, 0.0, 1e-12);
  EXPECT_NEAR(t.c2_be, 0.0, 1e-12);
}

TEST(TangleSet, MixedEstimatorReducesToPureRouteOnPureInput) {
  Rng rng = make_stream(27, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector psi = haar_state({2, 2, 2}, rng);
    const TangleSet pure = tangle_set(psi);
    const TangleSet mixed = tangle_set(psi.projector());
    EXPECT_NEAR(pure.c2_ab, mixed.c2_ab, 1e-10);
    EXPECT_NEAR(pure.tau, mixed.tau, 1e-10);
    EXPECT_NEAR(three_tangle_mixed_estimate(psi.projector()), pure.tau, 1e-10);
  }
}

TEST(Monogamy, CkwHoldsOnRandomStates) {
  Rng rng = make_stream(28, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const StateVector psi = haar_state({2, 2, 2}, rng);
    const DensityMatrix rho = psi.projector();
    const double ab = std::pow(concurrence(partial_trace(rho, {0, 1})), 2);
    const double ae = std::pow(concurrence(partial_trace(rho, {0, 2})), 2);
    const double be = std::pow(concurrence(partial_trace(rho, {1, 2})), 2);
    EXPECT_GE(tangle_one_vs_rest(psi, kA), ab + ae - 1e-8);
    EXPECT_GE(tangle_one_vs_rest(psi, kB), ab + be - 1e-8);
    EXPECT_GE(tangle_one_vs_rest(psi, kE), ae + be - 1e-8);
  }
}

TEST(Witness, Examples) {
  const WitnessW w = witness_w(w_state().projector());
  EXPECT_NEAR(w.fidelity, 1.0, 1e-14);
  EXPECT_TRUE(w.genuine);
  const WitnessW wm = witness_w(DensityMatrix::maximally_mixed({2, 2, 2}));
  EXPECT_NEAR(wm.fidelity, 0.125, 1e-15);
  EXPECT_FALSE(wm.genuine);

  const WitnessGhz g = witness_ghz(ghz_state().projector());
  EXPECT_NEAR(g.fidelity, 1.0, 1e-14);
  EXPECT_TRUE(g.nonbiseparable);
  EXPECT_TRUE(g.genuine_ghz);
  const WitnessGhz gm = witness_ghz(DensityMatrix::maximally_mixed({2, 2, 2}));
  EXPECT_NEAR(gm.fidelity, 0.125, 1e-15);
  EXPECT_FALSE(gm.nonbiseparable);
  EXPECT_FALSE(gm.genuine_ghz);
}

TEST(Witness, AmplitudeDampingPeak) {
  // <W|eta(p)> = (sqrt(1-p) + sqrt(p) + 1) / sqrt6 at beta = gamma = 1/sqrt2.
  for (double p : {0.1, 0.5, 0.9}) {
    const double overlap = (std::sqrt(1 - p) + std::sqrt(p) + 1) / std::sqrt(6.0);
    EXPECT_NEAR(witness_w(ad_state(p).projector()).fidelity, overlap * overlap, 1e-12);
  }
  EXPECT_NEAR(witness_w(ad_state(0.5).projector()).fidelity, (3 + 2 * std::sqrt(2.0)) / 6, 1e-12);
}
