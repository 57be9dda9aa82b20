#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qcorr/core.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

namespace {

StateVector bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return {{2, 2}, v};
}

StateVector ghz() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return {{2, 2, 2}, v};
}

double binary_entropy(double x) { return -x * std::log(x) - (1 - x) * std::log(1 - x); }

}  // namespace

TEST(StateVector, RejectsUnnormalizedAndMismatchedDims) {
  Vector v = Vector::Ones(4);
  EXPECT_THROW(StateVector({2, 2}, v), ConfigError);
  EXPECT_THROW(StateVector({2, 2, 2}, v / 2.0), ConfigError);
  EXPECT_NO_THROW(StateVector({2, 2}, v / 2.0));
}

TEST(DensityMatrix, ValidatesHermitianTraceAndPositivity) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix({2}, m));
  Matrix non_herm = m;
  non_herm(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix({2}, non_herm), ConfigError);
  EXPECT_THROW(DensityMatrix({2}, m * 2.0), ConfigError);
  Matrix negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix({2}, negative), ConfigError);
}

TEST(Tensor, BasisProduct) {
  const StateVector s = tensor(StateVector::basis({2}, 0), StateVector::basis({2}, 0));
  EXPECT_EQ(s.dims(), (Dims{2, 2}));
  EXPECT_DOUBLE_EQ(s[0].real(), 1.0);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s[i], cplx(0.0));
}

TEST(Tensor, PaperInitialStateIndices) {
  const double a = 0.6, d = 0.8;
  Vector ab = Vector::Zero(4);
  ab(3) = a;
  ab(0) = d;
  const StateVector s = tensor(StateVector({2, 2}, ab), StateVector::basis({2}, 0));
  EXPECT_DOUBLE_EQ(s[0b110].real(), a);
  EXPECT_DOUBLE_EQ(s[0b000].real(), d);
  EXPECT_NEAR(s.amplitudes().squaredNorm(), 1.0, 1e-15);
}

TEST(Tensor, MaximallyMixedProduct) {
  const DensityMatrix m = tensor(DensityMatrix::maximally_mixed({2}), DensityMatrix::maximally_mixed({2}));
  EXPECT_TRUE(m.matrix().isApprox(Matrix::Identity(4, 4) / 4.0, 1e-15));
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const DensityMatrix r = partial_trace(bell().projector(), {0});
  EXPECT_TRUE(r.matrix().isApprox(Matrix::Identity(2, 2) / 2.0, 1e-15));
}

TEST(PartialTrace, GhzWithoutE) {
  const DensityMatrix r = partial_trace(ghz().projector(), {0, 1});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  EXPECT_LT((r.matrix() - expected).norm(), 1e-15);
}

TEST(PartialTrace, HandTracedAmplitudeDampedEnvironment) {
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    // gamma sqrt(1-p)|010> + gamma sqrt(p)|001> + beta|100>, beta = gamma = 1/sqrt2
    const double g = 1.0 / std::sqrt(2.0);
    Vector v = Vector::Zero(8);
    v(0b010) = g * std::sqrt(1 - p);
    v(0b001) = g * std::sqrt(p);
    v(0b100) = g;
    const DensityMatrix re = partial_trace(StateVector({2, 2, 2}, v).projector(), {2});
    EXPECT_NEAR(re(0, 0).real(), 1 - p / 2, 1e-15);
    EXPECT_NEAR(re(1, 1).real(), p / 2, 1e-15);
    EXPECT_NEAR(std::abs(re(0, 1)), 0.0, 1e-15);
  }
}

TEST(PartialTrace, KeepsSubsystemsInAscendingOrder) {
  // |0>_A |1>_B |0>_E: keeping {E, A} must give the A,E state |00>.
  const DensityMatrix r = partial_trace(StateVector::basis({2, 2, 2}, 0b010).projector(), {2, 0});
  EXPECT_NEAR(r(0, 0).real(), 1.0, 1e-15);
}

TEST(PartialTrace, RejectsBadKeepLists) {
  const DensityMatrix rho = ghz().projector();
  EXPECT_THROW(partial_trace(rho, {}), ConfigError);
  EXPECT_THROW(partial_trace(rho, {3}), ConfigError);
  EXPECT_THROW(partial_trace(rho, {1, 1}), ConfigError);
}

TEST(PartialTrace, NestedTracesCommute) {
  Rng rng = make_stream(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density_matrix({2, 2, 2}, 1 + trial % 8, rng);
    const DensityMatrix direct = partial_trace(rho, {2});
    const DensityMatrix via_a = partial_trace(partial_trace(rho, {1, 2}), {1});
    const DensityMatrix via_b = partial_trace(partial_trace(rho, {0, 2}), {1});
    EXPECT_LT((direct.matrix() - via_a.matrix()).norm(), 1e-10);
    EXPECT_LT((direct.matrix() - via_b.matrix()).norm(), 1e-10);
  }
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(ghz().projector()), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed({2})), std::log(2.0), 1e-14);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix({2}, m)), 0.5623351446188083, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix({2}, m)), binary_entropy(0.25), 1e-14);
}

TEST(Entropy, ClipsSmallNegativeEigenvaluesAndRejectsLargeOnes) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-10;
  m(1, 1) = -5e-10;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::unchecked({2}, m)), 0.0, 1e-8);
  m(0, 0) = 1.0 + 1e-6;
  m(1, 1) = -1e-6;
  EXPECT_THROW(von_neumann_entropy(DensityMatrix::unchecked({2}, m)), NumericalError);
}

TEST(Entropy, UnitarilyInvariant) {
  Rng rng = make_stream(12, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density_matrix({2, 2, 2}, 1 + trial % 8, rng);
    const Matrix u = haar_unitary(8, rng);
    const DensityMatrix rotated({2, 2, 2}, u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(von_neumann_entropy(rho), von_neumann_entropy(rotated), 1e-9);
  }
}

TEST(Entropy, SchmidtSymmetryOfPureTripartiteStates) {
  Rng rng = make_stream(13, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = haar_state({2, 2, 2}, rng).projector();
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, {0})), von_neumann_entropy(partial_trace(rho, {1, 2})), 1e-9);
    EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, {2})), von_neumann_entropy(partial_trace(rho, {0, 1})), 1e-9);
  }
}

TEST(Spectral, PureStateReturnsItself) {
  Rng rng = make_stream(14, 0);
  const StateVector psi = haar_state({2, 2, 2}, rng);
  const SpectralDecomposition s = spectral_decompose(psi.projector());
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.eigenvectors[0].amplitudes().dot(psi.amplitudes())), 1.0, 1e-12);
  EXPECT_LT((s.reassemble() - psi.projector().matrix()).norm(), 1e-12);
}

TEST(Spectral, RankOnePlusWhiteNoise) {
  Rng rng = make_stream(15, 0);
  const StateVector psi = haar_state({2, 2, 2}, rng);
  const Matrix m = 0.9 * psi.projector().matrix() + 0.1 * Matrix::Identity(8, 8) / 8.0;
  const DominantEigenvector d = dominant_eigenvector(DensityMatrix({2, 2, 2}, m));
  EXPECT_NEAR(d.eigenvalue, 0.9125, 1e-12);
  EXPECT_FALSE(d.degenerate);
  EXPECT_NEAR(fidelity_pure(psi.projector(), d.state), 1.0, 1e-12);
}

TEST(Spectral, MaximallyMixedIsFlatAndDegenerate) {
  const DensityMatrix m = DensityMatrix::maximally_mixed({2, 2, 2});
  for (double mu : spectral_decompose(m).eigenvalues) EXPECT_NEAR(mu, 0.125, 1e-14);
  EXPECT_TRUE(dominant_eigenvector(m).degenerate);
}

TEST(Spectral, DominantEigenvectorPhaseIsFixed) {
  Rng rng = make_stream(16, 0);
  const StateVector psi = haar_state({2, 2, 2}, rng);
  const Vector rotated = psi.amplitudes() * std::polar(1.0, 1.234);
  const DominantEigenvector a = dominant_eigenvector(psi.projector());
  const DominantEigenvector b = dominant_eigenvector(StateVector({2, 2, 2}, rotated).projector());
  EXPECT_LT((a.state.amplitudes() - b.state.amplitudes()).norm(), 1e-12);
  Eigen::Index imax = 0;
  a.state.amplitudes().cwiseAbs().maxCoeff(&imax);
  EXPECT_NEAR(a.state[static_cast<std::size_t>(imax)].imag(), 0.0, 1e-15);
  EXPECT_GT(a.state[static_cast<std::size_t>(imax)].real(), 0.0);
}

TEST(Fidelity, Examples) {
  Rng rng = make_stream(17, 0);
  const StateVector psi = haar_state({2, 2, 2}, rng);
  EXPECT_NEAR(fidelity_pure(psi.projector(), psi), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_pure(DensityMatrix::maximally_mixed({2, 2, 2}), psi), 0.125, 1e-14);
}

TEST(Purity, BoundsAndPureCharacterization) {
  Rng rng = make_stream(18, 0);
  for (int rank = 1; rank <= 8; ++rank) {
    const DensityMatrix rho = random_density_matrix({2, 2, 2}, rank, rng);
    const double pur = purity(rho);
    EXPECT_GE(pur, 0.125 - 1e-12);
    EXPECT_LE(pur, 1.0 + 1e-12);
    const bool pure = std::abs(pur - 1.0) < 1e-9;
    const bool top_is_one = std::abs(spectral_decompose(rho).eigenvalues[0] - 1.0) < 1e-9;
    EXPECT_EQ(pure, top_is_one);
    EXPECT_EQ(pure, rank == 1);
  }
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed({2, 2, 2})), 0.125, 1e-15);
}

TEST(Random, HaarUnitaryIsUnitary) {
  Rng rng = make_stream(19, 0);
  for (int n : {2, 4, 8}) {
    const Matrix u = haar_unitary(n, rng);
    EXPECT_LT((u * u.adjoint() - Matrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Random, HaarStateFirstMomentIsFlat) {
  // E|<0|psi>|^2 = 1/d for the unitarily invariant measure.
  Rng rng = make_stream(20, 0);
  const int samples = 20000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double w = std::norm(haar_state({2, 2, 2}, rng)[0]);
    sum += w;
    sum_sq += w * w;
  }
  EXPECT_NEAR(sum / samples, 1.0 / 8.0, 0.005);
  // E|<0|psi>|^4 = 2 / (d (d + 1)).
  EXPECT_NEAR(sum_sq / samples, 2.0 / 72.0, 0.002);
}

TEST(Random, StreamsAreReproducibleAndDistinct) {
  Rng a = make_stream(5, 3), b = make_stream(5, 3), c = make_stream(5, 4);
  const auto x = a(), y = b(), z = c();
  EXPECT_EQ(x, y);
  EXPECT_NE(x, z);
}
