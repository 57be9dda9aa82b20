#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kTangleClip = 1e-8;

void require_abe(const Dims& dims) {
  if (dims != Dims{2, 2, 2}) throw ConfigError("expected a three-qubit A,B,E state");
}

double four_det(const DensityMatrix& single) {
  const Matrix& m = single.matrix();
  return 4.0 * (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
}

double clip_tangle(double raw) {
  if (raw < -kTangleClip) {
    std::ostringstream os;
    os << "3-tangle evaluated to " << raw << " (below -" << kTangleClip << ")";
    throw NumericalError(os.str());
  }
  return std::max(raw, 0.0);
}

std::vector<int> pair(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

constexpr double kConcurrenceDropTol = 1e-14;

}  // namespace

StateVector ghz_state() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return StateVector::normalized({2, 2, 2}, std::move(v));
}

StateVector w_state() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return StateVector::normalized({2, 2, 2}, std::move(v));
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw ConfigError("concurrence: expected a two-qubit state");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.eigenvalues().minCoeff() < -1e-8) throw NumericalError("concurrence: input has a negative eigenvalue");

  // Subnormalized eigenvectors w_i = sqrt(lambda_i) v_i; eigenvalues at rounding
  // level are dropped so that rank-deficient inputs stay exact.
  Matrix w(4, 4);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= kConcurrenceDropTol) continue;
    w.col(rank++) = std::sqrt(lambda) * es.eigenvectors().col(i);
  }
  if (rank == 0) throw NumericalError("concurrence: zero state");

  // sy x sy is real, symmetric and antidiagonal with signs (-1, 1, 1, -1).
  Matrix flip = Matrix::Zero(4, 4);
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;

  // Singular values of w^T flip w are the square roots of the spectrum of rho tilde(rho).
  const Matrix t = w.leftCols(rank).transpose() * flip * w.leftCols(rank);
  Eigen::JacobiSVD<Matrix> svd(t);
  Eigen::Vector4d lambda = Eigen::Vector4d::Zero();
  lambda.head(rank) = svd.singularValues();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
  return std::clamp(lambda(0) - lambda(1) - lambda(2) - lambda(3), 0.0, 1.0);
}

double tangle_one_vs_rest(const StateVector& psi, int party) {
  require_abe(psi.dims());
  if (party < 0 || party > 2) throw ConfigError("party index out of range");
  return std::clamp(four_det(partial_trace(psi.projector(), {party})), 0.0, 1.0);
}

double three_tangle_ckw(const StateVector& psi, int pivot) {
  require_abe(psi.dims());
  if (pivot < 0 || pivot > 2) throw ConfigError("pivot index out of range");
  const DensityMatrix rho = psi.projector();
  const int j = (pivot + 1) % 3;
  const int k = (pivot + 2) % 3;
  const double cj = concurrence(partial_trace(rho, pair(pivot, j)));
  const double ck = concurrence(partial_trace(rho, pair(pivot, k)));
  return clip_tangle(tangle_one_vs_rest(psi, pivot) - cj * cj - ck * ck);
}

double initial_entanglement(const InitialState& initial) {
  return 4.0 * std::norm(initial.alpha() * initial.delta() - initial.gamma() * initial.beta());
}

double three_tangle_factorized(const InitialState& initial, const KrausPair& kraus) {
  return initial_entanglement(initial) * std::abs(f_function(kraus));
}

double three_tangle_mixed_estimate(const DensityMatrix& rho) {
  require_abe(rho.dims());
  const double cab = concurrence(partial_trace(rho, {0, 1}));
  const double cae = concurrence(partial_trace(rho, {0, 2}));
  return std::max(0.0, four_det(partial_trace(rho, {0})) - cab * cab - cae * cae);
}

TangleSet tangle_set(const StateVector& psi) {
  require_abe(psi.dims());
  const DensityMatrix rho = psi.projector();
  TangleSet t;
  t.c2_ab = std::pow(concurrence(partial_trace(rho, {0, 1})), 2);
  t.c2_ae = std::pow(concurrence(partial_trace(rho, {0, 2})), 2);
  t.c2_be = std::pow(concurrence(partial_trace(rho, {1, 2})), 2);
  t.tau_raw = four_det(partial_trace(rho, {0})) - t.c2_ab - t.c2_ae;
  t.tau = clip_tangle(t.tau_raw);
  t.invariant = t.c2_ab + t.tau;
  return t;
}

TangleSet tangle_set(const DensityMatrix& rho) {
  require_abe(rho.dims());
  TangleSet t;
  t.c2_ab = std::pow(concurrence(partial_trace(rho, {0, 1})), 2);
  t.c2_ae = std::pow(concurrence(partial_trace(rho, {0, 2})), 2);
  t.c2_be = std::pow(concurrence(partial_trace(rho, {1, 2})), 2);
  t.tau_raw = four_det(partial_trace(rho, {0})) - t.c2_ab - t.c2_ae;
  t.tau = std::max(0.0, t.tau_raw);
  t.invariant = t.c2_ab + t.tau;
  return t;
}

WitnessW witness_w(const DensityMatrix& rho) {
  require_abe(rho.dims());
  const double f = fidelity_pure(rho, w_state());
  return {f, f >= 2.0 / 3.0};
}

WitnessGhz witness_ghz(const DensityMatrix& rho) {
  require_abe(rho.dims());
  const double f = fidelity_pure(rho, ghz_state());
  return {f, f > 0.5, f > 0.75};
}

}  // namespace qcorr
