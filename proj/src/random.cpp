#include "qcorr/random.hpp"

#include <cmath>

#include "qcorr/channels.hpp"

namespace qcorr {

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  }
  return g;
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

StateVector haar_state(const Dims& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return StateVector::normalized(dims, ginibre(n, 1, rng).col(0));
}

Matrix haar_unitary(int n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so Q is Haar rather than QR-biased.
  for (int k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

DensityMatrix random_density_matrix(const Dims& dims, int rank, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  const Matrix g = ginibre(n, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(dims, std::move(rho));
}

KrausPair random_kraus_pair(Rng& rng) {
  const Matrix u = haar_unitary(4, rng);
  KrausPair k;
  k.k0 = u.block<2, 2>(0, 0);
  k.k1 = u.block<2, 2>(2, 0);
  return k;
}

InitialState random_initial_state(Rng& rng) {
  const StateVector psi = haar_state({2, 2}, rng);
  // Amplitude order: alpha|11> + beta|10> + gamma|01> + delta|00>.
  return InitialState{psi[3], psi[2], psi[1], psi[0]};
}

}  // namespace qcorr
