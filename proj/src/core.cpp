#include "qcorr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

void check_dims(const Dims& dims) {
  if (dims.empty()) throw ConfigError("dims must be nonempty");
  for (int d : dims) {
    if (d < 1) throw ConfigError("subsystem dimensions must be positive");
  }
}

// Digits of a flat index, most significant subsystem first.
std::vector<int> unflatten(std::size_t index, const Dims& dims) {
  std::vector<int> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
    index /= static_cast<std::size_t>(dims[k]);
  }
  return digits;
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Dims dims, Vector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  check_dims(dims_);
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dim(dims_)) {
    throw ConfigError("amplitude count does not match dims");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "state vector is not normalized (|psi|^2 = " << norm2 << ")";
    throw ConfigError(os.str());
  }
}

StateVector StateVector::basis(Dims dims, std::size_t index) {
  const std::size_t n = total_dim(dims);
  if (index >= n) throw ConfigError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {std::move(dims), std::move(v)};
}

StateVector StateVector::normalized(Dims dims, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ConfigError("cannot normalize a zero vector");
  amplitudes /= norm;
  return {std::move(dims), std::move(amplitudes)};
}

DensityMatrix StateVector::projector() const {
  return DensityMatrix::unchecked(dims_, amplitudes_ * amplitudes_.adjoint());
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Dims dims, Matrix entries, Trusted)
    : dims_(std::move(dims)), entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(Dims dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  check_dims(dims_);
  const auto n = static_cast<Eigen::Index>(total_dim(dims_));
  if (entries_.rows() != n || entries_.cols() != n) {
    throw ConfigError("density matrix shape does not match dims");
  }
  if (!entries_.allFinite()) throw ConfigError("density matrix has non-finite entries");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw ConfigError("density matrix is not Hermitian");
  }
  const cplx tr = entries_.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
    throw ConfigError("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw ConfigError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::unchecked(Dims dims, Matrix entries) {
  return {std::move(dims), std::move(entries), Trusted{}};
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  check_dims(dims);
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return unchecked(std::move(dims), Matrix::Identity(n, n) / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Operations

Matrix SpectralDecomposition::reassemble() const {
  if (eigenvectors.empty()) return {};
  const auto n = static_cast<Eigen::Index>(eigenvectors.front().size());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const Vector& v = eigenvectors[i].amplitudes();
    out += eigenvalues[i] * (v * v.adjoint());
  }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Vector v(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return StateVector::normalized(std::move(dims), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Matrix m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  }
  return DensityMatrix::unchecked(std::move(dims), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const Dims& dims = rho.dims();
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) throw ConfigError("partial_trace: keep set is empty");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw ConfigError("partial_trace: subsystem index out of range");
    if (kept[static_cast<std::size_t>(k)]) throw ConfigError("partial_trace: duplicate subsystem index");
    kept[static_cast<std::size_t>(k)] = true;
  }

  Dims out_dims;
  for (int k = 0; k < n; ++k) {
    if (kept[static_cast<std::size_t>(k)]) out_dims.push_back(dims[static_cast<std::size_t>(k)]);
  }
  const std::size_t full = rho.dim();
  const auto reduced = static_cast<Eigen::Index>(total_dim(out_dims));

  // Split every flat index into (kept part, traced part).
  std::vector<std::size_t> kept_idx(full), traced_idx(full);
  for (std::size_t i = 0; i < full; ++i) {
    const auto digits = unflatten(i, dims);
    std::size_t ki = 0, ti = 0;
    for (int k = 0; k < n; ++k) {
      const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);
      const auto digit = static_cast<std::size_t>(digits[static_cast<std::size_t>(k)]);
      if (kept[static_cast<std::size_t>(k)]) {
        ki = ki * d + digit;
      } else {
        ti = ti * d + digit;
      }
    }
    kept_idx[i] = ki;
    traced_idx[i] = ti;
  }

  Matrix out = Matrix::Zero(reduced, reduced);
  for (std::size_t i = 0; i < full; ++i) {
    for (std::size_t j = 0; j < full; ++j) {
      if (traced_idx[i] != traced_idx[j]) continue;
      out(static_cast<Eigen::Index>(kept_idx[i]), static_cast<Eigen::Index>(kept_idx[j])) += rho(i, j);
    }
  }
  return DensityMatrix::unchecked(std::move(out_dims), std::move(out));
}

std::vector<double> clipped_spectrum(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    double lambda = es.eigenvalues()(static_cast<Eigen::Index>(i));
    if (lambda < -kPsdTol) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " below -" << kPsdTol;
      throw NumericalError(os.str());
    }
    out[i] = std::max(lambda, 0.0);
  }
  return out;
}

double shannon_entropy_nats(const std::vector<double>& probabilities) {
  double s = 0.0;
  for (double x : probabilities) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return std::max(0.0, shannon_entropy_nats(clipped_spectrum(rho.matrix())));
}

Vector fix_global_phase(const Vector& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag + 1e-12) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return v;
  const cplx phase = std::conj(v(best)) / best_mag;
  Vector out = v * phase;
  out(best) = cplx(std::abs(out(best)), 0.0);
  return out;
}

SpectralDecomposition spectral_decompose(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const Eigen::Index n = es.eigenvalues().size();
  SpectralDecomposition out;
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  out.eigenvectors.reserve(static_cast<std::size_t>(n));
  // Eigen sorts ascending.
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double mu = es.eigenvalues()(k);
    if (mu < -kPsdTol) throw NumericalError("density matrix has a negative eigenvalue");
    out.eigenvalues.push_back(std::max(mu, 0.0));
    out.eigenvectors.push_back(StateVector::normalized(rho.dims(), fix_global_phase(es.eigenvectors().col(k))));
  }
  return out;
}

DominantEigenvector dominant_eigenvector(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const Eigen::Index n = es.eigenvalues().size();
  const double top = es.eigenvalues()(n - 1);
  const bool degenerate = n > 1 && top - es.eigenvalues()(n - 2) < 1e-9;
  // Among near-degenerate top eigenvalues the solver's lowest column wins.
  Eigen::Index pick = n - 1;
  if (degenerate) {
    while (pick > 0 && top - es.eigenvalues()(pick - 1) < 1e-9) --pick;
  }
  return {StateVector::normalized(rho.dims(), fix_global_phase(es.eigenvectors().col(pick))), top, degenerate};
}

double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dims() != psi.dims()) throw ConfigError("fidelity_pure: dimension mismatch");
  const cplx f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

}  // namespace qcorr
