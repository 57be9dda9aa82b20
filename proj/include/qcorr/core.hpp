#pragma once

// Dense state representations for systems of a few qubits.
//
// Subsystem ordering follows the ket labels: the leftmost label is the most
// significant digit of the amplitude index, so |n l m>_ABE sits at 4n+2l+m.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

std::size_t total_dim(const Dims& dims);

class DensityMatrix;

class StateVector {
 public:
  // Throws ConfigError unless the amplitudes have unit norm and match dims.
  StateVector(Dims dims, Vector amplitudes);

  static StateVector basis(Dims dims, std::size_t index);
  // Rescales to unit norm; rejects the zero vector.
  static StateVector normalized(Dims dims, Vector amplitudes);

  const Dims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  cplx operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  DensityMatrix projector() const;

 private:
  Dims dims_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  // Throws ConfigError unless the matrix is Hermitian, unit-trace and PSD
  // within kHermitianTol / kTraceTol / kPsdTol.
  DensityMatrix(Dims dims, Matrix entries);

  // Skips validation. For callers whose construction already guarantees
  // the invariants (partial traces, convex mixtures, Kraus maps).
  static DensityMatrix unchecked(Dims dims, Matrix entries);
  static DensityMatrix maximally_mixed(Dims dims);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  cplx operator()(std::size_t r, std::size_t c) const {
    return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

 private:
  struct Trusted {};
  DensityMatrix(Dims dims, Matrix entries, Trusted);

  Dims dims_;
  Matrix entries_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  std::vector<StateVector> eigenvectors;

  Matrix reassemble() const;
};

struct DominantEigenvector {
  StateVector state;
  double eigenvalue;
  // Set when the top two eigenvalues are closer than 1e-9; the eigenvector
  // returned is then the lowest-index one the solver produced.
  bool degenerate;
};

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Reduced state on `keep` (subsystem indices, any order, no duplicates).
// The result lists the kept subsystems in ascending index order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Eigenvalues of a Hermitian matrix with [-kPsdTol, 0) clipped to zero.
// Throws NumericalError on anything more negative.
std::vector<double> clipped_spectrum(const Matrix& hermitian);

// -sum x ln x with 0 ln 0 = 0.
double shannon_entropy_nats(const std::vector<double>& probabilities);

double von_neumann_entropy(const DensityMatrix& rho);
SpectralDecomposition spectral_decompose(const DensityMatrix& rho);
DominantEigenvector dominant_eigenvector(const DensityMatrix& rho);
double fidelity_pure(const DensityMatrix& rho, const StateVector& psi);
double purity(const DensityMatrix& rho);

// Rotates the global phase so the largest-magnitude amplitude (first index
// on ties) is real and positive.
Vector fix_global_phase(const Vector& v);

}  // namespace qcorr
