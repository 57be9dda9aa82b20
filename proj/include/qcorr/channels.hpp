#pragma once

// Single-qubit channels with a one-qubit environment, and their dilation
// onto the A-B-E register.

#include <optional>

#include <Eigen/Dense>

#include "qcorr/core.hpp"

namespace qcorr {

using Matrix2 = Eigen::Matrix2cd;

// K0 = <0|_E U |0>_E, K1 = <1|_E U |0>_E acting on qubit B.
struct KrausPair {
  Matrix2 k0 = Matrix2::Identity();
  Matrix2 k1 = Matrix2::Zero();

  // max |K0^dag K0 + K1^dag K1 - I| entrywise.
  double completeness_error() const;
  // Throws ConfigError if completeness_error() > 1e-10.
  void validate() const;
};

// alpha|11> + beta|10> + gamma|01> + delta|00> on AB; E starts in |0>.
class InitialState {
 public:
  // Throws ConfigError unless |alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = 1 within 1e-12.
  InitialState(cplx alpha, cplx beta, cplx gamma, cplx delta);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  cplx gamma() const { return gamma_; }
  cplx delta() const { return delta_; }

  // Two-qubit AB state in the computational basis.
  StateVector ab_state() const;

 private:
  cplx alpha_, beta_, gamma_, delta_;
};

// Damping strength p in [0,1]. When built from a half-wave-plate angle,
// p = sin^2(2 theta_p) with theta_p in [0, pi/4].
class ChannelParameter {
 public:
  explicit ChannelParameter(double p);
  static ChannelParameter from_theta(double theta_p);

  double p() const { return p_; }
  std::optional<double> theta_p() const { return theta_p_; }

 private:
  double p_;
  std::optional<double> theta_p_;
};

KrausPair amplitude_damping(ChannelParameter p);
KrausPair phase_damping(ChannelParameter p);
KrausPair identity_channel();

// Applies |x>_B|0>_E -> (K0|x>)_B|0>_E + (K1|x>)_B|1>_E to the initial state.
// Returns the 3-qubit state in A,B,E order.
StateVector dilate(const InitialState& initial, const KrausPair& kraus);

// rho -> K0 rho K0^dag + K1 rho K1^dag on a single qubit.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausPair& kraus);

// Polynomial in the Kraus entries whose modulus times the initial AB tangle
// gives the 3-tangle of the dilated state.
cplx f_function(const KrausPair& kraus);

// (1 - eps) rho + eps I/d.
DensityMatrix white_noise(const DensityMatrix& rho, double eps);

// (1 - q) rho + q (Z_B Z_E) rho (Z_B Z_E) on an A,B,E register, q in [0, 1/2].
// Exploratory model of joint polarization/path dephasing; it couples the
// W and GHZ classes, which no local operation can.
DensityMatrix correlated_be_dephasing(const DensityMatrix& rho, double q);

}  // namespace qcorr
