#include "qcorr/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

double KrausPair::completeness_error() const {
  const Matrix2 sum = k0.adjoint() * k0 + k1.adjoint() * k1;
  return (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

void KrausPair::validate() const {
  if (!k0.allFinite() || !k1.allFinite()) throw ConfigError("Kraus pair has non-finite entries");
  const double err = completeness_error();
  if (err > 1e-10) {
    std::ostringstream os;
    os << "Kraus pair is not trace preserving (completeness error " << err << ")";
    throw ConfigError(os.str());
  }
}

InitialState::InitialState(cplx alpha, cplx beta, cplx gamma, cplx delta)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
  const double norm2 = std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "initial state is not normalized (sum of |amplitude|^2 = " << norm2 << ")";
    throw ConfigError(os.str());
  }
}

StateVector InitialState::ab_state() const {
  Vector v(4);
  v << delta_, gamma_, beta_, alpha_;
  return StateVector({2, 2}, std::move(v));
}

ChannelParameter::ChannelParameter(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("channel parameter p must lie in [0, 1]");
}

ChannelParameter ChannelParameter::from_theta(double theta_p) {
  if (!(theta_p >= 0.0 && theta_p <= std::numbers::pi / 4 + 1e-15)) {
    throw ConfigError("theta_p must lie in [0, pi/4]");
  }
  const double s = std::sin(2.0 * theta_p);
  ChannelParameter out(std::min(1.0, s * s));
  out.theta_p_ = theta_p;
  return out;
}

KrausPair amplitude_damping(ChannelParameter p) {
  KrausPair k;
  k.k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p.p());
  k.k1 << 0.0, std::sqrt(p.p()), 0.0, 0.0;
  return k;
}

KrausPair phase_damping(ChannelParameter p) {
  KrausPair k;
  k.k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p.p());
  k.k1 << 0.0, 0.0, 0.0, std::sqrt(p.p());
  return k;
}

KrausPair identity_channel() { return {}; }

StateVector dilate(const InitialState& initial, const KrausPair& kraus) {
  kraus.validate();
  const Vector ab = initial.ab_state().amplitudes();
  const Matrix2* ops[2] = {&kraus.k0, &kraus.k1};
  Vector out = Vector::Zero(8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cplx c = ab(2 * a + b);
      if (c == cplx(0.0)) continue;
      for (int e = 0; e < 2; ++e) {
        for (int l = 0; l < 2; ++l) out(4 * a + 2 * l + e) += c * (*ops[e])(l, b);
      }
    }
  }
  const double norm2 = out.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-9) throw NumericalError("dilated state lost normalization");
  if (std::abs(norm2 - 1.0) <= kNormTol) return StateVector({2, 2, 2}, std::move(out));
  return StateVector::normalized({2, 2, 2}, std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausPair& kraus) {
  if (rho.dims() != Dims{2}) throw ConfigError("apply_channel: expected a single-qubit state");
  kraus.validate();
  const Matrix2 r = rho.matrix();
  Matrix2 out = kraus.k0 * r * kraus.k0.adjoint() + kraus.k1 * r * kraus.k1.adjoint();
  return DensityMatrix::unchecked({2}, Matrix(out));
}

cplx f_function(const KrausPair& kraus) {
  const Matrix2& m = kraus.k0;
  const Matrix2& n = kraus.k1;
  const cplx t1 = m(1, 0) * n(0, 1) - m(0, 0) * n(1, 1);
  const cplx t2 = m(1, 1) * n(0, 0) - m(0, 1) * n(1, 0);
  const cplx t3 = (m(1, 1) * n(0, 1) - m(0, 1) * n(1, 1)) * (m(0, 0) * n(1, 0) - m(1, 0) * n(0, 0));
  return t1 * t1 + t2 * t2 + 2.0 * t3 - 2.0 * m.determinant() * n.determinant();
}

DensityMatrix white_noise(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("white noise strength must lie in [0, 1]");
  const auto n = static_cast<Eigen::Index>(rho.dim());
  Matrix out = (1.0 - eps) * rho.matrix() + eps * Matrix::Identity(n, n) / static_cast<double>(n);
  return DensityMatrix::unchecked(rho.dims(), std::move(out));
}

DensityMatrix correlated_be_dephasing(const DensityMatrix& rho, double q) {
  if (rho.dims() != Dims{2, 2, 2}) throw ConfigError("correlated_be_dephasing: expected an A,B,E state");
  if (!(q >= 0.0 && q <= 0.5)) throw ConfigError("correlated dephasing strength must lie in [0, 1/2]");
  // Z_B Z_E is diagonal with sign (-1)^(b+e).
  Matrix out = rho.matrix();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int si = ((i >> 1) ^ i) & 1;
      const int sj = ((j >> 1) ^ j) & 1;
      if (si != sj) out(i, j) *= (1.0 - 2.0 * q);
    }
  }
  return DensityMatrix::unchecked(rho.dims(), std::move(out));
}

}  // namespace qcorr
