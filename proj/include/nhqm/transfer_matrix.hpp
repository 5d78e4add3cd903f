#pragma once

#include <complex>

#include "nhqm/potential.hpp"

namespace nhqm {

// 2x2 complex matrix relating asymptotic plane-wave coefficients,
//   (A+, B+)^T = M (A-, B-)^T,  psi(x) -> A e^{ikx} + B e^{-ikx},
// with det M = 1 for any potential.
struct TransferMatrix {
  cdouble m11{1.0}, m12{0.0};
  cdouble m21{0.0}, m22{1.0};
  double k = 0.0;

  cdouble det() const { return m11 * m22 - m12 * m21; }
};

// Matrix product keeping the wavenumber; factors must share k.
TransferMatrix operator*(const TransferMatrix& lhs, const TransferMatrix& rhs);

// Transmission/reflection amplitudes at wavenumber k. deficit = |T|^2 + |Rl|^2
// equals 1 for real potentials and diverges at a spectral singularity.
struct ScatteringData {
  double k = 0.0;
  cdouble t;
  cdouble r_left;
  cdouble r_right;
  double deficit = 0.0;
};

// |m22| below this is treated as an exact spectral singularity.
inline constexpr double kM22UnderflowGuard = 1e-30;

// Transfer matrix of z*delta(x) at wavenumber k:
//   [[1 - iz/2k, -iz/2k], [iz/2k, 1 + iz/2k]].
TransferMatrix delta_transfer(cdouble z, double k);

// Delta at x0, obtained from delta_transfer by diagonal-phase conjugation
// with D(x0) = diag(e^{-ik x0}, e^{+ik x0}); m22 is independent of x0.
TransferMatrix shifted_delta_transfer(cdouble z, double x0, double k);

// Exact transfer matrix of a constant complex potential v on (left, right),
// interior wavenumber kappa = sqrt(k^2 - v). Only kappa^2 and the even/odd
// combinations cos(kappa w), sin(kappa w)/kappa enter, so the square-root
// branch drops out and kappa = 0 is a removable limit.
TransferMatrix segment_transfer(cdouble v, double left, double right, double k);

// Product of feature matrices, left-most feature applied first.
TransferMatrix compose(const Potential& potential, double k);

// Amplitudes from M: T = 1/m22, Rl = -m21/m22, Rr = m12/m22.
// Throws SingularityError when |m22| < kM22UnderflowGuard.
ScatteringData scattering_data(const TransferMatrix& m);

// Asymptotic coefficients of one Jost solution on each side.
struct JostSolutionCoefficients {
  cdouble a_left, b_left;
  cdouble a_right, b_right;
};

// Coefficient table of the two Jost solutions:
//   right-going psi_{k+} -> e^{+ikx} (x -> +inf): a_right = 1, b_right = 0,
//                                                 a_left = m22, b_left = -m21;
//   left-going  psi_{k-} -> e^{-ikx} (x -> -inf): a_left = 0, b_left = 1,
//                                                 a_right = m12, b_right = m22.
struct JostCoefficients {
  JostSolutionCoefficients right_going;
  JostSolutionCoefficients left_going;
};

JostCoefficients jost_coefficients(const TransferMatrix& m);

}  // namespace nhqm
