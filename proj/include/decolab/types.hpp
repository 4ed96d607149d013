// types.hpp — Dense scalar/matrix aliases and physical constants.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace decolab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Tolerances shared across modules.
namespace tol {
inline constexpr double kHermiticity      = 1e-10;
inline constexpr double kTraceContinuum   = 1e-8;
inline constexpr double kTraceDiscrete    = 1e-12;
inline constexpr double kDiagNegative     = 1e-10;
inline constexpr double kZeroNorm         = 1e-12;
inline constexpr double kTraceDriftStep   = 1e-6;
inline constexpr double kWignerResidue    = 1e-8;
inline constexpr double kBoundaryAmp      = 1e-6;
} // namespace tol

// CGS constants, single definition point.
namespace cgs {
inline constexpr double kHbar  = 1.0546e-27;  // erg s
inline constexpr double kBoltz = 1.3807e-16;  // erg/K
inline constexpr double kLight = 2.9979e10;   // cm/s
inline constexpr double kGravityAccel = 981.0; // cm/s^2
} // namespace cgs

} // namespace decolab
