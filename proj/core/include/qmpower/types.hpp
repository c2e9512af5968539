#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qmpower {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Population allowed in the top two Fock levels (plus truncated tail) before
// a state is considered to leak out of its truncated basis.
inline constexpr double kLeakageBound = 1e-8;

inline constexpr double kPureNormTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueSlack = 1e-10;

inline constexpr double kWeightSumTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

}  // namespace qmpower
