#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace unicheck {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

// Input data failed validation (bad file, non-unitary matrix, bad dimension).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A dense operation was requested beyond the configured size cap.
struct size_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical machinery failed (non-convergence, decomposition failure,
// internal consistency check violated). Never a verdict.
struct numerics_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default tolerances. All verdict-relevant gaps in this problem are integer
// dimension gaps, so these sit orders of magnitude above rounding noise at
// the sizes the dense paths allow.
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kPhaseTol = 1e-8;
inline constexpr double kRankRelTol = 1e-10;  // relative cutoff on the Gram spectrum
inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kGapRatioCertified = 1e4;
inline constexpr double kPinvCutoff = 1e-12;
inline constexpr double kAtOneWindow = 1e-6;
inline constexpr double kMatrixFreeGapTol = 1e-3;
inline constexpr int kMatrixFreeBlockExtra = 16;
inline constexpr int kMatrixFreeBudget = 2000;
inline constexpr int kClosureBudget = 20000;
inline constexpr Eigen::Index kDenseSideCap = 20000;
inline constexpr std::uint64_t kDefaultSeed = 12345;

}  // namespace unicheck
