#ifndef BOSONIC_TOLERANCES_HPP
#define BOSONIC_TOLERANCES_HPP

namespace bosonic {

namespace tol {

/// Relative symmetry tolerance for covariance matrices.
inline constexpr double kSymmetry = 1e-10;
/// Smallest admissible eigenvalue of a positive definite matrix.
inline constexpr double kPositiveDefinite = 1e-12;
/// Symplectic eigenvalues in [1 - kPhysical, 1] count as exactly 1.
inline constexpr double kPhysical = 1e-9;
/// Maximum tail probability dropped by a Fock truncation.
inline constexpr double kTruncation = 1e-10;
/// Bisection residual scale, multiplied by max(1, N).
inline constexpr double kRoot = 1e-12;
/// A bound counts as violated only below -kCheck.
inline constexpr double kCheck = 1e-9;
/// |margin| <= kSaturation counts as saturation.
inline constexpr double kSaturation = 1e-6;
/// Schmidt coefficients below this are dropped.
inline constexpr double kSingularFloor = 1e-14;

}  // namespace tol

/// Runtime-adjustable subset of the tolerances (CLI overrides land here).
struct Tolerances {
  double check = tol::kCheck;
  double saturation = tol::kSaturation;
  double truncation = tol::kTruncation;
};

}  // namespace bosonic

#endif  // BOSONIC_TOLERANCES_HPP
