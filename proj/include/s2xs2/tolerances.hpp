#pragma once

namespace s2xs2::tol {

// Finite-difference step sizes (64-bit balance of truncation vs roundoff).
inline constexpr double kFdFirst = 1e-4;   // first partials of evaluators
inline constexpr double kFdSecond = 1e-3;  // second partials and curvature stencils

// Jet-source tolerance classes.
inline constexpr double kTangencyAnalytic = 1e-8;
inline constexpr double kTangencyFd = 1e-5;

// Analyzer preconditions.
inline constexpr double kLagrangianPrecondition = 1e-6;
inline constexpr double kAmbientTangency = 1e-6;
inline constexpr double kMetricDegeneracy = 1e-12;  // det g <= this * trace^2
inline constexpr double kConformalCheck = 1e-6;     // |g11-g22|+|g12| <= this * g11

// Verification thresholds pinned by the acceptance criteria.
inline constexpr double kLagrangianResidual = 1e-9;
inline constexpr double kCSquaredBound = 0.25 + 1e-9;
inline constexpr double kConstantCMatch = 1e-8;
inline constexpr double kTotallyGeodesicSigma = 1e-7;
inline constexpr double kCurvatureAnalytic = 1e-6;
inline constexpr double kCurvatureFd = 1e-4;
inline constexpr double kAreaM0 = 1e-3;
inline constexpr double kDegreeInteger = 1e-6;
inline constexpr double kParallelH = 1e-5;
inline constexpr double kHSpread = 1e-8;
inline constexpr double kGaussEquationFd = 1e-4;
inline constexpr double kGaussEquationAnalytic = 1e-6;
inline constexpr double kCIdentities = 5e-4;
inline constexpr double kGaussMapRelations = 1e-6;
inline constexpr double kCliffordInT = 1e-10;
inline constexpr double kLawsonMaxC = 1e-6;
inline constexpr double kDeckInvariance = 1e-10;
inline constexpr double kMembership = 1e-10;
inline constexpr double kMinimalH = 1e-6;
inline constexpr double kAreaBRelative = 1e-4;
inline constexpr double kSinhGordonAnalytic = 1e-6;
inline constexpr double kSinhGordonFd = 1e-4;
inline constexpr double kReducedOdeMatch = 1e-7;
inline constexpr double kCompatResidual = 1e-4;
inline constexpr double kFirstIntegralDrift = 1e-8;
inline constexpr double kFlatTorusLambda1Rel = 4e-3;
inline constexpr double kKleinLambda1Rel = 2e-2;
inline constexpr double kDenseIterAgreement = 1e-8;
inline constexpr double kRayleighBound = 1.0 / 3.0 + 0.01;
inline constexpr double kCubicSymmetry = 1e-6;
inline constexpr double kIsometryEquivariance = 1e-10;
inline constexpr double kFrameInvariance = 1e-12;
inline constexpr double kRankIdentity = 1e-8;
inline constexpr double kBipolarRelation = 1e-10;

// Spectral guard band around the eigenvalue 1 (the analytic eigenvalue of
// the coordinate functions, excluded from index counts).
inline constexpr double kSpectralMargin = 0.02;
inline constexpr double kSpectralZero = 1e-6;  // below this an eigenvalue counts as 0

} // namespace s2xs2::tol
