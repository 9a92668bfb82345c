#pragma once

#include <complex>
#include <utility>

#include "s2xs2/surface.hpp"

namespace s2xs2 {

/// How to obtain jets: from the chart's closed forms or by central
/// differences of the evaluator (step h for first partials, h^(3/4) for the
/// second-partial stencils).
struct JetScheme {
    JetSource source = JetSource::analytic;
    double h = tol::kFdFirst;

    static JetScheme analytic() { return {JetSource::analytic, 0.0}; }
    static JetScheme fd(double step = tol::kFdFirst) { return {JetSource::finite_difference, step}; }
};

ImmersionJet jet(const Chart& chart, double t, double s, const JetScheme& scheme = JetScheme::analytic());

/// Gram matrix of the first partials in R^6. Throws DegenerateMetricError
/// when det g <= 1e-12 trace^2.
Mat2 first_form(const ImmersionJet& j);

/// Oriented orthonormal tangent frame from Gram-Schmidt on (d_t, d_s).
struct OrthonormalFrame {
    ProductTangent e1, e2;
};
OrthonormalFrame orthonormal_frame(const ImmersionJet& j);

/// |w(d_t, d_s)| / sqrt(det g); zero exactly at Lagrangian points.
double lagrangian_residual(const ImmersionJet& j);

/// Associated Jacobian C = <J_x dphi(e1), dphi(e2)> in the oriented
/// orthonormal frame. Requires the point to be Lagrangian (residual <= 1e-6)
/// and guarantees C^2 <= 1/4 + 1e-9.
double associated_jacobian(const ImmersionJet& j);

/// Max deviation of |dphi(e1)|^2 + |dphi(e2)|^2 and the psi analogue from 1.
double rank_identity_residual(const ImmersionJet& j);

/// First and second fundamental data at a point. sigma[k][i][j] is the
/// component of sigma(e_i, e_j) along the k-th normal frame vector; for
/// Lagrangian surfaces the frame is {J e1, J e2}.
struct FundamentalForms {
    double g11 = 0, g12 = 0, g22 = 0;
    Vec6 sigma_vec[2][2];       // sigma(e_i, e_j) as ambient vectors
    double sigma[2][2][2] = {}; // frame coefficients [k][i][j]
    ProductTangent normal_frame[2];
    Vec6 H = Vec6::Zero();
    double norm_H = 0;
    double norm_sigma2 = 0;
    double C = 0;
    double K = std::numeric_limits<double>::quiet_NaN();  // filled by curvature analyzers
};
FundamentalForms second_form(const ImmersionJet& j);

/// Intrinsic Gauss curvature from metric samples around (t, s): the
/// conformal formula K = -e^{-2u} (u_tt + u_ss) when the chart declares
/// conformality and the metric passes the numeric conformality check,
/// otherwise the Brioschi formula. `step` is the stencil spacing.
double gauss_curvature(const Chart& chart, double t, double s,
                       const JetScheme& scheme = JetScheme::analytic(),
                       double step = tol::kFdSecond);

/// | K - 2 C^2 - 2 |H|^2 + |sigma|^2 / 2 |.
double gauss_equation_residual(const Chart& chart, double t, double s,
                               const JetScheme& scheme = JetScheme::analytic());

/// Residuals of the isoparametric identities of minimal Lagrangian surfaces:
///   r1 = | |grad C|^2 - (1 - 4C^2)(2C^2 - K)/2 |
///   r2 = | lap C + C (1 + 4C^2 - 4K) |
/// Gradient and Laplacian are intrinsic (conformal shortcut when available).
std::pair<double, double> c_identities_residual(const Chart& chart, double t, double s,
                                                bool minimal_declared,
                                                const JetScheme& scheme = JetScheme::analytic());

/// Hopf-differential residuals in a conformal chart, z = t + i s:
///   cauchy_riemann = | d/dzbar <phi_z, phi_z> |
///   modulus        = | 16 |<phi_z, phi_z>|^2 - e^{4u} (1 - 4 C^2) |
struct HopfResidual {
    double cauchy_riemann = 0;
    double modulus = 0;
};
HopfResidual hopf_residual(const Chart& chart, double t, double s,
                           const JetScheme& scheme = JetScheme::analytic());

/// Norm of the normal-space projection of the ambient derivative of the mean
/// curvature field, maximized over the two parameter directions. Zero iff
/// the mean curvature vector is parallel in the normal connection.
double parallel_H_residual(const Chart& chart, double t, double s,
                           const JetScheme& scheme = JetScheme::analytic());

/// Complex bilinear <phi_z, phi_z> (the Hopf coefficient).
std::complex<double> hopf_coefficient(const ImmersionJet& j);

/// Area of a compact surface: midpoint quadrature over the quadrature atlas
/// at n and 2n nodes per axis, Richardson extrapolated.
double area(const SurfaceSpec& surface, int n, const JetScheme& scheme = JetScheme::analytic());

/// Degree (1/4pi) integral of C over a compact oriented surface, midpoint +
/// Richardson. Throws PreconditionError on non-orientable surfaces.
double degree(const SurfaceSpec& surface, int n, const JetScheme& scheme = JetScheme::analytic());

/// The surface moved by the holomorphic isometry (A, B), A, B in SO(3).
SurfaceSpec apply_isometry(const SurfaceSpec& surface, const Eigen::Matrix3d& A,
                           const Eigen::Matrix3d& B);

} // namespace s2xs2
