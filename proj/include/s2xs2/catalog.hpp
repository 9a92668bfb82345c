#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2xs2/analyzers.hpp"
#include "s2xs2/elliptic.hpp"
#include "s2xs2/surface.hpp"

namespace s2xs2 {

using Vec4 = Eigen::Vector4d;

// ---------------------------------------------------------------------------
// Space curves and products

struct SpaceCurve {
    std::function<Vec3(double)> eval;        // unit vectors
    std::function<Vec3(double)> derivative;
    std::function<Vec3(double)> second_derivative;  // optional (analytic jets)
    std::optional<double> period;
};

/// Unit-speed circle x1 = height on the sphere; height = 0 is a great circle.
SpaceCurve latitude_circle(double height);

// ---------------------------------------------------------------------------
// Immersions into R^4 / S^3

/// Position and partial derivatives up to third order.
struct R4Jet3 {
    Vec4 P, Pt, Ps, Ptt, Pts, Pss, Pttt, Ptts, Ptss, Psss;
};

struct R4Immersion {
    std::string name;
    ParamDomain domain;
    std::function<Vec4(double, double)> eval;
    std::function<R4Jet3(double, double)> jet3;
    bool oriented = true;
    bool s3_valued = true;
};

R4Immersion make_clifford_torus();
R4Immersion make_lawson_tau31();
R4Immersion make_geodesic_sphere();  // totally geodesic S^2 inside S^3

// ---------------------------------------------------------------------------
// Two-vector (Grassmannian) utilities
//
// Coordinates on Lambda^2 R^4 in the order (12, 13, 14, 23, 24, 34); the
// basis e_i ^ e_j is orthonormal for the induced metric. The self-dual /
// anti-self-dual parts are expressed in the fixed bases
//   E^1_± = (e12 ± e34)/sqrt2, E^2_± = (e13 ∓ e24)/sqrt2, E^3_± = (e14 ± e23)/sqrt2
// built from the standard frame of R^4, which makes all Gauss-map outputs
// reproducible bit for bit.

Vec6 wedge(const Vec4& u, const Vec4& v);
Vec3 plus_part(const Vec6& w);   // sqrt2 <<w, E^i_+>>
Vec3 minus_part(const Vec6& w);  // sqrt2 <<w, E^i_->>

/// Oriented unit normal of an S^3 surface: the unique direction N with
/// det(Psi_t, Psi_s, Psi, N) > 0.
Vec4 s3_normal(const Vec4& P, const Vec4& Pt, const Vec4& Ps);

/// First/second fundamental data of an immersion inside S^3.
struct S3Forms {
    Mat2 g;          // induced metric
    Mat2 sff;        // scalar second fundamental form along the unit normal
    double K;        // Gauss curvature (ambient curvature 1 + det sff / det g)
    double norm_sff2;
    double mean_curvature;  // |trace_g sff| / 2
};
S3Forms s3_second_form(const R4Immersion& psi, double t, double s);

// ---------------------------------------------------------------------------
// Gauss maps

/// Gauss map of an oriented surface in R^4 as a surface in the product of
/// spheres, with analytic jets derived from the immersion's third-order jet.
/// For S^3-valued immersions the Lagrangian property is automatic.
SurfaceSpec gauss_map(const R4Immersion& psi);

/// Residuals of the metric and Jacobian relations between a minimal S^3
/// surface and its Gauss map: g = (2 + |sff|^2) ghat and C = Khat / (2 + |sff|^2).
struct GaussMapRelationResidual {
    double metric;    // relative, entrywise
    double jacobian;  // absolute
};
GaussMapRelationResidual gauss_map_relation_residual(const R4Immersion& psi, double t, double s);

/// Bipolar check: max coordinate deviation of (phi, -psi) from
/// sqrt2 (Psi ^ N) in the fixed two-vector basis.
double bipolar_residual(const R4Immersion& psi, double t, double s);

// ---------------------------------------------------------------------------
// Graphs of sphere maps

/// A self-map of the sphere given by an ambient extension: `eval` restricted
/// to unit vectors, `differential`/`hessian` the ambient derivatives.
struct SphereMap {
    std::function<Vec3(const Vec3&)> eval;
    std::function<Vec3(const Vec3&, const Vec3&)> differential;
    std::function<Vec3(const Vec3&, const Vec3&, const Vec3&)> hessian;  // optional
};

SurfaceSpec make_graph(const SphereMap& F, const std::string& name, SurfaceProperties expects);

/// | w0(v, w) + w0(dF v, dF w) | on an orthonormal tangent pair at x; zero
/// iff the graph of F is Lagrangian at x.
double area_preserving_residual(const SphereMap& F, const Vec3& x);

/// The sphere twist map whose graph has constant associated Jacobian lambda
/// (defined away from the poles).
SphereMap constant_C_map(double lambda);

// ---------------------------------------------------------------------------
// Catalog constructors

SurfaceSpec make_M0();
SurfaceSpec make_T();
SurfaceSpec make_T_ab(double a, double b);
SurfaceSpec make_product_of_curves(const SpaceCurve& alpha, const SpaceCurve& beta,
                                   const std::string& name = "product");
SurfaceSpec make_graph_antipodal();
SurfaceSpec make_graph_identity();  // negative control, not Lagrangian
SurfaceSpec make_constant_C_graph(double lambda);
SurfaceSpec make_clifford_gauss();
SurfaceSpec make_lawson_gauss();
SurfaceSpec make_klein_bottle_B();

/// Residual of the algebraic description of the Klein bottle: 2x = y and
/// Re(sqrt(z) w) = Im(sqrt(z) w) with the principal square root.
double klein_membership_residual(const ProductPoint& p);

// ---------------------------------------------------------------------------
// Registry (stable CLI identifiers)

struct CatalogEntry {
    std::string id;
    std::string kind;  // "surface" or "s3-immersion"
    std::string summary;
};

std::vector<CatalogEntry> catalog();
bool is_immersion_id(const std::string& id);
SurfaceSpec surface_by_id(const std::string& id);
R4Immersion immersion_by_id(const std::string& id);

} // namespace s2xs2
