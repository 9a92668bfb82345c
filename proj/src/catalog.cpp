#include "s2xs2/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace s2xs2 {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Modulus of the delta amplitude used by the Klein bottle family.
EllipticModulus klein_modulus() { return EllipticModulus(2.0 * std::sqrt(2.0) / 3.0); }

// ---------------------------------------------------------------------------
// Sphere chart jets

// A sphere-valued map of two parameters with partials up to second order.
struct SphereJet2 {
    Vec3 p, pa, pb, paa, pab, pbb;
};

// Stereographic charts. Both are oriented toward the outward normal, so the
// parameter orientation (a, b) agrees on the overlap.
SphereJet2 stereographic_jet(double a, double b, bool north) {
    const double D = 1.0 + a * a + b * b;
    const double f = 1.0 / D;
    const double f2 = f * f, f3 = f2 * f;
    const double fa = -2.0 * a * f2;
    const double fb = -2.0 * b * f2;
    const double faa = -2.0 * f2 + 8.0 * a * a * f3;
    const double fab = 8.0 * a * b * f3;
    const double fbb = -2.0 * f2 + 8.0 * b * b * f3;

    SphereJet2 j;
    j.p = {2.0 * a * f, 2.0 * b * f, 2.0 * f - 1.0};
    j.pa = {2.0 * f + 2.0 * a * fa, 2.0 * b * fa, 2.0 * fa};
    j.pb = {2.0 * a * fb, 2.0 * f + 2.0 * b * fb, 2.0 * fb};
    j.paa = {4.0 * fa + 2.0 * a * faa, 2.0 * b * faa, 2.0 * faa};
    j.pab = {2.0 * fb + 2.0 * a * fab, 2.0 * fa + 2.0 * b * fab, 2.0 * fab};
    j.pbb = {2.0 * a * fbb, 4.0 * fb + 2.0 * b * fbb, 2.0 * fbb};
    if (!north) {
        // Mirror (y, z) -> (-y, -z): keeps the chart outward oriented.
        for (Vec3* v : {&j.p, &j.pa, &j.pb, &j.paa, &j.pab, &j.pbb}) {
            (*v)(1) = -(*v)(1);
            (*v)(2) = -(*v)(2);
        }
    }
    return j;
}

// Compose a cartesian chart jet with (a, b) = (rho cos th, rho sin th).
SphereJet2 polar_jet(double rho, double th, bool north) {
    const double ct = std::cos(th), st = std::sin(th);
    const SphereJet2 c = stereographic_jet(rho * ct, rho * st, north);
    SphereJet2 j;
    j.p = c.p;
    j.pa = c.pa * ct + c.pb * st;                      // d/drho
    j.pb = rho * (-c.pa * st + c.pb * ct);             // d/dth
    j.paa = c.paa * ct * ct + 2.0 * c.pab * ct * st + c.pbb * st * st;
    j.pab = -c.pa * st + c.pb * ct +
            rho * (-c.paa * ct * st + c.pab * (ct * ct - st * st) + c.pbb * st * ct);
    j.pbb = rho * rho * (c.paa * st * st - 2.0 * c.pab * st * ct + c.pbb * ct * ct) -
            rho * (c.pa * ct + c.pb * st);
    return j;
}

ImmersionJet jet_from_factors(const SphereJet2& X, const SphereJet2& Y) {
    ImmersionJet j;
    j.source = JetSource::analytic;
    j.P = {X.p, Y.p};
    j.d_t = {X.pa, Y.pa};
    j.d_s = {X.pb, Y.pb};
    j.d_tt << X.paa, Y.paa;
    j.d_ts << X.pab, Y.pab;
    j.d_ss << X.pbb, Y.pbb;
    return j;
}

ProductPoint point_from_jet(const ImmersionJet& j) { return j.P; }

// ---------------------------------------------------------------------------
// Graph lift over the sphere charts

SphereJet2 graph_image_jet(const SphereMap& F, const SphereJet2& X) {
    SphereJet2 Y;
    Y.p = F.eval(X.p);
    Y.pa = F.differential(X.p, X.pa);
    Y.pb = F.differential(X.p, X.pb);
    if (F.hessian) {
        Y.paa = F.differential(X.p, X.paa) + F.hessian(X.p, X.pa, X.pa);
        Y.pab = F.differential(X.p, X.pab) + F.hessian(X.p, X.pa, X.pb);
        Y.pbb = F.differential(X.p, X.pbb) + F.hessian(X.p, X.pb, X.pb);
    } else {
        Y.paa = Y.pab = Y.pbb = Vec3::Zero();
    }
    return Y;
}

Chart graph_chart(const SphereMap& F, const std::string& name, bool north, bool polar,
                  bool analytic_second) {
    Chart c;
    c.name = name;
    if (polar) {
        c.domain = {0.0, 1.0, 0.0, 2.0 * kPi, PlaneGluing{0.0}, false};
    } else {
        c.domain = {-1.0, 1.0, -1.0, 1.0, PlaneGluing{0.25}, true};
    }
    auto base = [north, polar](double t, double s) {
        return polar ? polar_jet(t, s, north) : stereographic_jet(t, s, north);
    };
    c.eval = [F, base](double t, double s) {
        const SphereJet2 X = base(t, s);
        return ProductPoint{X.p, F.eval(X.p)};
    };
    if (F.differential && analytic_second) {
        c.analytic_jet = [F, base](double t, double s) {
            const SphereJet2 X = base(t, s);
            return jet_from_factors(X, graph_image_jet(F, X));
        };
    }
    return c;
}

SphereMap antipodal_map() {
    SphereMap F;
    F.eval = [](const Vec3& x) { return Vec3(-x); };
    F.differential = [](const Vec3&, const Vec3& v) { return Vec3(-v); };
    F.hessian = [](const Vec3&, const Vec3&, const Vec3&) { return Vec3(Vec3::Zero()); };
    return F;
}

SphereMap identity_map() {
    SphereMap F;
    F.eval = [](const Vec3& x) { return x; };
    F.differential = [](const Vec3&, const Vec3& v) { return v; };
    F.hessian = [](const Vec3&, const Vec3&, const Vec3&) { return Vec3(Vec3::Zero()); };
    return F;
}

// ---------------------------------------------------------------------------
// Lambda^2 helpers

inline Vec6 wedge_impl(const Vec4& u, const Vec4& v) {
    Vec6 w;
    w << u(0) * v(1) - u(1) * v(0),
         u(0) * v(2) - u(2) * v(0),
         u(0) * v(3) - u(3) * v(0),
         u(1) * v(2) - u(2) * v(1),
         u(1) * v(3) - u(3) * v(1),
         u(2) * v(3) - u(3) * v(2);
    return w;
}

} // namespace

Vec6 wedge(const Vec4& u, const Vec4& v) { return wedge_impl(u, v); }

Vec3 plus_part(const Vec6& w) { return {w(0) + w(5), w(1) - w(4), w(2) + w(3)}; }
Vec3 minus_part(const Vec6& w) { return {w(0) - w(5), w(1) + w(4), w(2) - w(3)}; }

Vec4 s3_normal(const Vec4& P, const Vec4& Pt, const Vec4& Ps) {
    Eigen::Matrix<double, 3, 4> rows;
    rows.row(0) = Pt;
    rows.row(1) = Ps;
    rows.row(2) = P;
    Vec4 n;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix3d minor;
        int col = 0;
        for (int c = 0; c < 4; ++c) {
            if (c == k) continue;
            minor.col(col++) = rows.col(c);
        }
        n(k) = ((k % 2) ? 1.0 : -1.0) * minor.determinant();
    }
    // Sign convention: <N, w> = det(Pt, Ps, P, w), so det(Pt, Ps, P, N) > 0.
    const double len = n.norm();
    if (len < 1e-12) throw DegenerateMetricError("s3_normal: frame is degenerate");
    return n / len;
}

S3Forms s3_second_form(const R4Immersion& psi, double t, double s) {
    const R4Jet3 j = psi.jet3(t, s);
    S3Forms f;
    f.g << j.Pt.dot(j.Pt), j.Pt.dot(j.Ps), j.Pt.dot(j.Ps), j.Ps.dot(j.Ps);
    const Vec4 N = s3_normal(j.P, j.Pt, j.Ps);
    f.sff << j.Ptt.dot(N), j.Pts.dot(N), j.Pts.dot(N), j.Pss.dot(N);
    const double detg = f.g.determinant();
    f.K = 1.0 + f.sff.determinant() / detg;
    const Mat2 gi = f.g.inverse();
    const Mat2 shape = gi * f.sff;
    f.norm_sff2 = (shape * shape).trace();
    f.mean_curvature = 0.5 * std::abs(shape.trace());
    return f;
}

namespace {

// Unit Plucker field of the tangent planes, with derivatives up to second
// order; the Gauss map is its self-dual / anti-self-dual split.
struct PluckerJet {
    Vec6 V, Vt, Vs, Vtt, Vts, Vss;
};

PluckerJet plucker_jet(const R4Jet3& j) {
    const Vec6 W = wedge_impl(j.Pt, j.Ps);
    const Vec6 Wt = wedge_impl(j.Ptt, j.Ps) + wedge_impl(j.Pt, j.Pts);
    const Vec6 Ws = wedge_impl(j.Pts, j.Ps) + wedge_impl(j.Pt, j.Pss);
    const Vec6 Wtt =
        wedge_impl(j.Pttt, j.Ps) + 2.0 * wedge_impl(j.Ptt, j.Pts) + wedge_impl(j.Pt, j.Ptts);
    const Vec6 Wts =
        wedge_impl(j.Ptts, j.Ps) + wedge_impl(j.Ptt, j.Pss) + wedge_impl(j.Pt, j.Ptss);
    const Vec6 Wss =
        wedge_impl(j.Ptss, j.Ps) + 2.0 * wedge_impl(j.Pts, j.Pss) + wedge_impl(j.Pt, j.Psss);

    const double n = W.norm();
    if (n < 1e-12)
        throw DegenerateMetricError("gauss_map: rank-deficient differential");
    const double nt = Wt.dot(W) / n;
    const double ns = Ws.dot(W) / n;
    const double ntt = (Wtt.dot(W) + Wt.dot(Wt) - nt * nt) / n;
    const double nts = (Wts.dot(W) + Wt.dot(Ws) - nt * ns) / n;
    const double nss = (Wss.dot(W) + Ws.dot(Ws) - ns * ns) / n;

    PluckerJet out;
    out.V = W / n;
    out.Vt = Wt / n - W * (nt / (n * n));
    out.Vs = Ws / n - W * (ns / (n * n));
    const double n2 = n * n, n3 = n2 * n;
    out.Vtt = Wtt / n - (Wt * nt + Wt * nt + W * ntt) / n2 + 2.0 * W * (nt * nt) / n3;
    out.Vts = Wts / n - (Wt * ns + Ws * nt + W * nts) / n2 + 2.0 * W * (nt * ns) / n3;
    out.Vss = Wss / n - (Ws * ns + Ws * ns + W * nss) / n2 + 2.0 * W * (ns * ns) / n3;
    return out;
}

ImmersionJet gauss_jet(const R4Jet3& j) {
    const PluckerJet v = plucker_jet(j);
    ImmersionJet out;
    out.source = JetSource::analytic;
    out.P = {plus_part(v.V), minus_part(v.V)};
    out.d_t = {plus_part(v.Vt), minus_part(v.Vt)};
    out.d_s = {plus_part(v.Vs), minus_part(v.Vs)};
    out.d_tt << plus_part(v.Vtt), minus_part(v.Vtt);
    out.d_ts << plus_part(v.Vts), minus_part(v.Vts);
    out.d_ss << plus_part(v.Vss), minus_part(v.Vss);
    return out;
}

} // namespace

SurfaceSpec gauss_map(const R4Immersion& psi) {
    if (!psi.oriented)
        throw PreconditionError("gauss_map: immersion must be oriented");
    SurfaceSpec spec;
    spec.name = psi.name + "-gauss";
    Chart c;
    c.name = "main";
    c.domain = psi.domain;
    const auto jet3 = psi.jet3;
    c.eval = [jet3](double t, double s) { return point_from_jet(gauss_jet(jet3(t, s))); };
    c.analytic_jet = [jet3](double t, double s) { return gauss_jet(jet3(t, s)); };
    spec.charts.push_back(c);
    spec.expects.lagrangian = psi.s3_valued;
    return spec;
}

GaussMapRelationResidual gauss_map_relation_residual(const R4Immersion& psi, double t, double s) {
    const S3Forms hat = s3_second_form(psi, t, s);
    const ImmersionJet gj = gauss_jet(psi.jet3(t, s));
    const Mat2 g = first_form(gj);
    const double factor = 2.0 + hat.norm_sff2;
    double scale = g.cwiseAbs().maxCoeff();
    GaussMapRelationResidual r;
    r.metric = ((g - factor * hat.g).cwiseAbs().maxCoeff()) / scale;
    r.jacobian = std::abs(associated_jacobian(gj) - hat.K / factor);
    return r;
}

double bipolar_residual(const R4Immersion& psi, double t, double s) {
    const R4Jet3 j = psi.jet3(t, s);
    const ImmersionJet gj = gauss_jet(j);
    const Vec4 N = s3_normal(j.P, j.Pt, j.Ps);
    const Vec6 bip = std::sqrt(2.0) * wedge_impl(j.P, N);
    const Vec3 bp = plus_part(bip) / std::sqrt(2.0);
    const Vec3 bm = minus_part(bip) / std::sqrt(2.0);
    // (phi, -psi) = sqrt2 Psi ^ N; the sqrt2 cancels against the basis scale.
    double r = (gj.P.x - bp).cwiseAbs().maxCoeff();
    r = std::max(r, (gj.P.y + bm).cwiseAbs().maxCoeff());
    return r;
}

// ---------------------------------------------------------------------------
// Space curves and product tori

SpaceCurve latitude_circle(double height) {
    if (!(height >= 0.0 && height < 1.0))
        throw DomainError("latitude_circle: height must lie in [0, 1)");
    const double r = std::sqrt(1.0 - height * height);
    SpaceCurve c;
    c.eval = [height, r](double t) {
        return Vec3(height, r * std::cos(t / r), r * std::sin(t / r));
    };
    c.derivative = [r](double t) {
        return Vec3(0.0, -std::sin(t / r), std::cos(t / r));
    };
    c.second_derivative = [r](double t) {
        return Vec3(0.0, -std::cos(t / r) / r, -std::sin(t / r) / r);
    };
    c.period = 2.0 * kPi * r;
    return c;
}

SurfaceSpec make_product_of_curves(const SpaceCurve& alpha, const SpaceCurve& beta,
                                   const std::string& name) {
    SurfaceSpec spec;
    spec.name = name;
    Chart c;
    c.name = "main";
    const double Pt = alpha.period.value_or(2.0 * kPi);
    const double Ps = beta.period.value_or(2.0 * kPi);
    const bool compact = alpha.period.has_value() && beta.period.has_value();
    if (compact)
        c.domain = {0.0, Pt, 0.0, Ps, TorusGluing{Pt, Ps}, false};
    else
        c.domain = {0.0, Pt, 0.0, Ps, PlaneGluing{0.5}, false};
    c.eval = [alpha, beta](double t, double s) {
        return ProductPoint{alpha.eval(t), beta.eval(s)};
    };
    if (alpha.second_derivative && beta.second_derivative) {
        c.analytic_jet = [alpha, beta](double t, double s) {
            ImmersionJet j;
            j.source = JetSource::analytic;
            j.P = {alpha.eval(t), beta.eval(s)};
            j.d_t = {alpha.derivative(t), Vec3::Zero()};
            j.d_s = {Vec3::Zero(), beta.derivative(s)};
            j.d_tt << alpha.second_derivative(t), Vec3::Zero();
            j.d_ts = Vec6::Zero();
            j.d_ss << Vec3::Zero(), beta.second_derivative(s);
            return j;
        };
    }
    spec.charts.push_back(c);
    spec.expects.lagrangian = true;
    spec.expects.constant_C = 0.0;
    spec.expects.compact = compact;
    spec.expects.orientable = true;
    if (compact) {
        spec.expects.genus = 1;
        spec.expects.betti1 = 2;
    }
    return spec;
}

SurfaceSpec make_T() {
    SurfaceSpec spec = make_product_of_curves(latitude_circle(0.0), latitude_circle(0.0), "torus-t");
    spec.expects.minimal = true;
    spec.expects.conformal = true;
    spec.expects.totally_geodesic = true;
    spec.expects.constant_K = 0.0;
    for (auto& c : spec.charts) c.domain.conformal = true;
    return spec;
}

SurfaceSpec make_T_ab(double a, double b) {
    if (!(a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0))
        throw DomainError("make_T_ab: parameters must lie in [0, 1)");
    if (a * a + b * b <= 0.0)
        throw DomainError("make_T_ab: a^2 + b^2 must be positive; use make_T for (0, 0)");
    std::ostringstream id;
    id << "torus-ab:" << a << ":" << b;
    SurfaceSpec spec = make_product_of_curves(latitude_circle(a), latitude_circle(b), id.str());
    spec.expects.minimal = false;
    spec.expects.parallel_mean_curvature = true;
    spec.expects.constant_K = 0.0;
    spec.expects.conformal = true;  // arc-length parameters, flat product metric
    for (auto& c : spec.charts) c.domain.conformal = true;
    return spec;
}

// ---------------------------------------------------------------------------
// Graphs

double area_preserving_residual(const SphereMap& F, const Vec3& x) {
    // Orthonormal tangent pair at x.
    const Vec3 seed = std::abs(x(0)) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    const Vec3 v = (seed - seed.dot(x) * x).normalized();
    const Vec3 w = x.cross(v);
    const Vec3 Fx = F.eval(x);
    const Vec3 dv = F.differential(x, v);
    const Vec3 dw = F.differential(x, w);
    const double w0 = x.cross(v).dot(w);
    const double w0F = Fx.cross(dv).dot(dw);
    return std::abs(w0 + w0F);
}

SurfaceSpec make_graph(const SphereMap& F, const std::string& name, SurfaceProperties expects) {
    SurfaceSpec spec;
    spec.name = name;
    const bool analytic = static_cast<bool>(F.hessian);
    spec.charts.push_back(graph_chart(F, "north", true, false, analytic));
    spec.charts.push_back(graph_chart(F, "south", false, false, analytic));
    spec.quad_charts.push_back(graph_chart(F, "north-polar", true, true, analytic));
    spec.quad_charts.push_back(graph_chart(F, "south-polar", false, true, analytic));
    for (auto& c : spec.quad_charts) c.domain.conformal = false;
    for (auto& c : spec.charts) c.domain.conformal = expects.conformal;
    spec.expects = expects;
    return spec;
}

SurfaceSpec make_M0() {
    SurfaceProperties e;
    e.lagrangian = true;
    e.minimal = true;
    e.conformal = true;
    e.orientable = true;
    e.compact = true;
    e.constant_C = 0.5;
    e.constant_K = 0.5;
    e.totally_geodesic = true;
    e.genus = 0;
    e.betti1 = 0;
    SurfaceSpec spec = make_graph(antipodal_map(), "m0", e);
    return spec;
}

SurfaceSpec make_graph_antipodal() {
    SurfaceSpec spec = make_M0();
    spec.name = "graph-antipodal";
    return spec;
}

SurfaceSpec make_graph_identity() {
    SurfaceProperties e;
    e.lagrangian = false;
    e.orientable = true;
    e.compact = true;
    e.genus = 0;
    e.betti1 = 0;
    return make_graph(identity_map(), "graph-identity", e);
}

SphereMap constant_C_map(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5))
        throw DomainError("constant_C_map: lambda must lie in (0, 1/2)");
    const double beta = std::sqrt(1.0 - 4.0 * lambda * lambda) / lambda;
    SphereMap F;
    F.eval = [beta](const Vec3& x) {
        const double A = beta * std::atanh(x(2));
        const double cA = std::cos(A), sA = std::sin(A);
        return Vec3(cA * x(0) - sA * x(1), sA * x(0) + cA * x(1), -x(2));
    };
    F.differential = [beta](const Vec3& x, const Vec3& v) {
        const double A = beta * std::atanh(x(2));
        const double cA = std::cos(A), sA = std::sin(A);
        const double Az = beta / (1.0 - x(2) * x(2));
        return Vec3(cA * v(0) - sA * v(1) - (sA * x(0) + cA * x(1)) * Az * v(2),
                    sA * v(0) + cA * v(1) + (cA * x(0) - sA * x(1)) * Az * v(2), -v(2));
    };
    return F;
}

SurfaceSpec make_constant_C_graph(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5))
        throw DomainError("make_constant_C_graph: lambda must lie in (0, 1/2)");
    const double beta = std::sqrt(1.0 - 4.0 * lambda * lambda) / lambda;

    SurfaceSpec spec;
    std::ostringstream id;
    id << "const-c:" << lambda;
    spec.name = id.str();

    Chart c;
    c.name = "band";
    c.domain = {0.0, 2.0 * kPi, -0.95, 0.95, PlaneGluing{0.03}, false};
    const auto factors = [beta](double th, double z) {
        const double rho = std::sqrt(1.0 - z * z);
        const double rho1 = -z / rho;
        const double rho2 = -1.0 / (rho * rho * rho);
        const double tau1 = 1.0 / (1.0 - z * z);
        const double tau2 = 2.0 * z * tau1 * tau1;
        const double A = th + beta * std::atanh(z);
        const double Az = beta * tau1;
        const double Azz = beta * tau2;

        SphereJet2 X;  // first factor: cylindrical coordinates on the sphere
        const double cth = std::cos(th), sth = std::sin(th);
        X.p = {rho * cth, rho * sth, z};
        X.pa = {-rho * sth, rho * cth, 0.0};
        X.pb = {rho1 * cth, rho1 * sth, 1.0};
        X.paa = {-rho * cth, -rho * sth, 0.0};
        X.pab = {-rho1 * sth, rho1 * cth, 0.0};
        X.pbb = {rho2 * cth, rho2 * sth, 0.0};

        SphereJet2 Y;  // second factor: twisted by the angle A(z), mirrored in z
        const double cA = std::cos(A), sA = std::sin(A);
        Y.p = {rho * cA, rho * sA, -z};
        Y.pa = {-rho * sA, rho * cA, 0.0};
        Y.pb = {rho1 * cA - rho * sA * Az, rho1 * sA + rho * cA * Az, -1.0};
        Y.paa = {-rho * cA, -rho * sA, 0.0};
        Y.pab = {-rho1 * sA - rho * cA * Az, rho1 * cA - rho * sA * Az, 0.0};
        Y.pbb = {rho2 * cA - 2.0 * rho1 * sA * Az - rho * cA * Az * Az - rho * sA * Azz,
                 rho2 * sA + 2.0 * rho1 * cA * Az - rho * sA * Az * Az + rho * cA * Azz, 0.0};
        return std::make_pair(X, Y);
    };
    c.eval = [factors](double th, double z) {
        const auto [X, Y] = factors(th, z);
        return ProductPoint{X.p, Y.p};
    };
    c.analytic_jet = [factors](double th, double z) {
        const auto [X, Y] = factors(th, z);
        return jet_from_factors(X, Y);
    };
    spec.charts.push_back(c);

    spec.expects.lagrangian = true;
    spec.expects.minimal = false;
    spec.expects.constant_C = lambda;
    spec.expects.orientable = true;
    spec.expects.compact = false;
    return spec;
}

// ---------------------------------------------------------------------------
// Immersions into S^3

R4Immersion make_clifford_torus() {
    R4Immersion psi;
    psi.name = "clifford";
    psi.domain = {0.0, 2.0 * kPi, 0.0, 2.0 * kPi, TorusGluing{2.0 * kPi, 2.0 * kPi}, true};
    const double r = 1.0 / std::sqrt(2.0);
    psi.eval = [r](double t, double s) {
        return Vec4(r * std::cos(t), r * std::sin(t), r * std::cos(s), r * std::sin(s));
    };
    psi.jet3 = [r](double t, double s) {
        const double ct = std::cos(t), st = std::sin(t);
        const double cs = std::cos(s), ss = std::sin(s);
        R4Jet3 j;
        j.P = {r * ct, r * st, r * cs, r * ss};
        j.Pt = {-r * st, r * ct, 0, 0};
        j.Ps = {0, 0, -r * ss, r * cs};
        j.Ptt = {-r * ct, -r * st, 0, 0};
        j.Pts = Vec4::Zero();
        j.Pss = {0, 0, -r * cs, -r * ss};
        j.Pttt = {r * st, -r * ct, 0, 0};
        j.Ptts = Vec4::Zero();
        j.Ptss = Vec4::Zero();
        j.Psss = {0, 0, r * ss, -r * cs};
        return j;
    };
    return psi;
}

namespace {

// Derivative tables of cos(w s) and sin(w s) up to third order.
struct TrigJet {
    std::array<double, 4> c, s;
};
TrigJet trig_jet(double w, double sarg) {
    const double cv = std::cos(w * sarg), sv = std::sin(w * sarg);
    TrigJet t;
    t.c = {cv, -w * sv, -w * w * cv, w * w * w * sv};
    t.s = {sv, w * cv, -w * w * sv, -w * w * w * cv};
    return t;
}

} // namespace

R4Immersion make_lawson_tau31() {
    const EllipticModulus p = klein_modulus();
    const double K = complete_K(p);
    R4Immersion psi;
    psi.name = "lawson-tau31";
    const double Tt = 4.0 * K / kSqrt3;          // full sn/cn period
    const double Ts = 2.0 * kSqrt3 * kPi;        // closes both complex factors
    psi.domain = {0.0, Tt, 0.0, Ts, TorusGluing{Tt, Ts}, true};
    psi.eval = [p](double t, double s) {
        const JacobiTriple j = jacobi(kSqrt3 * t, p);
        return Vec4(j.cn * std::cos(kSqrt3 * s), j.cn * std::sin(kSqrt3 * s),
                    j.sn * std::cos(s / kSqrt3), j.sn * std::sin(s / kSqrt3));
    };
    psi.jet3 = [p](double t, double s) {
        const JacobiJet3 jj = jacobi_jet3(kSqrt3 * t, p);
        // d^k/dt^k of f(sqrt3 t) picks up 3^{k/2}.
        std::array<double, 4> S, C;
        double scale = 1.0;
        for (int k = 0; k < 4; ++k) {
            S[k] = scale * jj.d[k][0];
            C[k] = scale * jj.d[k][1];
            scale *= kSqrt3;
        }
        const TrigJet hi = trig_jet(kSqrt3, s);
        const TrigJet lo = trig_jet(1.0 / kSqrt3, s);
        const auto comp = [&](int dt, int ds) {
            return Vec4(C[dt] * hi.c[ds], C[dt] * hi.s[ds], S[dt] * lo.c[ds], S[dt] * lo.s[ds]);
        };
        R4Jet3 j;
        j.P = comp(0, 0);
        j.Pt = comp(1, 0);
        j.Ps = comp(0, 1);
        j.Ptt = comp(2, 0);
        j.Pts = comp(1, 1);
        j.Pss = comp(0, 2);
        j.Pttt = comp(3, 0);
        j.Ptts = comp(2, 1);
        j.Ptss = comp(1, 2);
        j.Psss = comp(0, 3);
        return j;
    };
    return psi;
}

R4Immersion make_geodesic_sphere() {
    R4Immersion psi;
    psi.name = "geodesic-s2";
    psi.domain = {0.3, kPi - 0.3, 0.0, 2.0 * kPi, PlaneGluing{0.1}, false};
    psi.eval = [](double t, double s) {
        return Vec4(std::cos(t), std::sin(t) * std::cos(s), std::sin(t) * std::sin(s), 0.0);
    };
    psi.jet3 = [](double t, double s) {
        const std::array<double, 4> ct = {std::cos(t), -std::sin(t), -std::cos(t), std::sin(t)};
        const std::array<double, 4> st = {std::sin(t), std::cos(t), -std::sin(t), -std::cos(t)};
        const TrigJet ts = trig_jet(1.0, s);
        const auto comp = [&](int dt, int ds) {
            // First component has no s-dependence.
            const double lead = (ds == 0) ? ct[dt] : 0.0;
            return Vec4(lead, st[dt] * ts.c[ds], st[dt] * ts.s[ds], 0.0);
        };
        R4Jet3 j;
        j.P = comp(0, 0);
        j.Pt = comp(1, 0);
        j.Ps = comp(0, 1);
        j.Ptt = comp(2, 0);
        j.Pts = comp(1, 1);
        j.Pss = comp(0, 2);
        j.Pttt = comp(3, 0);
        j.Ptts = comp(2, 1);
        j.Ptss = comp(1, 2);
        j.Psss = comp(0, 3);
        return j;
    };
    return psi;
}

// ---------------------------------------------------------------------------
// Gauss-map surfaces and the Klein bottle

SurfaceSpec make_clifford_gauss() {
    SurfaceSpec spec = gauss_map(make_clifford_torus());
    spec.name = "clifford-gauss";
    spec.charts[0].domain.conformal = true;
    spec.expects.lagrangian = true;
    spec.expects.minimal = true;
    spec.expects.conformal = true;
    spec.expects.orientable = true;
    spec.expects.compact = true;
    spec.expects.constant_C = 0.0;
    spec.expects.constant_K = 0.0;
    spec.expects.totally_geodesic = true;
    spec.expects.genus = 1;
    spec.expects.betti1 = 2;
    return spec;
}

SurfaceSpec make_lawson_gauss() {
    SurfaceSpec spec = gauss_map(make_lawson_tau31());
    spec.name = "lawson-gauss";
    spec.charts[0].domain.conformal = true;
    spec.expects.lagrangian = true;
    spec.expects.minimal = true;
    spec.expects.conformal = true;
    spec.expects.orientable = true;
    spec.expects.compact = true;
    spec.expects.genus = 1;
    spec.expects.betti1 = 2;
    return spec;
}

SurfaceSpec make_klein_bottle_B() {
    const EllipticModulus p = klein_modulus();
    const double K = complete_K(p);
    const double Tt = 2.0 * K / kSqrt3;      // t-translation period
    const double Ts = kSqrt3 * kPi;          // double-cover s-period; glide shifts by Ts/2
    SurfaceSpec spec = gauss_map(make_lawson_tau31());
    spec.name = "klein-b";
    Chart& c = spec.charts[0];
    c.domain.t0 = 0.0;
    c.domain.t1 = Tt;
    c.domain.s0 = 0.0;
    c.domain.s1 = 0.5 * Ts;  // fundamental rectangle of the Klein bottle
    c.domain.gluing = KleinGluing{Tt, 0.5 * Tt, Ts};
    c.domain.conformal = true;

    spec.expects.lagrangian = true;
    spec.expects.minimal = true;
    spec.expects.conformal = true;
    spec.expects.orientable = false;
    spec.expects.compact = true;
    spec.expects.betti1 = 1;
    spec.expects.genus = -1;
    return spec;
}

double klein_membership_residual(const ProductPoint& pt) {
    // Factor coordinates (x, z) and (y, w) with z, w complex.
    const double x = pt.x(0);
    const std::complex<double> z(pt.x(1), pt.x(2));
    const double y = pt.y(0);
    const std::complex<double> w(pt.y(1), pt.y(2));
    const double linear = std::abs(2.0 * x - y);
    const std::complex<double> root = std::sqrt(z) * w;  // principal branch
    return std::max(linear, std::abs(root.real() - root.imag()));
}

// ---------------------------------------------------------------------------
// Registry

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& s, const std::string& id) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("unparseable numeric parameter in surface id '" + id + "'");
    }
}

} // namespace

std::vector<CatalogEntry> catalog() {
    return {
        {"m0", "surface", "totally geodesic Lagrangian sphere (x, -x); C = 1/2, K = 1/2"},
        {"torus-t", "surface", "totally geodesic Lagrangian torus, product of great circles"},
        {"torus-ab:<a>:<b>", "surface", "product torus x1 = a, y1 = b; parallel mean curvature"},
        {"product:<a>:<b>", "surface", "product of latitude circles at heights a and b; C = 0"},
        {"graph-antipodal", "surface", "graph of the antipodal map (congruent to m0)"},
        {"graph-identity", "surface", "graph of the identity map; NOT Lagrangian (control)"},
        {"const-c:<lambda>", "surface", "non-compact Lagrangian graph with constant C = lambda"},
        {"clifford-gauss", "surface", "Gauss map of the Clifford torus; covers torus-t"},
        {"lawson-gauss", "surface", "Gauss map of the Lawson tau_{3,1} torus; covers klein-b"},
        {"klein-b", "surface", "minimal Lagrangian Klein bottle (Jacobi elliptic parametrization)"},
        {"clifford", "s3-immersion", "Clifford torus in the unit 3-sphere"},
        {"lawson-tau31", "s3-immersion", "Lawson tau_{3,1} minimal torus in the unit 3-sphere"},
    };
}

bool is_immersion_id(const std::string& id) {
    return id == "clifford" || id == "lawson-tau31" || id == "geodesic-s2";
}

R4Immersion immersion_by_id(const std::string& id) {
    if (id == "clifford") return make_clifford_torus();
    if (id == "lawson-tau31") return make_lawson_tau31();
    if (id == "geodesic-s2") return make_geodesic_sphere();
    throw DomainError("unknown immersion id '" + id + "'");
}

SurfaceSpec surface_by_id(const std::string& id) {
    const auto parts = split(id, ':');
    const std::string& head = parts[0];
    if (head == "m0" && parts.size() == 1) return make_M0();
    if (head == "torus-t" && parts.size() == 1) return make_T();
    if (head == "torus-ab" && parts.size() == 3)
        return make_T_ab(parse_real(parts[1], id), parse_real(parts[2], id));
    if (head == "product" && parts.size() == 3) {
        const double a = parse_real(parts[1], id), b = parse_real(parts[2], id);
        std::ostringstream name;
        name << "product:" << a << ":" << b;
        return make_product_of_curves(latitude_circle(a), latitude_circle(b), name.str());
    }
    if (head == "graph-antipodal" && parts.size() == 1) return make_graph_antipodal();
    if (head == "graph-identity" && parts.size() == 1) return make_graph_identity();
    if (head == "const-c" && parts.size() == 2) return make_constant_C_graph(parse_real(parts[1], id));
    if (head == "clifford-gauss" && parts.size() == 1) return make_clifford_gauss();
    if (head == "lawson-gauss" && parts.size() == 1) return make_lawson_gauss();
    if (head == "klein-b" && parts.size() == 1) return make_klein_bottle_B();
    throw DomainError("unknown surface id '" + id + "'");
}

} // namespace s2xs2
