#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "s2xs2/catalog.hpp"
#include "s2xs2/elliptic.hpp"

using namespace s2xs2;

namespace {

constexpr double kPi = std::numbers::pi;

double lcg_uniform(unsigned& state) {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1u << 24);
}

ProductPoint random_point(unsigned& state) {
    auto unit = [&state] {
        Vec3 v(lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5);
        return Vec3(v.normalized());
    };
    return {unit(), unit()};
}

ProductTangent random_tangent(const ProductPoint& p, unsigned& state) {
    Vec3 a(lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5);
    Vec3 b(lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5, lcg_uniform(state) - 0.5);
    return {a - a.dot(p.x) * p.x, b - b.dot(p.y) * p.y};
}

} // namespace

TEST_CASE("ambient complex structure on basis vectors") {
    const ProductPoint p{Vec3(1, 0, 0), Vec3(0, 0, 1)};
    const ProductTangent v{Vec3(0, 1, 0), Vec3(1, 0, 0)};
    const ProductTangent jv = ambient_J(p, v);
    CHECK((jv.v1 - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK((jv.v2 - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("J squares to minus the identity and is an isometry") {
    unsigned state = 3;
    for (int i = 0; i < 100; ++i) {
        const ProductPoint p = random_point(state);
        const ProductTangent v = random_tangent(p, state);
        const ProductTangent w = random_tangent(p, state);
        const ProductTangent jjv = ambient_J(p, ambient_J(p, v));
        CHECK((jjv.v1 + v.v1).norm() + (jjv.v2 + v.v2).norm() <= 1e-12);
        CHECK(std::abs(ambient_J(p, v).dot(ambient_J(p, w)) - v.dot(w)) <= 1e-12);
    }
}

TEST_CASE("ambient_J rejects non-tangent input") {
    const ProductPoint p{Vec3(1, 0, 0), Vec3(0, 0, 1)};
    const ProductTangent bad{Vec3(1, 0, 0), Vec3(0, 1, 0)};
    CHECK_THROWS_AS(ambient_J(p, bad), PreconditionError);
}

TEST_CASE("symplectic form: antisymmetry and the one-factor area value") {
    const ProductPoint p{Vec3(1, 0, 0), Vec3(1, 0, 0)};
    const ProductTangent v{Vec3(0, 1, 0), Vec3(0, 0, 0)};
    const ProductTangent w{Vec3(0, 0, 1), Vec3(0, 0, 0)};
    CHECK(symplectic_form(p, v, w) == doctest::Approx(1.0).epsilon(1e-15));

    unsigned state = 17;
    for (int i = 0; i < 50; ++i) {
        const ProductPoint q = random_point(state);
        const ProductTangent a = random_tangent(q, state);
        const ProductTangent b = random_tangent(q, state);
        CHECK(std::abs(symplectic_form(q, a, a)) <= 1e-14);
        CHECK(std::abs(symplectic_form(q, a, b) + symplectic_form(q, b, a)) <= 1e-14);
    }
}

TEST_CASE("jets of the antidiagonal sphere satisfy v2 = -v1") {
    const SurfaceSpec m0 = make_M0();
    for (double t : {-0.6, 0.1, 0.8})
        for (double s : {-0.5, 0.4}) {
            const ImmersionJet j = jet(m0.charts[0], t, s);
            CHECK((j.d_t.v2 + j.d_t.v1).norm() < 1e-14);
            CHECK((j.d_s.v2 + j.d_s.v1).norm() < 1e-14);
        }
}

TEST_CASE("analytic versus finite-difference first partials on the catalog") {
    for (const char* id : {"m0", "torus-t", "torus-ab:0.5:0", "const-c:0.3", "lawson-gauss",
                           "klein-b", "clifford-gauss"}) {
        const SurfaceSpec s = surface_by_id(id);
        const Chart& chart = s.charts[0];
        const double t = chart.domain.t0 + 0.37 * chart.domain.width();
        const double sv = chart.domain.s0 + 0.61 * chart.domain.height();
        const ImmersionJet a = jet(chart, t, sv);
        const ImmersionJet b = jet(chart, t, sv, JetScheme::fd(1e-4));
        CHECK((a.d_t - b.d_t).norm() < 1e-7);
        CHECK((a.d_s - b.d_s).norm() < 1e-7);
        CHECK(b.source == JetSource::finite_difference);
    }
}

TEST_CASE("first fundamental form of the flat torus and the round sphere") {
    const SurfaceSpec T = make_T();
    const Mat2 g = first_form(jet(T.charts[0], 1.1, 2.2));
    CHECK(std::abs(g(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(g(0, 1)) < 1e-14);
    CHECK(std::abs(g(1, 1) - 1.0) < 1e-14);

    // Antidiagonal sphere: metric is twice the round metric; in the
    // stereographic chart that is 2 lambda^2 (da^2 + db^2).
    const SurfaceSpec m0 = make_M0();
    const double a = 0.3, b = -0.2;
    const double lam = 2.0 / (1.0 + a * a + b * b);
    const Mat2 gm = first_form(jet(m0.charts[0], a, b));
    CHECK(std::abs(gm(0, 0) - 2.0 * lam * lam) < 1e-13);
    CHECK(std::abs(gm(0, 1)) < 1e-13);
    CHECK(std::abs(gm(1, 1) - 2.0 * lam * lam) < 1e-13);
}

TEST_CASE("Klein bottle conformal factor matches the closed form") {
    const SurfaceSpec B = make_klein_bottle_B();
    const EllipticModulus p(2.0 * std::sqrt(2.0) / 3.0);
    for (double t : {0.0, 0.4, 1.0, 1.9}) {
        const Mat2 g = first_form(jet(B.charts[0], t, 0.3));
        const double dn = jacobi(std::sqrt(3.0) * t, p).dn;
        const double expected = 6.0 * dn * dn + 2.0 / (3.0 * dn * dn);
        CHECK(std::abs(g(0, 0) - expected) < 1e-12);
        CHECK(std::abs(g(1, 1) - expected) < 1e-12);
        CHECK(std::abs(g(0, 1)) < 1e-12);
    }
}

TEST_CASE("degenerate metric raises") {
    // Polar chart of the sphere at tiny radius: d/dtheta collapses.
    const SurfaceSpec m0 = make_M0();
    const Chart& polar = m0.quad_charts[0];
    CHECK_THROWS_AS(first_form(jet(polar, 1e-9, 0.3)), DegenerateMetricError);
}

TEST_CASE("Lagrangian residual: catalog surfaces vanish, identity graph does not") {
    for (const char* id : {"m0", "torus-t", "product:0:0.6", "const-c:0.3", "klein-b"}) {
        const SurfaceSpec s = surface_by_id(id);
        const Chart& chart = s.charts[0];
        const double t = chart.domain.t0 + 0.41 * chart.domain.width();
        const double sv = chart.domain.s0 + 0.23 * chart.domain.height();
        CHECK(lagrangian_residual(jet(chart, t, sv)) <= 1e-9);
    }
    const SurfaceSpec gi = make_graph_identity();
    CHECK(lagrangian_residual(jet(gi.charts[0], 0.3, 0.4)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("associated Jacobian values and preconditions") {
    CHECK(associated_jacobian(jet(make_M0().charts[0], 0.2, 0.5)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(associated_jacobian(jet(make_T().charts[0], 1.0, 2.0))) < 1e-14);
    CHECK(associated_jacobian(jet(make_constant_C_graph(0.3).charts[0], 2.0, 0.5)) ==
          doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS_AS(associated_jacobian(jet(make_graph_identity().charts[0], 0.3, 0.4)),
                    PreconditionError);
}

TEST_CASE("second fundamental form: totally geodesic cases and the product torus") {
    const FundamentalForms m0f = second_form(jet(make_M0().charts[0], 0.4, -0.1));
    CHECK(std::sqrt(m0f.norm_sigma2) < 1e-13);
    CHECK(m0f.norm_H < 1e-13);

    const FundamentalForms tf = second_form(jet(make_T().charts[0], 0.7, 1.9));
    CHECK(std::sqrt(tf.norm_sigma2) < 1e-13);

    // |H| equals half the geodesic curvature of the latitude circle x1 = 1/2.
    const SurfaceSpec tab = make_T_ab(0.5, 0.0);
    const double expected = 0.5 * (0.5 / std::sqrt(1.0 - 0.25));
    double spread_lo = 1e300, spread_hi = 0.0;
    for (double t : {0.1, 0.9, 2.0})
        for (double s : {0.3, 1.4}) {
            const double h = second_form(jet(tab.charts[0], t, s)).norm_H;
            spread_lo = std::min(spread_lo, h);
            spread_hi = std::max(spread_hi, h);
            CHECK(std::abs(h - expected) < 1e-12);
        }
    CHECK(spread_hi - spread_lo <= 1e-8);
}

TEST_CASE("Gauss curvature by both formulas") {
    CHECK(std::abs(gauss_curvature(make_M0().charts[0], 0.3, -0.2) - 0.5) < 1e-6);
    CHECK(std::abs(gauss_curvature(make_T().charts[0], 1.0, 2.0)) < 1e-8);

    // Brioschi on the non-conformal polar chart agrees with the conformal path.
    const SurfaceSpec m0 = make_M0();
    CHECK(std::abs(gauss_curvature(m0.quad_charts[0], 0.6, 1.0) - 0.5) < 1e-6);

    // K agrees with the curvature equation combination at sampled points (FD jets).
    const SurfaceSpec B = make_klein_bottle_B();
    unsigned state = 11;
    for (int i = 0; i < 20; ++i) {
        const double t = lcg_uniform(state) * B.charts[0].domain.width();
        const double s = lcg_uniform(state) * B.charts[0].domain.height();
        const double K = gauss_curvature(B.charts[0], t, s, JetScheme::fd());
        const FundamentalForms f = second_form(jet(B.charts[0], t, s, JetScheme::fd()));
        CHECK(std::abs(K - 2.0 * f.C * f.C - 2.0 * f.norm_H * f.norm_H + 0.5 * f.norm_sigma2) <
              1e-4);
    }
}

TEST_CASE("Gauss equation residual is small on catalog surfaces") {
    for (const char* id : {"m0", "torus-t", "torus-ab:0.3:0.4", "klein-b", "lawson-gauss"}) {
        const SurfaceSpec s = surface_by_id(id);
        const Chart& chart = s.charts[0];
        const double t = chart.domain.t0 + 0.52 * chart.domain.width();
        const double sv = chart.domain.s0 + 0.33 * chart.domain.height();
        CHECK(gauss_equation_residual(chart, t, sv) <= 1e-6);
        CHECK(gauss_equation_residual(chart, t, sv, JetScheme::fd()) <= 1e-4);
    }
}

TEST_CASE("rank identity") {
    // Antidiagonal sphere: both factor pullbacks are half the metric.
    const ImmersionJet j = jet(make_M0().charts[0], 0.2, 0.6);
    const OrthonormalFrame f = orthonormal_frame(j);
    CHECK(std::abs(f.e1.v1.squaredNorm() - 0.5) < 1e-13);
    CHECK(std::abs(f.e2.v1.squaredNorm() - 0.5) < 1e-13);
    CHECK(rank_identity_residual(j) <= 1e-13);

    // Product with unequal (and non-unit) speeds still sums to one.
    SpaceCurve fast;  // great circle traversed at varying speed
    fast.eval = [](double t) {
        const double u = t + 0.3 * std::sin(t);
        return Vec3(0.0, std::cos(u), std::sin(u));
    };
    fast.derivative = [](double t) {
        const double u = t + 0.3 * std::sin(t);
        const double du = 1.0 + 0.3 * std::cos(t);
        return Vec3(0.0, -std::sin(u) * du, std::cos(u) * du);
    };
    fast.second_derivative = [](double t) {
        const double u = t + 0.3 * std::sin(t);
        const double du = 1.0 + 0.3 * std::cos(t);
        const double ddu = -0.3 * std::sin(t);
        return Vec3(0.0, -std::cos(u) * du * du - std::sin(u) * ddu,
                    -std::sin(u) * du * du + std::cos(u) * ddu);
    };
    fast.period = 2.0 * kPi;
    const SurfaceSpec prod = make_product_of_curves(fast, latitude_circle(0.6), "uneven");
    for (double t : {0.4, 1.7})
        CHECK(rank_identity_residual(jet(prod.charts[0], t, 0.8)) <= 1e-8);
}

TEST_CASE("isoparametric identities of the associated Jacobian") {
    // Both sides vanish identically on the antidiagonal sphere.
    const auto [r1, r2] = c_identities_residual(make_M0().charts[0], 0.3, 0.1, true);
    CHECK(r1 < 1e-8);
    CHECK(r2 < 1e-8);

    const SurfaceSpec B = make_klein_bottle_B();
    const auto [b1, b2] = c_identities_residual(B.charts[0], 0.7, 0.9, true);
    CHECK(b1 <= 5e-4);
    CHECK(b2 <= 5e-4);

    CHECK_THROWS_AS(c_identities_residual(make_T_ab(0.5, 0).charts[0], 0.3, 0.3, false),
                    PreconditionError);
}

TEST_CASE("Hopf residuals") {
    // Conformal chart of the antidiagonal sphere: the coefficient vanishes.
    const SurfaceSpec m0 = make_M0();
    CHECK(std::abs(hopf_coefficient(jet(m0.charts[0], 0.25, -0.4))) < 1e-13);
    const HopfResidual hm = hopf_residual(m0.charts[0], 0.25, -0.4);
    CHECK(hm.modulus < 1e-12);

    // Flat torus in arc-length coordinates: |theta| = 1/4 and 16|theta|^2 = 1.
    const SurfaceSpec T = make_T();
    const std::complex<double> th = hopf_coefficient(jet(T.charts[0], 0.9, 1.3));
    CHECK(std::abs(std::abs(th) - 0.25) < 1e-14);
    const HopfResidual ht = hopf_residual(T.charts[0], 0.9, 1.3);
    CHECK(ht.modulus < 1e-12);

    const SurfaceSpec B = make_klein_bottle_B();
    const HopfResidual hb = hopf_residual(B.charts[0], 0.5, 0.8);
    const double e2u = first_form(jet(B.charts[0], 0.5, 0.8))(0, 0);
    CHECK(hb.cauchy_riemann <= 1e-4 * e2u);
    CHECK(hb.modulus <= 1e-6 * e2u * e2u);

    // Non-conformal parametrization is rejected.
    CHECK_THROWS_AS(hopf_residual(make_constant_C_graph(0.3).charts[0], 1.0, 0.2),
                    PreconditionError);
}

TEST_CASE("degree of the catalog surfaces") {
    CHECK(std::abs(degree(make_M0(), 64) - 1.0) <= 1e-6);
    CHECK(std::abs(degree(make_T(), 32)) <= 1e-12);
    CHECK(std::abs(degree(make_lawson_gauss(), 48)) <= 1e-6);
    CHECK_THROWS_AS(degree(make_klein_bottle_B(), 16), PreconditionError);
    CHECK_THROWS_AS(degree(make_constant_C_graph(0.2), 16), PreconditionError);
}

TEST_CASE("parallel mean curvature residual") {
    const SurfaceSpec tab = make_T_ab(0.5, 0.3);
    for (double t : {0.2, 1.0})
        CHECK(parallel_H_residual(tab.charts[0], t, 0.8) <= 1e-5);

    // Any minimal surface passes trivially.
    CHECK(parallel_H_residual(make_klein_bottle_B().charts[0], 0.9, 0.4) <= 1e-5);

    // A wobbly product curve is a genuine non-example.
    SpaceCurve wob;
    wob.eval = [](double t) {
        return Vec3(Vec3(std::cos(t), 0.8 * std::sin(t), 0.3).normalized());
    };
    wob.derivative = [](double t) {
        const Vec3 v(std::cos(t), 0.8 * std::sin(t), 0.3);
        const Vec3 vp(-std::sin(t), 0.8 * std::cos(t), 0.0);
        const double n = v.norm();
        return Vec3(vp / n - v * (v.dot(vp) / (n * n * n)));
    };
    wob.period = 2.0 * kPi;
    const SurfaceSpec prod = make_product_of_curves(wob, latitude_circle(0.0), "wobbly");
    CHECK(parallel_H_residual(prod.charts[0], 0.4, 0.7, JetScheme::fd()) > 1e-3);
}

TEST_CASE("isometry equivariance of the analyzers") {
    const SurfaceSpec s = make_lawson_gauss();
    const Eigen::Matrix3d A(Eigen::AngleAxisd(0.8, Vec3(1, 1, 0).normalized()));
    const Eigen::Matrix3d B(Eigen::AngleAxisd(-1.1, Vec3(0, 1, 2).normalized()));
    const SurfaceSpec moved = apply_isometry(s, A, B);
    for (double t : {0.3, 1.2}) {
        const FundamentalForms f0 = second_form(jet(s.charts[0], t, 0.9));
        const FundamentalForms f1 = second_form(jet(moved.charts[0], t, 0.9));
        CHECK(std::abs(f0.g11 - f1.g11) < 1e-10);
        CHECK(std::abs(f0.norm_sigma2 - f1.norm_sigma2) < 1e-10);
        CHECK(std::abs(f0.norm_H - f1.norm_H) < 1e-10);
        CHECK(std::abs(f0.C - f1.C) < 1e-10);
        CHECK(std::abs(gauss_curvature(s.charts[0], t, 0.9) -
                       gauss_curvature(moved.charts[0], t, 0.9)) < 1e-10);
    }
}

TEST_CASE("C is invariant under oriented frame rotations") {
    const ImmersionJet j = jet(make_lawson_gauss().charts[0], 0.8, 1.4);
    const OrthonormalFrame f = orthonormal_frame(j);
    const double C = associated_jacobian(j);
    for (double angle : {0.2, 1.0, 2.5, 4.4}) {
        const double ca = std::cos(angle), sa = std::sin(angle);
        const ProductTangent e1 = ca * f.e1 + sa * f.e2;
        const ProductTangent e2 = (-sa) * f.e1 + ca * f.e2;
        CHECK(std::abs(j.P.x.cross(e1.v1).dot(e2.v1) - C) <= 1e-12);
    }
}

TEST_CASE("cubic form symmetry on Lagrangian surfaces") {
    for (const char* id : {"klein-b", "const-c:0.45", "torus-ab:0.3:0.4"}) {
        const SurfaceSpec s = surface_by_id(id);
        const Chart& chart = s.charts[0];
        const double t = chart.domain.t0 + 0.3 * chart.domain.width();
        const double sv = chart.domain.s0 + 0.7 * chart.domain.height();
        const FundamentalForms f = second_form(jet(chart, t, sv));
        for (int i = 0; i < 2; ++i)
            for (int jx = 0; jx < 2; ++jx)
                for (int k = 0; k < 2; ++k) {
                    CHECK(std::abs(f.sigma[k][i][jx] - f.sigma[jx][i][k]) <= 1e-6);
                    CHECK(std::abs(f.sigma[k][i][jx] - f.sigma[i][k][jx]) <= 1e-6);
                }
    }
}

TEST_CASE("jet rejects out-of-domain points on open charts") {
    const SurfaceSpec cc = make_constant_C_graph(0.3);
    CHECK_THROWS_AS(jet(cc.charts[0], 0.0, 0.995), DomainError);
}

TEST_CASE("C squared stays within the quarter bound on samples") {
    unsigned state = 23;
    for (const char* id : {"m0", "klein-b", "lawson-gauss", "const-c:0.45"}) {
        const SurfaceSpec s = surface_by_id(id);
        const Chart& chart = s.charts[0];
        for (int i = 0; i < 25; ++i) {
            const double t = chart.domain.t0 + lcg_uniform(state) * chart.domain.width();
            const double sv = chart.domain.s0 + lcg_uniform(state) * chart.domain.height();
            const double C = second_form(jet(chart, t, sv)).C;
            CHECK(C * C <= 0.25 + 1e-9);
        }
    }
}
