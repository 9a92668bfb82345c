#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "s2xs2/catalog.hpp"

using namespace s2xs2;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

double lcg_uniform(unsigned& state) {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1u << 24);
}

} // namespace

TEST_CASE("antidiagonal sphere chart origin") {
    const SurfaceSpec m0 = make_M0();
    const ProductPoint p = m0.charts[0].eval(0.0, 0.0);
    CHECK((p.x - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK((p.y - Vec3(0, 0, -1)).norm() < 1e-15);
    CHECK(std::abs(area(m0, 64) - 8.0 * kPi) < 1e-3);
}

TEST_CASE("two-vector basis is orthonormal with orthogonal halves") {
    // Gram matrix of E^i_+ and E^i_- from their action on wedge coordinates.
    const Vec4 e[4] = {Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)};
    const double isq = 1.0 / std::sqrt(2.0);
    std::vector<Vec6> basis;
    basis.push_back(isq * (wedge(e[0], e[1]) + wedge(e[2], e[3])));
    basis.push_back(isq * (wedge(e[0], e[2]) + wedge(e[3], e[1])));
    basis.push_back(isq * (wedge(e[0], e[3]) + wedge(e[1], e[2])));
    basis.push_back(isq * (wedge(e[0], e[1]) - wedge(e[2], e[3])));
    basis.push_back(isq * (wedge(e[0], e[2]) - wedge(e[3], e[1])));
    basis.push_back(isq * (wedge(e[0], e[3]) - wedge(e[1], e[2])));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(std::abs(basis[i].dot(basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-15);
    // plus/minus extraction matches the basis pairing.
    unsigned state = 5;
    Vec4 u, v;
    for (int k = 0; k < 4; ++k) {
        u(k) = lcg_uniform(state) - 0.5;
        v(k) = lcg_uniform(state) - 0.5;
    }
    const Vec6 w = wedge(u, v);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(plus_part(w)(i) - std::sqrt(2.0) * w.dot(basis[i])) < 1e-14);
        CHECK(std::abs(minus_part(w)(i) - std::sqrt(2.0) * w.dot(basis[3 + i])) < 1e-14);
    }
}

TEST_CASE("product tori") {
    const SurfaceSpec T = make_T();
    CHECK(T.expects.minimal);
    CHECK(std::abs(degree(T, 32)) < 1e-12);

    CHECK_THROWS_AS(make_T_ab(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_T_ab(1.0, 0.2), DomainError);

    // Latitude x latitude: C = 0, constant |H| > 0.
    const SurfaceSpec tab = make_T_ab(0.6, 0.2);
    const FundamentalForms f = second_form(jet(tab.charts[0], 0.5, 0.7));
    CHECK(std::abs(f.C) < 1e-14);
    CHECK(f.norm_H > 0.1);

    // Great circle x latitude circle: Lagrangian with H != 0.
    const SurfaceSpec mix = make_product_of_curves(latitude_circle(0.0), latitude_circle(0.6));
    const FundamentalForms fm = second_form(jet(mix.charts[0], 1.0, 0.4));
    CHECK(std::abs(fm.C) < 1e-14);
    CHECK(fm.norm_H > 0.1);
    CHECK(lagrangian_residual(jet(mix.charts[0], 1.0, 0.4)) < 1e-12);
}

TEST_CASE("graphs of sphere maps") {
    // Antipodal graph is the antidiagonal sphere.
    const SurfaceSpec ga = make_graph_antipodal();
    const ImmersionJet j = jet(ga.charts[0], 0.2, -0.3);
    CHECK(lagrangian_residual(j) < 1e-12);
    CHECK(std::abs(second_form(j).C - 0.5) < 1e-12);

    // Rotated antipodal map still gives a Lagrangian graph.
    const Eigen::Matrix3d R(Eigen::AngleAxisd(0.9, Vec3(1, 2, -1).normalized()));
    SphereMap F;
    F.eval = [R](const Vec3& x) { return Vec3(-(R * x)); };
    F.differential = [R](const Vec3&, const Vec3& v) { return Vec3(-(R * v)); };
    F.hessian = [](const Vec3&, const Vec3&, const Vec3&) { return Vec3(Vec3::Zero()); };
    SurfaceProperties e;
    e.lagrangian = true;
    e.compact = true;
    const SurfaceSpec gr = make_graph(F, "rotated-antipodal", e);
    CHECK(lagrangian_residual(jet(gr.charts[0], 0.4, 0.1)) <= 1e-9);

    // Area-preservation residual: antipodal passes, identity fails by 2.
    SphereMap anti;
    anti.eval = [](const Vec3& x) { return Vec3(-x); };
    anti.differential = [](const Vec3&, const Vec3& v) { return Vec3(-v); };
    CHECK(area_preserving_residual(anti, Vec3(0, 0, 1)) < 1e-15);
    SphereMap ident;
    ident.eval = [](const Vec3& x) { return x; };
    ident.differential = [](const Vec3&, const Vec3& v) { return v; };
    CHECK(area_preserving_residual(ident, Vec3(0, 0, 1)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("constant-C graphs") {
    for (double lam : {0.1, 0.45}) {
        const SurfaceSpec s = make_constant_C_graph(lam);
        unsigned state = 31;
        for (int i = 0; i < 20; ++i) {
            const double th = 2.0 * kPi * lcg_uniform(state);
            const double z = 1.8 * (lcg_uniform(state) - 0.5);
            const ImmersionJet j = jet(s.charts[0], th, z);
            CHECK(lagrangian_residual(j) < 1e-12);
            CHECK(std::abs(second_form(j).C - lam) <= 1e-8);
        }
        const SphereMap F = constant_C_map(lam);
        CHECK(area_preserving_residual(F, Vec3(0.6, 0.64, 0.48).normalized()) <= 1e-9);
    }
    CHECK_THROWS_AS(make_constant_C_graph(0.0), DomainError);
    CHECK_THROWS_AS(make_constant_C_graph(0.5), DomainError);
    // Not minimal: the mean curvature is genuinely nonzero.
    const SurfaceSpec s = make_constant_C_graph(0.3);
    CHECK(second_form(jet(s.charts[0], 1.0, 0.4)).norm_H > 1e-3);
}

TEST_CASE("Clifford torus and its Gauss map") {
    const R4Immersion psi = make_clifford_torus();
    const R4Jet3 j3 = psi.jet3(0.7, 1.9);
    CHECK(std::abs(j3.P.norm() - 1.0) < 1e-15);

    const SurfaceSpec g = make_clifford_gauss();
    unsigned state = 77;
    for (int i = 0; i < 20; ++i) {
        const double t = 2.0 * kPi * lcg_uniform(state);
        const double s = 2.0 * kPi * lcg_uniform(state);
        const ProductPoint p = g.charts[0].eval(t, s);
        // Published coordinates: phi = (0, -2zw), psi = (0, 2 conj(z) w).
        const std::complex<double> z = std::polar(1.0 / std::sqrt(2.0), t);
        const std::complex<double> w = std::polar(1.0 / std::sqrt(2.0), s);
        const std::complex<double> phi_expected = -2.0 * z * w;
        const std::complex<double> psi_expected = 2.0 * std::conj(z) * w;
        CHECK(std::abs(p.x(0)) < 1e-14);
        CHECK(std::abs(p.y(0)) < 1e-14);
        CHECK(std::abs(std::complex<double>(p.x(1), p.x(2)) - phi_expected) < 1e-13);
        CHECK(std::abs(std::complex<double>(p.y(1), p.y(2)) - psi_expected) < 1e-13);
        CHECK(std::abs(second_form(jet(g.charts[0], t, s)).C) < 1e-13);
    }
    // Closed-form relation data: |sff|^2 = 2, K = 0, so g = 4 ghat and C = 0.
    const GaussMapRelationResidual rel = gauss_map_relation_residual(psi, 0.3, 2.1);
    CHECK(rel.metric <= 1e-8);
    CHECK(rel.jacobian <= 1e-8);
    const S3Forms hat = s3_second_form(psi, 0.3, 2.1);
    CHECK(std::abs(hat.norm_sff2 - 2.0) < 1e-12);
    CHECK(std::abs(hat.K) < 1e-12);
}

TEST_CASE("Lawson torus: unit norm, conformality, minimality") {
    const R4Immersion psi = make_lawson_tau31();
    unsigned state = 13;
    for (int i = 0; i < 30; ++i) {
        const double t = psi.domain.t0 + lcg_uniform(state) * psi.domain.width();
        const double s = psi.domain.s0 + lcg_uniform(state) * psi.domain.height();
        const R4Jet3 j = psi.jet3(t, s);
        CHECK(std::abs(j.P.norm() - 1.0) < 1e-13);
        const double e = j.Pt.squaredNorm(), gq = j.Ps.squaredNorm(), f = j.Pt.dot(j.Ps);
        CHECK(std::abs(e - gq) <= 1e-10 * e);
        CHECK(std::abs(f) <= 1e-10 * e);
        CHECK(s3_second_form(psi, t, s).mean_curvature <= 1e-6);
    }
}

TEST_CASE("Lawson Gauss map relations and extremes") {
    const R4Immersion psi = make_lawson_tau31();
    const SurfaceSpec g = make_lawson_gauss();
    unsigned state = 29;
    for (int i = 0; i < 15; ++i) {
        const double t = psi.domain.t0 + lcg_uniform(state) * psi.domain.width();
        const double s = psi.domain.s0 + lcg_uniform(state) * psi.domain.height();
        const GaussMapRelationResidual rel = gauss_map_relation_residual(psi, t, s);
        CHECK(rel.metric <= 1e-6);
        CHECK(rel.jacobian <= 1e-6);
        CHECK(bipolar_residual(psi, t, s) <= 1e-10);
    }
    // The associated Jacobian peaks at 2/5 where dn = 1 (t = 0).
    CHECK(std::abs(second_form(jet(g.charts[0], 0.0, 0.9)).C - 0.4) <= 1e-12);
}

TEST_CASE("Klein bottle catalog entry") {
    const SurfaceSpec B = make_klein_bottle_B();
    const Chart& c = B.charts[0];
    const auto& kg = std::get<KleinGluing>(c.domain.gluing);

    // Deck transformations: t-translation and the glide.
    unsigned state = 41;
    for (int i = 0; i < 100; ++i) {
        const double t = c.domain.t0 + lcg_uniform(state) * c.domain.width();
        const double s = c.domain.s0 + lcg_uniform(state) * c.domain.height();
        const ProductPoint a = c.eval(t, s);
        const ProductPoint tr = c.eval(t + kg.period_t, s);
        const ProductPoint gl = c.eval(kg.center - t, s + 0.5 * kg.period_s);
        CHECK(std::max((a.x - tr.x).norm(), (a.y - tr.y).norm()) <= 1e-10);
        CHECK(std::max((a.x - gl.x).norm(), (a.y - gl.y).norm()) <= 1e-10);
        CHECK(klein_membership_residual(a) <= 1e-10);
        const double z2 = a.x(1) * a.x(1) + a.x(2) * a.x(2);
        CHECK(z2 >= 0.75 - 1e-12);
    }

    // Glide applied twice is the s-translation.
    const double t = 0.31, s = 0.44;
    const double t2 = kg.center - (kg.center - t);
    CHECK(t2 == doctest::Approx(t));
    const ProductPoint a = c.eval(t, s);
    const ProductPoint b = c.eval(t, s + kg.period_s);
    CHECK((a.x - b.x).norm() <= 1e-12);

    // Closed-form position at the origin and the area value.
    const ProductPoint o = c.eval(0.0, 0.0);
    CHECK((o.x - Vec3(0, 0, -1)).norm() < 1e-14);
    CHECK((o.y - Vec3(0, 0, 1)).norm() < 1e-14);
    const double expected = 12.0 * kPi * complete_E(EllipticModulus(2.0 * std::sqrt(2.0) / 3.0));
    CHECK(std::abs(area(B, 48) - expected) / expected < 1e-6);

    // Signed quantities live on the double cover; the chart value of C flips
    // under the glide while C^2 descends.
    const ImmersionJet j1 = jet(c, 0.5, 0.3);
    const ImmersionJet j2 = jet(c, kg.center - 0.5, 0.3 + 0.5 * kg.period_s);
    CHECK(std::abs(second_form(j1).C + second_form(j2).C) < 1e-12);
}

TEST_CASE("geodesic sphere Gauss map sits at C = 1/2") {
    const SurfaceSpec g = gauss_map(make_geodesic_sphere());
    for (double t : {0.6, 1.2, 2.4})
        CHECK(std::abs(second_form(jet(g.charts[0], t, 1.0)).C - 0.5) < 1e-12);
}

TEST_CASE("registry round trip and errors") {
    for (const auto& entry : catalog()) {
        if (entry.id.find('<') != std::string::npos) continue;  // parametrized families
        if (entry.kind == "surface") {
            CHECK(surface_by_id(entry.id).name == entry.id);
        } else {
            CHECK(immersion_by_id(entry.id).name == entry.id);
        }
    }
    CHECK(surface_by_id("torus-ab:0.5:0").expects.parallel_mean_curvature);
    CHECK_THROWS_AS(surface_by_id("nope"), DomainError);
    CHECK_THROWS_AS(surface_by_id("const-c:abc"), DomainError);
    CHECK_THROWS_AS(immersion_by_id("nope"), DomainError);
}
