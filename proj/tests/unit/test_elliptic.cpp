#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "s2xs2/elliptic.hpp"

using namespace s2xs2;

namespace {

constexpr double kPi = std::numbers::pi;
const EllipticModulus kB(2.0 * std::sqrt(2.0) / 3.0);

// Independent quadrature oracle: adaptive Simpson to 1e-12.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

double K_quadrature(double p) {
    return integrate([p](double th) {
        const double s = std::sin(th);
        return 1.0 / std::sqrt(1.0 - p * p * s * s);
    }, 0.0, kPi / 2.0);
}

double E_quadrature(double p) {
    return integrate([p](double th) {
        const double s = std::sin(th);
        return std::sqrt(1.0 - p * p * s * s);
    }, 0.0, kPi / 2.0);
}

// ODE oracle: RK4 on sn' = cn dn, cn' = -sn dn, dn' = -p^2 sn cn.
JacobiTriple jacobi_ode(double x, double p, double h = 1e-5) {
    double sn = 0.0, cn = 1.0, dn = 1.0;
    const int n = static_cast<int>(std::ceil(std::abs(x) / h));
    const double step = x / n;
    const auto f = [p](double s, double c, double d, int comp) {
        switch (comp) {
            case 0: return c * d;
            case 1: return -s * d;
            default: return -p * p * s * c;
        }
    };
    for (int i = 0; i < n; ++i) {
        double k[4][3];
        const double s = sn, c = cn, d = dn;
        for (int stage = 0; stage < 4; ++stage) {
            const double w = (stage == 0) ? 0.0 : (stage == 3 ? 1.0 : 0.5);
            const double ss = s + w * step * (stage ? k[stage - 1][0] : 0.0);
            const double cc = c + w * step * (stage ? k[stage - 1][1] : 0.0);
            const double dd = d + w * step * (stage ? k[stage - 1][2] : 0.0);
            for (int comp = 0; comp < 3; ++comp) k[stage][comp] = f(ss, cc, dd, comp);
        }
        sn = s + step / 6.0 * (k[0][0] + 2 * k[1][0] + 2 * k[2][0] + k[3][0]);
        cn = c + step / 6.0 * (k[0][1] + 2 * k[1][1] + 2 * k[2][1] + k[3][1]);
        dn = d + step / 6.0 * (k[0][2] + 2 * k[1][2] + 2 * k[2][2] + k[3][2]);
    }
    return {sn, cn, dn};
}

double lcg_uniform(unsigned& state) {
    state = state * 1664525u + 1013904223u;
    return (state >> 8) / double(1u << 24);
}

} // namespace

TEST_CASE("complete integrals at degenerate modulus") {
    CHECK(complete_K(EllipticModulus(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(complete_E(EllipticModulus(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("complete integrals against the quadrature oracle") {
    for (double p : {0.0, 0.3, 0.6, 2.0 * std::sqrt(2.0) / 3.0, 0.99}) {
        const EllipticModulus m(p);
        CHECK(std::abs(complete_K(m) - K_quadrature(p)) / K_quadrature(p) < 1e-10);
        CHECK(std::abs(complete_E(m) - E_quadrature(p)) / E_quadrature(p) < 1e-10);
    }
}

TEST_CASE("integral bounds") {
    for (double p : {0.1, 0.5, 0.9, 0.99}) {
        const EllipticModulus m(p);
        CHECK(complete_K(m) > kPi / 2);
        CHECK(complete_E(m) < kPi / 2);
        CHECK(complete_E(m) > 1.0);
    }
}

TEST_CASE("modulus domain errors") {
    CHECK_THROWS_AS(EllipticModulus(1.0), DomainError);
    CHECK_THROWS_AS(EllipticModulus(1.5), DomainError);
    CHECK_THROWS_AS(EllipticModulus(-0.1), DomainError);
}

TEST_CASE("jacobi initial and quarter-period values") {
    const JacobiTriple j0 = jacobi(0.0, kB);
    CHECK(std::abs(j0.sn) < 1e-15);
    CHECK(std::abs(j0.cn - 1.0) < 1e-15);
    CHECK(std::abs(j0.dn - 1.0) < 1e-15);

    const double K = complete_K(kB);
    const JacobiTriple jK = jacobi(K, kB);
    CHECK(std::abs(jK.sn - 1.0) < 1e-13);
    CHECK(std::abs(jK.cn) < 1e-13);
    CHECK(std::abs(jK.dn - kB.complementary()) < 1e-13);
}

TEST_CASE("jacobi against the ODE oracle at x = 0.7") {
    const JacobiTriple a = jacobi(0.7, kB);
    const JacobiTriple b = jacobi_ode(0.7, kB.p);
    CHECK(std::abs(a.sn - b.sn) < 1e-12);
    CHECK(std::abs(a.cn - b.cn) < 1e-12);
    CHECK(std::abs(a.dn - b.dn) < 1e-12);
}

TEST_CASE("pythagorean identities at sampled arguments") {
    unsigned state = 42;
    for (int i = 0; i < 200; ++i) {
        const double x = 20.0 * (lcg_uniform(state) - 0.5);
        const double p = 0.999 * lcg_uniform(state);
        const EllipticModulus m(p);
        const JacobiTriple j = jacobi(x, m);
        CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-12);
        CHECK(std::abs(j.dn * j.dn + p * p * j.sn * j.sn - 1.0) <= 1e-12);
        CHECK(j.dn >= m.complementary() - 1e-12);
    }
}

TEST_CASE("periodicity over the full period") {
    const double K = complete_K(kB);
    unsigned state = 7;
    for (int i = 0; i < 50; ++i) {
        const double x = 8.0 * (lcg_uniform(state) - 0.5);
        const JacobiTriple a = jacobi(x, kB);
        const JacobiTriple b = jacobi(x + 4.0 * K, kB);
        CHECK(std::abs(a.sn - b.sn) <= 1e-11);
        CHECK(std::abs(a.cn - b.cn) <= 1e-11);
        CHECK(std::abs(a.dn - b.dn) <= 1e-11);
    }
}

TEST_CASE("derivatives: special values and finite differences") {
    const auto d0 = jacobi_derivatives(0.0, kB);
    CHECK(std::abs(d0[0] - 1.0) < 1e-14);
    CHECK(std::abs(d0[1]) < 1e-14);
    CHECK(std::abs(d0[2]) < 1e-14);

    const double K = complete_K(kB);
    const auto dK = jacobi_derivatives(K, kB);
    CHECK(std::abs(dK[0]) < 1e-12);
    CHECK(std::abs(dK[1] + kB.complementary()) < 1e-12);
    CHECK(std::abs(dK[2]) < 1e-12);

    const double h = 1e-5;
    unsigned state = 99;
    for (int i = 0; i < 100; ++i) {
        const double x = 10.0 * (lcg_uniform(state) - 0.5);
        const auto d = jacobi_derivatives(x, kB);
        const JacobiTriple jp = jacobi(x + h, kB), jm = jacobi(x - h, kB);
        CHECK(std::abs(d[0] - (jp.sn - jm.sn) / (2 * h)) < 1e-8);
        CHECK(std::abs(d[1] - (jp.cn - jm.cn) / (2 * h)) < 1e-8);
        CHECK(std::abs(d[2] - (jp.dn - jm.dn) / (2 * h)) < 1e-8);
    }
}

TEST_CASE("third-order jet against finite differences of the first derivatives") {
    const double h = 1e-4;
    for (double x : {0.0, 0.4, 1.3, 2.9}) {
        const JacobiJet3 jet = jacobi_jet3(x, kB);
        const auto dp = jacobi_derivatives(x + h, kB);
        const auto dm = jacobi_derivatives(x - h, kB);
        const auto d0 = jacobi_derivatives(x, kB);
        for (int c = 0; c < 3; ++c) {
            CHECK(std::abs(jet.d[1][c] - d0[c]) < 1e-14);
            CHECK(std::abs(jet.d[2][c] - (dp[c] - dm[c]) / (2 * h)) < 1e-6);
            CHECK(std::abs(jet.d[3][c] - (dp[c] - 2 * d0[c] + dm[c]) / (h * h)) < 1e-4);
        }
    }
}
