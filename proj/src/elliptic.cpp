#include "s2xs2/elliptic.hpp"

#include <cmath>
#include <numbers>

namespace s2xs2 {

namespace {

constexpr double kLandenCutoff = 1e-14;  // stop when the descending modulus is below this
constexpr int kMaxAgmSteps = 64;

struct AgmScales {
    std::array<double, kMaxAgmSteps> a, c;
    int steps;
};

// Shared AGM descent from (1, p'). c_n = (a_{n-1} - b_{n-1}) / 2 is the
// descending modulus scale.
AgmScales agm_descend(double p) {
    AgmScales s{};
    double a = 1.0;
    double b = std::sqrt((1.0 - p) * (1.0 + p));
    double c = p;
    int n = 0;
    s.a[0] = a;
    s.c[0] = c;
    while (std::abs(c) > kLandenCutoff * a && n + 1 < kMaxAgmSteps) {
        const double an = 0.5 * (a + b);
        const double gn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = gn;
        ++n;
        s.a[n] = a;
        s.c[n] = c;
    }
    s.steps = n;
    return s;
}

} // namespace

double EllipticModulus::complementary() const {
    return std::sqrt((1.0 - p) * (1.0 + p));
}

double complete_K(EllipticModulus p) {
    const AgmScales s = agm_descend(p.p);
    return std::numbers::pi / (2.0 * s.a[s.steps]);
}

double complete_E(EllipticModulus p) {
    const AgmScales s = agm_descend(p.p);
    double sum = 0.0;
    double pow2 = 0.5;  // 2^{n-1}
    for (int n = 0; n <= s.steps; ++n) {
        sum += pow2 * s.c[n] * s.c[n];
        pow2 *= 2.0;
    }
    const double K = std::numbers::pi / (2.0 * s.a[s.steps]);
    return K * (1.0 - sum);
}

JacobiTriple jacobi(double x, EllipticModulus p) {
    if (p.p == 0.0) return {std::sin(x), std::cos(x), 1.0};

    const AgmScales s = agm_descend(p.p);
    const int N = s.steps;

    // Ascend the amplitude, then fold back down (A&S 16.4).
    double phi = std::ldexp(s.a[N] * x, N);
    for (int n = N; n >= 1; --n) {
        const double t = (s.c[n] / s.a[n]) * std::sin(phi);
        phi = 0.5 * (std::asin(t) + phi);
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = std::sqrt(1.0 - (p.p * sn) * (p.p * sn));
    return {sn, cn, dn};
}

std::array<double, 3> jacobi_derivatives(double x, EllipticModulus p) {
    const JacobiTriple j = jacobi(x, p);
    return {j.cn * j.dn, -j.sn * j.dn, -p.p * p.p * j.sn * j.cn};
}

JacobiJet3 jacobi_jet3(double x, EllipticModulus p) {
    const double p2 = p.p * p.p;
    const JacobiTriple j = jacobi(x, p);
    JacobiJet3 out{};
    auto& d = out.d;
    const double s = j.sn, c = j.cn, dn = j.dn;
    d[0] = {s, c, dn};
    d[1] = {c * dn, -s * dn, -p2 * s * c};
    // Product rule on sn' = cn dn, cn' = -sn dn, dn' = -p^2 sn cn.
    d[2] = {d[1][1] * dn + c * d[1][2],
            -(d[1][0] * dn + s * d[1][2]),
            -p2 * (d[1][0] * c + s * d[1][1])};
    d[3] = {d[2][1] * dn + 2.0 * d[1][1] * d[1][2] + c * d[2][2],
            -(d[2][0] * dn + 2.0 * d[1][0] * d[1][2] + s * d[2][2]),
            -p2 * (d[2][0] * c + 2.0 * d[1][0] * d[1][1] + s * d[2][1])};
    return out;
}

} // namespace s2xs2
