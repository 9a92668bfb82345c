#pragma once

#include <array>

#include "s2xs2/errors.hpp"

namespace s2xs2 {

/// Elliptic modulus p with 0 <= p < 1.
///
/// Convention: everything in this module is parametrized by the *modulus* p,
/// not the parameter m = p^2. The complementary modulus p' = sqrt(1 - p^2)
/// satisfies p^2 + p'^2 = 1.
struct EllipticModulus {
    double p;

    explicit EllipticModulus(double modulus) : p(modulus) {
        if (!(p >= 0.0 && p < 1.0))
            throw DomainError("elliptic modulus must satisfy 0 <= p < 1");
    }

    double complementary() const;
};

/// Values of the three Jacobi amplitude functions at one argument.
/// Satisfies sn^2 + cn^2 = 1 and dn^2 + p^2 sn^2 = 1, with dn >= p' > 0.
struct JacobiTriple {
    double sn, cn, dn;
};

/// Complete elliptic integral of the first kind, K(p), by the
/// arithmetic-geometric mean. Relative error below 1e-14 for p in [0, 1).
double complete_K(EllipticModulus p);

/// Complete elliptic integral of the second kind, E(p), by the AGM with the
/// descending-c correction series.
double complete_E(EllipticModulus p);

/// sn, cn, dn at argument x via the descending Landen transformation.
JacobiTriple jacobi(double x, EllipticModulus p);

/// First derivatives (sn', cn', dn') = (cn dn, -sn dn, -p^2 sn cn).
std::array<double, 3> jacobi_derivatives(double x, EllipticModulus p);

/// Derivatives of (sn, cn, dn) up to a given order (at most 3), obtained by
/// repeated product rule on the first-order system. jet[k] holds the k-th
/// derivatives of the three functions. Used for analytic immersion jets.
struct JacobiJet3 {
    std::array<std::array<double, 3>, 4> d;  // d[k] = {sn^(k), cn^(k), dn^(k)}
};
JacobiJet3 jacobi_jet3(double x, EllipticModulus p);

} // namespace s2xs2
