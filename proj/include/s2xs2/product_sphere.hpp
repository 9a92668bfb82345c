#pragma once

#include <Eigen/Dense>

#include "s2xs2/errors.hpp"
#include "s2xs2/tolerances.hpp"

namespace s2xs2 {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;

/// A point of the product of two unit spheres, as a pair of unit 3-vectors.
struct ProductPoint {
    Vec3 x, y;

    double unit_residual() const {
        return std::max(std::abs(x.norm() - 1.0), std::abs(y.norm() - 1.0));
    }
};

/// A tangent vector (v1, v2) at a product point: v1 _|_ x and v2 _|_ y.
struct ProductTangent {
    Vec3 v1, v2;

    Vec6 flat() const {
        Vec6 out;
        out << v1, v2;
        return out;
    }
    static ProductTangent from_flat(const Vec6& w) {
        return {w.head<3>(), w.tail<3>()};
    }
    double dot(const ProductTangent& o) const { return v1.dot(o.v1) + v2.dot(o.v2); }
    double norm() const { return std::sqrt(dot(*this)); }
    double tangency_residual(const ProductPoint& p) const {
        return std::max(std::abs(v1.dot(p.x)), std::abs(v2.dot(p.y)));
    }
};

inline ProductTangent operator+(const ProductTangent& a, const ProductTangent& b) {
    return {a.v1 + b.v1, a.v2 + b.v2};
}
inline ProductTangent operator-(const ProductTangent& a, const ProductTangent& b) {
    return {a.v1 - b.v1, a.v2 - b.v2};
}
inline ProductTangent operator*(double c, const ProductTangent& a) {
    return {c * a.v1, c * a.v2};
}

/// Product complex structure: J(v) = (x cross v1, y cross v2). J^2 = -Id.
inline ProductTangent ambient_J(const ProductPoint& p, const ProductTangent& v) {
    if (v.tangency_residual(p) > tol::kAmbientTangency)
        throw PreconditionError("ambient_J: vector is not tangent at the given point");
    return {p.x.cross(v.v1), p.y.cross(v.v2)};
}

/// Kahler 2-form w(v, w) = <Jv, w> = det{x, v1, w1} + det{y, v2, w2}.
inline double symplectic_form(const ProductPoint& p, const ProductTangent& v,
                              const ProductTangent& w) {
    if (v.tangency_residual(p) > tol::kAmbientTangency ||
        w.tangency_residual(p) > tol::kAmbientTangency)
        throw PreconditionError("symplectic_form: vector is not tangent at the given point");
    return p.x.cross(v.v1).dot(w.v1) + p.y.cross(v.v2).dot(w.v2);
}

/// Second fundamental form of the product of spheres inside R^6:
/// sff(v, w) = (-<v1,w1> x, -<v2,w2> y).
inline Vec6 ambient_sff(const ProductPoint& p, const ProductTangent& v,
                        const ProductTangent& w) {
    Vec6 out;
    out << -v.v1.dot(w.v1) * p.x, -v.v2.dot(w.v2) * p.y;
    return out;
}

/// Projection of an arbitrary 6-vector onto the tangent space of the product
/// of spheres at p (drops the components along (x,0) and (0,y)).
inline ProductTangent project_tangent(const ProductPoint& p, const Vec6& w) {
    Vec3 a = w.head<3>(), b = w.tail<3>();
    return {a - a.dot(p.x) * p.x, b - b.dot(p.y) * p.y};
}

} // namespace s2xs2
