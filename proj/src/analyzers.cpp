#include "s2xs2/analyzers.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "s2xs2/parallel.hpp"

namespace s2xs2 {

namespace {

Vec3 renormalized(const Vec3& v) { return v / v.norm(); }

// 4th-order central stencils. f is any scalar-valued function of one step
// offset; h is the stencil spacing.
template <typename F>
double fd4_first(F&& f, double h) {
    return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}
template <typename F>
double fd4_second(F&& f, double h) {
    return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
           (12.0 * h * h);
}

ImmersionJet fd_jet(const Chart& chart, double t, double s, double h) {
    const auto ev = [&](double a, double b) {
        ProductPoint p = chart.eval(a, b);
        p.x = renormalized(p.x);
        p.y = renormalized(p.y);
        return p;
    };
    ImmersionJet j;
    j.source = JetSource::finite_difference;
    j.P = ev(t, s);

    const auto diff1 = [&](int axis) {
        const ProductPoint pp = axis == 0 ? ev(t + h, s) : ev(t, s + h);
        const ProductPoint pm = axis == 0 ? ev(t - h, s) : ev(t, s - h);
        Vec6 d;
        d << (pp.x - pm.x) / (2.0 * h), (pp.y - pm.y) / (2.0 * h);
        return d;
    };
    j.d_t = project_tangent(j.P, diff1(0));
    j.d_s = project_tangent(j.P, diff1(1));

    const double h2 = std::pow(h, 0.75);  // second-partial stencil step
    const auto at = [&](double dt, double ds) {
        const ProductPoint p = ev(t + dt, s + ds);
        Vec6 v;
        v << p.x, p.y;
        return v;
    };
    const Vec6 center = at(0, 0);
    j.d_tt = (at(h2, 0) - 2.0 * center + at(-h2, 0)) / (h2 * h2);
    j.d_ss = (at(0, h2) - 2.0 * center + at(0, -h2)) / (h2 * h2);
    j.d_ts = (at(h2, h2) - at(h2, -h2) - at(-h2, h2) + at(-h2, -h2)) / (4.0 * h2 * h2);
    return j;
}

double metric_entry(const Chart& chart, double t, double s, const JetScheme& scheme, int which) {
    const ImmersionJet j = jet(chart, t, s, scheme);
    switch (which) {
        case 0: return j.d_t.dot(j.d_t);
        case 1: return j.d_t.dot(j.d_s);
        default: return j.d_s.dot(j.d_s);
    }
}

bool numerically_conformal(const Mat2& g) {
    return std::abs(g(0, 0) - g(1, 1)) + std::abs(g(0, 1)) <= tol::kConformalCheck * g(0, 0);
}

double brioschi(const Chart& chart, double t, double s, const JetScheme& scheme,
                double h) {
    const auto E = [&](double dt, double ds) { return metric_entry(chart, t + dt, s + ds, scheme, 0); };
    const auto F = [&](double dt, double ds) { return metric_entry(chart, t + dt, s + ds, scheme, 1); };
    const auto G = [&](double dt, double ds) { return metric_entry(chart, t + dt, s + ds, scheme, 2); };

    const double E0 = E(0, 0), F0 = F(0, 0), G0 = G(0, 0);
    const double Et = fd4_first([&](double d) { return E(d, 0); }, h);
    const double Es = fd4_first([&](double d) { return E(0, d); }, h);
    const double Ft = fd4_first([&](double d) { return F(d, 0); }, h);
    const double Fs = fd4_first([&](double d) { return F(0, d); }, h);
    const double Gt = fd4_first([&](double d) { return G(d, 0); }, h);
    const double Gs = fd4_first([&](double d) { return G(0, d); }, h);
    const double Ess = fd4_second([&](double d) { return E(0, d); }, h);
    const double Gtt = fd4_second([&](double d) { return G(d, 0); }, h);
    const double Fts = fd4_first([&](double dt) {
        return fd4_first([&](double ds) { return F(dt, ds); }, h);
    }, h);

    Eigen::Matrix3d M1, M2;
    M1 << -0.5 * Ess + Fts - 0.5 * Gtt, 0.5 * Et, Ft - 0.5 * Es,
          Fs - 0.5 * Gt, E0, F0,
          0.5 * Gs, F0, G0;
    M2 << 0.0, 0.5 * Es, 0.5 * Gt,
          0.5 * Es, E0, F0,
          0.5 * Gt, F0, G0;
    const double den = E0 * G0 - F0 * F0;
    return (M1.determinant() - M2.determinant()) / (den * den);
}

double conformal_curvature(const Chart& chart, double t, double s, const JetScheme& scheme,
                           double h) {
    const auto u = [&](double dt, double ds) {
        return 0.5 * std::log(metric_entry(chart, t + dt, s + ds, scheme, 0));
    };
    const double utt = fd4_second([&](double d) { return u(d, 0); }, h);
    const double uss = fd4_second([&](double d) { return u(0, d); }, h);
    return -std::exp(-2.0 * u(0, 0)) * (utt + uss);
}

} // namespace

ImmersionJet jet(const Chart& chart, double t, double s, const JetScheme& scheme) {
    if (!chart.domain.admits(t, s))
        throw DomainError("jet: parameter point outside the chart domain of " + chart.name);
    if (scheme.source == JetSource::analytic) {
        if (!chart.has_analytic_jet())
            throw PreconditionError("jet: chart " + chart.name + " has no analytic jet");
        return chart.analytic_jet(t, s);
    }
    return fd_jet(chart, t, s, scheme.h);
}

Mat2 first_form(const ImmersionJet& j) {
    Mat2 g;
    g(0, 0) = j.d_t.dot(j.d_t);
    g(0, 1) = g(1, 0) = j.d_t.dot(j.d_s);
    g(1, 1) = j.d_s.dot(j.d_s);
    const double det = g.determinant();
    const double tr = g.trace();
    if (det <= tol::kMetricDegeneracy * tr * tr)
        throw DegenerateMetricError("first_form: metric is degenerate at this point");
    return g;
}

OrthonormalFrame orthonormal_frame(const ImmersionJet& j) {
    first_form(j);  // degeneracy guard
    ProductTangent e1 = (1.0 / j.d_t.norm()) * j.d_t;
    ProductTangent e2 = j.d_s - j.d_s.dot(e1) * e1;
    e2 = (1.0 / e2.norm()) * e2;
    return {e1, e2};
}

double lagrangian_residual(const ImmersionJet& j) {
    const Mat2 g = first_form(j);
    const double w = symplectic_form(j.P, j.d_t, j.d_s);
    return std::abs(w) / std::sqrt(g.determinant());
}

double associated_jacobian(const ImmersionJet& j) {
    if (lagrangian_residual(j) > tol::kLagrangianPrecondition)
        throw PreconditionError("associated_jacobian: point is not Lagrangian");
    const OrthonormalFrame f = orthonormal_frame(j);
    const double C = j.P.x.cross(f.e1.v1).dot(f.e2.v1);
    if (C * C > tol::kCSquaredBound)
        throw PreconditionError("associated_jacobian: C^2 exceeds the 1/4 bound");
    return C;
}

double rank_identity_residual(const ImmersionJet& j) {
    if (lagrangian_residual(j) > tol::kLagrangianPrecondition)
        throw PreconditionError("rank_identity_residual: point is not Lagrangian");
    const OrthonormalFrame f = orthonormal_frame(j);
    const double phi = f.e1.v1.squaredNorm() + f.e2.v1.squaredNorm();
    const double psi = f.e1.v2.squaredNorm() + f.e2.v2.squaredNorm();
    return std::max(std::abs(phi - 1.0), std::abs(psi - 1.0));
}

FundamentalForms second_form(const ImmersionJet& j) {
    FundamentalForms out;
    const Mat2 g = first_form(j);
    out.g11 = g(0, 0);
    out.g12 = g(0, 1);
    out.g22 = g(1, 1);
    const OrthonormalFrame f = orthonormal_frame(j);

    // sigma(d_a, d_b) = raw second partial, projected to T(S^2 x S^2) (which
    // removes the ambient second fundamental form), minus the surface-tangent part.
    const Vec6 raw[2][2] = {{j.d_tt, j.d_ts}, {j.d_ts, j.d_ss}};
    ProductTangent sig_coord[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ProductTangent v = project_tangent(j.P, raw[a][b]);
            v = v - v.dot(f.e1) * f.e1 - v.dot(f.e2) * f.e2;
            sig_coord[a][b] = v;
        }

    // Change of basis from coordinate vectors to the orthonormal frame:
    // e_i = sum_a B[i][a] d_a, so sigma(e_i, e_j) = sum B[i][a] B[j][b] sigma_ab.
    const double n1 = std::sqrt(g(0, 0));
    double B[2][2] = {{1.0 / n1, 0.0}, {0.0, 0.0}};
    const double proj = g(0, 1) / n1;
    const double n2 = std::sqrt(std::max(g(1, 1) - proj * proj, 0.0));
    B[1][0] = -proj / (n1 * n2);
    B[1][1] = 1.0 / n2;

    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            ProductTangent v{Vec3::Zero(), Vec3::Zero()};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    v = v + (B[i][a] * B[k][b]) * sig_coord[a][b];
            out.sigma_vec[i][k] = v.flat();
        }

    // Normal frame: J e1, J e2 orthonormalized against the tangent plane (for
    // Lagrangian points they are already orthonormal and normal).
    ProductTangent n[2] = {ambient_J(j.P, f.e1), ambient_J(j.P, f.e2)};
    for (int k = 0; k < 2; ++k) {
        ProductTangent v = n[k];
        v = v - v.dot(f.e1) * f.e1 - v.dot(f.e2) * f.e2;
        for (int m = 0; m < k; ++m) v = v - v.dot(n[m]) * n[m];
        const double nv = v.norm();
        if (nv < 1e-8)
            throw DegenerateMetricError("second_form: normal frame degenerates (complex point)");
        n[k] = (1.0 / nv) * v;
    }
    out.normal_frame[0] = n[0];
    out.normal_frame[1] = n[1];

    out.H = 0.5 * (out.sigma_vec[0][0] + out.sigma_vec[1][1]);
    out.norm_H = out.H.norm();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const ProductTangent sv = ProductTangent::from_flat(out.sigma_vec[i][k]);
            for (int m = 0; m < 2; ++m) out.sigma[m][i][k] = sv.dot(n[m]);
            out.norm_sigma2 += sv.dot(sv);
        }
    out.C = j.P.x.cross(f.e1.v1).dot(f.e2.v1);
    return out;
}

double gauss_curvature(const Chart& chart, double t, double s, const JetScheme& scheme,
                       double step) {
    if (chart.domain.conformal) {
        const Mat2 g = first_form(jet(chart, t, s, scheme));
        if (numerically_conformal(g)) return conformal_curvature(chart, t, s, scheme, step);
    }
    return brioschi(chart, t, s, scheme, step);
}

double gauss_equation_residual(const Chart& chart, double t, double s, const JetScheme& scheme) {
    const FundamentalForms forms = second_form(jet(chart, t, s, scheme));
    const double K = gauss_curvature(chart, t, s, scheme);
    return std::abs(K - 2.0 * forms.C * forms.C - 2.0 * forms.norm_H * forms.norm_H +
                    0.5 * forms.norm_sigma2);
}

std::pair<double, double> c_identities_residual(const Chart& chart, double t, double s,
                                                bool minimal_declared, const JetScheme& scheme) {
    if (!minimal_declared)
        throw PreconditionError("c_identities_residual: surface is not declared minimal");
    const double h = tol::kFdSecond;
    const auto Cat = [&](double dt, double ds) {
        return associated_jacobian(jet(chart, t + dt, s + ds, scheme));
    };
    const double C0 = Cat(0, 0);
    const double Ct = fd4_first([&](double d) { return Cat(d, 0); }, h);
    const double Cs = fd4_first([&](double d) { return Cat(0, d); }, h);

    const Mat2 g = first_form(jet(chart, t, s, scheme));
    double grad2, lap;
    if (chart.domain.conformal && numerically_conformal(g)) {
        const double e2u = g(0, 0);
        const double Ctt = fd4_second([&](double d) { return Cat(d, 0); }, h);
        const double Css = fd4_second([&](double d) { return Cat(0, d); }, h);
        grad2 = (Ct * Ct + Cs * Cs) / e2u;
        lap = (Ctt + Css) / e2u;
    } else {
        const Mat2 gi = g.inverse();
        grad2 = gi(0, 0) * Ct * Ct + 2.0 * gi(0, 1) * Ct * Cs + gi(1, 1) * Cs * Cs;
        // Divergence form with fluxes at half steps.
        const auto flux = [&](double dt, double ds, int comp) {
            const Mat2 gg = first_form(jet(chart, t + dt, s + ds, scheme));
            const Mat2 ggi = gg.inverse();
            const double sq = std::sqrt(gg.determinant());
            const double ct = fd4_first([&](double d) { return Cat(dt + d, ds); }, h);
            const double cs = fd4_first([&](double d) { return Cat(dt, ds + d); }, h);
            return comp == 0 ? sq * (ggi(0, 0) * ct + ggi(0, 1) * cs)
                             : sq * (ggi(1, 0) * ct + ggi(1, 1) * cs);
        };
        const double div = (flux(0.5 * h, 0, 0) - flux(-0.5 * h, 0, 0)) / h +
                           (flux(0, 0.5 * h, 1) - flux(0, -0.5 * h, 1)) / h;
        lap = div / std::sqrt(g.determinant());
    }

    const double K = gauss_curvature(chart, t, s, scheme);
    const double r1 = std::abs(grad2 - 0.5 * (1.0 - 4.0 * C0 * C0) * (2.0 * C0 * C0 - K));
    const double r2 = std::abs(lap + C0 * (1.0 + 4.0 * C0 * C0 - 4.0 * K));
    return {r1, r2};
}

std::complex<double> hopf_coefficient(const ImmersionJet& j) {
    // phi_z = (phi_t - i phi_s)/2; complex bilinear square.
    const Vec3 pt = j.d_t.v1, ps = j.d_s.v1;
    return {0.25 * (pt.squaredNorm() - ps.squaredNorm()), -0.5 * pt.dot(ps)};
}

HopfResidual hopf_residual(const Chart& chart, double t, double s, const JetScheme& scheme) {
    if (!chart.domain.conformal)
        throw PreconditionError("hopf_residual: chart is not a conformal parametrization");
    const ImmersionJet j0 = jet(chart, t, s, scheme);
    const Mat2 g = first_form(j0);
    if (!numerically_conformal(g))
        throw PreconditionError("hopf_residual: metric fails the conformality check");

    const double h = tol::kFdSecond;
    const auto theta = [&](double dt, double ds) {
        return hopf_coefficient(jet(chart, t + dt, s + ds, scheme));
    };
    const auto re = [&](double dt, double ds) { return theta(dt, ds).real(); };
    const auto im = [&](double dt, double ds) { return theta(dt, ds).imag(); };
    // d/dzbar = (d/dt + i d/ds)/2 applied to theta.
    const double rt = fd4_first([&](double d) { return re(d, 0); }, h);
    const double rs = fd4_first([&](double d) { return re(0, d); }, h);
    const double it = fd4_first([&](double d) { return im(d, 0); }, h);
    const double is = fd4_first([&](double d) { return im(0, d); }, h);
    const std::complex<double> dzbar =
        0.5 * std::complex<double>(rt - is, it + rs);

    const double C = associated_jacobian(j0);
    const double e2u = g(0, 0);
    const std::complex<double> th = hopf_coefficient(j0);
    HopfResidual out;
    out.cauchy_riemann = std::abs(dzbar);
    out.modulus = std::abs(16.0 * std::norm(th) - e2u * e2u * (1.0 - 4.0 * C * C));
    return out;
}

double parallel_H_residual(const Chart& chart, double t, double s, const JetScheme& scheme) {
    const double h = tol::kFdSecond;
    const auto Hfield = [&](double dt, double ds) {
        return second_form(jet(chart, t + dt, s + ds, scheme)).H;
    };
    const ImmersionJet j0 = jet(chart, t, s, scheme);
    const OrthonormalFrame f = orthonormal_frame(j0);

    double worst = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
        Vec6 dH = Vec6::Zero();
        for (int k = 0; k < 6; ++k) {
            dH(k) = fd4_first([&](double d) {
                return axis == 0 ? Hfield(d, 0)(k) : Hfield(0, d)(k);
            }, h);
        }
        // Ambient covariant derivative: project off the sphere normals (the
        // ambient sff correction), then off the surface tangent plane.
        ProductTangent v = project_tangent(j0.P, dH);
        v = v - v.dot(f.e1) * f.e1 - v.dot(f.e2) * f.e2;
        worst = std::max(worst, v.norm());
    }
    return worst;
}

namespace {

double quadrature_pass(const SurfaceSpec& surface, int n, const JetScheme& scheme,
                       bool with_C) {
    double total = 0.0;
    for (const Chart& chart : surface.quadrature_atlas()) {
        // Chart rectangles are fundamental regions by construction (Klein
        // charts already span only half the double-cover s-period).
        const ParamDomain& d = chart.domain;
        const int nt = n, ns = n;
        const double dt = (d.t1 - d.t0) / nt;
        const double ds = (d.s1 - d.s0) / ns;
        std::vector<double> row_sum(ns, 0.0);
        parallel_for(ns, [&](int jrow) {
            double acc = 0.0;
            for (int i = 0; i < nt; ++i) {
                const double tt = d.t0 + (i + 0.5) * dt;
                const double ss = d.s0 + (jrow + 0.5) * ds;
                const ImmersionJet jj = jet(chart, tt, ss, scheme);
                const double dA = std::sqrt(first_form(jj).determinant());
                acc += with_C ? associated_jacobian(jj) * dA : dA;
            }
            row_sum[jrow] = acc;
        });
        double chart_total = 0.0;
        for (double v : row_sum) chart_total += v;
        total += chart_total * dt * ds;
    }
    return total;
}

double richardson_quadrature(const SurfaceSpec& surface, int n, const JetScheme& scheme,
                             bool with_C) {
    const double coarse = quadrature_pass(surface, n, scheme, with_C);
    const double fine = quadrature_pass(surface, 2 * n, scheme, with_C);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace

double area(const SurfaceSpec& surface, int n, const JetScheme& scheme) {
    if (!surface.expects.compact)
        throw PreconditionError("area: surface is not compact");
    return richardson_quadrature(surface, n, scheme, false);
}

double degree(const SurfaceSpec& surface, int n, const JetScheme& scheme) {
    if (!surface.expects.compact)
        throw PreconditionError("degree: surface is not compact");
    if (!surface.expects.orientable)
        throw PreconditionError("degree: surface is non-orientable; use the double cover");
    return richardson_quadrature(surface, n, scheme, true) / (4.0 * std::numbers::pi);
}

SurfaceSpec apply_isometry(const SurfaceSpec& surface, const Eigen::Matrix3d& A,
                           const Eigen::Matrix3d& B) {
    SurfaceSpec out = surface;
    out.name = surface.name + "+isometry";
    auto wrap = [&](Chart& chart) {
        const auto base_eval = chart.eval;
        chart.eval = [=](double t, double s) {
            const ProductPoint p = base_eval(t, s);
            return ProductPoint{A * p.x, B * p.y};
        };
        if (chart.analytic_jet) {
            const auto base_jet = chart.analytic_jet;
            chart.analytic_jet = [=](double t, double s) {
                ImmersionJet j = base_jet(t, s);
                j.P = {A * j.P.x, B * j.P.y};
                j.d_t = {A * j.d_t.v1, B * j.d_t.v2};
                j.d_s = {A * j.d_s.v1, B * j.d_s.v2};
                auto rot6 = [&](const Vec6& w) {
                    Vec6 o;
                    o << A * w.head<3>(), B * w.tail<3>();
                    return o;
                };
                j.d_tt = rot6(j.d_tt);
                j.d_ts = rot6(j.d_ts);
                j.d_ss = rot6(j.d_ss);
                return j;
            };
        }
    };
    for (Chart& c : out.charts) wrap(c);
    for (Chart& c : out.quad_charts) wrap(c);
    return out;
}

} // namespace s2xs2
