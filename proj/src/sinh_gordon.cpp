#include "s2xs2/sinh_gordon.hpp"

#include <cmath>

#include "s2xs2/elliptic.hpp"

namespace s2xs2 {

namespace {

// Central second difference along one axis; n == 1 means no dependence.
double second_diff(const SGField& f, int i, int j, int axis, bool& valid) {
    const int n = axis == 0 ? f.nt : f.ns;
    if (n == 1) return 0.0;
    const double h = axis == 0 ? f.dt : f.ds;
    int lo = (axis == 0 ? i : j) - 1;
    int hi = (axis == 0 ? i : j) + 1;
    if (f.periodic) {
        lo = (lo + n) % n;
        hi = hi % n;
    } else if (lo < 0 || hi >= n) {
        valid = false;
        return 0.0;
    }
    const double fm = axis == 0 ? f.at(lo, j) : f.at(i, lo);
    const double fp = axis == 0 ? f.at(hi, j) : f.at(i, hi);
    return (fp - 2.0 * f.at(i, j) + fm) / (h * h);
}

void check_axes(const SGField& f) {
    if ((f.nt != 1 && f.nt < 3) || (f.ns != 1 && f.ns < 3))
        throw DomainError("sinh-Gordon grid needs at least 3 nodes per active axis");
    if (f.nt >= 1 && static_cast<int>(f.v.size()) != f.nt * f.ns)
        throw DomainError("sinh-Gordon grid size mismatch");
}

} // namespace

double sg_residual(const SGField& f) {
    check_axes(f);
    double worst = 0.0;
    for (int j = 0; j < f.ns; ++j)
        for (int i = 0; i < f.nt; ++i) {
            bool valid = true;
            double vtt, vss;
            if (f.analytic_second()) {
                vtt = f.vtt.empty() ? 0.0 : f.vtt[i + f.nt * j];
                vss = f.vss.empty() ? 0.0 : f.vss[i + f.nt * j];
            } else {
                vtt = second_diff(f, i, j, 0, valid);
                vss = second_diff(f, i, j, 1, valid);
            }
            if (!valid) continue;
            const double r = 0.25 * (vtt + vss) + 0.5 * std::sinh(2.0 * f.at(i, j));
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

double reduced_energy(double v, double w) { return 0.5 * w * w + std::cosh(2.0 * v); }

ReducedSolution integrate_reduced(double v0, double dv0, double T, double h) {
    if (!(h > 0.0) || !(T > 0.0))
        throw DomainError("integrate_reduced: T and h must be positive");
    const int n = std::max(1, static_cast<int>(std::llround(T / h)));
    const double step = T / n;
    ReducedSolution sol;
    sol.h = step;
    sol.v.reserve(n + 1);
    sol.w.reserve(n + 1);
    double v = v0, w = dv0;
    sol.v.push_back(v);
    sol.w.push_back(w);
    const auto acc = [](double vv) { return -2.0 * std::sinh(2.0 * vv); };
    for (int k = 0; k < n; ++k) {
        const double k1v = w, k1w = acc(v);
        const double k2v = w + 0.5 * step * k1w, k2w = acc(v + 0.5 * step * k1v);
        const double k3v = w + 0.5 * step * k2w, k3w = acc(v + 0.5 * step * k2v);
        const double k4v = w + step * k3w, k4w = acc(v + step * k3v);
        v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        w += step / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if (std::abs(v) > 50.0)
            throw DivergenceError("integrate_reduced: solution blew up");
        sol.v.push_back(v);
        sol.w.push_back(w);
    }
    return sol;
}

SGField ReducedSolution::as_field() const {
    SGField f;
    f.nt = static_cast<int>(v.size());
    f.ns = 1;
    f.dt = h;
    f.ds = 0.0;
    f.periodic = false;
    f.v = v;
    return f;
}

Reconstruction reconstruct(const SGField& f) {
    check_axes(f);
    const int n = f.nt * f.ns;
    Reconstruction out;
    out.u.resize(n);
    out.C.resize(n);
    for (int k = 0; k < n; ++k) {
        out.u[k] = 0.5 * std::log(4.0 * std::cosh(2.0 * f.v[k]));
        out.C[k] = 0.5 * std::tanh(2.0 * f.v[k]);
    }

    SGField ug = f, cg = f;
    ug.v = out.u;
    ug.vtt.clear();
    ug.vss.clear();
    cg.v = out.C;
    cg.vtt.clear();
    cg.vss.clear();

    const auto first_diff = [](const SGField& g, int i, int j, int axis, bool& valid) {
        const int nn = axis == 0 ? g.nt : g.ns;
        if (nn == 1) return 0.0;
        const double h = axis == 0 ? g.dt : g.ds;
        int lo = (axis == 0 ? i : j) - 1;
        int hi = (axis == 0 ? i : j) + 1;
        if (g.periodic) {
            lo = (lo + nn) % nn;
            hi = hi % nn;
        } else if (lo < 0 || hi >= nn) {
            valid = false;
            return 0.0;
        }
        const double fm = axis == 0 ? g.at(lo, j) : g.at(i, lo);
        const double fp = axis == 0 ? g.at(hi, j) : g.at(i, hi);
        return (fp - fm) / (2.0 * h);
    };

    double worst = 0.0;
    for (int j = 0; j < f.ns; ++j)
        for (int i = 0; i < f.nt; ++i) {
            const int k = i + f.nt * j;
            const double e2u = std::exp(2.0 * out.u[k]);
            const double e4u = e2u * e2u;
            // Algebraic half of the compatibility system.
            const double alg =
                std::abs((1.0 - 4.0 * out.C[k] * out.C[k]) - 16.0 / e4u);
            worst = std::max(worst, alg);

            bool valid = true;
            const double utt = second_diff(ug, i, j, 0, valid);
            const double uss = second_diff(ug, i, j, 1, valid);
            const double ct = first_diff(cg, i, j, 0, valid);
            const double cs = first_diff(cg, i, j, 1, valid);
            if (!valid) continue;
            const double uzz = 0.25 * (utt + uss);
            const double cz2 = 0.25 * (ct * ct + cs * cs);
            const double pde =
                std::abs(2.0 * uzz + e2u * out.C[k] * out.C[k] - 0.25 * e4u * cz2);
            worst = std::max(worst, pde);
        }
    out.compat_residual = worst;
    return out;
}

SGField lawson_solution_line(int n) {
    if (n < 3) throw DomainError("lawson_solution_line: need at least 3 nodes");
    const double sqrt3 = std::sqrt(3.0);
    const EllipticModulus p(2.0 * std::sqrt(2.0) / 3.0);
    const double period = 2.0 * complete_K(p) / sqrt3;
    SGField f;
    f.nt = n;
    f.ns = 1;
    f.dt = period / n;
    f.ds = 0.0;
    f.periodic = true;
    f.v.resize(n);
    f.vtt.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = sqrt3 * (i * f.dt);
        const JacobiJet3 j = jacobi_jet3(x, p);
        const double dn = j.d[0][2], dn1 = j.d[1][2], dn2 = j.d[2][2];
        f.v[i] = std::log(sqrt3 * dn);
        // v = log(sqrt3 dn(x)), x = sqrt3 t: v_tt = 3 (dn''/dn - (dn'/dn)^2).
        f.vtt[i] = 3.0 * (dn2 / dn - (dn1 / dn) * (dn1 / dn));
    }
    return f;
}

} // namespace s2xs2
