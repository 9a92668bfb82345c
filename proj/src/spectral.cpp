#include "s2xs2/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "s2xs2/analyzers.hpp"
#include "s2xs2/tolerances.hpp"

namespace s2xs2 {

namespace {

double conformal_weight(const Chart& chart, double t, double s) {
    const ImmersionJet j = jet(chart, t, s,
                               chart.has_analytic_jet() ? JetScheme::analytic() : JetScheme::fd());
    const Mat2 g = first_form(j);
    if (std::abs(g(0, 0) - g(1, 1)) + std::abs(g(0, 1)) > tol::kConformalCheck * g(0, 0))
        throw PreconditionError("spectral grid: chart is not conformal at a node");
    return g(0, 0);
}

} // namespace

ConformalGrid make_grid(const SurfaceSpec& surface, int nt, int ns) {
    const Chart& chart = surface.charts.at(0);
    const ParamDomain& d = chart.domain;
    ConformalGrid g;
    g.nt = nt;
    g.ns = ns;
    g.t0 = d.t0;
    g.s0 = d.s0;
    if (d.is_torus()) {
        const auto& tg = std::get<TorusGluing>(d.gluing);
        g.gluing = ConformalGrid::Gluing::torus;
        g.dt = tg.period_t / nt;
        g.ds = tg.period_s / ns;
    } else if (d.is_klein()) {
        const auto& kg = std::get<KleinGluing>(d.gluing);
        if (nt % 2 != 0 || ns % 2 != 0)
            throw PreconditionError("klein grids need even node counts");
        g.gluing = ConformalGrid::Gluing::klein;
        g.dt = kg.period_t / nt;
        g.ds = 0.5 * kg.period_s / ns;
        const double ri = (kg.center - 2.0 * d.t0) / g.dt;
        g.reflect_index = static_cast<int>(std::llround(ri));
        if (std::abs(ri - g.reflect_index) > 1e-9)
            throw PreconditionError("klein glide is not node-aligned on this grid");
    } else {
        throw PreconditionError("spectral grids need a torus or klein domain");
    }
    g.weight.resize(g.size());
    for (int j = 0; j < ns; ++j)
        for (int i = 0; i < nt; ++i)
            g.weight[g.node(i, j)] = conformal_weight(chart, g.t0 + i * g.dt, g.s0 + j * g.ds);
    return g;
}

ConformalGrid make_double_cover_grid(const SurfaceSpec& surface, int nt, int ns_half) {
    const Chart& chart = surface.charts.at(0);
    const ParamDomain& d = chart.domain;
    if (!d.is_klein())
        throw PreconditionError("double cover grids are built from klein domains");
    const auto& kg = std::get<KleinGluing>(d.gluing);
    ConformalGrid g;
    g.gluing = ConformalGrid::Gluing::torus;
    g.nt = nt;
    g.ns = 2 * ns_half;
    g.t0 = d.t0;
    g.s0 = d.s0;
    g.dt = kg.period_t / nt;
    g.ds = kg.period_s / g.ns;
    const double ri = (kg.center - 2.0 * d.t0) / g.dt;
    g.reflect_index = static_cast<int>(std::llround(ri));
    if (nt % 2 != 0 || std::abs(ri - g.reflect_index) > 1e-9)
        throw PreconditionError("deck involution is not node-aligned on this grid");
    g.weight.resize(g.size());
    for (int j = 0; j < g.ns; ++j)
        for (int i = 0; i < nt; ++i)
            g.weight[g.node(i, j)] = conformal_weight(chart, g.t0 + i * g.dt, g.s0 + j * g.ds);
    return g;
}

std::vector<int> deck_involution(const ConformalGrid& cover) {
    std::vector<int> tau(cover.size());
    const int half = cover.ns / 2;
    for (int j = 0; j < cover.ns; ++j)
        for (int i = 0; i < cover.nt; ++i) {
            const int ii = ((cover.reflect_index - i) % cover.nt + cover.nt) % cover.nt;
            const int jj = (j + half) % cover.ns;
            tau[cover.node(i, j)] = cover.node(ii, jj);
        }
    return tau;
}

OperatorPair assemble(const ConformalGrid& grid) {
    OperatorPair op;
    op.grid = &grid;
    const int n = grid.size();
    op.wt = grid.ds / grid.dt;
    op.ws = grid.dt / grid.ds;
    op.left.resize(n);
    op.right.resize(n);
    op.up.resize(n);
    op.down.resize(n);
    op.mass.resize(n);
    const auto reflect = [&](int i) {
        return ((grid.reflect_index - i) % grid.nt + grid.nt) % grid.nt;
    };
    for (int j = 0; j < grid.ns; ++j)
        for (int i = 0; i < grid.nt; ++i) {
            const int k = grid.node(i, j);
            op.left[k] = grid.node((i + grid.nt - 1) % grid.nt, j);
            op.right[k] = grid.node((i + 1) % grid.nt, j);
            if (grid.gluing == ConformalGrid::Gluing::torus) {
                op.down[k] = grid.node(i, (j + grid.ns - 1) % grid.ns);
                op.up[k] = grid.node(i, (j + 1) % grid.ns);
            } else {
                op.down[k] = j > 0 ? grid.node(i, j - 1) : grid.node(reflect(i), grid.ns - 1);
                op.up[k] = j < grid.ns - 1 ? grid.node(i, j + 1) : grid.node(reflect(i), 0);
            }
            op.mass[k] = grid.weight[k] * grid.dt * grid.ds;
        }
    return op;
}

void OperatorPair::apply(const double* x, double* y) const {
    const int n = size();
    for (int k = 0; k < n; ++k) {
        y[k] = wt * (2.0 * x[k] - x[left[k]] - x[right[k]]) +
               ws * (2.0 * x[k] - x[up[k]] - x[down[k]]);
    }
}

double rayleigh(const OperatorPair& op, const std::vector<double>& f) {
    const int n = op.size();
    std::vector<double> Af(n);
    op.apply(f.data(), Af.data());
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        num += f[k] * Af[k];
        den += f[k] * f[k] * op.mass[k];
    }
    if (den <= 0.0) throw DomainError("rayleigh: zero or negative mass norm");
    return num / den;
}

namespace {

// Symmetric tridiagonal eigen decomposition, QL with implicit shifts
// (classic tql2). d = diagonal, e = subdiagonal (e[0..n-2] used); z, when
// given, accumulates eigenvectors over its initial content.
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<std::vector<double>>* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw ConvergenceError("tql2: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (auto& row : *z) {
                            f = row[i + 1];
                            row[i + 1] = s * row[i] + c * f;
                            row[i] = c * row[i] - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

struct Workspace {
    const OperatorPair& op;
    const std::vector<int>* tau;
    int parity;
    bool deflate;
    double ones_norm2 = 0.0;
    const std::vector<std::vector<double>>* locked;  // converged eigenvectors, M-orthonormal

    Workspace(const OperatorPair& o, bool defl, const std::vector<int>* t, int par,
              const std::vector<std::vector<double>>* lock)
        : op(o), tau(t), parity(par), deflate(defl), locked(lock) {
        if (deflate) ones_norm2 = std::accumulate(op.mass.begin(), op.mass.end(), 0.0);
    }

    double mdot(const std::vector<double>& a, const std::vector<double>& b) const {
        double s = 0.0;
        for (int i = 0; i < op.size(); ++i) s += a[i] * op.mass[i] * b[i];
        return s;
    }

    // Project onto the working subspace: into the requested parity sector,
    // away from constants, and away from locked eigenvectors.
    void project(std::vector<double>& x) const {
        if (tau && parity != 0) {
            std::vector<double> px(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                px[i] = 0.5 * (x[i] + parity * x[(*tau)[i]]);
            x.swap(px);
        }
        if (deflate) {
            double c = 0.0;
            for (int i = 0; i < op.size(); ++i) c += op.mass[i] * x[i];
            c /= ones_norm2;
            for (double& xi : x) xi -= c;
        }
        if (locked) {
            for (const auto& v : *locked) {
                const double c = mdot(x, v);
                for (int i = 0; i < op.size(); ++i) x[i] -= c * v[i];
            }
        }
    }

    // CG solve A x = b. The kernel (constants) is projected out of the
    // residual every step: rounding noise reintroduces it and, once the true
    // residual reaches the floating-point floor, it would otherwise amplify.
    std::vector<double> solve(const std::vector<double>& b) const {
        const int n = op.size();
        const auto drop_mean = [n](std::vector<double>& v) {
            double m = 0.0;
            for (double x : v) m += x;
            m /= n;
            for (double& x : v) x -= m;
        };
        std::vector<double> x(n, 0.0), r = b, Ap(n);
        drop_mean(r);
        std::vector<double> p = r;
        double rs = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
        const double b2 = rs;
        if (b2 == 0.0) return x;
        const double tol2 = 1e-26 * b2;
        const int max_it = std::max(2000, 4 * n);
        double best = rs;
        int since_best = 0;
        for (int it = 0; it < max_it && rs > tol2; ++it) {
            op.apply(p.data(), Ap.data());
            const double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
            if (pAp <= 0.0) break;
            const double alpha = rs / pAp;
            for (int i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * Ap[i];
            }
            drop_mean(r);
            const double rs_new = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
            const double beta = rs_new / rs;
            rs = rs_new;
            for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
            if (rs < 0.999 * best) {
                best = rs;
                since_best = 0;
            } else if (++since_best > 300) {
                break;  // rounding floor reached
            }
        }
        if (rs > 1e-18 * b2)
            throw ConvergenceError("spectral: inner CG solve stalled");
        return x;
    }
};

// One Lanczos sweep on A^{-1} M within the workspace subspace. Returns up to
// k converged pairs (fewer when the subspace is exhausted first).
EigenPairs lanczos_run(const OperatorPair& op, const Workspace& ws, int k,
                       const LanczosOptions& opt, unsigned seed) {
    const int n = op.size();
    std::vector<double> q(n);
    unsigned state = seed;
    for (double& qi : q) {
        state = state * 1664525u + 1013904223u;
        qi = (state >> 8) / double(1u << 24) - 0.5;
    }
    ws.project(q);

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    {
        const double nq = std::sqrt(ws.mdot(q, q));
        if (nq < 1e-14) return {};  // subspace exhausted
        for (double& qi : q) qi /= nq;
    }
    basis.push_back(q);

    const int m_max = std::min(opt.max_steps, n);
    bool exhausted = false;
    EigenPairs best;

    for (int m = 1; m <= m_max; ++m) {
        // rhs = M q is Euclidean-orthogonal to constants whenever q is
        // M-orthogonal to them, so it already lies in range(A).
        std::vector<double> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = op.mass[i] * basis.back()[i];
        std::vector<double> z = ws.solve(rhs);
        ws.project(z);

        const double a = ws.mdot(z, basis.back());
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) z[i] -= a * basis.back()[i];
        if (m >= 2) {
            const double b_prev = beta.back();
            const auto& qm1 = basis[m - 2];
            for (int i = 0; i < n; ++i) z[i] -= b_prev * qm1[i];
        }
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qb : basis) {
                const double c = ws.mdot(z, qb);
                for (int i = 0; i < n; ++i) z[i] -= c * qb[i];
            }
        const double b = std::sqrt(std::max(ws.mdot(z, z), 0.0));
        if (b < 1e-13) exhausted = true;

        const bool check = (m >= std::max(2 * k, 6) && m % 6 == 0) || m == m_max || exhausted;
        if (check) {
            std::vector<double> d = alpha, e(alpha.size(), 0.0);
            for (size_t i = 0; i + 1 < alpha.size(); ++i) e[i] = beta[i];
            std::vector<std::vector<double>> zrows(alpha.size(),
                                                   std::vector<double>(alpha.size(), 0.0));
            for (size_t i = 0; i < alpha.size(); ++i) zrows[i][i] = 1.0;
            tql2(d, e, &zrows);

            std::vector<int> order(d.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] > d[y]; });

            EigenPairs cand;
            const int want = std::min<int>(k, static_cast<int>(d.size()));
            for (int idx = 0; idx < want; ++idx) {
                const int col = order[idx];
                if (d[col] <= 0.0) break;
                const double lam = 1.0 / d[col];
                std::vector<double> vec(n, 0.0);
                for (size_t row = 0; row < alpha.size(); ++row) {
                    const double w = zrows[row][col];
                    const auto& qb = basis[row];
                    for (int i = 0; i < n; ++i) vec[i] += w * qb[i];
                }
                std::vector<double> Av(n);
                op.apply(vec.data(), Av.data());
                double rnorm = 0.0, mnorm = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double mi = op.mass[i] * vec[i];
                    rnorm += (Av[i] - lam * mi) * (Av[i] - lam * mi);
                    mnorm += mi * mi;
                }
                const double rel = std::sqrt(rnorm / mnorm);
                if (rel > opt.tol) break;
                cand.values.push_back(lam);
                cand.vectors.push_back(std::move(vec));
                cand.residuals.push_back(rel);
            }
            if (static_cast<int>(cand.values.size()) > static_cast<int>(best.values.size()))
                best = std::move(cand);
            if (static_cast<int>(best.values.size()) == k) return best;
            if (exhausted) return best;
        }
        if (exhausted) return best;
        beta.push_back(b);
        for (double& zi : z) zi /= b;
        basis.push_back(std::move(z));
    }
    return best;
}

} // namespace

EigenPairs lowest_eigenpairs(const OperatorPair& op, const LanczosOptions& opt,
                             bool deflate_constants, const std::vector<int>* tau, int parity) {
    // Restarted Lanczos with deflation of converged pairs. A single Krylov
    // sweep finds one copy of each distinct eigenvalue; restarting against
    // the locked set recovers multiplicities, and a restart whose smallest
    // value exceeds the current k-th proves the accumulated head complete.
    EigenPairs acc;
    std::vector<std::vector<double>> locked;
    const int per_round = std::max(4, std::min(opt.k, 10));
    for (int round = 0; round < 12; ++round) {
        Workspace ws(op, deflate_constants, tau, parity, locked.empty() ? nullptr : &locked);
        const EigenPairs found =
            lanczos_run(op, ws, per_round, opt, opt.seed + 0x9E3779B9u * round);
        if (found.values.empty()) {
            if (static_cast<int>(acc.values.size()) >= opt.k) break;
            throw ConvergenceError("lanczos: subspace exhausted before k eigenpairs");
        }
        for (size_t i = 0; i < found.values.size(); ++i) {
            acc.values.push_back(found.values[i]);
            acc.vectors.push_back(found.vectors[i]);
            acc.residuals.push_back(found.residuals[i]);
            locked.push_back(found.vectors[i]);
            // M-normalize the locked copy for clean deflation.
            auto& v = locked.back();
            double m2 = 0.0;
            for (int j = 0; j < op.size(); ++j) m2 += v[j] * op.mass[j] * v[j];
            const double inv = 1.0 / std::sqrt(m2);
            for (double& x : v) x *= inv;
        }
        if (static_cast<int>(acc.values.size()) >= opt.k) {
            std::vector<double> sorted = acc.values;
            std::sort(sorted.begin(), sorted.end());
            if (found.values.front() >= sorted[opt.k - 1] * (1.0 - 1e-10)) break;
        }
    }
    if (static_cast<int>(acc.values.size()) < opt.k)
        throw ConvergenceError("lanczos: did not converge to the requested eigenpairs");

    std::vector<int> order(acc.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return acc.values[x] < acc.values[y]; });
    EigenPairs out;
    for (int idx : order) {
        if (static_cast<int>(out.values.size()) == opt.k) break;
        out.values.push_back(acc.values[idx]);
        out.vectors.push_back(acc.vectors[idx]);
        out.residuals.push_back(acc.residuals[idx]);
    }
    return out;
}

namespace {

char parity_label(const std::vector<double>& v, const std::vector<int>& tau) {
    double plus = 0.0, total = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        plus += v[i] * v[tau[i]];
        total += v[i] * v[i];
    }
    const double r = plus / total;
    if (r > 0.9) return '+';
    if (r < -0.9) return '-';
    return 'n';
}

void guard_band(const std::vector<double>& lams, double eps) {
    for (double l : lams)
        if (l > 1.0 - 2.0 * eps && l < 1.0 - eps)
            throw AmbiguityError("index_report: eigenvalue inside the guard band; refine the grid");
}

} // namespace

SpectralResult index_report(const SurfaceSpec& surface, int nt, int ns, double eps,
                            const LanczosOptions& opt_in) {
    if (!surface.expects.compact || !surface.expects.minimal || !surface.expects.lagrangian)
        throw PreconditionError("index_report: surface must be compact minimal Lagrangian");
    const ParamDomain& dom = surface.charts.at(0).domain;
    if (!dom.is_torus() && !dom.is_klein())
        throw PreconditionError("index_report: domain must be a torus or klein rectangle");

    SpectralResult res;
    res.nt = nt;
    res.ns = ns;
    res.betti1 = surface.expects.betti1;

    LanczosOptions opt = opt_in;
    const auto count_below = [&](const std::vector<double>& lams, double bound) {
        int c = 0;
        for (double l : lams)
            if (l > tol::kSpectralZero && l < bound) ++c;
        return c;
    };
    // Grow k until the spectrum demonstrably reaches past the band.
    const auto solve_past_one = [&](const OperatorPair& op, bool deflate,
                                    const std::vector<int>* tau, int parity) {
        for (int k = opt.k;; k += 6) {
            LanczosOptions o = opt;
            o.k = k;
            const EigenPairs p = lowest_eigenpairs(op, o, deflate, tau, parity);
            if (p.values.back() > 1.0 - eps || k >= 40) return p;
        }
    };

    if (dom.is_torus()) {
        const ConformalGrid grid = make_grid(surface, nt, ns);
        const OperatorPair op = assemble(grid);
        const EigenPairs p = solve_past_one(op, true, nullptr, 0);
        guard_band(p.values, eps);
        res.eigenvalues.push_back(0.0);  // constant mode, exact for the stencil
        res.parity.push_back('n');
        for (double l : p.values) {
            res.eigenvalues.push_back(l);
            res.parity.push_back('n');
        }
        res.ind0 = count_below(p.values, 1.0 - eps);
        if (surface.expects.genus < 0)
            throw PreconditionError("index_report: orientable surface needs a declared genus");
        res.index = 2 * surface.expects.genus + 2 * res.ind0;
        res.ind1 = res.ind0;  // star operator pairs the sectors on orientable surfaces
        res.lambda1 = p.values.front();
        double m = 1e9;
        for (double l : p.values) m = std::min(m, std::abs(l - (1.0 - eps)));
        res.margin = m;
        return res;
    }

    // Klein bottle: function spectrum on the native grid (equals the even
    // sector of the double cover), odd sector for Ind1.
    const ConformalGrid kgrid = make_grid(surface, nt, ns);
    const OperatorPair kop = assemble(kgrid);
    const EigenPairs even = solve_past_one(kop, true, nullptr, 0);
    guard_band(even.values, eps);

    const ConformalGrid cover = make_double_cover_grid(surface, nt, ns);
    const OperatorPair cop = assemble(cover);
    const std::vector<int> tau = deck_involution(cover);
    const EigenPairs odd = solve_past_one(cop, false, &tau, -1);
    guard_band(odd.values, eps);

    res.eigenvalues.push_back(0.0);
    res.parity.push_back('+');
    std::vector<std::pair<double, char>> merged;
    for (double l : even.values) merged.push_back({l, '+'});
    for (double l : odd.values) merged.push_back({l, '-'});
    std::sort(merged.begin(), merged.end());
    for (auto& [l, c] : merged) {
        res.eigenvalues.push_back(l);
        res.parity.push_back(c);
    }
    res.ind0 = count_below(even.values, 1.0 - eps);
    res.ind1 = count_below(odd.values, 1.0 - eps);
    res.index = res.betti1 + res.ind0 + res.ind1;
    res.lambda1 = even.values.front();
    double m = 1e9;
    for (auto& [l, c] : merged) m = std::min(m, std::abs(l - (1.0 - eps)));
    res.margin = m;
    return res;
}

void to_dense(const OperatorPair& op, std::vector<double>& A_rowmajor,
              std::vector<double>& M_diag) {
    const int n = op.size();
    A_rowmajor.assign(static_cast<size_t>(n) * n, 0.0);
    M_diag = op.mass;
    std::vector<double> e(n, 0.0), col(n);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        op.apply(e.data(), col.data());
        for (int i = 0; i < n; ++i) A_rowmajor[static_cast<size_t>(i) * n + j] = col[i];
        e[j] = 0.0;
    }
}

} // namespace s2xs2
