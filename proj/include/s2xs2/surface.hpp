#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "s2xs2/product_sphere.hpp"

namespace s2xs2 {

// ---------------------------------------------------------------------------
// Parameter domains

/// Open chart: the rectangle is the canonical sweep region; evaluators stay
/// valid within `pad` beyond it, so stencils may overhang.
struct PlaneGluing {
    double pad = 0.0;
};

struct TorusGluing {
    double period_t = 0.0, period_s = 0.0;
};

/// Klein-bottle gluing. The deck group is generated by
///   (t,s) -> (t + period_t, s)   and the glide   (t,s) -> (center - t, s + period_s/2).
/// Applying the glide twice gives the s-translation by period_s, so the
/// rectangle [0,period_t] x [0,period_s/2] is a fundamental domain and the
/// orientable double cover is the torus of periods (period_t, period_s).
struct KleinGluing {
    double period_t = 0.0;
    double center = 0.0;
    double period_s = 0.0;
};

struct ParamDomain {
    double t0 = 0.0, t1 = 1.0, s0 = 0.0, s1 = 1.0;
    std::variant<PlaneGluing, TorusGluing, KleinGluing> gluing = PlaneGluing{};
    bool conformal = false;

    bool is_torus() const { return std::holds_alternative<TorusGluing>(gluing); }
    bool is_klein() const { return std::holds_alternative<KleinGluing>(gluing); }
    bool is_plane() const { return std::holds_alternative<PlaneGluing>(gluing); }
    double width() const { return t1 - t0; }
    double height() const { return s1 - s0; }

    /// True when (t,s) is inside the rectangle, the evaluation pad, or the
    /// domain is periodic (evaluators of glued charts are entire).
    bool admits(double t, double s) const {
        if (!is_plane()) return true;
        const double pad = std::get<PlaneGluing>(gluing).pad;
        return t >= t0 - pad && t <= t1 + pad && s >= s0 - pad && s <= s1 + pad;
    }
};

// ---------------------------------------------------------------------------
// Jets

enum class JetSource { analytic, finite_difference };

/// Position plus first and second parameter derivatives of a surface map
/// into R^3 x R^3 at one parameter point. First partials are tangent to the
/// sphere factors; second partials are the raw derivatives in R^6.
struct ImmersionJet {
    ProductPoint P;
    ProductTangent d_t, d_s;
    Vec6 d_tt, d_ts, d_ss;
    JetSource source = JetSource::analytic;

    double tangency_residual() const {
        return std::max(d_t.tangency_residual(P), d_s.tangency_residual(P));
    }
};

// ---------------------------------------------------------------------------
// Surfaces

struct SurfaceProperties {
    bool lagrangian = false;
    bool minimal = false;
    bool conformal = false;
    bool orientable = true;
    bool parallel_mean_curvature = false;
    bool totally_geodesic = false;
    std::optional<double> constant_C;
    std::optional<double> constant_K;
    int genus = -1;           // orientable surfaces; -1 = not compact / unknown
    int betti1 = -1;          // first Betti number, -1 = unknown
    bool compact = false;
};

struct Chart {
    std::string name;
    ParamDomain domain;
    std::function<ProductPoint(double, double)> eval;
    std::function<ImmersionJet(double, double)> analytic_jet;  // may be empty

    bool has_analytic_jet() const { return static_cast<bool>(analytic_jet); }
};

/// A catalog entry: evaluators over one or more charts plus the declared
/// expected properties. `charts` drive residual sweeps; `quad_charts`, when
/// non-empty, form a disjoint quadrature atlas for area and degree (sphere
/// surfaces carry two polar charts split at the equator).
struct SurfaceSpec {
    std::string name;
    std::vector<Chart> charts;
    std::vector<Chart> quad_charts;
    SurfaceProperties expects;

    const std::vector<Chart>& quadrature_atlas() const {
        return quad_charts.empty() ? charts : quad_charts;
    }
};

} // namespace s2xs2
