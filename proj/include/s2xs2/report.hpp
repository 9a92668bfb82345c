#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s2xs2/catalog.hpp"

namespace s2xs2 {

struct InvariantCheck {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ScalarSummary {
    std::optional<double> area, degree;
    double C_min = 0.0, C_max = 0.0, C2_max = 0.0;
    double K_min = 0.0, K_max = 0.0;
    double H_max = 0.0;
};

struct SurfaceReport {
    std::string surface;
    std::string kind;  // "surface" or "s3-immersion"
    int nt = 0, ns = 0;
    std::vector<InvariantCheck> invariants;
    ScalarSummary scalars;
    std::string jet_source;
    double fd_first = 0.0, fd_second = 0.0;
    double excluded_margin = 0.0;
    std::string timestamp;
    std::string version;
    bool all_pass = false;

    std::string to_json() const;  // schema 1, lossless doubles
};

/// Run every analyzer applicable to the declared properties of the surface.
SurfaceReport analyze_surface(const SurfaceSpec& surface, int nt, int ns,
                              double tol_scale = 1.0);

/// Checks for S^3 immersion catalog entries (unit norm, conformality,
/// minimality inside the 3-sphere).
SurfaceReport analyze_immersion(const R4Immersion& psi, int nt, int ns,
                                double tol_scale = 1.0);

SurfaceReport analyze_by_id(const std::string& id, int nt, int ns, double tol_scale = 1.0);

/// Grid column export: one row per node, s-major order, 17 significant
/// digits. Known fields: C, K, u, H, sigma2, position.
std::string export_fields_csv(const SurfaceSpec& surface, const std::vector<std::string>& fields,
                              int nt, int ns);
std::string export_fields_json(const SurfaceSpec& surface, const std::vector<std::string>& fields,
                               int nt, int ns);

/// One field as a flat grid (s-major), for the python bindings.
std::vector<double> export_field_values(const SurfaceSpec& surface, const std::string& field,
                                        int nt, int ns);

std::string iso_timestamp();

} // namespace s2xs2
