#pragma once

#include <vector>

#include "s2xs2/surface.hpp"

namespace s2xs2 {

/// Uniform nodes on the fundamental rectangle of a torus or Klein-bottle
/// chart, with the conformal weight e^{2u} per node. Klein grids require
/// even node counts so the glide maps nodes to nodes.
struct ConformalGrid {
    enum class Gluing { torus, klein };
    int nt = 0, ns = 0;
    double dt = 0.0, ds = 0.0;
    double t0 = 0.0, s0 = 0.0;
    Gluing gluing = Gluing::torus;
    int reflect_index = 0;  // klein: crossing the s-seam sends i -> (reflect_index - i) mod nt
    std::vector<double> weight;

    int size() const { return nt * ns; }
    int node(int i, int j) const { return i + nt * j; }
};

/// Grid over the surface's own fundamental domain (torus or Klein gluing).
ConformalGrid make_grid(const SurfaceSpec& surface, int nt, int ns);

/// Torus grid over the orientable double cover of a Klein-bottle surface
/// (2 * ns_half rows); the deck involution is node-aligned by construction.
ConformalGrid make_double_cover_grid(const SurfaceSpec& surface, int nt, int ns_half);

/// Node permutation of the deck involution on a double-cover grid.
std::vector<int> deck_involution(const ConformalGrid& cover);

/// Discrete pair for the generalized problem A f = lambda M f:
/// A is the 5-point flat Laplacian with gluing-aware wrapping (times dt ds),
/// M the diagonal weight e^{2u} dt ds. Symmetric positive semi-definite.
struct OperatorPair {
    const ConformalGrid* grid = nullptr;
    double wt = 0.0, ws = 0.0;      // ds/dt and dt/ds stencil weights
    std::vector<int> left, right, up, down;
    std::vector<double> mass;

    int size() const { return static_cast<int>(mass.size()); }
    void apply(const double* x, double* y) const;
};

OperatorPair assemble(const ConformalGrid& grid);

/// Rayleigh quotient (f^T A f) / (f^T M f); the numerator is the flat
/// Dirichlet energy (conformally invariant), the denominator the weighted mass.
double rayleigh(const OperatorPair& op, const std::vector<double>& f);

struct LanczosOptions {
    int k = 8;
    double tol = 1e-9;
    int max_steps = 260;
    unsigned seed = 0x5EED5EEDu;  // documented fixed seed: deterministic runs
};

struct EigenPairs {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // matching columns
    std::vector<double> residuals;             // ||A f - lambda M f|| / ||M f||
};

/// k smallest generalized eigenvalues by Lanczos on A^{-1} M in the M-inner
/// product (inner solves by conjugate gradients, full reorthogonalization,
/// fixed-seed start vector). `deflate_constants` removes the zero mode of
/// glued grids; `tau` with parity +-1 restricts to one involution sector.
EigenPairs lowest_eigenpairs(const OperatorPair& op, const LanczosOptions& opt,
                             bool deflate_constants, const std::vector<int>* tau = nullptr,
                             int parity = 0);

/// Eigenvalues and eigenvectors with parity labels plus the derived counts.
struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending, including the zero mode where present
    std::vector<char> parity;         // '+', '-', or 'n'
    double lambda1 = 0.0;             // first positive eigenvalue of the function spectrum
    int ind0 = 0, ind1 = 0, betti1 = 0, index = 0;
    double margin = 0.0;              // gap between computed eigenvalues and the guard band
    int nt = 0, ns = 0;
};

/// Index data of a compact minimal Lagrangian surface on a torus or Klein
/// domain: Ind0 counts function eigenvalues in (0, 1 - eps); orientable
/// surfaces use Ind = 2 g + 2 Ind0, Klein bottles Ind = beta1 + Ind0 + Ind1
/// with Ind1 counted in the odd sector of the double cover. An eigenvalue
/// inside (1 - 2 eps, 1 - eps) raises AmbiguityError: refine the grid.
SpectralResult index_report(const SurfaceSpec& surface, int nt, int ns,
                            double eps = 0.02, const LanczosOptions& opt = {});

/// Dense materialization for small-scale cross-checks.
void to_dense(const OperatorPair& op, std::vector<double>& A_rowmajor, std::vector<double>& M_diag);

} // namespace s2xs2
