#pragma once

#include <vector>

#include "s2xs2/errors.hpp"

namespace s2xs2 {

/// Grid samples of a candidate sinh-Gordon solution v on a rectangle with
/// spacing (dt, ds). An axis of length 1 carries no derivative (reduced
/// fields). Optional analytic second-derivative grids replace the central
/// differences where supplied.
struct SGField {
    int nt = 0, ns = 1;
    double dt = 0.0, ds = 0.0;
    bool periodic = false;  // wrap stencils; otherwise interior nodes only
    std::vector<double> v;
    std::vector<double> vtt, vss;  // optional, same layout as v

    double at(int i, int j) const { return v[i + nt * j]; }
    bool analytic_second() const { return !vtt.empty(); }
};

/// Max over admissible nodes of |(v_tt + v_ss)/4 + sinh(2v)/2|
/// (z = t + i s turns the mixed derivative into the flat Laplacian / 4).
double sg_residual(const SGField& f);

/// Trajectory of the reduced equation v'' = -2 sinh 2v from (v0, v'0),
/// classical fourth-order Runge-Kutta with step h over [0, T].
struct ReducedSolution {
    double h = 0.0;
    std::vector<double> v, w;  // samples of v and v' at t_k = k h

    SGField as_field() const;
};
ReducedSolution integrate_reduced(double v0, double dv0, double T, double h);

/// Conserved energy of the reduced equation: w^2/2 + cosh(2v).
double reduced_energy(double v, double w);

/// Lagrangian data recovered from a sinh-Gordon field:
///   e^{2u} = 4 cosh 2v,  2C = tanh 2v,
/// with the residuals of the two compatibility equations
///   2 u_{z zbar} + e^{2u} C^2 - e^{4u} |C_z|^2 / 4 = 0,
///   (1 - 4 C^2) - 16 e^{-4u} = 0.
struct Reconstruction {
    std::vector<double> u, C;  // same layout as the input field
    double compat_residual = 0.0;
};
Reconstruction reconstruct(const SGField& f);

/// Samples of the explicit one-variable solution v(t) = log(sqrt3 dn(sqrt3 t))
/// with modulus 2 sqrt2 / 3, over one period with analytic second derivatives.
SGField lawson_solution_line(int n);

} // namespace s2xs2
