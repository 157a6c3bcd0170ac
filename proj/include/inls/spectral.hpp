#pragma once

#include <span>

#include "inls/field.hpp"

namespace inls {

/// Sine coefficients normalized so v_j = sum_m a_m sin(k_m r_j).
struct SineModes {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<Complex> a;
};

SineModes analyze(const ComplexRadialField& field);
ComplexRadialField synthesize(const SineModes& modes);

/// v-representation of the 3D Laplacian: second spectral derivative of v.
ComplexRadialField laplacian(const ComplexRadialField& field);

/// U(t): multiply mode m by exp(-i k_m^2 t). Exact solver of the linear
/// equation on the grid, unitary for any real t.
ComplexRadialField free_propagate(const ComplexRadialField& field, double t);
void free_propagate_modes(SineModes& modes, double t);

/// 4*pi * sum_j f_j r_j^2 dr, the radial reduction of the volume integral
/// with f extended by zero at both endpoints.
double integrate(const RadialGrid& grid, std::span<const double> f);

double mass(const ComplexRadialField& field);
double grad_sq(const ComplexRadialField& field);      // -Re<u, laplacian u>
double potential_term(const ComplexRadialField& field);  // || r^{-b} |u|^4 ||_L1
double h1_norm_sq(const ComplexRadialField& field);   // mass + grad_sq

double mass_of_modes(const SineModes& modes);
double grad_sq_of_modes(const SineModes& modes);

/// du/dr at the nodes, via the cosine series of the sine coefficients:
/// du/dr = v'/r - v/r^2.
std::vector<Complex> radial_derivative_u(const ComplexRadialField& field);

/// Mass fraction carried by the outermost 10% of the grid.
double boundary_mass_fraction(const ComplexRadialField& field);

double sup_u(const ComplexRadialField& field);

/// L^r norm of u over R^3 by radial quadrature, r >= 1.
double lp_norm_u(const ComplexRadialField& field, double p);

}  // namespace inls
