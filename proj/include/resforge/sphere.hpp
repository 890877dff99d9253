#pragma once
// Exact integration of xi' polynomials over the unit sphere |xi'| = 1 in R^3,
// as rational multiples of Omega3 (kept symbolic).

#include "resforge/xipoly.hpp"

namespace rf {

// moment of the monomial xi_1^a1 xi_2^a2 xi_3^a3; zero when any exponent is odd
Rational sphere_moment(int a1, int a2, int a3);

// integrate a tangential polynomial (throws std::invalid_argument on xi_n);
// result is Omega3-linear by construction
Scalar integrate_sphere_scalar(const XiPoly& p);

// same, keeping CliffordOp values
CliffordOp integrate_sphere(const XiPoly& p);

// rewrite modulo the sphere relation |xi'|^2 = 1 (used for canonical display
// of restricted symbols; integration itself does not need it)
XiPoly reduce_mod_sphere(const XiPoly& p);

}  // namespace rf
