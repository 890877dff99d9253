#pragma once
// Floating-point verification of the symbolic engine: a fixed 4x4 matrix model
// of the Clifford relations, contour-based pi^+ and derivatives, line
// quadrature, sphere quadrature and Monte-Carlo moments.

#include "resforge/boundary.hpp"

#include <array>
#include <complex>
#include <functional>
#include <random>

namespace rf {

using Cx = std::complex<double>;
using Mat4 = std::array<std::array<Cx, 4>, 4>;

Mat4 mat_zero();
Mat4 mat_identity();
Mat4 mat_mul(const Mat4& a, const Mat4& b);
Mat4 mat_add(const Mat4& a, const Mat4& b);
Mat4 mat_scale(const Mat4& a, Cx c);
Cx mat_trace(const Mat4& a);

// anti-Hermitian generators with e_i e_j + e_j e_i = -2 delta_ij; the relations
// are asserted once at startup
const std::array<Mat4, 4>& gamma_generators();
Mat4 gamma_blade(BladeMask mask);

using Bindings = std::map<VarId, Cx>;

// matrix image of a Clifford element under bound coefficients
Mat4 gamma_matrix(const CliffordElement& e, const Bindings& b);
// same with a concrete matrix standing in for the generic Psi factor
Mat4 gamma_matrix(const CliffordOp& e, const Bindings& b, const Mat4& psi);

// trace of the image (the oracle for spinor_trace)
Cx gamma_trace(const CliffordElement& e, const Bindings& b);

// matrix value of a conormal rational at xi_n = t (complex), tangential point s
Mat4 eval_boundary_rational(const BoundaryRational& f, const Bindings& b, const Mat4& psi,
                            const std::array<double, 3>& s, Cx t);

// adaptive line quadrature of a scalar function over the real line
// (tan substitution, panel doubling until |delta| <= tol)
Cx quad_line_fn(const std::function<Cx(double)>& f, double tol = 1e-10);

// quadrature oracle for a traced scalar conormal rational
Cx quad_line(const BoundaryRational& f, const Bindings& b, const Mat4& psi,
             const std::array<double, 3>& s, double tol = 1e-10);

// product Gauss grid on S^2, exact for polynomial integrands of degree <= 7
double sphere_quad(const std::function<double(const std::array<double, 3>&)>& f);
Cx sphere_quad_cx(const std::function<Cx(const std::array<double, 3>&)>& f);

struct McEstimate {
    double mean = 0;
    double std_error = 0;
};
McEstimate mc_sphere(const XiPoly& monomial, std::size_t samples, std::uint64_t seed);

struct OracleReport {
    std::string quantity;
    Cx symbolic{};
    Cx numeric{};
    double rel_error = 0;
    double tolerance = 0;
    bool pass = false;
    std::uint64_t seed = 0;
};

// random rational bindings for all engine indeterminates (excluding pi/Omega3,
// which are bound to their numeric values)
Bindings random_bindings(std::mt19937_64& rng);
// a random concrete Psi matrix together with the implied trace-placeholder bindings
Mat4 random_psi(std::mt19937_64& rng, Bindings& b);

// numeric evaluation of one boundary case by contour pi^+, Cauchy derivatives,
// line and sphere quadrature; compares against the symbolic density
OracleReport oracle_case_check(Theorem theorem, const CaseSpec& spec,
                               const DensityExpression& symbolic_density, std::uint64_t seed,
                               double tolerance = 1e-6);

}  // namespace rf
