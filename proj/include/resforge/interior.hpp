#pragma once
// The interior density: Einstein-tensor block (opaque), the connection-curvature
// trace F(X,Y), and trace(E), assembled with the dimensional constants.

#include "resforge/clifford.hpp"

namespace rf {

struct InteriorDensity {
    Scalar eg_coefficient;  // multiplies the opaque EG(X,Y)
    Scalar f_term;          // (upsilon_{n-1}/4) * trace bracket, expanded
    Scalar traceE_term;     // (1/2) * trace(E); multiplies g(X,Y)

    Scalar total() const;
};

// trace[1/4 s + sum_j 1/2 c(Psi) c(e_j) c(Psi) c(e_j) + (1 - n/2) c(Psi)^2];
// requires a concrete perturbation, works in any even dimension.
Scalar trace_E(const PsiSpec& psi, int n = 4);

// F(X,Y) = 1/2 trace[c(X) nabla_Y(c(Psi)) + nabla_Y(c(Psi)) c(X)]
//        - 1/2 trace[c(Y) nabla_X(c(Psi)) + nabla_X(c(Psi)) c(Y)]
// with the covariant derivatives supplied as formal component symbols.
Scalar f_trace(const PsiSpec& psi, int n = 4);

// the full trace bracket (equals 2 F(X,Y))
Scalar f_trace_bracket(const PsiSpec& psi, int n = 4);

InteriorDensity assemble_interior(const PsiSpec& psi, int n = 4);

}  // namespace rf
