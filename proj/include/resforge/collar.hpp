#pragma once
// Jets of the collar metric (1/h(x_n)) g_boundary + dx_n^2 at a boundary base
// point x0, in the orthonormal frame sqrt(h) e_1, ..., sqrt(h) e_{n-1}, dx_n.
// h(0) = 1; the single jet h'(0) enters as the indeterminate h1.
//
// Everything the symbol calculus consumes lives here: the x_n-derivative of
// |xi|^2 and of frame covectors, connection forms, Christoffel contractions,
// spin-connection contractions, and sigma_0 of the unperturbed Dirac operator.

#include "resforge/clifford.hpp"

#include <map>

namespace rf {

class JetStore {
public:
    // Only n = 4 is supported by the boundary pipeline.
    static const JetStore& instance();

    int dim() const { return 4; }

    // d/dx_j |xi|^2 at x0: zero for j < n, h1 * |xi'|^2 for j = n.
    Scalar d_xj_norm_sq_factor(int j) const;  // the scalar in front of |xi'|^2

    // d/dx_n of a tangential frame covector: (h1/2) c(e_j).
    Scalar frame_jet_factor() const { return half_h1_; }

    // connection form value omega_{s,t}(e_i)(x0) (1-based indices)
    Scalar omega(int i, int s, int t) const;

    // Gamma^k(x0) = g^{ij} Gamma^k_{ij}(x0)
    Scalar christoffel_contraction(int k) const;

    // spin-connection contraction sigma^k(x0) = -1/4 sum omega_{s,t}(e_k) c(e_s) c(e_t)
    CliffordElement spin_contraction(int k) const;

    // sigma_0 of the unperturbed Dirac operator at x0
    const CliffordElement& sigma0_dirac() const { return sigma0_d_; }

    // L(V)(x0) = 1/4 sum <nabla_V e_i, e_j> c(e_i) c(e_j) for V with components comp(j)
    CliffordElement connection_term(const std::vector<Scalar>& components) const;

private:
    JetStore();
    Scalar half_h1_;
    std::map<std::tuple<int, int, int>, Scalar> omega_;
    std::map<int, Scalar> gamma_;
    CliffordElement sigma0_d_{4};
};

// d/dx_n at x0 of a frame-blade element: each tangential covector factor
// contributes (h1/2). Throws if coefficients already depend on h1 (second
// jets are outside the model).
CliffordElement clifford_dxn(const CliffordElement& e);
CliffordOp clifford_dxn(const CliffordOp& e);

}  // namespace rf
