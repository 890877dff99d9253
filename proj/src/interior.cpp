#include "resforge/interior.hpp"

#include <functional>
#include <stdexcept>

namespace rf {

namespace {

CliffordElement vector_of(int n, const std::function<Scalar(int)>& comp) {
    CliffordElement v(n);
    for (int j = 1; j <= n; ++j) v = v + CliffordElement::generator(j, n).scaled(comp(j));
    return v;
}

// nabla_V c(Psi) as a formal Clifford element, per perturbation grade
CliffordElement psi_derivative(const PsiSpec& psi, char dir, int n) {
    if (std::holds_alternative<PsiScalarField>(psi))
        return CliffordElement::scalar(Scalar::variable(std::string("D") + dir + "f"), n);
    auto dU = vector_of(n, [&](int j) { return sym::nablaU(dir, j); });
    if (std::holds_alternative<PsiOneField>(psi)) return dU;
    auto U = vector_of(n, [](int j) { return sym::U(j); });
    auto V = vector_of(n, [](int j) { return sym::V(j); });
    auto dV = vector_of(n, [&](int j) { return sym::nablaV(dir, j); });
    if (std::holds_alternative<PsiTwoField>(psi)) return dU * V + U * dV;
    auto W = vector_of(n, [](int j) { return sym::W(j); });
    auto dW = vector_of(n, [&](int j) { return sym::nablaW(dir, j); });
    if (std::holds_alternative<PsiThreeField>(psi)) return dU * V * W + U * dV * W + U * V * dW;
    throw std::invalid_argument("covariant derivative of a generic perturbation");
}

}  // namespace

Scalar trace_E(const PsiSpec& psi, int n) {
    if (psi_is_generic(psi))
        throw std::invalid_argument("trace_E needs a concrete perturbation");
    if (n % 2 || n < 2 || n > 8) throw std::invalid_argument("even dimension 2..8 required");
    CliffordElement P = psi_instantiate(psi, n);
    CliffordElement acc = CliffordElement::scalar(sym::scal().scaled(GaussianRational(Rational(1, 4))), n);
    for (int j = 1; j <= n; ++j) {
        CliffordElement ej = CliffordElement::generator(j, n);
        acc = acc + (P * ej * P * ej).scaled(Scalar(GaussianRational(Rational(1, 2))));
    }
    acc = acc + (P * P).scaled(Scalar(GaussianRational(Rational(2 - n, 2))));
    return spinor_trace(acc);
}

Scalar f_trace_bracket(const PsiSpec& psi, int n) {
    if (psi_is_generic(psi))
        throw std::invalid_argument("F(X,Y) needs a concrete perturbation");
    CliffordElement cX = vector_of(n, [](int j) { return sym::X(j); });
    CliffordElement cY = vector_of(n, [](int j) { return sym::Y(j); });
    CliffordElement dY = psi_derivative(psi, 'Y', n);
    CliffordElement dX = psi_derivative(psi, 'X', n);
    return spinor_trace(cX * dY + dY * cX - cY * dX - dX * cY);
}

Scalar f_trace(const PsiSpec& psi, int n) {
    return f_trace_bracket(psi, n).scaled(GaussianRational(Rational(1, 2)));
}

Scalar InteriorDensity::total() const {
    return eg_coefficient * sym::EG() + f_term + traceE_term * sym::gXY();
}

InteriorDensity assemble_interior(const PsiSpec& psi, int n) {
    if (n != 4)
        throw std::invalid_argument("interior assembly is wired for dimension 4 (upsilon3)");
    InteriorDensity d;
    std::int64_t rank = 1ll << (n / 2);
    d.eg_coefficient = sym::upsilon3().scaled(GaussianRational(Rational(rank, 6)));
    if (psi_is_generic(psi)) {
        d.f_term = sym::upsilon3().scaled(GaussianRational(Rational(1, 4))) *
                   Scalar::variable("F_bracket");
        d.traceE_term = Scalar::variable("traceE").scaled(GaussianRational(Rational(1, 2)));
    } else {
        d.f_term = sym::upsilon3().scaled(GaussianRational(Rational(1, 4))) * f_trace_bracket(psi, n);
        d.traceE_term = trace_E(psi, n).scaled(GaussianRational(Rational(1, 2)));
    }
    return d;
}

}  // namespace rf
