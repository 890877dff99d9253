#include "resforge/sphere.hpp"

#include <stdexcept>

namespace rf {

Rational sphere_moment(int a1, int a2, int a3) {
    if (a1 % 2 || a2 % 2 || a3 % 2) return Rational(0);
    std::int64_t num = 1;
    for (int a : {a1, a2, a3})
        for (int v = a - 1; v > 0; v -= 2) num *= v;
    std::int64_t den = 1;
    int d = (a1 + a2 + a3) / 2;
    for (int k = 0; k < d; ++k) den *= 3 + 2 * k;
    return Rational(num, den);
}

CliffordOp integrate_sphere(const XiPoly& p) {
    CliffordOp total;
    for (auto& [m, c] : p.terms()) {
        if (m.e[kDim - 1])
            throw std::invalid_argument("integrate_sphere: xi_n present in integrand");
        Rational mom = sphere_moment(m.e[0], m.e[1], m.e[2]);
        if (mom.is_zero()) continue;
        total = total + c.scaled(sym::omega3().scaled(GaussianRational(mom)));
    }
    return total;
}

Scalar integrate_sphere_scalar(const XiPoly& p) {
    CliffordOp r = integrate_sphere(p);
    if (r.has_psi() || !(r.plain() - CliffordElement::scalar(r.plain().coeff(0), r.plain().dim())).is_zero())
        throw std::invalid_argument("integrate_sphere_scalar: non-scalar integrand");
    return r.plain().coeff(0);
}

XiPoly reduce_mod_sphere(const XiPoly& p) {
    // eliminate xi_3^2 via xi_3^2 = 1 - xi_1^2 - xi_2^2, repeatedly
    XiPoly cur = p;
    for (;;) {
        bool changed = false;
        XiPoly next;
        for (auto& [m, c] : cur.terms()) {
            if (m.e[2] >= 2) {
                XiMono base = m;
                base.e[2] = static_cast<std::uint8_t>(base.e[2] - 2);
                XiPoly rest;
                rest.add(base, c);
                XiPoly sub;
                sub.add(XiMono{}, CliffordOp(CliffordElement::scalar(Scalar(1))));
                sub.add(XiMono{}.times(1, 2), CliffordOp(CliffordElement::scalar(Scalar(-1))));
                sub.add(XiMono{}.times(2, 2), CliffordOp(CliffordElement::scalar(Scalar(-1))));
                next = next + rest * sub;
                changed = true;
            } else {
                next.add(m, c);
            }
        }
        cur = next;
        if (!changed) return cur;
    }
}

}  // namespace rf
