#include <doctest.h>

#include "resforge/sphere.hpp"
#include "resforge/oracle.hpp"

#include <random>

using namespace rf;

namespace {
XiPoly mono(int a1, int a2, int a3) {
    XiPoly p;
    p.add(XiMono{}.times(1, a1).times(2, a2).times(3, a3),
          CliffordOp(CliffordElement::scalar(Scalar(1))));
    return p;
}
}  // namespace

TEST_CASE("odd moments vanish, basic even moments") {
    CHECK(integrate_sphere_scalar(mono(1, 1, 0)).is_zero());
    CHECK(integrate_sphere_scalar(mono(3, 0, 1)).is_zero());
    for (int j = 1; j <= 3; ++j) {
        XiPoly p;
        p.add(XiMono{}.times(j, 2), CliffordOp(CliffordElement::scalar(Scalar(1))));
        CHECK(integrate_sphere_scalar(p) == sym::omega3().scaled(GaussianRational(Rational(1, 3))));
    }
    CHECK(integrate_sphere_scalar(mono(2, 2, 0)) ==
          sym::omega3().scaled(GaussianRational(Rational(1, 15))));
    CHECK(integrate_sphere_scalar(mono(4, 0, 0)) ==
          sym::omega3().scaled(GaussianRational(Rational(1, 5))));
}

TEST_CASE("xi_n in the integrand is rejected") {
    XiPoly p;
    p.add(XiMono{}.times(4), CliffordOp(CliffordElement::scalar(Scalar(1))));
    CHECK_THROWS_AS(integrate_sphere(p), std::invalid_argument);
}

TEST_CASE("linearity and index symmetry") {
    CHECK(integrate_sphere_scalar(mono(2, 4, 0)) == integrate_sphere_scalar(mono(0, 2, 4)));
    CHECK(integrate_sphere_scalar(mono(2, 0, 2)) == integrate_sphere_scalar(mono(2, 2, 0)));
    XiPoly sum = mono(2, 0, 0) + mono(0, 4, 2);
    CHECK(integrate_sphere_scalar(sum) ==
          integrate_sphere_scalar(mono(2, 0, 0)) + integrate_sphere_scalar(mono(0, 4, 2)));
}

TEST_CASE("multiplying by |xi'|^2 leaves the moment unchanged") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> exp(0, 2);
    for (int q = 0; q < 20; ++q) {
        XiPoly p = mono(2 * exp(rng), 2 * exp(rng), 2 * exp(rng));
        CHECK(integrate_sphere_scalar(XiPoly::norm_sq_prime() * p) == integrate_sphere_scalar(p));
    }
    // and the rewrite modulo the sphere relation agrees
    XiPoly reduced = reduce_mod_sphere(XiPoly::norm_sq_prime() * mono(2, 0, 0));
    CHECK(integrate_sphere_scalar(reduced) == integrate_sphere_scalar(mono(2, 0, 0)));
}

TEST_CASE("integrands odd in some index vanish identically") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<int> exp(0, 2);
    std::uniform_int_distribution<int> pick(1, 3);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int q = 0; q < 30; ++q) {
        int odd_index = pick(rng);
        XiPoly p;
        for (int t = 0; t < 3; ++t) {
            XiMono m;
            for (int j = 1; j <= 3; ++j) m = m.times(j, 2 * exp(rng));
            m = m.times(odd_index);  // force odd degree in one index
            p.add(m, CliffordOp(CliffordElement::scalar(Scalar(coeff(rng)))));
        }
        CHECK(integrate_sphere(p).is_zero());
    }
}

TEST_CASE("monte carlo agreement at three sigma") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> exp(0, 2);
    auto& tbl = SymbolTable::global();
    Bindings b{{tbl.intern("Omega3"), {4 * 3.14159265358979312, 0.0}}};
    for (int q = 0; q < 8; ++q) {
        XiPoly p = mono(2 * exp(rng), 2 * exp(rng), 2 * exp(rng));
        double exact = integrate_sphere_scalar(p).substitute(b).real();
        McEstimate est = mc_sphere(p, 200000, 1000 + q);
        CHECK(std::abs(est.mean - exact) <= 3 * est.std_error + 1e-12);
    }
}
