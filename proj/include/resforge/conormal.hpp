#pragma once
// Calculus of Clifford-valued rational functions of the conormal variable
// xi_n with poles only at +-i: partial fractions, the pi^+ projection,
// derivatives, and contour/line integrals by exact residues.
//
// An element is N(xi_n) / ((xi_n - i)^a (xi_n + i)^b) where the coefficients
// of N are tangential XiPolys (no xi_n) with CliffordOp values.

#include "resforge/xipoly.hpp"

#include <map>

namespace rf {

class BoundaryRational {
public:
    BoundaryRational() = default;
    BoundaryRational(std::map<int, XiPoly> num, int a, int b);

    static BoundaryRational zero() { return {}; }
    // p / (1 + xi_n^2)^c with p = sum_k coeff_k xi_n^k (tangential coeffs)
    static BoundaryRational over_norm_power(std::map<int, XiPoly> num, int c);

    bool is_zero() const { return num_.empty(); }
    int pole_order_plus() const { return a_; }   // order at xi_n = +i
    int pole_order_minus() const { return b_; }  // order at xi_n = -i
    const std::map<int, XiPoly>& num() const { return num_; }
    int num_degree() const { return num_.empty() ? -1 : num_.rbegin()->first; }

    friend BoundaryRational operator+(const BoundaryRational& x, const BoundaryRational& y);
    friend BoundaryRational operator-(const BoundaryRational& x, const BoundaryRational& y);
    friend BoundaryRational operator*(const BoundaryRational& x, const BoundaryRational& y);
    BoundaryRational operator-() const;
    BoundaryRational scaled(const Scalar& c) const;
    friend bool operator==(const BoundaryRational& x, const BoundaryRational& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.num_ == y.num_;
    }

    struct PartialFractions {
        std::map<int, XiPoly> polynomial;   // xi_n power -> coeff
        std::map<int, XiPoly> at_plus_i;    // k -> coeff of (xi_n - i)^{-k}
        std::map<int, XiPoly> at_minus_i;   // k -> coeff of (xi_n + i)^{-k}
    };
    PartialFractions partial_fractions() const;
    static BoundaryRational recombine(const PartialFractions& pf);

    // retain the (xi_n - i)-pole part, drop the (xi_n + i) part and polynomials
    BoundaryRational pi_plus() const;
    // complementary projection (the dropped part, polynomials included)
    BoundaryRational pi_minus() const;

    BoundaryRational ddxi_n(int order = 1) const;

    // closed contour around xi_n = i: 2*pi*i * residue, exact
    XiPoly contour_integral_upper() const;
    // integral over the real line closed in the upper half-plane;
    // throws std::domain_error unless deg(num) <= a + b - 2
    XiPoly line_integral() const;

    // CliffordOp coefficients -> spinor-trace scalars (times identity)
    BoundaryRational traced() const;

    std::string str() const;

private:
    void reduce();
    std::map<int, XiPoly> laurent_at(int sign) const;  // sign=+1: pole i, -1: pole -i
    std::map<int, XiPoly> num_;
    int a_ = 0;
    int b_ = 0;
};

}  // namespace rf
