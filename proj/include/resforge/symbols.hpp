#pragma once
// Graded pseudodifferential symbols at the boundary base point: homogeneous
// terms N(xi)/|xi|^{2c}, finite expansions, the Leibniz composition engine,
// asymptotic inversion, and restriction to |xi'| = 1.

#include "resforge/collar.hpp"
#include "resforge/conormal.hpp"
#include "resforge/xipoly.hpp"

#include <map>
#include <memory>
#include <string>

namespace rf {

// One homogeneous symbol term N(xi)/|xi|^{2c} together with its x_n-jet at x0.
// The jet companion is propagated through sums, products and xi-derivatives by
// the Leibniz rule; terms whose jet would require unavailable second-order
// metric data carry an unknown jet and refuse d_xn().
struct SymbolTerm {
    int order = 0;
    XiPoly num;
    int norm_power = 0;  // denominator |xi|^{2 norm_power}

    SymbolTerm() = default;
    // Constructs with the mechanical frame/metric jet: valid when the
    // numerator is built from frame covector blades, x-frozen coefficients and
    // explicit denominator powers only.
    SymbolTerm(int order, XiPoly num, int norm_power);
    // value only, jet left unknown
    static SymbolTerm value(int order, XiPoly num, int norm_power);

    bool is_zero() const { return num.is_zero(); }
    static SymbolTerm zero(int order) { return SymbolTerm(order, XiPoly{}, 0); }

    bool jet_known() const { return jet_known_; }
    SymbolTerm with_jet(const SymbolTerm& jet) const;
    SymbolTerm with_unknown_jet() const;

    // canonical form: minimal norm_power
    void normalize();

    friend SymbolTerm operator+(const SymbolTerm& a, const SymbolTerm& b);
    friend SymbolTerm operator-(const SymbolTerm& a, const SymbolTerm& b);
    friend SymbolTerm operator*(const SymbolTerm& a, const SymbolTerm& b);
    SymbolTerm operator-() const;
    SymbolTerm scaled(const Scalar& c) const;
    // equality of values (jets are derived data and not compared)
    friend bool operator==(const SymbolTerm& a, const SymbolTerm& b);

    SymbolTerm xi_derivative(int j) const;
    // d/dx_n at x0; throws std::domain_error when the jet is unknown
    SymbolTerm d_xn() const;
    // D_xn = -i d/dx_n
    SymbolTerm D_xn() const;

    BoundaryRational restrict_boundary() const;

    std::string str() const;

private:
    std::shared_ptr<const SymbolTerm> jet_;  // nullptr means zero jet
    bool jet_known_ = false;
};

class SymbolExpansion {
public:
    SymbolExpansion() = default;
    explicit SymbolExpansion(std::string tag) : tag_(std::move(tag)) {}

    const std::string& tag() const { return tag_; }
    void set(SymbolTerm term);
    bool has(int order) const { return terms_.count(order) != 0; }
    // throws std::out_of_range("insufficient preset depth ...") when missing
    const SymbolTerm& term(int order) const;
    int leading_order() const;
    int lowest_order() const;
    const std::map<int, SymbolTerm, std::greater<int>>& terms() const { return terms_; }

private:
    std::string tag_;
    std::map<int, SymbolTerm, std::greater<int>> terms_;
};

// graded Leibniz product truncated at lowest_order (x-derivatives only in the
// normal slot; tangential jets vanish at x0)
SymbolExpansion compose(const SymbolExpansion& p, const SymbolExpansion& q, int lowest_order,
                        const std::string& tag = "");

// asymptotic inverse of p, given the exact inverse of its leading term;
// produced down to the given lowest order
SymbolExpansion invert(const SymbolExpansion& p, const SymbolTerm& leading_inverse,
                       int lowest_order, const std::string& tag = "");

// ---- the operator family ---------------------------------------------------

enum class OperatorTag {
    DiracPerturbed,      // D_Psi:           orders 1, 0
    DiracInverse,        // D_Psi^{-1}:      orders -1, -2
    DiracSquare,         // D_Psi^2:         orders 2, 1
    DiracSquareInverse,  // D_Psi^{-2}:      orders -2, -3
    DiracCube,           // D_Psi^3:         orders 3, 2
    DiracCubeInverse,    // D_Psi^{-3}:      orders -3, -4
    CovariantPair,       // nabla_X nabla_Y: orders 2, 1
    PairDm2,             // nabla nabla D_Psi^{-2}: orders 0, -1
    PairDm1,             // nabla nabla D_Psi^{-1}: orders 1, 0
};

// preset expansions (Psi generic; concrete specs substitute after tracing)
const SymbolExpansion& preset(OperatorTag tag);

// transcribed closed formula for sigma_{-2}(D^{-1}), for cross-checks
SymbolTerm reference_sigma_m2_Dinv();

}  // namespace rf
