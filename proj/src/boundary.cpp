#include "resforge/boundary.hpp"

#include <algorithm>
#include <stdexcept>

namespace rf {

GaussianRational CaseSpec::prefactor() const {
    std::int64_t fact = 1;
    for (int q = 2; q <= j + k + 1; ++q) fact *= q;
    for (int q = 2; q <= alpha; ++q) fact *= q;
    GaussianRational c = GaussianRational::i_pow(alpha + j + k + 1);
    if ((alpha + j + k + 1) % 2) c = -c;  // (-i)^m = (-1)^m i^m
    return c * GaussianRational(Rational(1, fact));
}

Scalar DensityExpression::coefficient_of(const Scalar& monomial) const {
    if (monomial.terms().size() != 1)
        throw std::invalid_argument("coefficient_of expects a single monomial");
    const Monomial& target = monomial.terms().begin()->first;
    Scalar out(*poly_.table());
    for (auto& [m, c] : poly_.terms()) {
        // try to factor target out of m
        Monomial rest;
        bool ok = true;
        auto it = target.factors().begin();
        for (auto& [v, e] : m.factors()) {
            if (it != target.factors().end() && it->first == v) {
                if (e < it->second) { ok = false; break; }
                if (e > it->second) rest = rest * Monomial::var(v, static_cast<std::uint16_t>(e - it->second));
                ++it;
            } else {
                rest = rest * Monomial::var(v, e);
            }
        }
        if (ok && it == target.factors().end()) out.add_term(rest, c);
    }
    return out;
}

Scalar DensityExpression::tangential_coefficient() const {
    Scalar c1 = coefficient_of(sym::X(1) * sym::Y(1));
    Scalar c2 = coefficient_of(sym::X(2) * sym::Y(2));
    Scalar c3 = coefficient_of(sym::X(3) * sym::Y(3));
    if (!(c1 == c2) || !(c1 == c3))
        throw std::logic_error("density is not tangentially symmetric");
    return c1;
}

DensityExpression DensityExpression::specialized(const PsiSpec& psi) const {
    if (psi_is_generic(psi)) return *this;
    CliffordElement value = psi_instantiate(psi, 4);
    Scalar out = poly_;
    for (unsigned mask = 0; mask < 16; ++mask) {
        VarId id = sym::psi_trace_id(mask);
        if (!out.depends_on(id)) continue;
        Scalar tr = spinor_trace(CliffordElement::blade(static_cast<BladeMask>(mask), Scalar(1), 4) * value);
        out = out.substituted(id, tr);
    }
    return DensityExpression(out);
}

std::vector<CaseSpec> enumerate_cases(Theorem theorem) {
    const SymbolExpansion& num =
        preset(theorem == Theorem::PairDm2Residue ? OperatorTag::PairDm2 : OperatorTag::PairDm1);
    const SymbolExpansion& den = preset(theorem == Theorem::PairDm2Residue
                                            ? OperatorTag::DiracSquareInverse
                                            : OperatorTag::DiracCubeInverse);
    const int n = kDim;
    std::vector<CaseSpec> out;
    for (auto& [r, tr] : num.terms())
        for (auto& [l, tl] : den.terms()) {
            int budget = r + l - (1 - n);  // j + k + alpha
            if (budget < 0) continue;
            for (int alpha = 0; alpha <= budget; ++alpha)
                for (int j = 0; j + alpha <= budget; ++j) {
                    int k = budget - alpha - j;
                    CaseSpec c{r, l, j, k, alpha, ""};
                    out.push_back(c);
                }
        }
    // one derivative in total across all admissible patterns here
    std::sort(out.begin(), out.end(), [](const CaseSpec& a, const CaseSpec& b) {
        auto key = [](const CaseSpec& c) {
            return std::tuple(-c.r, -c.l, -c.alpha, -c.j, -c.k);
        };
        return key(a) < key(b);
    });
    const char* labels1[] = {"aI", "aII", "aIII", "b", "c"};
    const char* labels2[] = {"case1", "case2", "case3", "case5", "case4"};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (theorem == Theorem::PairDm2Residue && out.size() == 5)
            out[i].label = labels1[i];
        else if (out.size() == 5)
            out[i].label = labels2[i];
        else
            out[i].label = "r" + std::to_string(out[i].r) + "_l" + std::to_string(out[i].l);
    }
    if (theorem == Theorem::PairDm1Residue && out.size() == 5)
        std::swap(out[3], out[4]);  // restore case4 (r=0) before case5 (l=-4)
    return out;
}

CaseFactors case_factors(const CaseSpec& spec, const SymbolExpansion& numerator,
                         const SymbolExpansion& denominator) {
    if (spec.j > 1 || spec.k > 1)
        throw std::out_of_range("second-order x_n jets are outside the preset model");
    SymbolTerm nt = numerator.term(spec.r);
    if (spec.j) nt = nt.d_xn();
    SymbolTerm dt = denominator.term(spec.l);
    if (spec.k) dt = dt.d_xn();
    return CaseFactors{nt.restrict_boundary(), dt.restrict_boundary(), spec.k, spec.j + 1};
}

DensityExpression evaluate_case(const CaseSpec& spec, const SymbolExpansion& numerator,
                                const SymbolExpansion& denominator) {
    // a tangential x'-derivative of any symbol vanishes at the base point
    if (spec.alpha > 0) return DensityExpression(Scalar(0));
    CaseFactors f = case_factors(spec, numerator, denominator);
    BoundaryRational lhs = f.numerator_pre_projection.pi_plus().ddxi_n(f.k);
    BoundaryRational rhs = f.denominator_raw.ddxi_n(f.den_derivs);
    BoundaryRational traced = (lhs * rhs).traced();
    XiPoly line = traced.line_integral();
    Scalar value = integrate_sphere_scalar(line);
    return DensityExpression(value.scaled(spec.prefactor()));
}

namespace {

Scalar gT() {
    return sym::X(1) * sym::Y(1) + sym::X(2) * sym::Y(2) + sym::X(3) * sym::Y(3);
}
Scalar XnYn() { return sym::X(4) * sym::Y(4); }
Scalar Tn() { return sym::psi_trace(0x8); }
Scalar traceXPsi() {
    Scalar t(0);
    for (int j = 1; j <= 4; ++j) t += sym::X(j) * sym::psi_trace(1u << (j - 1));
    return t;
}
Scalar traceYPsi() {
    Scalar t(0);
    for (int j = 1; j <= 4; ++j) t += sym::Y(j) * sym::psi_trace(1u << (j - 1));
    return t;
}
Scalar q(std::int64_t num, std::int64_t den) { return Scalar(Rational(num, den)); }
Scalar qi(std::int64_t rn, std::int64_t rd, std::int64_t in_, std::int64_t id_) {
    return Scalar(GaussianRational(Rational(rn, rd), Rational(in_, id_)));
}

// transcribed reference strings (trace(i Xn dYn/dxn) rendered as 4 i Xn dYn)
Scalar reference_poly(Theorem theorem, const std::string& label) {
    Scalar pi = sym::pi(), O3 = sym::omega3(), h1 = sym::h1();
    Scalar XdY = sym::X(4) * sym::dYn();
    if (theorem == Theorem::PairDm2Residue) {
        if (label == "aI") return Scalar(0);
        if (label == "aII")
            return q(13, 8) * h1 * pi * O3 * (q(1, 3) * pi * gT() + q(1, 4) * XnYn());
        if (label == "aIII")
            return q(5, 4) * h1 * pi * O3 * (q(1, 3) * pi * gT() + qi(0, 1, 1, 4) * XnYn());
        if (label == "b")
            return (qi(1, 12, -5, 12) * pi * pi * gT() + qi(0, 1, 11, 16) * pi * XnYn()) * h1 * O3 +
                   (q(1, 12) * pi * pi * gT() + qi(0, 1, -1, 8) * pi * XnYn()) * Tn() * O3;
        if (label == "c")
            return (qi(-13, 6, 5, 6) * gT() + qi(3, 8, -12, 1) * XnYn()) * h1 * pi * pi * O3 -
                   (q(1, 6) * pi * pi * gT() + q(1, 8) * pi * XnYn()) * Tn() * O3 +
                   qi(0, 1, 1, 8) * pi * O3 *
                       (qi(0, 1, 4, 1) * XdY - traceXPsi() * sym::Y(4) - traceYPsi() * sym::X(4));
        if (label == "total")
            return (qi(15, 32, -362, 32) * XnYn() + qi(-27, 24, 10, 24) * pi * gT()) * h1 * pi * O3 +
                   (q(1, 6) * pi * pi * gT() + qi(1, 8, -1, 8) * pi * XnYn()) * Tn() * O3 +
                   qi(0, 1, 1, 8) * pi * O3 *
                       (qi(0, 1, 4, 1) * XdY - traceXPsi() * sym::Y(4) - traceYPsi() * sym::X(4));
    } else {
        if (label == "case1") return Scalar(0);
        if (label == "case2")
            return -(q(592, 3) * pi * gT() + qi(461, 4, 23, 4) * XnYn()) * h1 * pi * O3;
        if (label == "case3")
            return (qi(0, 1, 5, 6) * pi * gT() + qi(0, 1, 5, 8) * XnYn()) * h1 * pi * O3;
        if (label == "case4")
            return (q(55, 24) * pi * gT() + (qi(-60, 8, 15, 8) + q(1, 8) * pi) * XnYn()) * h1 * pi * O3 -
                   (q(1, 3) * pi * pi * gT() + q(3, 4) * pi * XnYn()) * Tn() * O3 -
                   q(3, 4) * pi * XnYn() * (Scalar(3) * h1) * O3 +
                   qi(0, 1, 3, 16) * pi * (-traceXPsi() * sym::X(4) - traceYPsi() * sym::Y(4)) * O3;
        if (label == "case5")
            return (-q(2, 3) * pi * pi * gT() + qi(0, 1, 1, 2) * pi * XnYn()) * Tn() * O3 +
                   qi(55, 26, 85, 24) * h1 * pi * pi * gT() * O3 - qi(50, 16, 7, 16) * XnYn() * pi * O3;
        if (label == "total")
            return ((qi(-4681, 24, 5, 6) * pi * pi + qi(55, 26, 85, 24)) * gT() * h1 +
                    (qi(451, 4, 7, 1) + q(1, 8) * pi) * h1 * XnYn() * pi -
                    qi(50, 16, 7, 16) * XnYn() * pi) *
                       O3 -
                   ((q(3, 4) * pi + qi(0, 1, 2, 4) * pi) * XnYn() + pi * pi * gT()) * Tn() * O3 -
                   q(9, 16) * h1 * pi * O3 +
                   qi(0, 1, 3, 16) * pi * (-traceXPsi() * sym::X(4) - traceYPsi() * sym::Y(4)) * O3;
    }
    throw std::invalid_argument("no reference string for label " + label);
}

}  // namespace

DensityExpression reference_density(Theorem theorem, const std::string& label) {
    return DensityExpression(reference_poly(theorem, label));
}

BoundaryResult boundary_density(Theorem theorem, const PsiSpec& psi) {
    const SymbolExpansion& num =
        preset(theorem == Theorem::PairDm2Residue ? OperatorTag::PairDm2 : OperatorTag::PairDm1);
    const SymbolExpansion& den = preset(theorem == Theorem::PairDm2Residue
                                            ? OperatorTag::DiracSquareInverse
                                            : OperatorTag::DiracCubeInverse);
    BoundaryResult result;
    Scalar total(0);
    for (const CaseSpec& spec : enumerate_cases(theorem)) {
        DensityExpression d = evaluate_case(spec, num, den);
        total += d.poly();
        result.cases.emplace_back(spec, std::move(d));
    }
    result.total = DensityExpression(total);

    auto compare = [&](const std::string& label, const DensityExpression& engine) {
        DensityExpression ref = reference_density(theorem, label);
        LedgerEntry e;
        e.id = (theorem == Theorem::PairDm2Residue ? std::string("t1_") : std::string("t2_")) + label;
        e.engine_value = engine.poly().str();
        e.reference_value = ref.poly().str();
        e.exact_match = engine.poly() == ref.poly();
        Scalar folded_delta = fold_constants(engine.poly()) - fold_constants(ref.poly());
        e.match_after_fold = folded_delta.is_zero();
        if (!e.match_after_fold) e.delta = folded_delta.str();
        result.ledger.push_back(std::move(e));
    };
    for (auto& [spec, d] : result.cases) compare(spec.label, d);
    compare("total", result.total);

    if (!psi_is_generic(psi)) {
        for (auto& [spec, d] : result.cases) d = d.specialized(psi);
        result.total = result.total.specialized(psi);
    }
    return result;
}

}  // namespace rf
