#pragma once
// Enumeration and evaluation of the boundary terms: for each admissible
// derivative pattern, prefactor * Int_{|xi'|=1} Int_R trace[ d^j_xn d^a_xi'
// d^k_xin pi+ sigma_r x d^a_x' d^{j+1}_xin d^k_xn sigma_l ] dxi_n sigma(xi'),
// summed into a canonical density.

#include "resforge/sphere.hpp"
#include "resforge/symbols.hpp"

#include <vector>

namespace rf {

struct CaseSpec {
    int r = 0;      // numerator symbol order
    int l = 0;      // denominator symbol order
    int j = 0;      // x_n derivatives on the numerator side
    int k = 0;      // xi_n derivatives shifted between the sides
    int alpha = 0;  // |alpha| over tangential slots
    std::string label;

    // (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!)
    GaussianRational prefactor() const;
    int degree_sum() const { return r + l - k - j - alpha; }
};

// Canonical boundary density: a polynomial over the engine indeterminates
// (h1, X_j, Y_j, dYn, pi, Omega3 and trace placeholders).
class DensityExpression {
public:
    DensityExpression() = default;
    explicit DensityExpression(Scalar poly) : poly_(std::move(poly)) {}

    const Scalar& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    friend DensityExpression operator+(const DensityExpression& a, const DensityExpression& b) {
        return DensityExpression(a.poly_ + b.poly_);
    }
    friend bool operator==(const DensityExpression& a, const DensityExpression& b) {
        return a.poly_ == b.poly_;
    }

    // coefficient of sum_{j<n} X_j Y_j; throws unless the three coefficients agree
    Scalar tangential_coefficient() const;
    Scalar coefficient_of(const Scalar& monomial) const;

    // substitute trace placeholders for a concrete perturbation
    DensityExpression specialized(const PsiSpec& psi) const;

    std::string str() const { return poly_.str(); }

private:
    Scalar poly_;
};

enum class Theorem { PairDm2Residue = 1, PairDm1Residue = 2 };

std::vector<CaseSpec> enumerate_cases(Theorem theorem);

// generic-Psi evaluation of a single boundary case
DensityExpression evaluate_case(const CaseSpec& spec, const SymbolExpansion& numerator,
                                const SymbolExpansion& denominator);

struct LedgerEntry {
    std::string id;
    std::string engine_value;
    std::string reference_value;
    bool exact_match = false;
    bool match_after_fold = false;  // after Omega3 -> 4 pi on both sides
    std::string delta;              // engine - reference, folded
};

struct BoundaryResult {
    std::vector<std::pair<CaseSpec, DensityExpression>> cases;
    DensityExpression total;
    std::vector<LedgerEntry> ledger;
};

// Full boundary density for one theorem. Cases are evaluated with Psi generic
// and substituted afterwards; the ledger compares each case and the total
// against the transcribed reference strings.
BoundaryResult boundary_density(Theorem theorem, const PsiSpec& psi);

// transcribed reference totals (generic Psi), indexed by case label or "total"
DensityExpression reference_density(Theorem theorem, const std::string& label);

// intermediate factors a case feeds to the quadrature oracle
struct CaseFactors {
    BoundaryRational numerator_pre_projection;  // restricted, x_n-jetted, before pi+
    BoundaryRational denominator_raw;           // restricted, x_n-jetted, before xi_n derivs
    int k = 0;       // xi_n derivatives applied after pi+ on the numerator side
    int den_derivs;  // j + 1 xi_n derivatives on the denominator side
};
CaseFactors case_factors(const CaseSpec& spec, const SymbolExpansion& numerator,
                         const SymbolExpansion& denominator);

}  // namespace rf
