#pragma once
// Exact Clifford algebra of an orthonormal frame (e_i e_j + e_j e_i = -2 delta_ij),
// blades as bitmasks with Scalar coefficients, plus the spinor trace.
//
// CliffordOp extends CliffordElement with words containing one opaque c(Psi)
// factor, L * Psi * R; traces of those become named placeholders so the whole
// boundary pipeline can run with Psi left generic.

#include "resforge/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace rf {

using BladeMask = std::uint16_t;

// (sign, resulting mask) of the product blade(a) * blade(b)
std::pair<int, BladeMask> blade_mul(BladeMask a, BladeMask b);

class CliffordElement {
public:
    explicit CliffordElement(int dim = 4) : dim_(dim) {}
    static CliffordElement scalar(const Scalar& c, int dim = 4);
    static CliffordElement generator(int index, int dim = 4);  // c(e_index), 1-based
    static CliffordElement blade(BladeMask mask, const Scalar& c, int dim = 4);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<BladeMask, Scalar>& terms() const { return terms_; }
    Scalar coeff(BladeMask mask) const;

    void add(BladeMask mask, const Scalar& c);

    friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
    CliffordElement operator-() const;
    CliffordElement scaled(const Scalar& c) const;
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    int dim_;
    std::map<BladeMask, Scalar> terms_;
};

// trace over the spinor bundle: 2^{n/2} times the grade-0 part
Scalar spinor_trace(const CliffordElement& a);

// ---- perturbation specification -------------------------------------------

struct PsiGeneric {};
struct PsiScalarField {};                      // c(Psi) = f * id
struct PsiOneField {};                         // c(Psi) = c(U)
struct PsiTwoField {};                         // c(Psi) = c(U) c(V)
struct PsiThreeField {};                       // c(Psi) = c(U) c(V) c(W)
using PsiSpec = std::variant<PsiGeneric, PsiScalarField, PsiOneField, PsiTwoField, PsiThreeField>;

bool psi_is_generic(const PsiSpec& spec);

// Concrete Clifford element for a non-generic spec; throws on PsiGeneric.
CliffordElement psi_instantiate(const PsiSpec& spec, int dim = 4);

// Clifford products of grade k > 3 are not representable as a PsiSpec; this
// checks a requested word length.
void psi_check_grade(int k);

// ---- elements with one opaque Psi factor ----------------------------------

class CliffordOp {
public:
    explicit CliffordOp(int dim = 4) : plain_(dim) {}
    CliffordOp(const CliffordElement& plain) : plain_(plain) {}

    static CliffordOp psi(int dim = 4);  // the bare c(Psi)

    int dim() const { return plain_.dim(); }
    bool is_zero() const { return plain_.is_zero() && psi_terms_.empty(); }
    bool has_psi() const { return !psi_terms_.empty(); }
    const CliffordElement& plain() const { return plain_; }
    const std::map<std::pair<BladeMask, BladeMask>, Scalar>& psi_terms() const { return psi_terms_; }

    void add_psi(BladeMask left, BladeMask right, const Scalar& c);

    friend CliffordOp operator+(const CliffordOp& a, const CliffordOp& b);
    friend CliffordOp operator-(const CliffordOp& a, const CliffordOp& b);
    // throws std::domain_error if both factors carry a Psi word
    friend CliffordOp operator*(const CliffordOp& a, const CliffordOp& b);
    CliffordOp operator-() const;
    CliffordOp scaled(const Scalar& c) const;
    friend bool operator==(const CliffordOp& a, const CliffordOp& b) {
        return a.plain_ == b.plain_ && a.psi_terms_ == b.psi_terms_;
    }

    // spinor trace; Psi words land in trace placeholders T...
    Scalar trace() const;

    // substitute a concrete c(Psi)
    CliffordElement specialized(const CliffordElement& psi_value) const;

    std::string str() const;

private:
    CliffordElement plain_;
    std::map<std::pair<BladeMask, BladeMask>, Scalar> psi_terms_;
};

}  // namespace rf
