#include "resforge/clifford.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace rf {

std::pair<int, BladeMask> blade_mul(BladeMask a, BladeMask b) {
    // swaps needed to merge the ascending products, then e_k^2 = -1 on overlap
    int swaps = 0;
    BladeMask bb = b;
    while (bb) {
        int k = std::countr_zero(bb);
        bb &= static_cast<BladeMask>(bb - 1);
        swaps += std::popcount(static_cast<unsigned>(a >> (k + 1)));
    }
    int sign = (swaps % 2) ? -1 : 1;
    if (std::popcount(static_cast<unsigned>(a & b)) % 2) sign = -sign;
    return {sign, static_cast<BladeMask>(a ^ b)};
}

CliffordElement CliffordElement::scalar(const Scalar& c, int dim) {
    CliffordElement e(dim);
    e.add(0, c);
    return e;
}

CliffordElement CliffordElement::generator(int index, int dim) {
    if (index < 1 || index > dim) throw std::out_of_range("frame index out of range");
    CliffordElement e(dim);
    e.add(static_cast<BladeMask>(1u << (index - 1)), Scalar(1));
    return e;
}

CliffordElement CliffordElement::blade(BladeMask mask, const Scalar& c, int dim) {
    CliffordElement e(dim);
    e.add(mask, c);
    return e;
}

Scalar CliffordElement::coeff(BladeMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void CliffordElement::add(BladeMask mask, const Scalar& c) {
    if (c.is_zero()) return;
    if (mask >= (1u << dim_)) throw std::out_of_range("blade outside algebra dimension");
    auto [it, inserted] = terms_.emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("clifford dimension mismatch");
    CliffordElement r = a;
    for (auto& [m, c] : b.terms_) r.add(m, c);
    return r;
}

CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("clifford dimension mismatch");
    CliffordElement r = a;
    for (auto& [m, c] : b.terms_) r.add(m, -c);
    return r;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("clifford dimension mismatch");
    CliffordElement r(a.dim_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            auto [sign, m] = blade_mul(ma, mb);
            Scalar c = ca * cb;
            r.add(m, sign < 0 ? -c : c);
        }
    return r;
}

CliffordElement CliffordElement::operator-() const {
    CliffordElement r(dim_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

CliffordElement CliffordElement::scaled(const Scalar& c) const {
    CliffordElement r(dim_);
    if (c.is_zero()) return r;
    for (auto& [m, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_.emplace(m, p);
    }
    return r;
}

std::string CliffordElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (m) {
            os << "*e{";
            for (int k = 0; k < dim_; ++k)
                if (m & (1u << k)) os << (k + 1);
            os << "}";
        }
    }
    return os.str();
}

Scalar spinor_trace(const CliffordElement& a) {
    std::int64_t rank = 1ll << (a.dim() / 2);
    return a.coeff(0).scaled(GaussianRational(rank));
}

bool psi_is_generic(const PsiSpec& spec) {
    return std::holds_alternative<PsiGeneric>(spec);
}

void psi_check_grade(int k) {
    if (k > 3) throw std::invalid_argument("perturbation words of grade > 3 are not supported");
}

CliffordElement psi_instantiate(const PsiSpec& spec, int dim) {
    auto vec = [dim](auto component) {
        CliffordElement v(dim);
        for (int j = 1; j <= dim; ++j)
            v = v + CliffordElement::generator(j, dim).scaled(component(j));
        return v;
    };
    if (std::holds_alternative<PsiScalarField>(spec))
        return CliffordElement::scalar(sym::f(), dim);
    if (std::holds_alternative<PsiOneField>(spec))
        return vec([](int j) { return sym::U(j); });
    if (std::holds_alternative<PsiTwoField>(spec))
        return vec([](int j) { return sym::U(j); }) * vec([](int j) { return sym::V(j); });
    if (std::holds_alternative<PsiThreeField>(spec))
        return vec([](int j) { return sym::U(j); }) * vec([](int j) { return sym::V(j); }) *
               vec([](int j) { return sym::W(j); });
    throw std::invalid_argument("psi_instantiate on generic perturbation");
}

CliffordOp CliffordOp::psi(int dim) {
    CliffordOp op(dim);
    op.psi_terms_.emplace(std::pair<BladeMask, BladeMask>{0, 0}, Scalar(1));
    return op;
}

void CliffordOp::add_psi(BladeMask left, BladeMask right, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = psi_terms_.emplace(std::pair{left, right}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) psi_terms_.erase(it);
    }
}

CliffordOp operator+(const CliffordOp& a, const CliffordOp& b) {
    CliffordOp r = a;
    r.plain_ = a.plain_ + b.plain_;
    for (auto& [lr, c] : b.psi_terms_) r.add_psi(lr.first, lr.second, c);
    return r;
}

CliffordOp operator-(const CliffordOp& a, const CliffordOp& b) {
    CliffordOp r = a;
    r.plain_ = a.plain_ - b.plain_;
    for (auto& [lr, c] : b.psi_terms_) r.add_psi(lr.first, lr.second, -c);
    return r;
}

CliffordOp operator*(const CliffordOp& a, const CliffordOp& b) {
    if (a.has_psi() && b.has_psi())
        throw std::domain_error("product of two generic Psi words is outside the engine's symbol class");
    CliffordOp r(a.plain_ * b.plain_);
    // plain * psi
    for (auto& [lr, c] : b.psi_terms_)
        for (auto& [ma, ca] : a.plain_.terms()) {
            auto [sign, m] = blade_mul(ma, lr.first);
            Scalar v = ca * c;
            r.add_psi(m, lr.second, sign < 0 ? -v : v);
        }
    // psi * plain
    for (auto& [lr, c] : a.psi_terms_)
        for (auto& [mb, cb] : b.plain_.terms()) {
            auto [sign, m] = blade_mul(lr.second, mb);
            Scalar v = c * cb;
            r.add_psi(lr.first, m, sign < 0 ? -v : v);
        }
    return r;
}

CliffordOp CliffordOp::operator-() const {
    CliffordOp r(-plain_);
    for (auto& [lr, c] : psi_terms_) r.psi_terms_.emplace(lr, -c);
    return r;
}

CliffordOp CliffordOp::scaled(const Scalar& c) const {
    CliffordOp r(plain_.scaled(c));
    if (c.is_zero()) return r;
    for (auto& [lr, v] : psi_terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.psi_terms_.emplace(lr, p);
    }
    return r;
}

Scalar CliffordOp::trace() const {
    Scalar t = spinor_trace(plain_);
    // trace(L Psi R) = trace((R L) Psi) = sign * T_{R^L}
    for (auto& [lr, c] : psi_terms_) {
        auto [sign, m] = blade_mul(lr.second, lr.first);
        Scalar term = c * sym::psi_trace(m);
        t += (sign < 0 ? -term : term);
    }
    return t;
}

CliffordElement CliffordOp::specialized(const CliffordElement& psi_value) const {
    CliffordElement r = plain_;
    for (auto& [lr, c] : psi_terms_) {
        CliffordElement word =
            CliffordElement::blade(lr.first, Scalar(1), r.dim()) * psi_value *
            CliffordElement::blade(lr.second, Scalar(1), r.dim());
        r = r + word.scaled(c);
    }
    return r;
}

std::string CliffordOp::str() const {
    std::ostringstream os;
    os << plain_.str();
    for (auto& [lr, c] : psi_terms_)
        os << " + (" << c.str() << ")*e{" << lr.first << "}Psi*e{" << lr.second << "}";
    return os.str();
}

}  // namespace rf
