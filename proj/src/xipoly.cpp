#include "resforge/xipoly.hpp"

#include <sstream>

namespace rf {

XiPoly XiPoly::constant(const CliffordOp& c) {
    XiPoly p;
    p.add(XiMono{}, c);
    return p;
}

XiPoly XiPoly::xi(int j, const CliffordOp& c) {
    XiPoly p;
    p.add(XiMono{}.times(j), c);
    return p;
}

XiPoly XiPoly::c_xi() {
    XiPoly p;
    for (int j = 1; j <= kDim; ++j)
        p.add(XiMono{}.times(j), CliffordOp(CliffordElement::generator(j)));
    return p;
}

XiPoly XiPoly::c_xi_prime() {
    XiPoly p;
    for (int j = 1; j < kDim; ++j)
        p.add(XiMono{}.times(j), CliffordOp(CliffordElement::generator(j)));
    return p;
}

XiPoly XiPoly::norm_sq() {
    XiPoly p;
    for (int j = 1; j <= kDim; ++j)
        p.add(XiMono{}.times(j, 2), CliffordOp(CliffordElement::scalar(Scalar(1))));
    return p;
}

XiPoly XiPoly::norm_sq_prime() {
    XiPoly p;
    for (int j = 1; j < kDim; ++j)
        p.add(XiMono{}.times(j, 2), CliffordOp(CliffordElement::scalar(Scalar(1))));
    return p;
}

void XiPoly::add(const XiMono& m, const CliffordOp& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

XiPoly operator+(const XiPoly& a, const XiPoly& b) {
    XiPoly r = a;
    for (auto& [m, c] : b.terms_) r.add(m, c);
    return r;
}

XiPoly operator-(const XiPoly& a, const XiPoly& b) {
    XiPoly r = a;
    for (auto& [m, c] : b.terms_) r.add(m, -c);
    return r;
}

XiPoly operator*(const XiPoly& a, const XiPoly& b) {
    XiPoly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            XiMono m;
            for (int k = 0; k < kDim; ++k)
                m.e[k] = static_cast<std::uint8_t>(ma.e[k] + mb.e[k]);
            r.add(m, ca * cb);
        }
    return r;
}

XiPoly XiPoly::operator-() const {
    XiPoly r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

XiPoly XiPoly::scaled(const Scalar& c) const {
    XiPoly r;
    for (auto& [m, v] : terms_) {
        CliffordOp s = v.scaled(c);
        if (!s.is_zero()) r.terms_.emplace(m, s);
    }
    return r;
}

XiPoly XiPoly::xi_derivative(int j) const {
    XiPoly r;
    for (auto& [m, c] : terms_) {
        int e = m.e[j - 1];
        if (e == 0) continue;
        XiMono d = m;
        d.e[j - 1] = static_cast<std::uint8_t>(e - 1);
        r.add(d, c.scaled(Scalar(e)));
    }
    return r;
}

bool XiPoly::homogeneous_of(int degree) const {
    for (auto& [m, c] : terms_)
        if (m.degree() != degree) return false;
    return true;
}

int XiPoly::max_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool XiPoly::has_psi() const {
    for (auto& [m, c] : terms_)
        if (c.has_psi()) return true;
    return false;
}

std::optional<XiPoly> XiPoly::divided_by_norm_sq() const {
    // view as polynomial in xi_n over the tangential monomials and divide by
    // xi_n^2 + |xi'|^2; remainder must vanish
    if (terms_.empty()) return XiPoly{};
    std::map<int, XiPoly> by_n;  // xi_n power -> tangential polynomial
    int dn = 0;
    for (auto& [m, c] : terms_) {
        XiMono t = m;
        int e = t.e[kDim - 1];
        t.e[kDim - 1] = 0;
        dn = std::max(dn, e);
        XiPoly p;
        p.add(t, c);
        by_n[e] = (by_n.count(e) ? by_n[e] + p : p);
    }
    if (dn < 2) return std::nullopt;
    std::map<int, XiPoly> quot;
    XiPoly nsp = XiPoly::norm_sq_prime();
    for (int k = dn; k >= 2; --k) {
        auto it = by_n.find(k);
        if (it == by_n.end() || it->second.is_zero()) continue;
        XiPoly q = it->second;
        quot[k - 2] = (quot.count(k - 2) ? quot[k - 2] + q : q);
        by_n[k] = XiPoly{};
        XiPoly red = nsp * q;
        by_n[k - 2] = (by_n.count(k - 2) ? by_n[k - 2] - red : -red);
    }
    for (auto& [k, p] : by_n)
        if (!p.is_zero()) return std::nullopt;
    XiPoly result;
    for (auto& [k, p] : quot)
        for (auto& [m, c] : p.terms())
            result.add(m.times(kDim, k), c);
    return result;
}

std::string XiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        for (int k = 0; k < kDim; ++k)
            if (m.e[k]) {
                os << "*xi" << (k + 1);
                if (m.e[k] > 1) os << "^" << int(m.e[k]);
            }
    }
    return os.str();
}

}  // namespace rf
