#include "resforge/collar.hpp"

#include <bit>
#include <stdexcept>

namespace rf {

namespace {
constexpr int kN = 4;

// [e_a, e_b](x0) in the collar frame; only tangential-normal brackets survive:
// [e_j, e_n] = -(h1/2) e_j for j < n.
std::map<int, Scalar> frame_bracket(int a, int b) {
    std::map<int, Scalar> out;
    Scalar half = sym::h1().scaled(GaussianRational(Rational(1, 2)));
    if (b == kN && a < kN) out[a] = -half;
    if (a == kN && b < kN) out[b] = half;
    return out;
}

Scalar bracket_component(int a, int b, int c) {
    auto m = frame_bracket(a, b);
    auto it = m.find(c);
    return it == m.end() ? Scalar(0) : it->second;
}
}  // namespace

JetStore::JetStore() {
    half_h1_ = sym::h1().scaled(GaussianRational(Rational(1, 2)));

    // omega_{s,t}(e_i) = <nabla_{e_i} e_t, e_s> by the Koszul formula
    // 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> (orthonormal frame).
    for (int i = 1; i <= kN; ++i)
        for (int s = 1; s <= kN; ++s)
            for (int t = 1; t <= kN; ++t) {
                Scalar v = (bracket_component(i, t, s) - bracket_component(t, s, i) +
                            bracket_component(s, i, t))
                               .scaled(GaussianRational(Rational(1, 2)));
                if (!v.is_zero()) omega_[{i, s, t}] = v;
            }

    // Gamma^k = sum_i Gamma^k_{ii}(x0) from the coordinate metric: the only
    // nonzero first jet is d_n g_{jj} = -h1 (j < n), so Gamma^n_{jj} = h1/2.
    Scalar gn(0);
    for (int j = 1; j < kN; ++j) gn += half_h1_;
    gamma_[kN] = gn;

    // sigma_0(D)(x0) = sum_i c(e_i) * (-1/4 sum_{s,t} omega_{s,t}(e_i) c(e_s) c(e_t))
    CliffordElement acc(4);
    for (int i = 1; i <= kN; ++i) {
        CliffordElement inner(4);
        for (auto& [ist, w] : omega_) {
            auto [ii, s, t] = ist;
            if (ii != i) continue;
            inner = inner + (CliffordElement::generator(s) * CliffordElement::generator(t)).scaled(w);
        }
        acc = acc + (CliffordElement::generator(i) * inner).scaled(Scalar(GaussianRational(Rational(-1, 4))));
    }
    sigma0_d_ = acc;
}

const JetStore& JetStore::instance() {
    static JetStore store;
    return store;
}

Scalar JetStore::d_xj_norm_sq_factor(int j) const {
    if (j < 1 || j > kN) throw std::out_of_range("coordinate index out of range");
    return j == kN ? sym::h1() : Scalar(0);
}

Scalar JetStore::omega(int i, int s, int t) const {
    auto it = omega_.find({i, s, t});
    return it == omega_.end() ? Scalar(0) : it->second;
}

Scalar JetStore::christoffel_contraction(int k) const {
    auto it = gamma_.find(k);
    return it == gamma_.end() ? Scalar(0) : it->second;
}

CliffordElement JetStore::spin_contraction(int k) const {
    CliffordElement r(4);
    for (int s = 1; s <= kN; ++s)
        for (int t = 1; t <= kN; ++t) {
            Scalar w = omega(k, s, t);
            if (w.is_zero()) continue;
            r = r + (CliffordElement::generator(s) * CliffordElement::generator(t))
                        .scaled(w.scaled(GaussianRational(Rational(-1, 4))));
        }
    return r;
}

CliffordElement JetStore::connection_term(const std::vector<Scalar>& components) const {
    if (components.size() != kN) throw std::invalid_argument("need 4 components");
    CliffordElement r(4);
    for (int dir = 1; dir <= kN; ++dir) {
        if (components[dir - 1].is_zero()) continue;
        for (int i = 1; i <= kN; ++i)
            for (int j = 1; j <= kN; ++j) {
                // <nabla_{e_dir} e_i, e_j> = omega_{j,i}(e_dir)
                Scalar w = omega(dir, j, i);
                if (w.is_zero()) continue;
                r = r + (CliffordElement::generator(i) * CliffordElement::generator(j))
                            .scaled(components[dir - 1] * w.scaled(GaussianRational(Rational(1, 4))));
            }
    }
    return r;
}

namespace {
Scalar jet_scale(BladeMask mask) {
    int tangential = std::popcount(static_cast<unsigned>(mask & 0x7));
    return sym::h1().scaled(GaussianRational(Rational(tangential, 2)));
}
void guard_coeff(const Scalar& c) {
    auto& tbl = SymbolTable::global();
    auto h1 = tbl.lookup("h1");
    auto dyn = tbl.lookup("dYn");
    if ((h1 && c.depends_on(*h1)) || (dyn && c.depends_on(*dyn)))
        throw std::domain_error("x_n-jet of a first-jet quantity is outside the model");
}
}  // namespace

CliffordElement clifford_dxn(const CliffordElement& e) {
    CliffordElement r(e.dim());
    for (auto& [mask, c] : e.terms()) {
        guard_coeff(c);
        Scalar s = jet_scale(mask);
        if (!s.is_zero()) r.add(mask, c * s);
    }
    return r;
}

CliffordOp clifford_dxn(const CliffordOp& e) {
    CliffordOp r(clifford_dxn(e.plain()));
    for (auto& [lr, c] : e.psi_terms()) {
        guard_coeff(c);
        Scalar s = jet_scale(lr.first) + jet_scale(lr.second);
        if (!s.is_zero()) r.add_psi(lr.first, lr.second, c * s);
    }
    return r;
}

}  // namespace rf
