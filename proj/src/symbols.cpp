#include "resforge/symbols.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rf {

namespace {
XiPoly norm_pow_poly(int k) {
    XiPoly p = XiPoly::constant(CliffordOp(CliffordElement::scalar(Scalar(1))));
    for (int q = 0; q < k; ++q) p = p * XiPoly::norm_sq();
    return p;
}

SymbolTerm add_value(const SymbolTerm& a, const SymbolTerm& b) {
    if (a.is_zero()) return SymbolTerm::value(b.order, b.num, b.norm_power);
    if (b.is_zero()) return SymbolTerm::value(a.order, a.num, a.norm_power);
    if (a.order != b.order) throw std::invalid_argument("adding symbol terms of different order");
    int c = std::max(a.norm_power, b.norm_power);
    XiPoly na = a.num * norm_pow_poly(c - a.norm_power);
    XiPoly nb = b.num * norm_pow_poly(c - b.norm_power);
    return SymbolTerm::value(a.order, na + nb, c);
}

SymbolTerm mul_value(const SymbolTerm& a, const SymbolTerm& b) {
    return SymbolTerm::value(a.order + b.order, a.num * b.num, a.norm_power + b.norm_power);
}

// the mechanical frame/metric jet: frame-blade rule on coefficients plus the
// |xi|^{-2c} metric jet; only sound for provenance-pure numerators
SymbolTerm mechanical_jet(const SymbolTerm& t) {
    XiPoly dnum;
    for (auto& [m, c] : t.num.terms()) {
        CliffordOp dc = clifford_dxn(c);
        if (!dc.is_zero()) dnum.add(m, dc);
    }
    SymbolTerm r = SymbolTerm::value(t.order, std::move(dnum), t.norm_power);
    if (t.norm_power > 0) {
        XiPoly tail = t.num * XiPoly::norm_sq_prime();
        tail = tail.scaled(sym::h1().scaled(GaussianRational(-t.norm_power)));
        r = add_value(r, SymbolTerm::value(t.order, std::move(tail), t.norm_power + 1));
    }
    return r;
}

SymbolTerm xi_derivative_value(const SymbolTerm& t, int j) {
    // d_j [N / |xi|^{2c}] = [d_j N |xi|^2 - 2 c xi_j N] / |xi|^{2(c+1)}
    XiPoly dn = t.num.xi_derivative(j);
    if (t.norm_power == 0) return SymbolTerm::value(t.order - 1, dn, 0);
    XiPoly top = dn * XiPoly::norm_sq();
    XiPoly xj;
    for (auto& [m, c] : t.num.terms())
        xj.add(m.times(j), c.scaled(Scalar(-2 * t.norm_power)));
    return SymbolTerm::value(t.order - 1, top + xj, t.norm_power + 1);
}
}  // namespace

SymbolTerm SymbolTerm::value(int order_, XiPoly num_, int norm_power_) {
    SymbolTerm t;
    t.order = order_;
    t.num = std::move(num_);
    t.norm_power = norm_power_;
    if (!t.num.homogeneous_of(t.order + 2 * t.norm_power))
        throw std::invalid_argument("symbol term violates homogeneity");
    t.normalize();
    return t;
}

SymbolTerm::SymbolTerm(int order_, XiPoly num_, int norm_power_) {
    SymbolTerm v = value(order_, std::move(num_), norm_power_);
    order = v.order;
    num = std::move(v.num);
    norm_power = v.norm_power;
    // coefficients that already carry first-jet data (h1, dYn) have no
    // mechanical second jet; such terms keep an unknown jet
    try {
        if (!num.is_zero()) {
            SymbolTerm jet = mechanical_jet(*this);
            if (!jet.is_zero()) jet_ = std::make_shared<SymbolTerm>(std::move(jet));
        }
        jet_known_ = true;
    } catch (const std::domain_error&) {
        jet_ = nullptr;
        jet_known_ = false;
    }
}

SymbolTerm SymbolTerm::with_jet(const SymbolTerm& jet) const {
    SymbolTerm r = *this;
    r.jet_ = jet.is_zero() ? nullptr : std::make_shared<SymbolTerm>(jet.with_unknown_jet());
    r.jet_known_ = true;
    return r;
}

SymbolTerm SymbolTerm::with_unknown_jet() const {
    SymbolTerm r = *this;
    r.jet_ = nullptr;
    r.jet_known_ = false;
    return r;
}

void SymbolTerm::normalize() {
    while (norm_power > 0) {
        auto q = num.divided_by_norm_sq();
        if (!q) break;
        num = *q;
        --norm_power;
    }
}

SymbolTerm operator+(const SymbolTerm& a, const SymbolTerm& b) {
    SymbolTerm r = add_value(a, b);
    if (a.jet_known_ && b.jet_known_) {
        SymbolTerm ja = a.jet_ ? *a.jet_ : SymbolTerm::zero(a.order);
        SymbolTerm jb = b.jet_ ? *b.jet_ : SymbolTerm::zero(b.order);
        return r.with_jet(add_value(ja, jb));
    }
    return r;
}

SymbolTerm operator-(const SymbolTerm& a, const SymbolTerm& b) { return a + (-b); }

SymbolTerm operator*(const SymbolTerm& a, const SymbolTerm& b) {
    SymbolTerm r = mul_value(a, b);
    if (a.jet_known_ && b.jet_known_) {
        SymbolTerm jet = SymbolTerm::zero(r.order);
        if (a.jet_) jet = add_value(jet, mul_value(*a.jet_, b));
        if (b.jet_) jet = add_value(jet, mul_value(a, *b.jet_));
        return r.with_jet(jet);
    }
    return r;
}

SymbolTerm SymbolTerm::operator-() const {
    SymbolTerm r = *this;
    r.num = -r.num;
    if (r.jet_) r.jet_ = std::make_shared<SymbolTerm>(-*r.jet_);
    return r;
}

SymbolTerm SymbolTerm::scaled(const Scalar& c) const {
    SymbolTerm r = *this;
    if (c.is_zero()) return SymbolTerm::zero(order).with_jet(SymbolTerm::zero(order));
    r.num = r.num.scaled(c);
    if (r.jet_) r.jet_ = std::make_shared<SymbolTerm>(r.jet_->scaled(c).with_unknown_jet());
    return r;
}

bool operator==(const SymbolTerm& a, const SymbolTerm& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.order != b.order) return false;
    // compare on a common denominator
    int c = std::max(a.norm_power, b.norm_power);
    return a.num * norm_pow_poly(c - a.norm_power) == b.num * norm_pow_poly(c - b.norm_power);
}

SymbolTerm SymbolTerm::xi_derivative(int j) const {
    SymbolTerm r = xi_derivative_value(*this, j);
    if (jet_known_)
        return r.with_jet(jet_ ? xi_derivative_value(*jet_, j) : SymbolTerm::zero(order - 1));
    return r;
}

SymbolTerm SymbolTerm::d_xn() const {
    if (!jet_known_)
        throw std::domain_error("x_n-jet unavailable for this symbol term");
    return jet_ ? *jet_ : SymbolTerm::zero(order);
}

SymbolTerm SymbolTerm::D_xn() const {
    return d_xn().scaled(Scalar(GaussianRational(Rational(0), Rational(-1))));
}

BoundaryRational SymbolTerm::restrict_boundary() const {
    std::map<int, XiPoly> by_n;
    for (auto& [m, c] : num.terms()) {
        XiMono t = m;
        int e = t.e[kDim - 1];
        t.e[kDim - 1] = 0;
        XiPoly p;
        p.add(t, c);
        auto [it, inserted] = by_n.emplace(e, p);
        if (!inserted) it->second = it->second + p;
    }
    return BoundaryRational::over_norm_power(std::move(by_n), norm_power);
}

std::string SymbolTerm::str() const {
    std::ostringstream os;
    os << "order " << order << ": (" << num.str() << ") / |xi|^" << 2 * norm_power;
    return os.str();
}

void SymbolExpansion::set(SymbolTerm term) {
    terms_.insert_or_assign(term.order, std::move(term));
}

const SymbolTerm& SymbolExpansion::term(int order) const {
    auto it = terms_.find(order);
    if (it == terms_.end())
        throw std::out_of_range("insufficient preset depth: " + tag_ + " has no order " +
                                std::to_string(order));
    return it->second;
}

int SymbolExpansion::leading_order() const {
    if (terms_.empty()) throw std::out_of_range("empty expansion");
    return terms_.begin()->first;
}

int SymbolExpansion::lowest_order() const {
    if (terms_.empty()) throw std::out_of_range("empty expansion");
    return terms_.rbegin()->first;
}

SymbolExpansion compose(const SymbolExpansion& p, const SymbolExpansion& q, int lowest_order,
                        const std::string& tag) {
    if (lowest_order - q.leading_order() < p.lowest_order())
        throw std::out_of_range("insufficient preset depth: " + p.tag() + " too shallow for order " +
                                std::to_string(lowest_order));
    SymbolExpansion out(tag.empty() ? p.tag() + "*" + q.tag() : tag);
    int top = p.leading_order() + q.leading_order();
    for (int o = top; o >= lowest_order; --o) {
        SymbolTerm acc = SymbolTerm::zero(o);
        for (auto& [r, pr] : p.terms()) {
            for (int k = 0; r - k + q.leading_order() >= o; ++k) {
                int l = o - r + k;
                if (!q.has(l)) {
                    if (l < q.lowest_order())
                        throw std::out_of_range("insufficient preset depth: " + q.tag() +
                                                " has no order " + std::to_string(l));
                    continue;
                }
                if (k > 1)
                    throw std::out_of_range("insufficient jet depth: composition needs D_x^" +
                                            std::to_string(k));
                SymbolTerm left = pr;
                SymbolTerm right = q.term(l);
                if (k == 1) {
                    left = left.xi_derivative(kDim);
                    right = right.D_xn();
                }
                if (left.is_zero() || right.is_zero()) continue;
                acc = acc + left * right;
            }
        }
        out.set(std::move(acc));
    }
    return out;
}

SymbolExpansion invert(const SymbolExpansion& p, const SymbolTerm& leading_inverse,
                       int lowest_order, const std::string& tag) {
    int m = p.leading_order();
    if (2 * m + lowest_order < p.lowest_order())
        throw std::out_of_range("insufficient preset depth: " + p.tag() + " too shallow to invert to " +
                                std::to_string(lowest_order));
    SymbolExpansion q(tag);
    q.set(leading_inverse);
    for (int o = -m - 1; o >= lowest_order; --o) {
        // order-o coefficient of compose(p, q) must vanish:
        // p_m q_o = - sum of all other contributions at order m + o.
        // Every other contribution p_r q_l has l = m + o - r + k >= o, with
        // equality only for the (r,k) = (m,0) term being solved for.
        SymbolTerm rhs = SymbolTerm::zero(m + o);
        for (auto& [r, pr] : p.terms()) {
            for (int k = 0;; ++k) {
                int l = m + o - r + k;
                if (l > -m) break;  // q has no orders above -m
                if (l == o) continue;
                if (!q.has(l)) continue;
                if (k > 1) throw std::out_of_range("insufficient jet depth in inversion");
                SymbolTerm left = pr;
                SymbolTerm right = q.term(l);
                if (k == 1) {
                    left = left.xi_derivative(kDim);
                    right = right.D_xn();
                }
                if (left.is_zero() || right.is_zero()) continue;
                rhs = rhs + left * right;
            }
        }
        q.set(-(leading_inverse * rhs));
    }
    return q;
}

// ---- presets ----------------------------------------------------------------

namespace {

CliffordOp op_scalar(const Scalar& s) { return CliffordOp(CliffordElement::scalar(s)); }

XiPoly xi_of_vector(std::vector<Scalar> comp) {
    XiPoly p;
    for (int j = 1; j <= kDim; ++j)
        p.add(XiMono{}.times(j), op_scalar(comp[j - 1]));
    return p;
}

std::vector<Scalar> components_X() { return {sym::X(1), sym::X(2), sym::X(3), sym::X(4)}; }
std::vector<Scalar> components_Y() { return {sym::Y(1), sym::Y(2), sym::Y(3), sym::Y(4)}; }

CliffordOp clifford_of_vector(const std::vector<Scalar>& comp) {
    CliffordElement v(4);
    for (int j = 1; j <= kDim; ++j)
        v = v + CliffordElement::generator(j).scaled(comp[j - 1]);
    return CliffordOp(v);
}

// G(V, Psi) = -1/2 (c(V) Psi + Psi c(V)) with Psi generic
CliffordOp g_term(const std::vector<Scalar>& comp) {
    CliffordOp cv = clifford_of_vector(comp);
    CliffordOp psi = CliffordOp::psi();
    return (cv * psi + psi * cv).scaled(Scalar(GaussianRational(Rational(-1, 2))));
}

SymbolExpansion build_dirac() {
    SymbolExpansion d("D_psi");
    d.set(SymbolTerm(1, XiPoly::c_xi().scaled(Scalar::i()), 0));
    XiPoly s0 = XiPoly::constant(CliffordOp(JetStore::instance().sigma0_dirac()) + CliffordOp::psi());
    d.set(SymbolTerm(0, std::move(s0), 0));
    return d;
}

SymbolExpansion build_pair() {
    SymbolExpansion nn("nabla_X_nabla_Y");
    XiPoly xiX = xi_of_vector(components_X());
    XiPoly xiY = xi_of_vector(components_Y());
    nn.set(SymbolTerm(2, -(xiX * xiY), 0));

    const JetStore& jets = JetStore::instance();
    CliffordOp LY = CliffordOp(jets.connection_term(components_Y())) + g_term(components_Y());
    CliffordOp LX = CliffordOp(jets.connection_term(components_X())) + g_term(components_X());
    XiPoly s1 = XiPoly::xi(kDim, op_scalar(sym::X(4) * sym::dYn()));
    s1 = s1 + XiPoly::constant(LY) * xiX + XiPoly::constant(LX) * xiY;
    nn.set(SymbolTerm(1, s1.scaled(Scalar::i()), 0));
    return nn;
}

SymbolTerm leading_inverse_of(const SymbolTerm& lead) {
    // inverses used here: (i c(xi))^{-1} = i c(xi)/|xi|^2, (|xi|^2)^{-1},
    // (i |xi|^2 c(xi))^{-1} = i c(xi)/|xi|^4
    if (lead == SymbolTerm(1, XiPoly::c_xi().scaled(Scalar::i()), 0))
        return SymbolTerm(-1, XiPoly::c_xi().scaled(Scalar::i()), 1);
    if (lead == SymbolTerm(2, XiPoly::norm_sq(), 0))
        return SymbolTerm(-2, XiPoly::constant(op_scalar(Scalar(1))), 1);
    if (lead == SymbolTerm(3, (XiPoly::norm_sq() * XiPoly::c_xi()).scaled(Scalar::i()), 0))
        return SymbolTerm(-3, XiPoly::c_xi().scaled(Scalar::i()), 2);
    throw std::invalid_argument("no closed-form inverse for leading symbol");
}

SymbolExpansion build(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::DiracPerturbed:
            return build_dirac();
        case OperatorTag::CovariantPair:
            return build_pair();
        case OperatorTag::DiracSquare:
            return compose(preset(OperatorTag::DiracPerturbed), preset(OperatorTag::DiracPerturbed), 1,
                           "D_psi^2");
        case OperatorTag::DiracCube:
            return compose(preset(OperatorTag::DiracSquare), preset(OperatorTag::DiracPerturbed), 2,
                           "D_psi^3");
        case OperatorTag::DiracInverse: {
            const SymbolExpansion& d = preset(OperatorTag::DiracPerturbed);
            return invert(d, leading_inverse_of(d.term(1)), -2, "D_psi^-1");
        }
        case OperatorTag::DiracSquareInverse: {
            const SymbolExpansion& d2 = preset(OperatorTag::DiracSquare);
            return invert(d2, leading_inverse_of(d2.term(2)), -3, "D_psi^-2");
        }
        case OperatorTag::DiracCubeInverse: {
            const SymbolExpansion& d3 = preset(OperatorTag::DiracCube);
            return invert(d3, leading_inverse_of(d3.term(3)), -4, "D_psi^-3");
        }
        case OperatorTag::PairDm2:
            return compose(preset(OperatorTag::CovariantPair), preset(OperatorTag::DiracSquareInverse),
                           -1, "nn_D^-2");
        case OperatorTag::PairDm1:
            return compose(preset(OperatorTag::CovariantPair), preset(OperatorTag::DiracInverse), 0,
                           "nn_D^-1");
    }
    throw std::invalid_argument("unknown operator tag");
}

}  // namespace

const SymbolExpansion& preset(OperatorTag tag) {
    // build() recurses into other presets, hence the recursive lock
    static std::recursive_mutex mutex;
    static std::map<OperatorTag, SymbolExpansion> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(tag);
    if (it == cache.end()) it = cache.emplace(tag, build(tag)).first;
    return it->second;
}

SymbolTerm reference_sigma_m2_Dinv() {
    // c(xi) sigma_0(D_Psi) c(xi) / |xi|^4
    //   + c(xi)/|xi|^6 sum_j c(dx_j) [ d_xj(c(xi)) |xi|^2 - c(xi) d_xj(|xi|^2) ]
    XiPoly cxi = XiPoly::c_xi();
    XiPoly s0 = XiPoly::constant(CliffordOp(JetStore::instance().sigma0_dirac()) + CliffordOp::psi());
    SymbolTerm first(-2, cxi * s0 * cxi, 2);

    XiPoly cdxn = XiPoly::constant(CliffordOp(CliffordElement::generator(kDim)));
    XiPoly d_cxi = XiPoly::c_xi_prime().scaled(JetStore::instance().frame_jet_factor());
    XiPoly d_norm = XiPoly::norm_sq_prime().scaled(sym::h1());
    XiPoly bracket = d_cxi * XiPoly::norm_sq() - cxi * d_norm;
    SymbolTerm second(-2, cxi * cdxn * bracket, 3);
    return first + second;
}

}  // namespace rf
