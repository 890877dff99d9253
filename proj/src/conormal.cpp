#include "resforge/conormal.hpp"

#include <sstream>
#include <stdexcept>

namespace rf {

namespace {

std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// (xi_n - sign*i)^p as {power -> Gaussian coefficient}:
// coefficient of t^m is C(p,m) * (-sign*i)^(p-m)
std::map<int, GaussianRational> linear_power(int sign, int p) {
    std::map<int, GaussianRational> out;
    for (int m = 0; m <= p; ++m) {
        GaussianRational base(1);
        for (int q = 0; q < p - m; ++q) base = base * GaussianRational(Rational(0), Rational(-sign));
        out[m] = GaussianRational(binom(p, m)) * base;
    }
    return out;
}

std::map<int, XiPoly> mul_linear(const std::map<int, XiPoly>& num, int sign, int p) {
    if (p == 0) return num;
    auto lp = linear_power(sign, p);
    std::map<int, XiPoly> out;
    for (auto& [k, poly] : num)
        for (auto& [m, c] : lp) {
            XiPoly add = poly.scaled(Scalar(c));
            if (add.is_zero()) continue;
            auto [it, inserted] = out.emplace(k + m, add);
            if (!inserted) it->second = it->second + add;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

void add_into(std::map<int, XiPoly>& dst, int key, const XiPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = dst.emplace(key, p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) dst.erase(it);
    }
}

// evaluate numerator at xi_n = sign*i (XiPoly-valued)
XiPoly eval_at_pole(const std::map<int, XiPoly>& num, int sign) {
    XiPoly v;
    for (auto& [k, p] : num) {
        GaussianRational c = GaussianRational::i_pow(k);
        if (sign < 0 && k % 2 == 1) c = -c;
        v = v + p.scaled(Scalar(c));
    }
    return v;
}

// synthetic division of numerator by (xi_n - sign*i); requires exact divisibility
std::map<int, XiPoly> divide_linear(const std::map<int, XiPoly>& num, int sign) {
    int deg = num.empty() ? -1 : num.rbegin()->first;
    std::map<int, XiPoly> quot;
    XiPoly carry;  // running remainder coefficient
    GaussianRational root = sign > 0 ? GaussianRational::i() : -GaussianRational::i();
    for (int k = deg; k >= 1; --k) {
        XiPoly coef = carry;
        auto it = num.find(k);
        if (it != num.end()) coef = coef + it->second;
        if (!coef.is_zero()) quot.emplace(k - 1, coef);
        carry = coef.scaled(Scalar(root));
    }
    return quot;
}

}  // namespace

BoundaryRational::BoundaryRational(std::map<int, XiPoly> num, int a, int b)
    : num_(std::move(num)), a_(a), b_(b) {
    for (auto it = num_.begin(); it != num_.end();)
        it = it->second.is_zero() ? num_.erase(it) : std::next(it);
    reduce();
}

BoundaryRational BoundaryRational::over_norm_power(std::map<int, XiPoly> num, int c) {
    return BoundaryRational(std::move(num), c, c);
}

void BoundaryRational::reduce() {
    if (num_.empty()) { a_ = b_ = 0; return; }
    while (a_ > 0 && eval_at_pole(num_, +1).is_zero()) {
        num_ = divide_linear(num_, +1);
        --a_;
    }
    while (b_ > 0 && eval_at_pole(num_, -1).is_zero()) {
        num_ = divide_linear(num_, -1);
        --b_;
    }
}

BoundaryRational operator+(const BoundaryRational& x, const BoundaryRational& y) {
    int a = std::max(x.a_, y.a_), b = std::max(x.b_, y.b_);
    auto nx = mul_linear(mul_linear(x.num_, +1, a - x.a_), -1, b - x.b_);
    auto ny = mul_linear(mul_linear(y.num_, +1, a - y.a_), -1, b - y.b_);
    for (auto& [k, p] : ny) add_into(nx, k, p);
    return BoundaryRational(std::move(nx), a, b);
}

BoundaryRational operator-(const BoundaryRational& x, const BoundaryRational& y) {
    return x + (-y);
}

BoundaryRational operator*(const BoundaryRational& x, const BoundaryRational& y) {
    std::map<int, XiPoly> num;
    for (auto& [kx, px] : x.num_)
        for (auto& [ky, py] : y.num_)
            add_into(num, kx + ky, px * py);
    return BoundaryRational(std::move(num), x.a_ + y.a_, x.b_ + y.b_);
}

BoundaryRational BoundaryRational::operator-() const {
    BoundaryRational r = *this;
    for (auto& [k, p] : r.num_) p = -p;
    return r;
}

BoundaryRational BoundaryRational::scaled(const Scalar& c) const {
    std::map<int, XiPoly> num;
    for (auto& [k, p] : num_) {
        XiPoly s = p.scaled(c);
        if (!s.is_zero()) num.emplace(k, s);
    }
    return BoundaryRational(std::move(num), a_, b_);
}

std::map<int, XiPoly> BoundaryRational::laurent_at(int sign) const {
    int o = sign > 0 ? a_ : b_;
    if (o == 0) return {};
    int other = sign > 0 ? b_ : a_;
    // g(u) = N(sign*i + u) * (2*sign*i + u)^{-other}, need coefficients up to u^{o-1}
    std::vector<XiPoly> shifted(o);  // Taylor coefficients of N at sign*i
    for (auto& [k, p] : num_) {
        for (int m = 0; m <= std::min(k, o - 1); ++m) {
            // C(k,m) * (sign*i)^(k-m)
            GaussianRational c = GaussianRational(binom(k, m)) * GaussianRational::i_pow(k - m);
            if (sign < 0 && (k - m) % 2 == 1) c = -c;
            shifted[m] = shifted[m] + p.scaled(Scalar(c));
        }
    }
    // (2*sign*i + u)^{-other} = (2*sign*i)^{-other} * sum_m C(-other,m) (u/(2*sign*i))^m
    GaussianRational base_inv = GaussianRational(Rational(0), Rational(-sign, 2));  // 1/(2*sign*i)
    std::vector<GaussianRational> inv(o);
    GaussianRational lead(1);
    for (int q = 0; q < other; ++q) lead = lead * base_inv;
    for (int m = 0; m < o; ++m) {
        GaussianRational c = lead;
        if (other > 0) {
            GaussianRational bin(((m % 2) ? -1 : 1) * binom(other + m - 1, m));
            c = c * bin;
            for (int q = 0; q < m; ++q) c = c * base_inv;
        } else if (m > 0) {
            c = GaussianRational(0);
        }
        inv[m] = c;
    }
    std::map<int, XiPoly> out;
    for (int k = 1; k <= o; ++k) {
        XiPoly g;
        for (int j = 0; j <= o - k; ++j)
            g = g + shifted[j].scaled(Scalar(inv[o - k - j]));
        if (!g.is_zero()) out.emplace(k, g);
    }
    return out;
}

BoundaryRational::PartialFractions BoundaryRational::partial_fractions() const {
    PartialFractions pf;
    pf.at_plus_i = laurent_at(+1);
    pf.at_minus_i = laurent_at(-1);
    // polynomial part: subtract the pole parts and divide out the denominator
    BoundaryRational poles;
    {
        std::map<int, XiPoly> num;
        int amax = pf.at_plus_i.empty() ? 0 : pf.at_plus_i.rbegin()->first;
        for (auto& [k, p] : pf.at_plus_i)
            for (auto& [m, c] : linear_power(+1, amax - k))
                add_into(num, m, p.scaled(Scalar(c)));
        poles = BoundaryRational(std::move(num), amax, 0);
        std::map<int, XiPoly> numb;
        int bmax = pf.at_minus_i.empty() ? 0 : pf.at_minus_i.rbegin()->first;
        for (auto& [k, p] : pf.at_minus_i)
            for (auto& [m, c] : linear_power(-1, bmax - k))
                add_into(numb, m, p.scaled(Scalar(c)));
        poles = poles + BoundaryRational(std::move(numb), 0, bmax);
    }
    BoundaryRational rest = *this - poles;
    // rest must be a polynomial: numerator divisible by the full denominator
    for (int q = 0; q < rest.a_; ++q) rest.num_ = divide_linear(rest.num_, +1);
    for (int q = 0; q < rest.b_; ++q) rest.num_ = divide_linear(rest.num_, -1);
    pf.polynomial = rest.num_;
    return pf;
}

BoundaryRational BoundaryRational::recombine(const PartialFractions& pf) {
    BoundaryRational r(std::map<int, XiPoly>(pf.polynomial), 0, 0);
    for (auto& [k, p] : pf.at_plus_i)
        r = r + BoundaryRational({{0, p}}, k, 0);
    for (auto& [k, p] : pf.at_minus_i)
        r = r + BoundaryRational({{0, p}}, 0, k);
    return r;
}

BoundaryRational BoundaryRational::pi_plus() const {
    auto A = laurent_at(+1);
    if (A.empty()) return {};
    int amax = A.rbegin()->first;
    std::map<int, XiPoly> num;
    for (auto& [k, p] : A)
        for (auto& [m, c] : linear_power(+1, amax - k))
            add_into(num, m, p.scaled(Scalar(c)));
    return BoundaryRational(std::move(num), amax, 0);
}

BoundaryRational BoundaryRational::pi_minus() const {
    return *this - pi_plus();
}

BoundaryRational BoundaryRational::ddxi_n(int order) const {
    BoundaryRational r = *this;
    for (int q = 0; q < order; ++q) {
        // [N' (t^2+1) - N (a(t+i) + b(t-i))] / ((t-i)^{a+1} (t+i)^{b+1})
        std::map<int, XiPoly> nd;
        for (auto& [k, p] : r.num_)
            if (k >= 1) add_into(nd, k - 1, p.scaled(Scalar(k)));
        std::map<int, XiPoly> part1;
        for (auto& [k, p] : nd) {
            add_into(part1, k + 2, p);
            add_into(part1, k, p);
        }
        if (r.a_ + r.b_ > 0) {
            Scalar lin1(static_cast<std::int64_t>(r.a_ + r.b_));
            Scalar lin0 = Scalar(GaussianRational(Rational(0), Rational(r.a_ - r.b_)));
            for (auto& [k, p] : r.num_) {
                add_into(part1, k + 1, p.scaled(-lin1));
                add_into(part1, k, p.scaled(-lin0));
            }
        }
        r = BoundaryRational(std::move(part1), r.a_ + 1, r.b_ + 1);
    }
    return r;
}

XiPoly BoundaryRational::contour_integral_upper() const {
    auto A = laurent_at(+1);
    auto it = A.find(1);
    if (it == A.end()) return {};
    // 2*pi*i * residue
    return it->second.scaled(sym::pi().scaled(GaussianRational(Rational(0), Rational(2))));
}

XiPoly BoundaryRational::line_integral() const {
    if (num_degree() > a_ + b_ - 2)
        throw std::domain_error("line integral of non-integrable conormal rational (degree condition)");
    return contour_integral_upper();
}

BoundaryRational BoundaryRational::traced() const {
    std::map<int, XiPoly> num;
    for (auto& [k, p] : num_) {
        XiPoly tp;
        for (auto& [m, c] : p.terms()) {
            Scalar t = c.trace();
            if (!t.is_zero()) tp.add(m, CliffordOp(CliffordElement::scalar(t, c.dim())));
        }
        if (!tp.is_zero()) num.emplace(k, tp);
    }
    return BoundaryRational(std::move(num), a_, b_);
}

std::string BoundaryRational::str() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (auto& [k, p] : num_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")";
        if (k) os << "*t^" << k;
    }
    os << "] / ((t-i)^" << a_ << " (t+i)^" << b_ << ")";
    return os.str();
}

}  // namespace rf
