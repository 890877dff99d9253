#include "resforge/oracle.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rf {

namespace {
constexpr Cx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
}

Mat4 mat_zero() { return Mat4{}; }
Mat4 mat_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}
Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            Cx aik = a[i][k];
            if (aik == Cx{}) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}
Mat4 mat_add(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}
Mat4 mat_scale(const Mat4& a, Cx s) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] * s;
    return c;
}
Cx mat_trace(const Mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

namespace {
Mat4 kron(const std::array<std::array<Cx, 2>, 2>& a, const std::array<std::array<Cx, 2>, 2>& b) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
    return m;
}

std::array<Mat4, 4> build_generators() {
    using M2 = std::array<std::array<Cx, 2>, 2>;
    M2 sx{{{0.0, 1.0}, {1.0, 0.0}}};
    M2 sy{{{0.0, -kI}, {kI, 0.0}}};
    M2 sz{{{1.0, 0.0}, {0.0, -1.0}}};
    M2 id{{{1.0, 0.0}, {0.0, 1.0}}};
    std::array<Mat4, 4> g{kron(sx, sx), kron(sy, sx), kron(sz, sx), kron(id, sy)};
    for (auto& m : g) m = mat_scale(m, kI);  // e_k = i * (Hermitian square-one generator)
    // startup check of the relations
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Mat4 ac = mat_add(mat_mul(g[a], g[b]), mat_mul(g[b], g[a]));
            Mat4 want = (a == b) ? mat_scale(mat_identity(), -2.0) : mat_zero();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (std::abs(ac[i][j] - want[i][j]) > 1e-14)
                        throw std::logic_error("gamma model violates the Clifford relations");
        }
    return g;
}
}  // namespace

const std::array<Mat4, 4>& gamma_generators() {
    static const std::array<Mat4, 4> g = build_generators();
    return g;
}

Mat4 gamma_blade(BladeMask mask) {
    Mat4 m = mat_identity();
    for (int k = 0; k < 4; ++k)
        if (mask & (1u << k)) m = mat_mul(m, gamma_generators()[k]);
    return m;
}

Mat4 gamma_matrix(const CliffordElement& e, const Bindings& b) {
    if (e.dim() != 4) throw std::invalid_argument("matrix model is four-dimensional");
    Mat4 m{};
    for (auto& [mask, c] : e.terms()) m = mat_add(m, mat_scale(gamma_blade(mask), c.substitute(b)));
    return m;
}

Mat4 gamma_matrix(const CliffordOp& e, const Bindings& b, const Mat4& psi) {
    Mat4 m = gamma_matrix(e.plain(), b);
    for (auto& [lr, c] : e.psi_terms()) {
        Mat4 word = mat_mul(gamma_blade(lr.first), mat_mul(psi, gamma_blade(lr.second)));
        m = mat_add(m, mat_scale(word, c.substitute(b)));
    }
    return m;
}

Cx gamma_trace(const CliffordElement& e, const Bindings& b) {
    return mat_trace(gamma_matrix(e, b));
}

namespace {
// numeric form of a BoundaryRational at a fixed tangential point: matrices by
// xi_n power over (t-i)^a (t+i)^b
struct CompiledRational {
    std::vector<Mat4> coeff;  // index = xi_n power
    int a = 0, b = 0;

    CompiledRational(const BoundaryRational& f, const Bindings& bind, const Mat4& psi,
                     const std::array<double, 3>& s)
        : a(f.pole_order_plus()), b(f.pole_order_minus()) {
        coeff.resize(static_cast<std::size_t>(std::max(0, f.num_degree() + 1)), mat_zero());
        for (auto& [tp, poly] : f.num())
            for (auto& [mono, op] : poly.terms()) {
                Cx mval = 1.0;
                for (int k = 0; k < 3; ++k)
                    for (int q = 0; q < mono.e[k]; ++q) mval *= s[k];
                coeff[tp] = mat_add(coeff[tp], mat_scale(gamma_matrix(op, bind, psi), mval));
            }
    }

    Mat4 eval(Cx t) const {
        Mat4 num = mat_zero();
        for (std::size_t k = coeff.size(); k-- > 0;)
            num = mat_add(mat_scale(num, t), coeff[k]);
        Cx den = std::pow(t - kI, a) * std::pow(t + kI, b);
        return mat_scale(num, 1.0 / den);
    }
};
}  // namespace

Mat4 eval_boundary_rational(const BoundaryRational& f, const Bindings& b, const Mat4& psi,
                            const std::array<double, 3>& s, Cx t) {
    return CompiledRational(f, b, psi, s).eval(t);
}

Cx quad_line_fn(const std::function<Cx(double)>& f, double tol) {
    // t = tan(theta) maps R to (-pi/2, pi/2); composite Gauss-Legendre with
    // panel doubling
    static const double gx[] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                0.5384693101056831, 0.9061798459386640};
    static const double gw[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                0.4786286704993665, 0.2369268850561891};
    auto eval = [&](int panels) {
        Cx acc = 0.0;
        double lo = -kPi / 2, hi = kPi / 2;
        double w = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            double a = lo + p * w, mid = a + w / 2, half = w / 2;
            for (int q = 0; q < 5; ++q) {
                double theta = mid + half * gx[q];
                double t = std::tan(theta);
                double sec2 = 1.0 + t * t;
                acc += half * gw[q] * f(t) * sec2;
            }
        }
        return acc;
    };
    Cx prev = eval(32);
    for (int panels = 64; panels <= 2048; panels *= 2) {
        Cx cur = eval(panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

Cx quad_line(const BoundaryRational& f, const Bindings& b, const Mat4& psi,
             const std::array<double, 3>& s, double tol) {
    if (f.num_degree() > f.pole_order_plus() + f.pole_order_minus() - 2)
        throw std::domain_error("quad_line: integrand not integrable at infinity");
    return quad_line_fn(
        [&](double t) { return mat_trace(eval_boundary_rational(f, b, psi, s, t)); }, tol);
}

double sphere_quad(const std::function<double(const std::array<double, 3>&)>& f) {
    return sphere_quad_cx([&](const std::array<double, 3>& s) { return Cx(f(s), 0.0); }).real();
}

Cx sphere_quad_cx(const std::function<Cx(const std::array<double, 3>&)>& f) {
    // Gauss-Legendre in cos(theta) (4 nodes: exact through degree 7) times a
    // uniform grid in phi (8 nodes: exact through harmonic order 7)
    static const double gx[] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
    static const double gw[] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};
    constexpr int nphi = 8;
    Cx acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        double c = gx[a], sn = std::sqrt(1.0 - c * c);
        for (int p = 0; p < nphi; ++p) {
            double phi = 2.0 * kPi * p / nphi;
            std::array<double, 3> s{sn * std::cos(phi), sn * std::sin(phi), c};
            acc += gw[a] * (2.0 * kPi / nphi) * f(s);
        }
    }
    return acc;
}

McEstimate mc_sphere(const XiPoly& monomial, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sum = 0, sumsq = 0;
    for (std::size_t q = 0; q < samples; ++q) {
        double x = gauss(rng), y = gauss(rng), z = gauss(rng);
        double r = std::sqrt(x * x + y * y + z * z);
        std::array<double, 3> s{x / r, y / r, z / r};
        double v = 0;
        for (auto& [m, op] : monomial.terms()) {
            double mv = 1;
            for (int k = 0; k < 3; ++k)
                for (int e = 0; e < m.e[k]; ++e) mv *= s[k];
            v += mv * op.plain().coeff(0).substitute({}).real();
        }
        sum += v;
        sumsq += v * v;
    }
    double n = static_cast<double>(samples);
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    // estimates of the integral: mean * area of S^2
    double area = 4.0 * kPi;
    return {mean * area, std::sqrt(var / n) * area};
}

Bindings random_bindings(std::mt19937_64& rng) {
    auto& tbl = SymbolTable::global();
    std::uniform_int_distribution<int> numer(-9, 9);
    std::uniform_int_distribution<int> denom(1, 7);
    Bindings b;
    auto bind = [&](const char* name) {
        VarId id = tbl.intern(name);
        b[id] = Cx(double(numer(rng)) / denom(rng), 0.0);
    };
    bind("h1");
    bind("dYn");
    for (int j = 1; j <= 4; ++j) {
        bind(("X" + std::to_string(j)).c_str());
        bind(("Y" + std::to_string(j)).c_str());
    }
    b[tbl.intern("pi")] = Cx(kPi, 0.0);
    b[tbl.intern("Omega3")] = Cx(4.0 * kPi, 0.0);
    b[tbl.intern("upsilon3")] = Cx(2.0 * kPi * kPi, 0.0);
    return b;
}

Mat4 random_psi(std::mt19937_64& rng, Bindings& b) {
    std::uniform_int_distribution<int> numer(-5, 5);
    std::uniform_int_distribution<int> denom(1, 5);
    Mat4 psi{};
    for (unsigned mask = 0; mask < 16; ++mask) {
        Cx lambda(double(numer(rng)) / denom(rng), double(numer(rng)) / denom(rng));
        psi = mat_add(psi, mat_scale(gamma_blade(static_cast<BladeMask>(mask)), lambda));
    }
    for (unsigned mask = 0; mask < 16; ++mask) {
        Mat4 bl = gamma_blade(static_cast<BladeMask>(mask));
        b[sym::psi_trace_id(mask)] = mat_trace(mat_mul(bl, psi));
    }
    return psi;
}

OracleReport oracle_case_check(Theorem theorem, const CaseSpec& spec,
                               const DensityExpression& symbolic_density, std::uint64_t seed,
                               double tolerance) {
    const SymbolExpansion& num =
        preset(theorem == Theorem::PairDm2Residue ? OperatorTag::PairDm2 : OperatorTag::PairDm1);
    const SymbolExpansion& den = preset(theorem == Theorem::PairDm2Residue
                                            ? OperatorTag::DiracSquareInverse
                                            : OperatorTag::DiracCubeInverse);
    OracleReport rep;
    rep.quantity = (theorem == Theorem::PairDm2Residue ? "t1_" : "t2_") + spec.label;
    rep.seed = seed;
    rep.tolerance = tolerance;

    std::mt19937_64 rng(seed);
    Bindings b = random_bindings(rng);
    Mat4 psi = random_psi(rng, b);
    rep.symbolic = symbolic_density.poly().substitute(b);

    if (spec.alpha > 0) {
        // the denominator factor carries a tangential x-jet, identically zero
        rep.numeric = 0.0;
    } else {
        CaseFactors f = case_factors(spec, num, den);
        // pi^+ and its xi_n derivatives from a fixed contour around +i
        constexpr int M = 64;
        constexpr double rho = 0.5;
        constexpr int M2 = 32;
        constexpr double rho2 = 0.45;
        rep.numeric =
            sphere_quad_cx([&](const std::array<double, 3>& s) {
                CompiledRational num_c(f.numerator_pre_projection, b, psi, s);
                CompiledRational den_c(f.denominator_raw, b, psi, s);
                std::array<Mat4, M> contour;
                std::array<Cx, M> nodes;
                for (int m = 0; m < M; ++m) {
                    double th = 2.0 * kPi * m / M;
                    Cx zeta = kI + rho * std::exp(kI * th);
                    nodes[m] = zeta;
                    contour[m] = mat_scale(num_c.eval(zeta), rho * std::exp(kI * th) / double(M));
                }
                double kfact = 1;
                for (int q = 2; q <= f.k; ++q) kfact *= q;
                double mfact = 1;
                for (int q = 2; q <= f.den_derivs; ++q) mfact *= q;
                return quad_line_fn(
                    [&](double t) {
                        // pi+^{(k)}(t) = sum_w g(zeta_w) (-1)^k k! / (t - zeta_w)^{k+1}
                        Mat4 A{};
                        for (int m = 0; m < M; ++m) {
                            Cx kernel = kfact / std::pow(t - nodes[m], f.k + 1);
                            if (f.k % 2) kernel = -kernel;
                            A = mat_add(A, mat_scale(contour[m], kernel));
                        }
                        // denominator-side derivative by a Cauchy circle around t
                        Mat4 B{};
                        for (int m = 0; m < M2; ++m) {
                            double th = 2.0 * kPi * m / M2;
                            Cx offset = rho2 * std::exp(kI * th);
                            B = mat_add(B, mat_scale(den_c.eval(t + offset),
                                                     mfact / (double(M2) * std::pow(offset, f.den_derivs))));
                        }
                        return mat_trace(mat_mul(A, B));
                    },
                    1e-10);
            });
        rep.numeric *= spec.prefactor().to_complex();
    }

    double ref = std::max(std::abs(rep.symbolic), std::abs(rep.numeric));
    double err = std::abs(rep.symbolic - rep.numeric);
    rep.rel_error = (ref < 1e-9) ? err : err / ref;
    rep.pass = rep.rel_error <= tolerance;
    return rep;
}

}  // namespace rf
