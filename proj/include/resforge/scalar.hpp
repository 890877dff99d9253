#pragma once
// Sparse multivariate polynomials over Q(i) in named indeterminates.
// A SymbolTable is the (append-only) registry giving indeterminates stable ids;
// every Scalar carries the table it was built against.

#include "resforge/rational.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rf {

using VarId = std::uint16_t;

class SymbolTable {
public:
    VarId intern(const std::string& name);
    std::optional<VarId> lookup(const std::string& name) const;
    const std::string& name(VarId id) const;
    std::size_t size() const;

    // The default table shared by the whole engine.
    static SymbolTable& global();

private:
    mutable std::mutex mutex_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, VarId> ids_;
};

// Exponent vector, sparse and sorted by variable id.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(VarId v, std::uint16_t exp = 1);

    Monomial operator*(const Monomial& o) const;
    int degree() const;
    int degree_in(VarId v) const;
    bool empty() const { return factors_.empty(); }
    const std::vector<std::pair<VarId, std::uint16_t>>& factors() const { return factors_; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

private:
    std::vector<std::pair<VarId, std::uint16_t>> factors_;
};

class Scalar {
public:
    Scalar() : table_(&SymbolTable::global()) {}
    explicit Scalar(const SymbolTable& table) : table_(&table) {}
    Scalar(std::int64_t n) : Scalar(GaussianRational(n)) {}
    Scalar(const Rational& r) : Scalar(GaussianRational(r)) {}
    Scalar(const GaussianRational& c);

    static Scalar variable(const std::string& name, const SymbolTable* table = nullptr);
    static Scalar i() { return Scalar(GaussianRational::i()); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_value() const;  // requires is_constant()

    const std::map<Monomial, GaussianRational>& terms() const { return terms_; }
    const SymbolTable* table() const { return table_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

    Scalar scaled(const GaussianRational& c) const;

    int degree_in(VarId v) const;
    bool depends_on(VarId v) const { return degree_in(v) > 0; }

    // Replace one indeterminate by a polynomial.
    Scalar substituted(VarId v, const Scalar& value) const;

    // Numeric evaluation; throws std::invalid_argument on an unbound indeterminate.
    std::complex<double> substitute(const std::map<VarId, std::complex<double>>& bindings) const;

    void add_term(const Monomial& m, const GaussianRational& c);

    std::string str() const;

private:
    void check_table(const Scalar& o) const;
    const SymbolTable* table_;
    std::map<Monomial, GaussianRational> terms_;
};

// Well-known indeterminates of the engine, interned on first use (global table).
namespace sym {
Scalar h1();        // h'(0), the metric jet
Scalar X(int j);    // X_1..X_n components
Scalar Y(int j);
Scalar dYn();       // dY_n/dx_n at the base point
Scalar pi();
Scalar omega3();    // volume of S^2, kept symbolic
Scalar upsilon3();  // volume of S^3, kept symbolic
Scalar scal();      // scalar curvature
Scalar f();         // scalar perturbation
Scalar U(int j);    // components of the one/two/three-field perturbation
Scalar V(int j);
Scalar W(int j);
Scalar EG();        // opaque Einstein tensor value EG(X,Y)
Scalar gXY();       // opaque g(X,Y)
Scalar nablaU(char dir, int j);  // components of nabla_X U / nabla_Y U, dir in {'X','Y'}
Scalar nablaV(char dir, int j);
Scalar nablaW(char dir, int j);
// trace placeholder trace[c(e_S) c(Psi)] for a blade mask S (bit k = e_{k+1})
Scalar psi_trace(unsigned mask);
VarId psi_trace_id(unsigned mask);
}

// Normalization pass applied only before comparisons against folded reference
// strings: Omega3 -> 4*pi, upsilon3 -> 2*pi^2.
Scalar fold_constants(const Scalar& s);

}  // namespace rf
