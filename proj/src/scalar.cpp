#include "resforge/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rf {

VarId SymbolTable::intern(const std::string& name) {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    if (names_.size() >= UINT16_MAX) throw std::length_error("symbol table full");
    VarId id = static_cast<VarId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

std::optional<VarId> SymbolTable::lookup(const std::string& name) const {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& SymbolTable::name(VarId id) const {
    std::lock_guard lock(mutex_);
    return names_.at(id);
}

std::size_t SymbolTable::size() const {
    std::lock_guard lock(mutex_);
    return names_.size();
}

SymbolTable& SymbolTable::global() {
    static SymbolTable table;
    return table;
}

Monomial Monomial::var(VarId v, std::uint16_t exp) {
    Monomial m;
    if (exp) m.factors_.push_back({v, exp});
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first == b->first) {
            r.factors_.push_back({a->first, static_cast<std::uint16_t>(a->second + b->second)});
            ++a; ++b;
        } else if (a->first < b->first) {
            r.factors_.push_back(*a++);
        } else {
            r.factors_.push_back(*b++);
        }
    }
    r.factors_.insert(r.factors_.end(), a, factors_.end());
    r.factors_.insert(r.factors_.end(), b, o.factors_.end());
    return r;
}

int Monomial::degree() const {
    int d = 0;
    for (auto& [v, e] : factors_) d += e;
    return d;
}

int Monomial::degree_in(VarId v) const {
    for (auto& [w, e] : factors_)
        if (w == v) return e;
    return 0;
}

Scalar::Scalar(const GaussianRational& c) : table_(&SymbolTable::global()) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Scalar Scalar::variable(const std::string& name, const SymbolTable* table) {
    Scalar s(table ? *table : SymbolTable::global());
    VarId id = const_cast<SymbolTable*>(s.table_)->intern(name);
    s.terms_.emplace(Monomial::var(id), GaussianRational(1));
    return s;
}

bool Scalar::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational Scalar::constant_value() const {
    if (terms_.empty()) return GaussianRational();
    if (!is_constant()) throw std::logic_error("Scalar::constant_value on non-constant");
    return terms_.begin()->second;
}

void Scalar::check_table(const Scalar& o) const {
    if (table_ != o.table_ && !terms_.empty() && !o.terms_.empty())
        throw std::invalid_argument("scalar context mismatch");
}

void Scalar::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_table(b);
    Scalar r = a;
    if (r.terms_.empty()) r.table_ = b.table_;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    a.check_table(b);
    Scalar r = a;
    if (r.terms_.empty()) r.table_ = b.table_;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_table(b);
    Scalar r(*a.table_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r(*table_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Scalar Scalar::scaled(const GaussianRational& c) const {
    Scalar r(*table_);
    if (c.is_zero()) return r;
    for (auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

int Scalar::degree_in(VarId v) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

Scalar Scalar::substituted(VarId v, const Scalar& value) const {
    Scalar r(*table_);
    for (auto& [m, c] : terms_) {
        int e = m.degree_in(v);
        if (e == 0) {
            r.add_term(m, c);
            continue;
        }
        Monomial rest;
        for (auto& [w, ex] : m.factors())
            if (w != v) rest = rest * Monomial::var(w, ex);
        Scalar piece(*table_);
        piece.add_term(rest, c);
        for (int k = 0; k < e; ++k) piece = piece * value;
        r = r + piece;
    }
    return r;
}

std::complex<double> Scalar::substitute(const std::map<VarId, std::complex<double>>& bindings) const {
    std::complex<double> total = 0.0;
    for (auto& [m, c] : terms_) {
        std::complex<double> v = c.to_complex();
        for (auto& [var, exp] : m.factors()) {
            auto it = bindings.find(var);
            if (it == bindings.end())
                throw std::invalid_argument("unbound indeterminate: " + table_->name(var));
            for (int k = 0; k < exp; ++k) v *= it->second;
        }
        total += v;
    }
    return total;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (auto& [v, e] : m.factors()) {
            os << "*" << table_->name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace sym {
Scalar h1() { return Scalar::variable("h1"); }
Scalar X(int j) { return Scalar::variable("X" + std::to_string(j)); }
Scalar Y(int j) { return Scalar::variable("Y" + std::to_string(j)); }
Scalar dYn() { return Scalar::variable("dYn"); }
Scalar pi() { return Scalar::variable("pi"); }
Scalar omega3() { return Scalar::variable("Omega3"); }
Scalar upsilon3() { return Scalar::variable("upsilon3"); }
Scalar scal() { return Scalar::variable("s"); }
Scalar f() { return Scalar::variable("f"); }
Scalar U(int j) { return Scalar::variable("U" + std::to_string(j)); }
Scalar V(int j) { return Scalar::variable("V" + std::to_string(j)); }
Scalar W(int j) { return Scalar::variable("W" + std::to_string(j)); }
Scalar EG() { return Scalar::variable("EG"); }
Scalar gXY() { return Scalar::variable("gXY"); }
Scalar nablaU(char dir, int j) { return Scalar::variable(std::string("D") + dir + "U" + std::to_string(j)); }
Scalar nablaV(char dir, int j) { return Scalar::variable(std::string("D") + dir + "V" + std::to_string(j)); }
Scalar nablaW(char dir, int j) { return Scalar::variable(std::string("D") + dir + "W" + std::to_string(j)); }

static std::string psi_trace_name(unsigned mask) {
    std::string n = "T";
    for (int k = 0; k < 4; ++k)
        if (mask & (1u << k)) n += std::to_string(k + 1);
    return n;
}
Scalar psi_trace(unsigned mask) { return Scalar::variable(psi_trace_name(mask)); }
VarId psi_trace_id(unsigned mask) { return SymbolTable::global().intern(psi_trace_name(mask)); }
}

Scalar fold_constants(const Scalar& s) {
    auto& tbl = SymbolTable::global();
    Scalar r = s;
    if (auto o3 = tbl.lookup("Omega3"))
        r = r.substituted(*o3, sym::pi().scaled(GaussianRational(4)));
    if (auto u3 = tbl.lookup("upsilon3"))
        r = r.substituted(*u3, (sym::pi() * sym::pi()).scaled(GaussianRational(2)));
    return r;
}

}  // namespace rf
