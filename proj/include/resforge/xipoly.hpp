#pragma once
// Polynomials in the cotangent fibre variables xi_1..xi_4 with CliffordOp
// coefficients. Cotangent dimension is fixed at 4 (the boundary pipeline).

#include "resforge/clifford.hpp"

#include <array>
#include <map>

namespace rf {

inline constexpr int kDim = 4;

struct XiMono {
    std::array<std::uint8_t, kDim> e{0, 0, 0, 0};
    int degree() const { return e[0] + e[1] + e[2] + e[3]; }
    friend bool operator==(const XiMono& a, const XiMono& b) { return a.e == b.e; }
    friend bool operator<(const XiMono& a, const XiMono& b) { return a.e < b.e; }
    XiMono times(int j, int k = 1) const {  // multiply by xi_j^k, 1-based j
        XiMono m = *this;
        m.e[j - 1] = static_cast<std::uint8_t>(m.e[j - 1] + k);
        return m;
    }
};

class XiPoly {
public:
    XiPoly() = default;
    static XiPoly constant(const CliffordOp& c);
    static XiPoly xi(int j, const CliffordOp& c);  // c * xi_j
    // c(xi) = sum_j xi_j c(e_j); c(xi') omits j = n
    static XiPoly c_xi();
    static XiPoly c_xi_prime();
    static XiPoly norm_sq();        // |xi|^2 * id
    static XiPoly norm_sq_prime();  // |xi'|^2 * id

    bool is_zero() const { return terms_.empty(); }
    const std::map<XiMono, CliffordOp>& terms() const { return terms_; }
    void add(const XiMono& m, const CliffordOp& c);

    friend XiPoly operator+(const XiPoly& a, const XiPoly& b);
    friend XiPoly operator-(const XiPoly& a, const XiPoly& b);
    friend XiPoly operator*(const XiPoly& a, const XiPoly& b);
    XiPoly operator-() const;
    XiPoly scaled(const Scalar& c) const;
    friend bool operator==(const XiPoly& a, const XiPoly& b) { return a.terms_ == b.terms_; }

    // formal partial derivative d/dxi_j
    XiPoly xi_derivative(int j) const;

    bool homogeneous_of(int degree) const;
    int max_degree() const;
    bool has_psi() const;

    // exact division by |xi|^2 if possible
    std::optional<XiPoly> divided_by_norm_sq() const;

    std::string str() const;

private:
    std::map<XiMono, CliffordOp> terms_;
};

}  // namespace rf
