#include <doctest.h>

#include "resforge/symbols.hpp"
#include "resforge/sphere.hpp"

using namespace rf;

namespace {
CliffordOp op_one() { return CliffordOp(CliffordElement::scalar(Scalar(1))); }

SymbolTerm identity_term() { return SymbolTerm(0, XiPoly::constant(op_one()), 0); }

XiPoly xiX() {
    XiPoly p;
    for (int j = 1; j <= 4; ++j)
        p.add(XiMono{}.times(j), CliffordOp(CliffordElement::scalar(sym::X(j))));
    return p;
}
XiPoly xiY() {
    XiPoly p;
    for (int j = 1; j <= 4; ++j)
        p.add(XiMono{}.times(j), CliffordOp(CliffordElement::scalar(sym::Y(j))));
    return p;
}

void check_identity(const SymbolExpansion& e, int lowest) {
    CHECK(e.term(0) == identity_term());
    for (int o = -1; o >= lowest; --o) CHECK(e.term(o).is_zero());
}
}  // namespace

TEST_CASE("preset leading symbols") {
    CHECK(preset(OperatorTag::DiracPerturbed).term(1) ==
          SymbolTerm(1, XiPoly::c_xi().scaled(Scalar::i()), 0));
    CHECK(preset(OperatorTag::DiracSquareInverse).term(-2) ==
          SymbolTerm(-2, XiPoly::constant(op_one()), 1));
    CHECK(preset(OperatorTag::DiracInverse).term(-1) ==
          SymbolTerm(-1, XiPoly::c_xi().scaled(Scalar::i()), 1));
    CHECK(preset(OperatorTag::DiracCubeInverse).term(-3) ==
          SymbolTerm(-3, XiPoly::c_xi().scaled(Scalar::i()), 2));
    CHECK(preset(OperatorTag::CovariantPair).term(2) == SymbolTerm(2, -(xiX() * xiY()), 0));
    // sigma_0(D_psi) = -(3/4) h'(0) c(dx_n) + c(Psi)
    XiPoly s0 = XiPoly::constant(
        CliffordOp(CliffordElement::generator(4).scaled(sym::h1().scaled(GaussianRational(Rational(-3, 4)))))
        + CliffordOp::psi());
    CHECK(preset(OperatorTag::DiracPerturbed).term(0) == SymbolTerm(0, s0, 0));
}

TEST_CASE("composition squares the Dirac symbol") {
    CHECK(preset(OperatorTag::DiracSquare).term(2) == SymbolTerm(2, XiPoly::norm_sq(), 0));
}

TEST_CASE("inverse identities through the stored depth") {
    check_identity(compose(preset(OperatorTag::DiracPerturbed), preset(OperatorTag::DiracInverse), -1),
                   -1);
    check_identity(compose(preset(OperatorTag::DiracSquare),
                           preset(OperatorTag::DiracSquareInverse), -1),
                   -1);
    check_identity(compose(preset(OperatorTag::DiracCube), preset(OperatorTag::DiracCubeInverse), -1),
                   -1);
    // and from the left as well
    check_identity(compose(preset(OperatorTag::DiracInverse), preset(OperatorTag::DiracPerturbed), -1),
                   -1);
}

TEST_CASE("composition is associative on the preset family") {
    SymbolExpansion lhs = compose(preset(OperatorTag::DiracSquare), preset(OperatorTag::DiracPerturbed), 2);
    SymbolExpansion rhs = compose(preset(OperatorTag::DiracPerturbed), preset(OperatorTag::DiracSquare), 2);
    CHECK(lhs.term(3) == rhs.term(3));
    CHECK(lhs.term(2) == rhs.term(2));
}

TEST_CASE("the composed pair operator matches its term-by-term assembly") {
    const SymbolExpansion& nn = preset(OperatorTag::CovariantPair);
    const SymbolExpansion& d2 = preset(OperatorTag::DiracSquareInverse);
    const SymbolExpansion& composed = preset(OperatorTag::PairDm2);
    CHECK(composed.term(0) == nn.term(2) * d2.term(-2));
    SymbolTerm expect = nn.term(2) * d2.term(-3) + nn.term(1) * d2.term(-2) +
                        nn.term(2).xi_derivative(4) * d2.term(-2).D_xn();
    CHECK(composed.term(-1) == expect);

    const SymbolExpansion& d1 = preset(OperatorTag::DiracInverse);
    const SymbolExpansion& pair1 = preset(OperatorTag::PairDm1);
    CHECK(pair1.term(1) == nn.term(2) * d1.term(-1));
    SymbolTerm expect1 = nn.term(2) * d1.term(-2) + nn.term(1) * d1.term(-1) +
                         nn.term(2).xi_derivative(4) * d1.term(-1).D_xn();
    CHECK(pair1.term(0) == expect1);
}

TEST_CASE("leading symbol of the pair composite") {
    // sigma_1(nn D^-1) = -i xi(X) xi(Y) c(xi) / |xi|^2
    SymbolTerm want(1, (xiX() * xiY() * XiPoly::c_xi()).scaled(-Scalar::i()), 1);
    CHECK(preset(OperatorTag::PairDm1).term(1) == want);
}

TEST_CASE("the inverted second-order symbol matches the closed formula") {
    CHECK(preset(OperatorTag::DiracInverse).term(-2) == reference_sigma_m2_Dinv());
}

TEST_CASE("sigma_{-3} of the squared inverse from the connection data") {
    const JetStore& jets = JetStore::instance();
    // assemble -i |xi|^-4 sum_k xi_k (Gamma^k - 2 sigma^k) - 2 i h1 xi_n |xi'|^2 |xi|^-6 + Psi part
    XiPoly core;
    for (int kk = 1; kk <= 4; ++kk) {
        CliffordOp coeff = CliffordOp(CliffordElement::scalar(jets.christoffel_contraction(kk))) -
                           CliffordOp(jets.spin_contraction(kk).scaled(Scalar(2)));
        if (!coeff.is_zero()) core.add(XiMono{}.times(kk), coeff);
    }
    CliffordOp psi = CliffordOp::psi();
    XiPoly psi_part = XiPoly::c_xi() * XiPoly::constant(psi) + XiPoly::constant(psi) * XiPoly::c_xi();
    SymbolTerm assembled =
        SymbolTerm(-3, (core + psi_part).scaled(-Scalar::i()), 2) +
        SymbolTerm(-3,
                   XiPoly::norm_sq_prime().scaled(
                       (sym::h1() * Scalar::i()).scaled(GaussianRational(-2))) *
                       XiPoly::xi(4, op_one()),
                   3);
    CHECK(preset(OperatorTag::DiracSquareInverse).term(-3) == assembled);

    // the scalar slice carries (3/2) h'(0) xi_n; the variant with 5/2 that the
    // transcribed string shows does not reproduce
    SymbolTerm five_half_variant =
        assembled + SymbolTerm::value(-3,
                                      XiPoly::xi(4, CliffordOp(CliffordElement::scalar(
                                                        -Scalar::i() * sym::h1()))),
                                      2);
    CHECK(!(preset(OperatorTag::DiracSquareInverse).term(-3) == five_half_variant));
}

TEST_CASE("projection of the restricted pair symbol") {
    // pi+ of -xi(X) xi(Y)/(1+xi_n^2): tangential block i/(2(xi_n-i)),
    // mixed blocks -1/(2(xi_n-i)), normal block -i/(2(xi_n-i))
    BoundaryRational p = preset(OperatorTag::PairDm2).term(0).restrict_boundary().pi_plus();
    GaussianRational half_i(Rational(0), Rational(1, 2));
    std::map<int, XiPoly> num;
    XiPoly tang;
    for (int j = 1; j <= 3; ++j)
        for (int l = 1; l <= 3; ++l)
            tang.add(XiMono{}.times(j).times(l),
                     CliffordOp(CliffordElement::scalar((sym::X(j) * sym::Y(l)).scaled(half_i))));
    XiPoly mixed;
    for (int j = 1; j <= 3; ++j)
        mixed.add(XiMono{}.times(j),
                  CliffordOp(CliffordElement::scalar(
                      (sym::X(j) * sym::Y(4) + sym::X(4) * sym::Y(j))
                          .scaled(GaussianRational(Rational(-1, 2))))));
    XiPoly normal = XiPoly::constant(
        CliffordOp(CliffordElement::scalar((sym::X(4) * sym::Y(4)).scaled(-half_i))));
    num[0] = tang + mixed + normal;
    CHECK(p == BoundaryRational(std::move(num), 1, 0));
}

TEST_CASE("boundary restriction") {
    BoundaryRational r = preset(OperatorTag::DiracSquareInverse).term(-2).restrict_boundary();
    CHECK(r == BoundaryRational({{0, XiPoly::constant(op_one())}}, 1, 1));

    // restriction splits c(xi) into the tangential part plus xi_n c(dx_n)
    SymbolTerm cube = preset(OperatorTag::DiracCubeInverse).term(-3);
    BoundaryRational rc = cube.restrict_boundary();
    std::map<int, XiPoly> want;
    want[0] = XiPoly::c_xi_prime().scaled(Scalar::i());
    want[1] = XiPoly::constant(CliffordOp(CliffordElement::generator(4)).scaled(Scalar::i()));
    CHECK(rc == BoundaryRational(std::move(want), 2, 2));
}

TEST_CASE("x_n jets of stored symbols") {
    // d_xn |xi|^-2 = -h1 |xi'|^2 / |xi|^4
    SymbolTerm want(-2, XiPoly::norm_sq_prime().scaled(-sym::h1()), 2);
    CHECK(preset(OperatorTag::DiracSquareInverse).term(-2).d_xn() == want);

    // d_xn (i c(xi)) = i (h1/2) c(xi')
    SymbolTerm want2(1, XiPoly::c_xi_prime().scaled(Scalar::i() * sym::h1())
                            .scaled(GaussianRational(Rational(1, 2))),
                     0);
    CHECK(preset(OperatorTag::DiracPerturbed).term(1).d_xn() == want2);

    // the pair numerator jet used by the second boundary case
    SymbolTerm pair_jet = preset(OperatorTag::PairDm2).term(0).d_xn();
    SymbolTerm want3(0, (xiX() * xiY() * XiPoly::norm_sq_prime()).scaled(sym::h1()), 2);
    CHECK(pair_jet == want3);
}

TEST_CASE("homogeneity is enforced") {
    XiPoly bad;
    bad.add(XiMono{}.times(1), op_one());
    bad.add(XiMono{}, op_one());
    CHECK_THROWS_AS(SymbolTerm(1, bad, 0), std::invalid_argument);
    for (auto tag : {OperatorTag::DiracPerturbed, OperatorTag::DiracSquare, OperatorTag::DiracCube,
                     OperatorTag::DiracInverse, OperatorTag::DiracSquareInverse,
                     OperatorTag::DiracCubeInverse, OperatorTag::CovariantPair, OperatorTag::PairDm2,
                     OperatorTag::PairDm1})
        for (auto& [o, t] : preset(tag).terms())
            CHECK(t.num.homogeneous_of(o + 2 * t.norm_power));
}

TEST_CASE("missing depth is an error, not a silent zero") {
    CHECK_THROWS_AS(preset(OperatorTag::PairDm2).term(-2), std::out_of_range);
    CHECK_THROWS_AS(
        compose(preset(OperatorTag::CovariantPair), preset(OperatorTag::DiracSquareInverse), -2),
        std::out_of_range);
}
