// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include "resforge/report.hpp"
#include "resforge/sphere.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

using namespace rf;
using nlohmann::json;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what
              << std::endl;
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CliffordElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> mask(0, 15);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    CliffordElement r(4);
    for (int q = 0; q < 6; ++q)
        r.add(static_cast<BladeMask>(mask(rng)),
              Scalar(GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)))));
    return r;
}

BoundaryRational random_rational(std::mt19937_64& rng, int max_pole = 3) {
    std::uniform_int_distribution<int> pole(0, max_pole);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::map<int, XiPoly> n;
    int d = deg(rng);
    for (int p = 0; p <= d; ++p)
        n.emplace(p, XiPoly::constant(CliffordOp(CliffordElement::scalar(Scalar(
                         GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))))))));
    return BoundaryRational(std::move(n), pole(rng), pole(rng));
}

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260808);
    bool ok = true;
    for (int q = 0; q < 200 && ok; ++q) {
        CliffordElement a = random_element(rng);
        Cx sym = spinor_trace(a).substitute({});
        Cx mat = gamma_trace(a, {});
        ok = std::abs(sym - mat) <= 1e-10 * (1.0 + std::abs(sym));
    }
    double dt = seconds_since(t0);
    report(1, ok && dt < 5.0,
           "spinor trace vs matrix trace on 200 seeded elements (" + std::to_string(dt) + " s)");
}

void criterion_2() {
    XiPoly cxp = XiPoly::c_xi_prime();
    XiPoly cdxn = XiPoly::constant(CliffordOp(CliffordElement::generator(4)));
    XiPoly jet = cxp.scaled(sym::h1().scaled(GaussianRational(Rational(1, 2))));
    auto traced = [](const XiPoly& p) {
        XiPoly out;
        for (auto& [m, c] : p.terms()) {
            Scalar t = c.trace();
            if (!t.is_zero()) out.add(m, CliffordOp(CliffordElement::scalar(t)));
        }
        return reduce_mod_sphere(out);
    };
    XiPoly first = traced(cxp * cxp * cdxn * jet);
    XiPoly second = traced(cdxn * cxp * cdxn * jet);
    XiPoly want;
    want.add(XiMono{}, CliffordOp(CliffordElement::scalar(sym::h1().scaled(GaussianRational(-2)))));
    report(2, first.is_zero() && second == want,
           "restricted frame-jet trace identities (0 and -2 h'(0)), exact");
}

void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31415);
    bool ok = true;
    for (int q = 0; q < 100 && ok; ++q) {
        BoundaryRational f = random_rational(rng), g = random_rational(rng);
        BoundaryRational p = f.pi_plus();
        ok = p.pi_plus() == p && (f + g).pi_plus() == f.pi_plus() + g.pi_plus() &&
             f.pi_plus() + f.pi_minus() == f;
    }
    // residue value of the double-pole kernel around +i
    BoundaryRational kernel({{0, XiPoly::constant(CliffordOp(CliffordElement::scalar(Scalar(1))))}}, 5,
                            2);
    XiPoly want;
    want.add(XiMono{}, CliffordOp(CliffordElement::scalar(
                           sym::pi().scaled(GaussianRational(Rational(0), Rational(-5, 32))))));
    ok = ok && kernel.contour_integral_upper() == want;

    auto& tbl = SymbolTable::global();
    Bindings bind{{tbl.intern("pi"), {3.14159265358979312, 0.0}}};
    int done = 0;
    while (done < 50 && ok) {
        BoundaryRational f = random_rational(rng);
        if (f.num_degree() > f.pole_order_plus() + f.pole_order_minus() - 2) continue;
        XiPoly li = f.traced().line_integral();
        Cx symbolic = li.is_zero() ? Cx{} : li.terms().begin()->second.plain().coeff(0).substitute(bind);
        Cx numeric = quad_line(f, {}, mat_zero(), {0.2, 0.3, 0.9});
        ok = std::abs(symbolic - numeric) <= 1e-8 * std::max(1.0, std::abs(symbolic));
        ++done;
    }
    double dt = seconds_since(t0);
    report(3, ok && dt < 30.0,
           "pi+ projection suite and residue integrals vs quadrature (" + std::to_string(dt) + " s)");
}

void criterion_4() {
    bool ok = true;
    for (int j = 1; j <= 3 && ok; ++j)
        for (int l = 1; l <= 3 && ok; ++l) {
            XiPoly p;
            p.add(XiMono{}.times(j).times(l), CliffordOp(CliffordElement::scalar(Scalar(1))));
            Scalar want = (j == l) ? sym::omega3().scaled(GaussianRational(Rational(1, 3))) : Scalar(0);
            ok = integrate_sphere_scalar(p) == want;
        }
    auto& tbl = SymbolTable::global();
    Bindings b{{tbl.intern("Omega3"), {4 * 3.14159265358979312, 0.0}}};
    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<int> half_exp(0, 3);
    std::vector<std::future<bool>> checks;
    for (int q = 0; q < 30; ++q) {
        int a1 = 2 * half_exp(rng), a2 = 2 * half_exp(rng), a3 = 2 * half_exp(rng);
        while (a1 + a2 + a3 > 6) {
            a1 = 2 * half_exp(rng); a2 = 2 * half_exp(rng); a3 = 2 * half_exp(rng);
        }
        std::uint64_t seed = 5000 + q;
        checks.push_back(std::async(std::launch::async, [a1, a2, a3, seed, &b] {
            XiPoly p;
            p.add(XiMono{}.times(1, a1).times(2, a2).times(3, a3),
                  CliffordOp(CliffordElement::scalar(Scalar(1))));
            double exact = integrate_sphere_scalar(p).substitute(b).real();
            McEstimate est = mc_sphere(p, 1000000, seed);
            return std::abs(est.mean - exact) <= 3 * est.std_error + 1e-12;
        }));
    }
    for (auto& c : checks) ok = c.get() && ok;
    report(4, ok, "sphere moments exact and within 3 sigma of Monte-Carlo at 1e6 samples");
}

void criterion_5() {
    auto identity_through = [](const SymbolExpansion& e, int lowest) {
        if (!(e.term(0) ==
              SymbolTerm(0, XiPoly::constant(CliffordOp(CliffordElement::scalar(Scalar(1)))), 0)))
            return false;
        for (int o = -1; o >= lowest; --o)
            if (!e.term(o).is_zero()) return false;
        return true;
    };
    bool ok = identity_through(
        compose(preset(OperatorTag::DiracPerturbed), preset(OperatorTag::DiracInverse), -1), -1);
    const SymbolExpansion& nn = preset(OperatorTag::CovariantPair);
    const SymbolExpansion& d2 = preset(OperatorTag::DiracSquareInverse);
    SymbolTerm expect = nn.term(2) * d2.term(-3) + nn.term(1) * d2.term(-2) +
                        nn.term(2).xi_derivative(4) * d2.term(-2).D_xn();
    ok = ok && preset(OperatorTag::PairDm2).term(-1) == expect &&
         preset(OperatorTag::PairDm2).term(0) == nn.term(2) * d2.term(-2);
    ok = ok && identity_through(
                   compose(preset(OperatorTag::DiracCube), preset(OperatorTag::DiracCubeInverse), -1),
                   -1);
    report(5, ok, "composition identities (inverse pairs, pair operator term-for-term), exact");
}

void criterion_6() {
    BoundaryResult t1 = boundary_density(Theorem::PairDm2Residue, PsiGeneric{});
    BoundaryResult t2 = boundary_density(Theorem::PairDm1Residue, PsiGeneric{});
    bool ok = t1.cases[0].first.alpha == 1 && t1.cases[0].second.poly().is_zero() &&
              t2.cases[0].first.alpha == 1 && t2.cases[0].second.poly().is_zero();
    report(6, ok, "tangential-derivative cases vanish exactly");
}

void criterion_7() {
    BoundaryResult t1 = boundary_density(Theorem::PairDm2Residue, PsiGeneric{});
    bool ok = true;
    std::string note;
    for (const char* label : {"aII", "aIII"}) {
        const CaseSpec* cspec = nullptr;
        const DensityExpression* engine = nullptr;
        for (auto& [spec, d] : t1.cases)
            if (spec.label == label) { cspec = &spec; engine = &d; }
        DensityExpression ref = reference_density(Theorem::PairDm2Residue, label);
        bool folded_match = (fold_constants(engine->poly()) - fold_constants(ref.poly())).is_zero();
        if (folded_match) {
            note += std::string(label) + " matches; ";
            continue;
        }
        // deviation: the quadrature oracle decides, the ledger records both values
        const LedgerEntry* entry = nullptr;
        for (auto& e : t1.ledger)
            if (e.id == std::string("t1_") + label) entry = &e;
        bool ledgered = entry && !entry->engine_value.empty() && !entry->reference_value.empty() &&
                        !entry->delta.empty();
        bool oracle_ok = true;
        for (std::uint64_t s : {1u, 2u, 3u})
            oracle_ok = oracle_ok &&
                        oracle_case_check(Theorem::PairDm2Residue, *cspec, *engine, 777 + s).pass;
        ok = ok && ledgered && oracle_ok;
        note += std::string(label) + " deviates from the transcribed structure" +
                (ledgered && oracle_ok ? " (ledgered; oracle confirms engine value); "
                                       : " (UNRESOLVED); ");
    }
    report(7, ok, "reference coefficient comparison: " + note);
}

void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double max_err = 0;
    for (Theorem th : {Theorem::PairDm2Residue, Theorem::PairDm1Residue}) {
        BoundaryResult r = boundary_density(th, PsiGeneric{});
        std::vector<std::future<OracleReport>> pending;
        std::uint64_t salt = 0;
        for (auto& [spec, d] : r.cases)
            for (int q = 0; q < 20; ++q)
                pending.push_back(std::async(std::launch::async, oracle_case_check, th, spec, d,
                                             900000 + 1000 * (salt++), 1e-6));
        for (auto& f : pending) {
            OracleReport rep = f.get();
            ok = ok && rep.pass;
            max_err = std::max(max_err, rep.rel_error);
        }
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "every case of both theorems vs quadrature, 20 seeded bindings (max rel err " << max_err
       << ", " << dt << " s)";
    report(8, ok && dt < 600.0, os.str());
}

void criterion_9() {
    bool ok = trace_E(PsiScalarField{}, 4) ==
              sym::scal() - (sym::f() * sym::f()).scaled(GaussianRational(12));
    for (auto spec : std::vector<PsiSpec>{PsiScalarField{}, PsiOneField{}, PsiTwoField{}, PsiThreeField{}}) {
        Scalar F = f_trace(spec);
        // antisymmetry via explicit swap of the X/Y data
        auto& tbl = SymbolTable::global();
        Scalar swapped = F;
        auto swap_pair = [&](const std::string& a, const std::string& b) {
            std::string tmp = "__acc_tmp_" + a;
            swapped = swapped.substituted(tbl.intern(a), Scalar::variable(tmp));
            swapped = swapped.substituted(tbl.intern(b), Scalar::variable(a));
            swapped = swapped.substituted(tbl.intern(tmp), Scalar::variable(b));
        };
        for (int j = 1; j <= 4; ++j) {
            swap_pair("X" + std::to_string(j), "Y" + std::to_string(j));
            swap_pair("DXU" + std::to_string(j), "DYU" + std::to_string(j));
            swap_pair("DXV" + std::to_string(j), "DYV" + std::to_string(j));
            swap_pair("DXW" + std::to_string(j), "DYW" + std::to_string(j));
        }
        swap_pair("DXf", "DYf");
        ok = ok && (F + swapped).is_zero();
    }
    ok = ok && fold_constants(assemble_interior(PsiScalarField{}).eg_coefficient) ==
                   (sym::pi() * sym::pi()).scaled(GaussianRational(Rational(4, 3)));
    report(9, ok, "interior suite: trace(E), F antisymmetry, Einstein coefficient, exact");
}

void criterion_10() {
    CliffordElement dxn = CliffordElement::generator(4);
    Scalar normal_trace_scalar = spinor_trace(dxn * psi_instantiate(PsiScalarField{}));
    Scalar normal_trace_two = spinor_trace(dxn * psi_instantiate(PsiTwoField{}));
    Scalar normal_trace_one = spinor_trace(dxn * psi_instantiate(PsiOneField{}));
    Scalar gVW(0), gUW(0), gUV(0);
    for (int j = 1; j <= 4; ++j) {
        gVW += sym::V(j) * sym::W(j);
        gUW += sym::U(j) * sym::W(j);
        gUV += sym::U(j) * sym::V(j);
    }
    Scalar three_want =
        (sym::U(4) * gVW - sym::V(4) * gUW + sym::W(4) * gUV).scaled(GaussianRational(4));
    bool ok = normal_trace_scalar.is_zero() && normal_trace_two.is_zero() &&
              normal_trace_one == sym::U(4).scaled(GaussianRational(-4)) &&
              spinor_trace(dxn * psi_instantiate(PsiThreeField{})) == three_want;

    // the boundary density respects the same switches through specialization
    BoundaryResult generic = boundary_density(Theorem::PairDm2Residue, PsiGeneric{});
    const DensityExpression& caseb = generic.cases[3].second;
    Scalar stripped = caseb.poly();
    for (unsigned mask = 0; mask < 16; ++mask)
        stripped = stripped.substituted(sym::psi_trace_id(mask), Scalar(0));
    auto tn_block = [&](const PsiSpec& psi) {
        return caseb.specialized(psi).poly() - stripped;
    };
    ok = ok && tn_block(PsiScalarField{}).is_zero() && tn_block(PsiTwoField{}).is_zero() &&
         !tn_block(PsiOneField{}).is_zero() && !tn_block(PsiThreeField{}).is_zero();
    // one-field: the placeholder block evaluates at T_j = -4 U_j, higher blades zero
    Scalar expected_one = caseb.poly();
    for (unsigned j = 1; j <= 4; ++j)
        expected_one = expected_one.substituted(sym::psi_trace_id(1u << (j - 1)),
                                                sym::U(j).scaled(GaussianRational(-4)));
    for (unsigned mask : {0u, 3u, 5u, 6u, 9u, 10u, 12u, 7u, 11u, 13u, 14u, 15u})
        expected_one = expected_one.substituted(sym::psi_trace_id(mask), Scalar(0));
    ok = ok && caseb.specialized(PsiOneField{}).poly() == expected_one;
    report(10, ok, "perturbation switches: normal trace values and density specialization, exact");
}

std::string g_cli_path = "./resforge";

int run_cli(const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void criterion_11() {
    bool ok = true;
    std::string note;
    int runs = 0;
    for (const char* theorem : {"1", "2", "interior"})
        for (const char* psi : {"generic", "f", "vector", "bivector", "trivector"})
            for (const char* format : {"json", "latex", "both"}) {
                std::string out = "/tmp/resforge_acc_" + std::to_string(runs++);
                std::string args = std::string("--theorem ") + theorem + " --psi " + psi +
                                   " --format " + format + " --seed 7 --out " + out;
                if (run_cli(args) != 0) {
                    ok = false;
                    note = "run failed: " + args;
                    break;
                }
                if (std::string(format) != "latex") {
                    std::ifstream f(out + ".json");
                    if (!f) { ok = false; note = "missing json: " + out; break; }
                    json j = json::parse(f, nullptr, false);
                    if (j.is_discarded() || !j.contains("density") || !j.contains("ledger") ||
                        !j.contains("oracle")) {
                        ok = false;
                        note = "schema violation: " + out;
                        break;
                    }
                    DensityExpression parsed = density_from_json(j["density"].dump());
                    PsiSpec spec = make_psi(std::string(psi) == "generic"    ? PsiKind::Generic
                                            : std::string(psi) == "f"        ? PsiKind::ScalarField
                                            : std::string(psi) == "vector"   ? PsiKind::Vector
                                            : std::string(psi) == "bivector" ? PsiKind::Bivector
                                                                             : PsiKind::Trivector);
                    DensityExpression expected;
                    if (std::string(theorem) == "interior")
                        expected = DensityExpression(assemble_interior(spec).total());
                    else
                        expected = boundary_density(std::string(theorem) == "1"
                                                        ? Theorem::PairDm2Residue
                                                        : Theorem::PairDm1Residue,
                                                    spec)
                                       .total;
                    if (!(parsed == expected)) {
                        ok = false;
                        note = "round-trip mismatch: " + out;
                        break;
                    }
                }
                if (std::string(format) != "json" && !std::ifstream(out + ".tex")) {
                    ok = false;
                    note = "missing latex: " + out;
                    break;
                }
            }
    // determinism across equal seeds
    if (ok) {
        ok = run_cli("--theorem 1 --seed 11 --out /tmp/resforge_det_a") == 0 &&
             run_cli("--theorem 1 --seed 11 --out /tmp/resforge_det_b") == 0;
        if (ok) {
            std::ifstream fa("/tmp/resforge_det_a.json"), fb("/tmp/resforge_det_b.json");
            json a = json::parse(fa), b = json::parse(fb);
            ok = a["density"] == b["density"] && a["ledger"] == b["ledger"] &&
                 a["cases"] == b["cases"];
            if (!ok) note = "nondeterministic output";
        }
    }
    // usage errors exit with 2
    if (ok) {
        ok = run_cli("--theorem 9") == 2 && run_cli("--psi nonsense") == 2;
        if (!ok) note = "usage errors did not exit 2";
    }
    // the environment seed overrides the flag
    if (ok) {
        setenv("RESIDUE_FORGE_SEED", "321", 1);
        ok = run_cli("--theorem 1 --seed 5 --out /tmp/resforge_env") == 0;
        unsetenv("RESIDUE_FORGE_SEED");
        if (ok) {
            std::ifstream f("/tmp/resforge_env.json");
            json j = json::parse(f);
            ok = j["meta"]["seed"] == 321;
            if (!ok) note = "environment seed not honored";
        }
    }
    report(11, ok, note.empty() ? "CLI contract: schema, round-trip, determinism, exit codes"
                                : "CLI contract: " + note);
}

}  // namespace

int main(int argc, char** argv) {
    for (int a = 1; a + 1 < argc; ++a)
        if (std::string(argv[a]) == "--cli") g_cli_path = argv[a + 1];
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
