#include "resforge/report.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

namespace rf {

using nlohmann::json;

PsiSpec make_psi(PsiKind kind) {
    switch (kind) {
        case PsiKind::Generic: return PsiGeneric{};
        case PsiKind::ScalarField: return PsiScalarField{};
        case PsiKind::Vector: return PsiOneField{};
        case PsiKind::Bivector: return PsiTwoField{};
        case PsiKind::Trivector: return PsiThreeField{};
    }
    throw std::invalid_argument("unknown psi kind");
}

namespace {

json monomial_to_json(const Monomial& m) {
    json j = json::object();
    auto& tbl = SymbolTable::global();
    for (auto& [v, e] : m.factors()) j[tbl.name(v)] = e;
    return j;
}

json density_json(const DensityExpression& d) {
    json arr = json::array();
    for (auto& [m, c] : d.poly().terms()) {
        json term;
        term["monomial"] = monomial_to_json(m);
        term["re"] = c.re().str();
        term["im"] = c.im().str();
        arr.push_back(std::move(term));
    }
    return arr;
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

DensityExpression density_from(const json& arr) {
    Scalar poly(0);
    for (auto& term : arr) {
        Monomial m;
        for (auto& [name, exp] : term.at("monomial").items())
            m = m * Monomial::var(SymbolTable::global().intern(name),
                                  static_cast<std::uint16_t>(exp.get<int>()));
        GaussianRational c(rational_from_string(term.at("re").get<std::string>()),
                           rational_from_string(term.at("im").get<std::string>()));
        poly.add_term(m, c);
    }
    return DensityExpression(poly);
}

const char* target_name(RunTarget t) {
    switch (t) {
        case RunTarget::Theorem1: return "1";
        case RunTarget::Theorem2: return "2";
        default: return "interior";
    }
}
const char* psi_name(PsiKind k) {
    switch (k) {
        case PsiKind::Generic: return "generic";
        case PsiKind::ScalarField: return "f";
        case PsiKind::Vector: return "vector";
        case PsiKind::Bivector: return "bivector";
        default: return "trivector";
    }
}

std::string latex_scalar(const Scalar& s);

}  // namespace

std::string density_to_json(const DensityExpression& d) { return density_json(d).dump(); }

DensityExpression density_from_json(const std::string& text) {
    return density_from(json::parse(text));
}

RunResult run(const RunConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    PsiSpec psi = make_psi(config.psi);

    if (config.target == RunTarget::Interior) {
        InteriorDensity d = assemble_interior(psi);
        result.density = DensityExpression(d.total());
    } else {
        Theorem theorem = config.target == RunTarget::Theorem1 ? Theorem::PairDm2Residue
                                                               : Theorem::PairDm1Residue;
        BoundaryResult br = boundary_density(theorem, psi);
        result.density = br.total;
        result.cases = std::move(br.cases);
        result.ledger = std::move(br.ledger);

        if (config.mode != RunMode::Symbolic) {
            // generic densities drive the oracle; concrete runs re-derive them
            BoundaryResult generic = boundary_density(theorem, PsiGeneric{});
            std::vector<std::future<OracleReport>> pending;
            std::uint64_t salt = 0;
            for (auto& [spec, density] : generic.cases)
                for (int q = 0; q < config.verify_bindings; ++q)
                    pending.push_back(std::async(std::launch::async, oracle_case_check, theorem, spec,
                                                 density, config.seed + 1000 * (salt++), 1e-6));
            for (auto& fut : pending) {
                OracleReport rep = fut.get();
                result.oracle_ok = result.oracle_ok && rep.pass;
                result.oracle.push_back(std::move(rep));
            }
        }
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::string report_json(const RunConfig& config, const RunResult& result) {
    json j;
    j["meta"] = {{"theorem", target_name(config.target)},
                 {"psi", psi_name(config.psi)},
                 {"seed", config.seed},
                 {"timing_ms", result.elapsed_ms}};
    j["density"] = density_json(result.density);
    json cases = json::array();
    for (auto& [spec, d] : result.cases) {
        cases.push_back({{"label", spec.label},
                         {"r", spec.r},
                         {"l", spec.l},
                         {"j", spec.j},
                         {"k", spec.k},
                         {"alpha", spec.alpha},
                         {"density", density_json(d)}});
    }
    j["cases"] = std::move(cases);
    json ledger = json::array();
    for (auto& e : result.ledger) {
        ledger.push_back({{"id", e.id},
                          {"engine", e.engine_value},
                          {"reference", e.reference_value},
                          {"exact_match", e.exact_match},
                          {"match_after_fold", e.match_after_fold},
                          {"delta", e.delta}});
    }
    j["ledger"] = std::move(ledger);
    json oracle = json::array();
    for (auto& r : result.oracle) {
        oracle.push_back({{"quantity", r.quantity},
                          {"symbolic", {r.symbolic.real(), r.symbolic.imag()}},
                          {"numeric", {r.numeric.real(), r.numeric.imag()}},
                          {"rel_error", r.rel_error},
                          {"tolerance", r.tolerance},
                          {"pass", r.pass},
                          {"seed", r.seed}});
    }
    j["oracle"] = std::move(oracle);
    return j.dump(2);
}

namespace {
std::string latex_scalar(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    auto& tbl = SymbolTable::global();
    bool first = true;
    for (auto& [m, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        auto frac = [](const Rational& r) {
            if (r.den() == 1) return std::to_string(r.num());
            return "\\tfrac{" + std::to_string(r.num()) + "}{" + std::to_string(r.den()) + "}";
        };
        if (c.is_real())
            os << frac(c.re());
        else
            os << "\\left(" << frac(c.re()) << (c.im() > Rational(0) ? "+" : "") << frac(c.im())
               << "i\\right)";
        for (auto& [v, e] : m.factors()) {
            std::string n = tbl.name(v);
            std::string sym;
            if (n == "h1") sym = "h'(0)";
            else if (n == "pi") sym = "\\pi";
            else if (n == "Omega3") sym = "\\Omega_3";
            else if (n == "upsilon3") sym = "\\upsilon_3";
            else if (n == "dYn") sym = "\\partial_{x_n}Y_n";
            else if (n == "EG") sym = "\\mathrm{EG}(X,Y)";
            else if (n == "gXY") sym = "g(X,Y)";
            else if (n == "s") sym = "s";
            else if (n.size() >= 2 && (n[0] == 'X' || n[0] == 'Y' || n[0] == 'U' || n[0] == 'V' || n[0] == 'W') && isdigit(static_cast<unsigned char>(n[1])))
                sym = std::string(1, n[0]) + "_" + n.substr(1);
            else if (n.size() == 4 && n[0] == 'D' && (n[1] == 'X' || n[1] == 'Y') &&
                     isdigit(static_cast<unsigned char>(n[3])))
                sym = std::string("(\\nabla_") + n[1] + " " + n[2] + ")_" + n[3];
            else if (n == "DXf" || n == "DYf")
                sym = std::string("\\partial_") + n[1] + " f";
            else if (n == "T4") sym = "\\mathrm{tr}[c(dx_n)c(\\Psi)]";
            else if (n.size() >= 2 && n[0] == 'T') sym = "\\mathrm{tr}[c(e_{" + n.substr(1) + "})c(\\Psi)]";
            else sym = "\\mathrm{" + n + "}";
            os << " " << sym;
            if (e > 1) os << "^{" << e << "}";
        }
    }
    return os.str();
}
}  // namespace

std::string report_latex(const RunConfig& config, const RunResult& result) {
    std::ostringstream os;
    os << "% resforge report, theorem=" << target_name(config.target)
       << ", psi=" << psi_name(config.psi) << "\n";
    os << "\\begin{align*}\n\\Phi &= " << latex_scalar(result.density.poly()) << "\\\\\n";
    for (auto& [spec, d] : result.cases)
        os << "\\Phi_{\\mathrm{" << spec.label << "}} &= " << latex_scalar(d.poly()) << "\\\\\n";
    os << "\\end{align*}\n";
    if (!result.ledger.empty()) {
        os << "% discrepancy ledger (engine vs transcribed reference)\n";
        for (auto& e : result.ledger)
            os << "% " << e.id << ": " << (e.exact_match ? "match" : "differs")
               << (e.match_after_fold && !e.exact_match ? " (matches after folding)" : "") << "\n";
    }
    return os.str();
}

int emit_reports(const RunConfig& config, const RunResult& result) {
    if (config.format == OutputFormat::Json || config.format == OutputFormat::Both) {
        std::ofstream f(config.out_path + ".json");
        f << report_json(config, result) << "\n";
    }
    if (config.format == OutputFormat::Latex || config.format == OutputFormat::Both) {
        std::ofstream f(config.out_path + ".tex");
        f << report_latex(config, result);
    }
    return result.oracle_ok ? 0 : 1;
}

}  // namespace rf
