#pragma once
// Run orchestration and report emission (JSON and LaTeX).

#include "resforge/boundary.hpp"
#include "resforge/interior.hpp"
#include "resforge/oracle.hpp"

#include <string>
#include <vector>

namespace rf {

enum class RunTarget { Theorem1 = 1, Theorem2 = 2, Interior = 3 };
enum class PsiKind { Generic, ScalarField, Vector, Bivector, Trivector };
enum class RunMode { Symbolic, Verify, Both };
enum class OutputFormat { Json, Latex, Both };

struct RunConfig {
    RunTarget target = RunTarget::Theorem1;
    PsiKind psi = PsiKind::Generic;
    RunMode mode = RunMode::Symbolic;
    std::uint64_t seed = 42;
    OutputFormat format = OutputFormat::Json;
    std::string out_path = "report";
    int verify_bindings = 20;
};

PsiSpec make_psi(PsiKind kind);

struct RunResult {
    DensityExpression density;
    std::vector<std::pair<CaseSpec, DensityExpression>> cases;
    std::vector<LedgerEntry> ledger;
    std::vector<OracleReport> oracle;
    bool oracle_ok = true;
    double elapsed_ms = 0;
};

RunResult run(const RunConfig& config);

std::string density_to_json(const DensityExpression& d);
DensityExpression density_from_json(const std::string& json_text);

std::string report_json(const RunConfig& config, const RunResult& result);
std::string report_latex(const RunConfig& config, const RunResult& result);

// write report files (<out>.json / <out>.tex per format); returns the process
// exit status: 0 ok, 1 oracle failure
int emit_reports(const RunConfig& config, const RunResult& result);

}  // namespace rf
