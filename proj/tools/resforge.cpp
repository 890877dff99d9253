// resforge: exact boundary/interior densities of the spectral Einstein
// functional for perturbed Dirac operators, with a floating-point oracle.

#include "resforge/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"resforge: noncommutative-residue density engine"};
    app.failure_message(CLI::FailureMessage::help);

    std::string theorem = "1";
    std::string psi = "generic";
    std::string mode = "symbolic";
    std::string format = "json";
    std::string out = "report";
    std::uint64_t seed = 42;

    app.add_option("--theorem", theorem, "target: 1, 2 or interior")
        ->check(CLI::IsMember({"1", "2", "interior"}));
    app.add_option("--psi", psi, "perturbation: generic, f, vector, bivector, trivector")
        ->check(CLI::IsMember({"generic", "f", "vector", "bivector", "trivector"}));
    app.add_option("--mode", mode, "symbolic, verify or both")
        ->check(CLI::IsMember({"symbolic", "verify", "both"}));
    app.add_option("--seed", seed, "seed for the verification sweeps");
    app.add_option("--format", format, "json, latex or both")
        ->check(CLI::IsMember({"json", "latex", "both"}));
    app.add_option("--out", out, "output path prefix (<out>.json / <out>.tex)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    rf::RunConfig config;
    config.target = theorem == "1" ? rf::RunTarget::Theorem1
                    : theorem == "2" ? rf::RunTarget::Theorem2
                                     : rf::RunTarget::Interior;
    config.psi = psi == "generic"   ? rf::PsiKind::Generic
                 : psi == "f"       ? rf::PsiKind::ScalarField
                 : psi == "vector"  ? rf::PsiKind::Vector
                 : psi == "bivector" ? rf::PsiKind::Bivector
                                     : rf::PsiKind::Trivector;
    config.mode = mode == "symbolic" ? rf::RunMode::Symbolic
                  : mode == "verify" ? rf::RunMode::Verify
                                     : rf::RunMode::Both;
    config.format = format == "json"    ? rf::OutputFormat::Json
                    : format == "latex" ? rf::OutputFormat::Latex
                                        : rf::OutputFormat::Both;
    config.seed = seed;
    if (const char* env = std::getenv("RESIDUE_FORGE_SEED")) config.seed = std::strtoull(env, nullptr, 10);
    config.out_path = out;

    try {
        rf::RunResult result = rf::run(config);
        int status = rf::emit_reports(config, result);
        if (status != 0)
            std::cerr << "oracle verification failed; see " << config.out_path << ".json\n";
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
