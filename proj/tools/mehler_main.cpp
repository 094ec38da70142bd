// Batch verification harness: runs the estimate suites over a declared
// corpus, prints a per-suite summary, and emits machine-readable reports.
//
// Exit codes: 0 all inequalities pass, 1 at least one failure, 2 on
// configuration or numeric errors.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mehler/config.hpp"
#include "mehler/constants.hpp"
#include "mehler/errors.hpp"
#include "mehler/report.hpp"
#include "mehler/solver.hpp"
#include "mehler/suites.hpp"

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mehler::ConfigError("cannot write " + path.string());
    out << content;
}

void emit_outputs(const std::vector<mehler::EstimateReport>& reports,
                  const mehler::SuiteConfig& cfg) {
    if (cfg.outDir.empty()) return;
    const std::filesystem::path dir(cfg.outDir);
    std::filesystem::create_directories(dir);
    if (cfg.format == "json" || cfg.format == "both")
        write_file(dir / "report.json", mehler::reports_to_json(reports));
    if (cfg.format == "csv" || cfg.format == "both") {
        write_file(dir / "report.csv", mehler::reports_to_csv(reports));
        write_file(dir / "curves.csv", mehler::reports_to_curves_csv(reports));
    }
}

void print_summary(const std::vector<mehler::EstimateReport>& reports) {
    std::map<std::string, std::pair<int, int>> bySuite; // suite -> {pass, fail}
    for (const mehler::EstimateReport& r : reports) {
        const std::string suite = r.inequalityId.substr(0, r.inequalityId.find('.'));
        auto& c = bySuite[suite];
        (r.pass ? c.first : c.second) += 1;
    }
    for (const auto& [suite, c] : bySuite)
        std::printf("%-12s %4d pass  %4d fail\n", suite.c_str(), c.first, c.second);
    int fails = 0;
    for (const mehler::EstimateReport& r : reports)
        if (!r.pass) {
            ++fails;
            std::printf("FAIL %s [%s] lhs=%.17g rhs=%.17g err=%.17g %s\n",
                        r.inequalityId.c_str(), r.anchor.c_str(), r.lhs, r.rhs,
                        r.errEst, r.witness.note.c_str());
        }
    const std::vector<std::string> missing = mehler::anchors_missing(reports);
    if (!missing.empty()) {
        std::printf("note: %zu registry anchors not exercised by this run:", missing.size());
        for (const std::string& a : missing) std::printf(" %s", a.c_str());
        std::printf("\n");
    }
    std::printf("total %zu reports, %d failures\n", reports.size(), fails);
}

int run_and_emit(const mehler::SuiteConfig& cfg,
                 const std::optional<std::string>& suiteName) {
    const mehler::SuiteContext ctx = mehler::materialize(cfg);
    const std::vector<mehler::EstimateReport> reports =
        suiteName ? mehler::run_suite(*suiteName, ctx) : mehler::run_all_suites(ctx);
    print_summary(reports);
    emit_outputs(reports, cfg);
    return mehler::all_pass(reports) ? 0 : 1;
}

int run_solve(const mehler::SuiteConfig& cfg, const std::string& fieldLabel,
              double lambda, std::optional<double> time,
              const std::vector<double>& point) {
    const mehler::SuiteContext ctx = mehler::materialize(cfg);
    const mehler::ScalarField* f = nullptr;
    for (const mehler::ScalarField& cand : ctx.corpus) {
        if (!fieldLabel.empty() ? cand.label() == fieldLabel
                                : !cand.formulaOnly()) {
            f = &cand;
            break;
        }
    }
    if (!f)
        throw mehler::ConfigError(fieldLabel.empty()
                                      ? "corpus has no bounded field to solve for"
                                      : "no corpus field labeled '" + fieldLabel + "'");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ctx.model.dim());
    if (!point.empty()) {
        if (static_cast<int>(point.size()) != ctx.model.dim())
            throw mehler::ConfigError("--point needs exactly dim components");
        for (int i = 0; i < x.size(); ++i) x(i) = point[static_cast<std::size_t>(i)];
    }
    if (time) {
        const mehler::ScalarField zero = mehler::ScalarField::constant(ctx.model, 0.0);
        const mehler::TimeField g{[](double) { return 0.0; }, 0.0, zero, cfg.horizon};
        const mehler::SolveScalar v = mehler::mild_solution_err(
            ctx.model, *f, g, *time, x, cfg.timeQuad, cfg.quad);
        std::printf("{\"mode\":\"mild\",\"field\":\"%s\",\"t\":%.17g,"
                    "\"value\":%.17g,\"err\":%.17g}\n",
                    f->label().c_str(), *time, v.value, v.err);
    } else {
        const mehler::SolveScalar u = mehler::resolvent_err(
            ctx.model, *f, lambda, x, cfg.timeQuad, cfg.quad);
        std::printf("{\"mode\":\"resolvent\",\"field\":\"%s\",\"lambda\":%.17g,"
                    "\"value\":%.17g,\"err\":%.17g,\"t_max\":%.17g,"
                    "\"tail_bound\":%.17g}\n",
                    f->label().c_str(), lambda, u.value, u.err, u.tMax, u.tailBound);
    }
    return 0;
}

int run_constants(const mehler::SuiteConfig& cfg) {
    const mehler::UniversalConstants uc = mehler::universal_constants();
    std::printf("c(t) supremum      sqrt(t)*c(t): c0 = %.17g\n", uc.c0);
    std::printf("third abs moment   k3^3 = %.17g\n", uc.k3cubed);
    std::printf("Zygmund companion  c1 = (3 + k3^3) c0^3 = %.17g\n", uc.c1);
    for (double p : {1.0, 2.0, 3.0, 4.0})
        std::printf("k_%g (E|xi|^%g)^(1/%g) = %.17g\n", p, p, p,
                    mehler::kp_constant(p));
    std::printf("%-8s %-22s %-22s %-22s\n", "alpha", "C1", "C2", "C3");
    for (double a : cfg.alphas) {
        const mehler::LemmaConstants lc = mehler::derive_lemma_constants(a);
        std::printf("%-8g %-22.17g %-22.17g %-22.17g\n", a, lc.C1, lc.C2, lc.C3);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian smoothing-estimate verification harness"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string configPath, outDir, format, suiteName, fieldLabel;
    std::uint64_t seed = 0;
    double lambda = 1.0;
    double timeVal = 0.0;
    std::vector<double> point;

    auto* optConfig = app.add_option("--config", configPath, "config file path");
    auto* optOut = app.add_option("--out", outDir, "output directory for reports");
    auto* optSeed = app.add_option("--seed", seed, "design/quadrature seed");
    auto* optFormat =
        app.add_option("--format", format, "report format: json | csv | both");

    CLI::App* cmdVerify = app.add_subcommand("verify", "run every suite");
    CLI::App* cmdSuite = app.add_subcommand("suite", "run one suite by name");
    cmdSuite->add_option("name", suiteName,
                         "identities | smoothing | schauder | zygmund | parabolic | interp")
        ->required();
    CLI::App* cmdSolve =
        app.add_subcommand("solve", "single resolvent or mild evaluation");
    cmdSolve->add_option("--lambda", lambda, "resolvent parameter (default 1)");
    auto* optTime = cmdSolve->add_option(
        "--time", timeVal, "evaluate the zero-source mild solution at this time");
    cmdSolve->add_option("--field", fieldLabel, "corpus field label (default: first bounded)");
    cmdSolve->add_option("--point", point, "evaluation point, comma separated")
        ->delimiter(',');
    CLI::App* cmdConstants =
        app.add_subcommand("constants", "print the derived constants table");

    CLI11_PARSE(app, argc, argv);

    try {
        mehler::SuiteConfig cfg = optConfig->count() ? mehler::load_config(configPath)
                                                     : mehler::SuiteConfig::demo();
        if (optOut->count()) cfg.outDir = outDir;
        if (optFormat->count()) cfg.format = format;
        if (optSeed->count()) {
            cfg.seed = seed;
            cfg.quad.seed = seed;
        }
        cfg.validate();

        if (cmdVerify->parsed()) return run_and_emit(cfg, std::nullopt);
        if (cmdSuite->parsed()) return run_and_emit(cfg, suiteName);
        if (cmdSolve->parsed())
            return run_solve(cfg, fieldLabel, lambda,
                             optTime->count() ? std::optional<double>(timeVal)
                                              : std::nullopt,
                             point);
        if (cmdConstants->parsed()) return run_constants(cfg);
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
