// Acceptance gate: one check per shipped criterion, each printed as a single
// [PASS]/[FAIL] line with its measured runtime. Exit code 0 iff all pass,
// 1 on any criterion failure, 2 on configuration/numeric errors.
#include <chrono>
#include <cstdio>
#include <exception>
#include <set>
#include <string>
#include <vector>

#include "mehler/config.hpp"
#include "mehler/report.hpp"
#include "mehler/suites.hpp"

using namespace mehler;

namespace {

// Pinned budgets and grid minima for the gate.
constexpr double kFormulaBudgetSec = 60.0;
constexpr double kClosedFormBudgetSec = 10.0;
constexpr double kSchauderBudgetSec = 180.0;
constexpr int kMinAlphas = 3;
constexpr int kMinTPoints = 10;
constexpr int kMinBasePoints = 64;
constexpr int kMinBoundedFields = 5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int count_failures(const std::vector<EstimateReport>& reports) {
    int n = 0;
    for (const EstimateReport& r : reports)
        if (!r.pass) ++n;
    return n;
}

std::string first_failure(const std::vector<EstimateReport>& reports) {
    for (const EstimateReport& r : reports)
        if (!r.pass) return r.inequalityId + " [" + r.anchor + "]";
    return {};
}

int count_id(const std::vector<EstimateReport>& reports, const std::string& id) {
    int n = 0;
    for (const EstimateReport& r : reports)
        if (r.inequalityId == id) ++n;
    return n;
}

bool all_with_id_pass(const std::vector<EstimateReport>& reports,
                      const std::string& id, int& count) {
    count = 0;
    for (const EstimateReport& r : reports)
        if (r.inequalityId == id) {
            ++count;
            if (!r.pass) return false;
        }
    return count > 0;
}

bool anchors_include(const std::vector<EstimateReport>& reports,
                     const std::vector<std::string>& wanted, std::string& missing) {
    std::set<std::string> seen;
    for (const EstimateReport& r : reports) seen.insert(r.anchor);
    for (const std::string& a : wanted)
        if (!seen.count(a)) {
            missing = a;
            return false;
        }
    return true;
}

struct Gate {
    bool allPass = true;

    void report(int criterion, bool pass, const std::string& detail) {
        std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) allPass = false;
    }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

SuiteConfig trimmed_config() {
    SuiteConfig cfg = SuiteConfig::demo();
    cfg.alphas = {0.5};
    cfg.lambdas = {0.5, 2.0};
    Eigen::VectorXd t(3);
    t << 0.05, 0.5, 2.0;
    cfg.tGrid = t;
    cfg.base = DesignSizes{6, 2, 0, 2};
    cfg.pair = DesignSizes{6, 2, 0, 2};
    cfg.solvePair = DesignSizes{3, 1, 0, 1};
    return cfg;
}

} // namespace

int main() {
    Gate gate;
    try {
        const SuiteContext ctx = materialize(SuiteConfig::demo());

        // 1. Derivative formulas vs finite differences, within budget.
        {
            const auto t0 = Clock::now();
            const auto reports = run_formula_fd_checks(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            const bool pass = fails == 0 && sec <= kFormulaBudgetSec;
            gate.report(1, pass,
                        fmt("derivative formulas vs finite differences: %d/%zu pass, "
                            "%.1fs (budget %.0fs)%s%s",
                            static_cast<int>(reports.size()) - fails, reports.size(),
                            sec, kFormulaBudgetSec, fails ? ", first failure " : "",
                            first_failure(reports).c_str()));
        }

        // 2. Closed-form oracles, within budget.
        {
            const auto t0 = Clock::now();
            const auto reports = run_closed_form_checks(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            const bool pass = fails == 0 && sec <= kClosedFormBudgetSec;
            gate.report(2, pass,
                        fmt("closed-form oracles: %d/%zu pass, %.1fs (budget %.0fs)%s%s",
                            static_cast<int>(reports.size()) - fails, reports.size(),
                            sec, kClosedFormBudgetSec, fails ? ", first failure " : "",
                            first_failure(reports).c_str()));
        }

        // Identities suite feeds criteria 6 and 7.
        const auto identities = run_identities_suite(ctx);

        // 3. Smoothing suite over the full demo grid.
        {
            const auto t0 = Clock::now();
            const auto reports = run_smoothing_suite(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            int boundedFields = 0;
            for (const ScalarField& f : ctx.corpus)
                if (!f.formulaOnly()) ++boundedFields;
            std::string missing;
            const bool covered = anchors_include(
                reports,
                {"stimasup", "stimagradienteH", "stimederivate", "sgralpha",
                 "sgrkalpha", "gradsgralpha", "gradsgrzeroalpha",
                 "stimagradientealpha", "stimaderivatealpha"},
                missing);
            const bool gridOk =
                static_cast<int>(ctx.cfg.alphas.size()) >= kMinAlphas &&
                static_cast<int>(ctx.cfg.tGrid.size()) >= kMinTPoints &&
                ctx.cfg.base.nBase >= kMinBasePoints &&
                boundedFields >= kMinBoundedFields;
            const bool pass = fails == 0 && covered && gridOk;
            gate.report(
                3, pass,
                fmt("smoothing estimates: %d/%zu pass over %zu alphas x %d t x %d "
                    "points x %d bounded fields, %.1fs%s%s",
                    static_cast<int>(reports.size()) - fails, reports.size(),
                    ctx.cfg.alphas.size(), static_cast<int>(ctx.cfg.tGrid.size()),
                    ctx.cfg.base.nBase, boundedFields, sec,
                    fails ? ", first failure " : (covered ? "" : ", missing anchor "),
                    fails ? first_failure(reports).c_str() : missing.c_str()));
        }

        // 4. Schauder suite with split diagnostics, within budget.
        {
            const auto t0 = Clock::now();
            const auto reports = run_schauder_suite(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            const int nShort = count_id(reports, "schauder.hess_incr_short");
            const int nLong = count_id(reports, "schauder.hess_incr_long");
            const int nSplit = count_id(reports, "schauder.split_consistency");
            const bool pass = fails == 0 && nShort > 0 && nLong > 0 && nSplit > 0 &&
                              sec <= kSchauderBudgetSec;
            gate.report(4, pass,
                        fmt("elliptic gradient/Hessian/Hölder bounds: %d/%zu pass "
                            "(%d+%d split pieces, %d consistency), %.1fs (budget "
                            "%.0fs)%s%s",
                            static_cast<int>(reports.size()) - fails, reports.size(),
                            nShort, nLong, nSplit, sec, kSchauderBudgetSec,
                            fails ? ", first failure " : "",
                            first_failure(reports).c_str()));
        }

        // 5. Zygmund suite at the demo lambda grid.
        {
            const auto t0 = Clock::now();
            const auto reports = run_zygmund_suite(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            std::string missing;
            const bool covered =
                anchors_include(reports, {"condZygmund", "Zygmund"}, missing);
            const bool lambdaOk = ctx.cfg.lambdas == std::vector<double>{0.5, 1.0, 2.0};
            const bool pass = fails == 0 && covered && lambdaOk;
            gate.report(5, pass,
                        fmt("second-difference (Zygmund) bounds: %d/%zu pass at "
                            "lambda {0.5,1,2}, %.1fs%s%s",
                            static_cast<int>(reports.size()) - fails, reports.size(),
                            sec, fails ? ", first failure " : "",
                            first_failure(reports).c_str()));
        }

        // 6. Degeneracy witness: no smoothing across ker(Q), smoothing along
        // range(Q).
        {
            int nKernel = 0, nRange = 0;
            const bool kernelOk =
                all_with_id_pass(identities, "identities.degeneracy_kernel_ratio", nKernel);
            const bool rangeOk =
                all_with_id_pass(identities, "identities.degeneracy_range_grad", nRange);
            gate.report(6, kernelOk && rangeOk,
                        fmt("degeneracy witness: kernel-direction ratio %s (%d), "
                            "range-direction gradient bound %s (%d)",
                            kernelOk ? "pass" : "FAIL", nKernel,
                            rangeOk ? "pass" : "FAIL", nRange));
        }

        // 7. Algebraic identities: semigroup law and resolvent identity.
        {
            int nLaw = 0, nRes = 0;
            const bool lawOk =
                all_with_id_pass(identities, "identities.semigroup_law", nLaw);
            const bool resOk =
                all_with_id_pass(identities, "identities.resolvent_identity", nRes);
            gate.report(7, lawOk && resOk,
                        fmt("semigroup law (%d fields) %s, resolvent identity (%d) %s",
                            nLaw, lawOk ? "pass" : "FAIL", nRes,
                            resOk ? "pass" : "FAIL"));
        }

        // 8. Interpolation suite: multiplicative gradient bound and K-embedding.
        {
            const auto t0 = Clock::now();
            const auto reports = run_interpolation_suite(ctx);
            const double sec = seconds_since(t0);
            const int fails = count_failures(reports);
            std::string missing;
            const bool covered =
                anchors_include(reports, {"interp(i)", "interp(ii)"}, missing);
            const bool pass = fails == 0 && covered;
            gate.report(8, pass,
                        fmt("interpolation embeddings: %d/%zu pass, %.1fs%s%s",
                            static_cast<int>(reports.size()) - fails, reports.size(),
                            sec, fails ? ", first failure " : "",
                            first_failure(reports).c_str()));
        }

        // 9. Determinism: identical configs give byte-identical JSON reports.
        {
            const auto t0 = Clock::now();
            const SuiteConfig cfg = trimmed_config();
            const std::string a = reports_to_json(run_all_suites(materialize(cfg)));
            const std::string b = reports_to_json(run_all_suites(materialize(cfg)));
            const double sec = seconds_since(t0);
            gate.report(9, a == b,
                        fmt("determinism: two full runs serialize to %s JSON "
                            "(%zu bytes, %.1fs)",
                            a == b ? "byte-identical" : "DIFFERING", a.size(), sec));
        }
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 2;
    }

    std::printf("%s\n", gate.allPass ? "acceptance: all criteria pass"
                                     : "acceptance: criteria FAILED");
    return gate.allPass ? 0 : 1;
}
