#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "mehler/config.hpp"
#include "mehler/errors.hpp"
#include "mehler/report.hpp"
#include "mehler/suites.hpp"

using namespace mehler;

namespace {

class TempConfig {
public:
    explicit TempConfig(const std::string& text) {
        path_ = (std::filesystem::temp_directory_path() /
                 ("mehler_cfg_" + std::to_string(counter_++) + ".ini"))
                    .string();
        std::ofstream out(path_);
        out << text;
    }
    ~TempConfig() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    static int counter_;
    std::string path_;
};

int TempConfig::counter_ = 0;

} // namespace

TEST_CASE("config schema documents every section") {
    const std::string schema = config_schema();
    for (const char* needle :
         {"[covariance]", "[corpus.0]", "[suite]", "[quadrature]", "[output]"})
        CHECK(schema.find(needle) != std::string::npos);
}

TEST_CASE("config file round-trip overrides every group of settings") {
    const TempConfig file(R"(# full override
[covariance]
diag = 9 1

[corpus.0]
kind = sin
omega = 2
direction = 1 1

[corpus.1]
kind = constant
value = 2.5

[suite]
alphas = 0.4
lambdas = 1 3
tmin = 0.01
tmax = 2
tcount = 4
horizon = 0.5
base_points = 8
base_dirs = 2
base_m0 = 0
base_m1 = 2
solve_points = 3
solve_dirs = 1
solve_m1 = 1

[quadrature]
gh_order = 20
seed = 7
engine = gh
time_tol = 1e-8

[output]
dir = out_dir
format = both
)");
    const SuiteConfig cfg = load_config(file.path());
    CHECK(cfg.Q.rows() == 2);
    CHECK(cfg.Q(0, 0) == 9.0);
    CHECK(cfg.Q(1, 1) == 1.0);
    REQUIRE(cfg.corpus.size() == 2);
    CHECK(cfg.corpus[0].kind == "sin");
    CHECK(cfg.corpus[0].omega == 2.0);
    CHECK(cfg.corpus[1].kind == "constant");
    CHECK(cfg.corpus[1].value == 2.5);
    REQUIRE(cfg.alphas.size() == 1);
    CHECK(cfg.alphas[0] == 0.4);
    REQUIRE(cfg.lambdas.size() == 2);
    CHECK(cfg.lambdas[1] == 3.0);
    REQUIRE(cfg.tGrid.size() == 4);
    CHECK(cfg.tGrid[0] == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(cfg.tGrid[3] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cfg.horizon == 0.5);
    CHECK(cfg.base.nBase == 8);
    CHECK(cfg.base.nDirs == 2);
    CHECK(cfg.base.m1 == 2);
    CHECK(cfg.pair.nBase == 64); // untouched group keeps its default
    CHECK(cfg.solvePair.nBase == 3);
    CHECK(cfg.solvePair.nDirs == 1);
    CHECK(cfg.solvePair.m1 == 1);
    CHECK(cfg.quad.ghOrder == 20);
    CHECK(cfg.seed == 7);
    CHECK(cfg.quad.seed == 7);
    CHECK(cfg.quad.engine == QuadratureEngine::TensorGaussHermite);
    CHECK(cfg.timeQuad.tol == 1e-8);
    CHECK(cfg.outDir == "out_dir");
    CHECK(cfg.format == "both");

    // The file-backed corpus materializes like the built-in one.
    const SuiteContext ctx = materialize(cfg);
    CHECK(ctx.corpus.size() == 2);
    CHECK(ctx.model.dim() == 2);
}

TEST_CASE("config errors: unknown names, malformed values, bad ranges") {
    auto loadText = [](const std::string& text) {
        const TempConfig file(text);
        return load_config(file.path());
    };
    CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
    CHECK_THROWS_AS(loadText("[frobnicate]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[suite]\nblah = 1\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[suite]\nalphas = 0.5\nalphas = 0.7\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[suite]\nalphas = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[suite]\ntmin = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[suite]\nlambdas = -1\n"), ConfigError);
    CHECK_THROWS_AS(loadText("key_outside_section = 1\n"), ConfigError);
    CHECK_THROWS_AS(loadText("[quadrature]\nengine = turbo\n"), ConfigError);
    // Corpus shape problems surface when the config is materialized.
    CHECK_THROWS_AS(materialize(loadText("[corpus.0]\nkind = mystery\n")),
                    ConfigError);
    CHECK_THROWS_AS(materialize(loadText("[corpus.0]\nkind = sin\ndirection = 1 0\n")),
                    ConfigError); // 2-d direction against the 3-d demo model
}

TEST_CASE("report verdicts: slack policy, recompute, input guards") {
    // Equality passes under the multiplicative slack.
    EstimateReport r1 = make_report("id1", "OU", 1.0, 1.0, 0.0);
    CHECK(r1.pass);
    CHECK(r1.ratio == 1.0);
    CHECK(recompute_pass(r1) == r1.pass);

    // Just above the slack: fails.
    EstimateReport r2 = make_report("id2", "OU", 1.0 + 2e-3, 1.0, 0.0);
    CHECK_FALSE(r2.pass);
    CHECK(recompute_pass(r2) == r2.pass);

    // Quadrature error absorbs an overshoot.
    EstimateReport r3 = make_report("id3", "OU", 1.2, 1.0, 0.1);
    CHECK(r3.pass);

    // Vanishing right-hand side: ratio is capped, verdict honest.
    EstimateReport r4 = make_report("id4", "OU", 0.5, 0.0, 0.0);
    CHECK_FALSE(r4.pass);
    CHECK(r4.ratio == kRatioCap);
    EstimateReport r5 = make_report("id5", "OU", 0.0, 0.0, 0.0);
    CHECK(r5.pass);

    CHECK_THROWS_AS(make_report("id", "OU", std::nan(""), 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_report("id", "OU", -1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_report("id", "OU", 1.0, 1.0, -0.5), DomainError);
}

TEST_CASE("anchor registry and coverage bookkeeping") {
    const std::vector<std::string>& reg = anchor_registry();
    CHECK(reg.size() == 32);
    const std::set<std::string> unique(reg.begin(), reg.end());
    CHECK(unique.size() == reg.size());
    CHECK(unique.count("stimasup") == 1);
    CHECK(unique.count("Schauder") == 1);

    std::vector<EstimateReport> reports;
    CHECK(anchors_missing(reports).size() == reg.size());
    reports.push_back(make_report("id", "OU", 0.0, 1.0, 0.0));
    CHECK(anchors_missing(reports).size() == reg.size() - 1);
    CHECK(anchors_covered(reports) == std::vector<std::string>{"OU"});
    CHECK(all_pass(reports));
    reports.push_back(make_report("id2", "Cauchy", 2.0, 1.0, 0.0));
    CHECK_FALSE(all_pass(reports));
}

TEST_CASE("serialization is deterministic and schema-stable") {
    std::vector<EstimateReport> reports;
    ReportWitness w;
    w.x = Eigen::Vector3d(0.1, -0.2, 0.3);
    w.h = Eigen::Vector2d(0.5, 0.0);
    w.note = "t=0.5";
    reports.push_back(make_report("check_a", "OU", 0.3, 1.0, 1e-12, w, "fieldA", 0.5));
    reports.push_back(make_report("check_b", "Cauchy", 0.0, 2.0, 0.0));

    const std::string a = reports_to_json(reports);
    const std::string b = reports_to_json(reports);
    CHECK(a == b);
    for (const char* needle : {"inequality_id", "anchor", "lhs", "rhs", "ratio",
                               "pass", "witness", "err_est", "ms", "check_a",
                               "t=0.5"})
        CHECK(a.find(needle) != std::string::npos);

    const std::string csv = reports_to_csv(reports);
    CHECK(csv.find("inequality_id") != std::string::npos);
    CHECK(csv.find("check_b") != std::string::npos);

    // Only the parameterized report lands in the curves output.
    const std::string curves = reports_to_curves_csv(reports);
    CHECK(curves.find("check_a") != std::string::npos);
    CHECK(curves.find("check_b") == std::string::npos);
    CHECK(curves.find("fieldA") != std::string::npos);
}

TEST_CASE("trimmed full run: every suite green, every anchor covered") {
    SuiteConfig cfg = SuiteConfig::demo();
    cfg.alphas = {0.5};
    cfg.lambdas = {0.5, 2.0};
    Eigen::VectorXd t(3);
    t << 0.05, 0.5, 2.0;
    cfg.tGrid = t;
    cfg.base = DesignSizes{6, 2, 0, 2};
    cfg.pair = DesignSizes{6, 2, 0, 2};
    cfg.solvePair = DesignSizes{3, 1, 0, 1};
    const SuiteContext ctx = materialize(cfg);

    CHECK(suite_names().size() == 6);
    CHECK_THROWS_AS(run_suite("nope", ctx), ConfigError);

    const std::vector<EstimateReport> reports = run_all_suites(ctx);
    CHECK(reports.size() > 100);
    CHECK(all_pass(reports));
    CHECK(anchors_missing(reports).empty());
    for (const EstimateReport& r : reports) {
        CHECK(recompute_pass(r) == r.pass);
        CHECK(r.ms == 0.0);
    }
}
