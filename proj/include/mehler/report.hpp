#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mehler {

// Verdict policy for every inequality check in the suites:
//   pass  <=>  lhs <= rhs * (1 + kRelSlack) + kErrMult * errEst.
// The multiplicative part absorbs constant-level tolerance, the additive part
// absorbs propagated quadrature error; a failing report keeps both components
// visible so "estimate violated" and "quadrature too coarse" stay separable.
inline constexpr double kRelSlack = 1e-3;
inline constexpr double kErrMult = 3.0;

struct ReportWitness {
    Eigen::VectorXd x; // base point (ambient coordinates); may be empty
    Eigen::VectorXd h; // displacement (whitened coordinates); may be empty
    std::string note;  // free-form context: field label, t, lambda, ...
};

// One verified inequality instance. `anchor` is the opaque label tying the
// check to the statement it verifies; `field` and `param` feed the plot-ready
// curves output and stay out of the JSON schema.
struct EstimateReport {
    std::string inequalityId;
    std::string anchor;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0; // lhs / rhs, clamped to kRatioCap when rhs == 0 < lhs
    bool pass = false;
    ReportWitness witness;
    double errEst = 0.0;
    double ms = 0.0; // kept at 0 so reports stay byte-deterministic
    std::string field;
    std::optional<double> param;
};

inline constexpr double kRatioCap = 1e300;

// Applies the verdict policy. lhs/rhs must be finite and >= 0, errEst finite
// and >= 0 (DomainError otherwise; this catches NaN poisoning at the source).
EstimateReport make_report(std::string inequalityId, std::string anchor,
                           double lhs, double rhs, double errEst,
                           ReportWitness witness = {}, std::string field = {},
                           std::optional<double> param = std::nullopt);

// Recomputes the verdict from the stored fields (soundness check).
bool recompute_pass(const EstimateReport& r);

// Every anchor label the suites must cover (coverage test in the repo).
const std::vector<std::string>& anchor_registry();

std::vector<std::string> anchors_covered(const std::vector<EstimateReport>& reports);
std::vector<std::string> anchors_missing(const std::vector<EstimateReport>& reports);

bool all_pass(const std::vector<EstimateReport>& reports);

// JSON: array of objects with stable field names
// (inequality_id, anchor, lhs, rhs, ratio, pass, witness, err_est, ms);
// witness is {x, h, note}. Deterministic for identical inputs.
std::string reports_to_json(const std::vector<EstimateReport>& reports);

// CSV: same columns; witness flattened to "x=[...];h=[...];<note>".
std::string reports_to_csv(const std::vector<EstimateReport>& reports);

// Plot-ready curves: one row per report carrying a parameter (t or lambda);
// columns inequality_id, anchor, field, param, lhs, rhs.
std::string reports_to_curves_csv(const std::vector<EstimateReport>& reports);

} // namespace mehler
