#pragma once

#include <string>
#include <vector>

#include "mehler/config.hpp"
#include "mehler/report.hpp"

namespace mehler {

// Inequality and identity suites. Each function walks the corpus and
// parameter grids of the context and returns one report per checked
// instance; empirical suprema and seminorm estimates are always lower
// bounds of the true quantity on the left-hand side, declared metadata and
// derived constants always on the right-hand side. Combinations whose
// metadata is unavailable (e.g. a Hölder exponent the profile does not
// declare) are skipped, never silently estimated.

// Derivative formulas against centered finite differences of the level
// below (documented steps, relative errors on the left).
std::vector<EstimateReport> run_formula_fd_checks(const SuiteContext& ctx);

// Closed-form oracles: first and second Gaussian moments under the
// semigroup, resolvent of constant/linear/quadratic data, mild-solution
// examples, moments of the Cameron-Martin pairing.
std::vector<EstimateReport> run_closed_form_checks(const SuiteContext& ctx);

// Formula FD checks, closed-form oracles, plus structural identities:
// semigroup law, resolvent identity, Laplace-transform consistency, the
// translated-measure density, the balance of the inhomogeneous problem,
// the degeneracy witness, and resolvent derivative consistency.
std::vector<EstimateReport> run_identities_suite(const SuiteContext& ctx);

// Pointwise smoothing bounds, contraction properties and the singular
// Hölder-data estimates of the semigroup over the (field, t, alpha) grid.
std::vector<EstimateReport> run_smoothing_suite(const SuiteContext& ctx);

// Elliptic regularity: gradient/Hessian bounds, the Hölder seminorm of the
// resolvent Hessian with its short/long-time split, and the full-norm
// bound over the (field, alpha, lambda) grid.
std::vector<EstimateReport> run_schauder_suite(const SuiteContext& ctx);

// Second differences of the resolvent gradient: the Zygmund seminorm bound
// with its short/long-time split diagnostics.
std::vector<EstimateReport> run_zygmund_suite(const SuiteContext& ctx);

// Inhomogeneous problem on [0, horizon]: space-time norm bound with a
// derived horizon-dependent constant (the empirical constant is recorded
// in the witness note) and the Hölder seminorm of the Duhamel Hessian.
std::vector<EstimateReport> run_parabolic_suite(const SuiteContext& ctx);

// Interpolation consequences: the multiplicative gradient bound and the
// Hölder embedding through the K-functional surrogate.
std::vector<EstimateReport> run_interpolation_suite(const SuiteContext& ctx);

// identities, smoothing, schauder, zygmund, parabolic, interp.
const std::vector<std::string>& suite_names();

// Runs one suite by name (ConfigError for unknown names).
std::vector<EstimateReport> run_suite(const std::string& name, const SuiteContext& ctx);

// All suites in the order of suite_names().
std::vector<EstimateReport> run_all_suites(const SuiteContext& ctx);

} // namespace mehler
