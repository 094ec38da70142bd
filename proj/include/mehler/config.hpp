#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mehler/covariance.hpp"
#include "mehler/fields.hpp"
#include "mehler/integrator.hpp"
#include "mehler/timequad.hpp"

namespace mehler {

// Declarative corpus entry, resolved against the covariance model when the
// config is materialized. direction is the ambient ridge direction z.
struct CorpusEntry {
    std::string kind;  // absclippow | sin | bump | constant | linear | quadratic
    double p = 0.5;    // absclippow exponent
    double clip = 1.0; // absclippow clip level M
    double omega = 1.0;
    double value = 1.0; // constant level
    Eigen::VectorXd direction;
};

// Sample-design sizes: nBase base points, nDirs whitened directions, and the
// dyadic scale ladder 2^{-m}, m = m0..m1.
struct DesignSizes {
    int nBase = 0;
    int nDirs = 0;
    int m0 = 0;
    int m1 = 0;
};

struct SuiteConfig {
    Eigen::MatrixXd Q;
    std::vector<CorpusEntry> corpus;
    std::vector<double> alphas;
    std::vector<double> lambdas;
    Eigen::VectorXd tGrid;
    double horizon = 1.0;
    std::uint64_t seed = 42;
    QuadratureSpec quad;
    TimeQuadrature timeQuad;
    DesignSizes base{64, 8, 0, 5};      // pointwise sups and value-Holder pairs
    DesignSizes pair{64, 6, 0, 4};      // derivative-Holder pairs (semigroup level)
    DesignSizes solvePair{10, 3, 0, 3}; // resolvent/mild pairs (each eval = a time integral)
    std::string outDir;                 // empty: no files written
    std::string format = "json";        // json | csv | both

    // Fixed reference configuration: Q = diag(4,1,0) on R^3 (one degenerate
    // direction), five bounded ridges + constant + formula-mode polynomials,
    // alpha in {0.3,0.5,0.7}, lambda in {0.5,1,2}, log t-grid 1e-3..5 (12
    // points), horizon 1, seed 42.
    static SuiteConfig demo();

    void validate() const; // throws ConfigError
};

// Model + instantiated corpus. Field labels come from the entries; bounded
// fields carry full metadata, formula-mode fields are excluded from the
// estimate suites automatically (ScalarField::formulaOnly).
struct SuiteContext {
    CovarianceModel model;
    std::vector<ScalarField> corpus;
    SuiteConfig cfg;
};

SuiteContext materialize(const SuiteConfig& cfg);

// Plain-text config: [section] headers and key = value lines, '#'/';' line
// comments. Sections: [covariance], [corpus.N], [suite], [quadrature],
// [output]. Unknown sections or keys throw ConfigError; values start from
// SuiteConfig::demo() and are overridden per key. A [corpus.N] section
// replaces the whole demo corpus with the declared entries.
SuiteConfig load_config(const std::string& path);

// Human-readable schema of the config format (CLI help, README).
std::string config_schema();

} // namespace mehler
