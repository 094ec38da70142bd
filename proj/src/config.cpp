#include "mehler/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError("trailing characters in value of '" + key + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number for key '" + key + "': '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long n = std::stol(v, &pos);
        if (pos != v.size()) throw ConfigError("trailing characters in value of '" + key + "'");
        return n;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse integer for key '" + key + "': '" + v + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::istringstream iss(v);
    std::vector<double> out;
    std::string tok;
    while (iss >> tok) out.push_back(parse_double(key, tok));
    if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
    return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    Eigen::VectorXd out(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
    return out;
}

Eigen::VectorXd log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw ConfigError("t grid needs 0 < tmin < tmax and tcount >= 2");
    Eigen::VectorXd g(count);
    double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i)
        g[i] = std::exp(a + (b - a) * i / (count - 1));
    return g;
}

} // namespace

SuiteConfig SuiteConfig::demo() {
    SuiteConfig c;
    c.Q = Eigen::Vector3d(4.0, 1.0, 0.0).asDiagonal();
    auto dir = [](double a, double b, double d) { return Eigen::Vector3d(a, b, d); };
    c.corpus = {
        {"absclippow", 0.5, 1.0, 1.0, 1.0, dir(1, 0, 0)},
        {"absclippow", 0.5, 1.0, 1.0, 1.0, dir(0, 1, 0)},
        {"absclippow", 0.5, 1.0, 1.0, 1.0, dir(0, 0, 1)}, // kernel direction
        {"sin", 0.5, 1.0, 1.0, 1.0, dir(1, 1, 0)},
        {"bump", 0.5, 1.0, 1.0, 1.0, dir(0, 1, 0)},
        {"constant", 0.5, 1.0, 1.0, 1.0, Eigen::VectorXd()},
        {"linear", 0.5, 1.0, 1.0, 1.0, dir(1, 0, 0)},
        {"quadratic", 0.5, 1.0, 1.0, 1.0, dir(1, 0, 0)},
    };
    c.alphas = {0.3, 0.5, 0.7};
    c.lambdas = {0.5, 1.0, 2.0};
    c.tGrid = log_grid(1e-3, 5.0, 12);
    c.horizon = 1.0;
    c.seed = 42;
    return c;
}

void SuiteConfig::validate() const {
    if (Q.rows() < 1 || Q.rows() != Q.cols()) throw ConfigError("covariance must be square and nonempty");
    if (corpus.empty()) throw ConfigError("corpus is empty");
    if (alphas.empty()) throw ConfigError("alpha list is empty");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    if (lambdas.empty()) throw ConfigError("lambda list is empty");
    for (double l : lambdas)
        if (!(l > 0.0)) throw ConfigError("lambda must be positive");
    if (tGrid.size() < 1) throw ConfigError("t grid is empty");
    for (int i = 0; i < tGrid.size(); ++i)
        if (!(tGrid[i] > 0.0)) throw ConfigError("t grid values must be positive");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    for (const DesignSizes* d : {&base, &pair, &solvePair}) {
        if (d->nBase < 1 || d->nDirs < 1) throw ConfigError("design sizes must be positive");
        if (d->m1 < d->m0) throw ConfigError("design ladder needs m1 >= m0");
    }
    if (format != "json" && format != "csv" && format != "both")
        throw ConfigError("format must be json, csv, or both");
    try {
        quad.validate();
        timeQuad.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("quadrature settings invalid: ") + e.what());
    }
}

SuiteContext materialize(const SuiteConfig& cfg) {
    cfg.validate();
    SuiteContext ctx{CovarianceModel::build(cfg.Q), {}, cfg};
    int n = ctx.model.dim();
    for (size_t i = 0; i < cfg.corpus.size(); ++i) {
        const CorpusEntry& e = cfg.corpus[i];
        auto need_dir = [&]() -> const Eigen::VectorXd& {
            if (e.direction.size() != n)
                throw ConfigError("corpus entry " + std::to_string(i) +
                                  " needs a direction of dimension " + std::to_string(n));
            return e.direction;
        };
        if (e.kind == "absclippow") {
            ctx.corpus.push_back(make_ridge(ctx.model, need_dir(), absclippow_profile(e.p, e.clip)));
        } else if (e.kind == "sin") {
            ctx.corpus.push_back(make_ridge(ctx.model, need_dir(), sin_profile(e.omega)));
        } else if (e.kind == "bump") {
            ctx.corpus.push_back(make_ridge(ctx.model, need_dir(), bump_profile()));
        } else if (e.kind == "constant") {
            ctx.corpus.push_back(ScalarField::constant(ctx.model, e.value));
        } else if (e.kind == "linear") {
            ctx.corpus.push_back(make_linear(ctx.model, need_dir()));
        } else if (e.kind == "quadratic") {
            ctx.corpus.push_back(make_quadratic(ctx.model, need_dir()));
        } else {
            throw ConfigError("unknown corpus kind '" + e.kind + "'");
        }
    }
    return ctx;
}

namespace {

struct RawConfig {
    // section -> (key -> value), with corpus sections kept ordered separately.
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::vector<std::pair<int, std::map<std::string, std::string>>> corpus;
};

RawConfig parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    RawConfig raw;
    std::string line, section;
    std::map<std::string, std::string>* bucket = nullptr;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineNo));
            section = trim(s.substr(1, s.size() - 2));
            if (section.rfind("corpus.", 0) == 0) {
                int idx = static_cast<int>(parse_int("corpus index", section.substr(7)));
                raw.corpus.emplace_back(idx, std::map<std::string, std::string>{});
                bucket = &raw.corpus.back().second;
            } else if (section == "covariance" || section == "suite" ||
                       section == "quadrature" || section == "output") {
                bucket = &raw.sections[section];
            } else {
                throw ConfigError("unknown section [" + section + "]");
            }
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(lineNo));
        if (!bucket)
            throw ConfigError("key outside any section at line " + std::to_string(lineNo));
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineNo));
        if (!bucket->emplace(key, val).second)
            throw ConfigError("duplicate key '" + key + "' in section [" + section + "]");
    }
    std::sort(raw.corpus.begin(), raw.corpus.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return raw;
}

// Consumes keys from the map, erroring on leftovers so typos never pass
// silently.
class KeyReader {
public:
    KeyReader(std::string section, std::map<std::string, std::string> kv)
        : section_(std::move(section)), kv_(std::move(kv)) {}

    std::optional<std::string> take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    void finish() const {
        if (!kv_.empty())
            throw ConfigError("unknown key '" + kv_.begin()->first + "' in section [" +
                              section_ + "]");
    }

private:
    std::string section_;
    std::map<std::string, std::string> kv_;
};

} // namespace

SuiteConfig load_config(const std::string& path) {
    RawConfig raw = parse_ini(path);
    SuiteConfig cfg = SuiteConfig::demo();

    if (auto it = raw.sections.find("covariance"); it != raw.sections.end()) {
        KeyReader kr("covariance", it->second);
        std::optional<std::string> dimStr = kr.take("dim");
        std::optional<std::string> diagStr = kr.take("diag");
        if (diagStr) {
            std::vector<double> d = parse_list("diag", *diagStr);
            if (dimStr && parse_int("dim", *dimStr) != static_cast<long>(d.size()))
                throw ConfigError("dim does not match diag length");
            cfg.Q = to_vector(d).asDiagonal();
        } else if (dimStr) {
            int n = static_cast<int>(parse_int("dim", *dimStr));
            if (n < 1) throw ConfigError("dim must be positive");
            Eigen::MatrixXd Q(n, n);
            for (int r = 0; r < n; ++r) {
                std::optional<std::string> rowStr = kr.take("row" + std::to_string(r));
                if (!rowStr) throw ConfigError("missing row" + std::to_string(r) + " in [covariance]");
                std::vector<double> row = parse_list("row", *rowStr);
                if (static_cast<int>(row.size()) != n)
                    throw ConfigError("row" + std::to_string(r) + " must have dim entries");
                for (int c = 0; c < n; ++c) Q(r, c) = row[c];
            }
            cfg.Q = Q;
        }
        kr.finish();
    }

    if (!raw.corpus.empty()) {
        cfg.corpus.clear();
        for (auto& [idx, kv] : raw.corpus) {
            KeyReader kr("corpus." + std::to_string(idx), kv);
            CorpusEntry e;
            std::optional<std::string> kind = kr.take("kind");
            if (!kind) throw ConfigError("corpus entry " + std::to_string(idx) + " needs a kind");
            e.kind = *kind;
            if (auto v = kr.take("p")) e.p = parse_double("p", *v);
            if (auto v = kr.take("clip")) e.clip = parse_double("clip", *v);
            if (auto v = kr.take("omega")) e.omega = parse_double("omega", *v);
            if (auto v = kr.take("value")) e.value = parse_double("value", *v);
            if (auto v = kr.take("direction")) e.direction = to_vector(parse_list("direction", *v));
            kr.finish();
            cfg.corpus.push_back(std::move(e));
        }
    }

    if (auto it = raw.sections.find("suite"); it != raw.sections.end()) {
        KeyReader kr("suite", it->second);
        if (auto v = kr.take("alphas")) cfg.alphas = parse_list("alphas", *v);
        if (auto v = kr.take("lambdas")) cfg.lambdas = parse_list("lambdas", *v);
        std::optional<std::string> tmin = kr.take("tmin"), tmax = kr.take("tmax"),
                                   tcount = kr.take("tcount");
        if (tmin || tmax || tcount) {
            if (!(tmin && tmax && tcount))
                throw ConfigError("tmin, tmax, tcount must be given together");
            cfg.tGrid = log_grid(parse_double("tmin", *tmin), parse_double("tmax", *tmax),
                                 static_cast<int>(parse_int("tcount", *tcount)));
        }
        if (auto v = kr.take("horizon")) cfg.horizon = parse_double("horizon", *v);
        auto design = [&](const char* prefix, DesignSizes& d) {
            std::string p(prefix);
            if (auto v = kr.take(p + "_points")) d.nBase = static_cast<int>(parse_int(p, *v));
            if (auto v = kr.take(p + "_dirs")) d.nDirs = static_cast<int>(parse_int(p, *v));
            if (auto v = kr.take(p + "_m0")) d.m0 = static_cast<int>(parse_int(p, *v));
            if (auto v = kr.take(p + "_m1")) d.m1 = static_cast<int>(parse_int(p, *v));
        };
        design("base", cfg.base);
        design("pair", cfg.pair);
        design("solve", cfg.solvePair);
        kr.finish();
    }

    if (auto it = raw.sections.find("quadrature"); it != raw.sections.end()) {
        KeyReader kr("quadrature", it->second);
        if (auto v = kr.take("gh_order")) cfg.quad.ghOrder = static_cast<int>(parse_int("gh_order", *v));
        if (auto v = kr.take("gh_max_dims")) cfg.quad.ghMaxDims = static_cast<int>(parse_int("gh_max_dims", *v));
        if (auto v = kr.take("samples")) cfg.quad.samples = static_cast<int>(parse_int("samples", *v));
        if (auto v = kr.take("seed")) {
            long s = parse_int("seed", *v);
            if (s < 0) throw ConfigError("seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(s);
            cfg.quad.seed = cfg.seed;
        }
        if (auto v = kr.take("engine")) {
            if (*v == "auto") cfg.quad.engine = QuadratureEngine::Auto;
            else if (*v == "gh") cfg.quad.engine = QuadratureEngine::TensorGaussHermite;
            else if (*v == "sobol") cfg.quad.engine = QuadratureEngine::Sobol;
            else if (*v == "mc") cfg.quad.engine = QuadratureEngine::MonteCarlo;
            else throw ConfigError("engine must be auto, gh, sobol, or mc");
        }
        if (auto v = kr.take("force_generic")) {
            if (*v == "true") cfg.quad.forceGeneric = true;
            else if (*v == "false") cfg.quad.forceGeneric = false;
            else throw ConfigError("force_generic must be true or false");
        }
        if (auto v = kr.take("time_tol")) cfg.timeQuad.tol = parse_double("time_tol", *v);
        if (auto v = kr.take("time_split")) cfg.timeQuad.split = parse_double("time_split", *v);
        if (auto v = kr.take("time_order")) cfg.timeQuad.order = static_cast<int>(parse_int("time_order", *v));
        if (auto v = kr.take("time_sing_order")) cfg.timeQuad.singOrder = static_cast<int>(parse_int("time_sing_order", *v));
        if (auto v = kr.take("time_growth")) cfg.timeQuad.growth = parse_double("time_growth", *v);
        kr.finish();
    }

    if (auto it = raw.sections.find("output"); it != raw.sections.end()) {
        KeyReader kr("output", it->second);
        if (auto v = kr.take("dir")) cfg.outDir = *v;
        if (auto v = kr.take("format")) cfg.format = *v;
        kr.finish();
    }

    cfg.validate();
    return cfg;
}

std::string config_schema() {
    return R"(Config file: '[section]' headers with 'key = value' lines; '#'/';' comments.
Unset keys keep the built-in demo values; unknown sections/keys are errors.

[covariance]
  diag = 4 1 0          # diagonal covariance, or:
  dim = 3               # with row0 = ..., row1 = ..., ... (full symmetric matrix)

[corpus.0], [corpus.1], ...   # presence replaces the demo corpus entirely
  kind = absclippow | sin | bump | constant | linear | quadratic
  direction = 1 0 0     # ambient ridge direction (ridge/linear/quadratic kinds)
  p = 0.5               # absclippow exponent
  clip = 1.0            # absclippow clip level
  omega = 1.0           # sin frequency
  value = 1.0           # constant level

[suite]
  alphas = 0.3 0.5 0.7
  lambdas = 0.5 1 2
  tmin = 1e-3           # log-spaced t grid (give all three)
  tmax = 5
  tcount = 12
  horizon = 1.0
  base_points/base_dirs/base_m0/base_m1   = 64/8/0/5   # sup + value-pair design
  pair_points/pair_dirs/pair_m0/pair_m1   = 64/6/0/4   # derivative-pair design
  solve_points/solve_dirs/solve_m0/solve_m1 = 10/3/0/3 # resolvent/mild design

[quadrature]
  gh_order = 40, gh_max_dims = 4, samples = 65536, seed = 42
  engine = auto | gh | sobol | mc, force_generic = false
  time_tol = 1e-9, time_split = 0.5, time_order = 16, time_sing_order = 24, time_growth = 4

[output]
  dir = out             # where report files go
  format = json | csv | both
)";
}

} // namespace mehler
