#include "mehler/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "mehler/errors.hpp"

namespace mehler {

namespace {

void check_finite_nonneg(double v, const char* who) {
    if (!std::isfinite(v) || v < 0.0)
        throw DomainError(std::string(who) + " must be finite and >= 0");
}

// Fixed shortest-roundtrip formatting so CSV output is byte-deterministic.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_vec(const Eigen::VectorXd& v) {
    std::string out = "[";
    for (int i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    out += "]";
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

EstimateReport make_report(std::string inequalityId, std::string anchor,
                           double lhs, double rhs, double errEst,
                           ReportWitness witness, std::string field,
                           std::optional<double> param) {
    check_finite_nonneg(lhs, "lhs");
    check_finite_nonneg(rhs, "rhs");
    check_finite_nonneg(errEst, "errEst");
    EstimateReport r;
    r.inequalityId = std::move(inequalityId);
    r.anchor = std::move(anchor);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kRatioCap : 0.0);
    r.errEst = errEst;
    r.witness = std::move(witness);
    r.field = std::move(field);
    r.param = param;
    r.pass = lhs <= rhs * (1.0 + kRelSlack) + kErrMult * errEst;
    return r;
}

bool recompute_pass(const EstimateReport& r) {
    return r.lhs <= r.rhs * (1.0 + kRelSlack) + kErrMult * r.errEst;
}

const std::vector<std::string>& anchor_registry() {
    static const std::vector<std::string> anchors = {
        "OU",
        "stimasup",
        "risolvente",
        "stimasup_res",
        "eq_risolvente",
        "Cauchy",
        "v",
        "CM",
        "legge",
        "funzionegradiente",
        "funzionederseconde",
        "funzionederterze",
        "stimagradienteH",
        "derivataT(t)f",
        "derivatasecondaT(t)f",
        "derivataterzaT(t)f",
        "stimederivate",
        "sgrkalpha",
        "sgralpha",
        "gradsgralpha",
        "gradsgrzeroalpha",
        "stimagradientealpha",
        "stimaderivatealpha",
        "gradu",
        "D^2u",
        "Schauder0",
        "Schauder",
        "condZygmund",
        "Zygmund",
        "Schauderevol",
        "interp(i)",
        "interp(ii)",
    };
    return anchors;
}

std::vector<std::string> anchors_covered(const std::vector<EstimateReport>& reports) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& r : reports)
        if (seen.insert(r.anchor).second) out.push_back(r.anchor);
    return out;
}

std::vector<std::string> anchors_missing(const std::vector<EstimateReport>& reports) {
    std::set<std::string> seen;
    for (const auto& r : reports) seen.insert(r.anchor);
    std::vector<std::string> out;
    for (const auto& a : anchor_registry())
        if (!seen.count(a)) out.push_back(a);
    return out;
}

bool all_pass(const std::vector<EstimateReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

std::string reports_to_json(const std::vector<EstimateReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json w;
        w["x"] = std::vector<double>(r.witness.x.data(), r.witness.x.data() + r.witness.x.size());
        w["h"] = std::vector<double>(r.witness.h.data(), r.witness.h.data() + r.witness.h.size());
        w["note"] = r.witness.note;
        nlohmann::ordered_json o;
        o["inequality_id"] = r.inequalityId;
        o["anchor"] = r.anchor;
        o["lhs"] = r.lhs;
        o["rhs"] = r.rhs;
        o["ratio"] = r.ratio;
        o["pass"] = r.pass;
        o["witness"] = std::move(w);
        o["err_est"] = r.errEst;
        o["ms"] = r.ms;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<EstimateReport>& reports) {
    std::string out = "inequality_id,anchor,lhs,rhs,ratio,pass,witness,err_est,ms\n";
    for (const auto& r : reports) {
        std::string w = "x=" + fmt_vec(r.witness.x) + ";h=" + fmt_vec(r.witness.h);
        if (!r.witness.note.empty()) w += ";" + r.witness.note;
        out += csv_quote(r.inequalityId) + "," + csv_quote(r.anchor) + "," + fmt(r.lhs) +
               "," + fmt(r.rhs) + "," + fmt(r.ratio) + "," + (r.pass ? "true" : "false") +
               "," + csv_quote(w) + "," + fmt(r.errEst) + "," + fmt(r.ms) + "\n";
    }
    return out;
}

std::string reports_to_curves_csv(const std::vector<EstimateReport>& reports) {
    std::string out = "inequality_id,anchor,field,param,lhs,rhs\n";
    for (const auto& r : reports) {
        if (!r.param) continue;
        out += csv_quote(r.inequalityId) + "," + csv_quote(r.anchor) + "," +
               csv_quote(r.field) + "," + fmt(*r.param) + "," + fmt(r.lhs) + "," +
               fmt(r.rhs) + "\n";
    }
    return out;
}

} // namespace mehler
