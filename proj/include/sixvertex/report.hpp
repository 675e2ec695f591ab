#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"

namespace sixvertex {

enum class CaseKind { Check, Audit };

struct CaseRecord {
    std::string suite;
    std::string id;
    CaseKind kind = CaseKind::Check;
    json inputs = json::object();
    json outputs = json::object();
    double residual = 0.0;
    std::optional<double> tolerance;  // audits carry none
    bool pass = false;
    std::string message;
};

struct Aggregate {
    double max_residual = 0.0;          // over check cases
    double max_audit_discrepancy = 0.0; // over audit cases, reported only
    std::size_t case_count = 0;
    std::size_t check_count = 0;
    std::size_t pass_count = 0;
    double wall_time_s = 0.0;
    bool pass = true;
};

struct SuiteReport {
    std::string suite;
    json config = json::object();
    std::vector<CaseRecord> cases;
    Aggregate aggregate;
};

inline Aggregate aggregate_cases(const std::vector<CaseRecord>& cases, double wall) {
    Aggregate a;
    a.wall_time_s = wall;
    a.case_count = cases.size();
    for (const auto& c : cases) {
        if (c.pass) ++a.pass_count;
        if (c.kind == CaseKind::Audit) {
            if (std::isfinite(c.residual)) a.max_audit_discrepancy = std::max(a.max_audit_discrepancy, c.residual);
            continue;
        }
        ++a.check_count;
        a.max_residual = std::isfinite(c.residual) ? std::max(a.max_residual, c.residual) : INFINITY;
        a.pass = a.pass && c.pass;
    }
    return a;
}

inline json json_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json case_to_json(const CaseRecord& c) {
    json j;
    j["suite"] = c.suite;
    j["id"] = c.id;
    j["kind"] = c.kind == CaseKind::Check ? "check" : "audit";
    j["inputs"] = c.inputs;
    j["outputs"] = c.outputs;
    j["residual"] = json_number(c.residual);
    j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    j["pass"] = c.pass;
    j["message"] = c.message;
    return j;
}

inline constexpr const char* kRngDescription = "mt19937_64 seeded with seed ^ fnv1a(stream name), doubles from the top 53 bits";

inline json report_to_json(const SuiteReport& r) {
    json j;
    j["suite"] = r.suite;
    j["config"] = r.config;
    j["rng"] = kRngDescription;
    json cases = json::array();
    for (const auto& c : r.cases) cases.push_back(case_to_json(c));
    j["cases"] = cases;
    const auto& a = r.aggregate;
    j["aggregate"] = {{"max_residual", json_number(a.max_residual)},
                      {"max_audit_discrepancy", json_number(a.max_audit_discrepancy)},
                      {"case_count", a.case_count},
                      {"check_count", a.check_count},
                      {"pass_count", a.pass_count},
                      {"wall_time_s", a.wall_time_s},
                      {"pass", a.pass}};
    j["pass"] = a.pass;
    return j;
}

namespace detail {

inline std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

inline json lookup(const CaseRecord& c, const std::string& key) {
    if (c.outputs.contains(key)) return c.outputs[key];
    if (c.inputs.contains(key)) return c.inputs[key];
    return nullptr;
}

}  // namespace detail

// Column sets:
//   partition:     case,N,M,a1,a2,b1,b2,c1,c2,Z_brute,Z_transfer,rel_err,tolerance,pass
//   action-angle:  case,u_re,u_im,b_abs2,phi,rho,epsilon,residual,tolerance,pass
//   anything else: suite,case,kind,residual,tolerance,pass,message
inline std::vector<std::string> csv_columns(const std::string& suite) {
    if (suite == "partition")
        return {"case", "N", "M", "a1", "a2", "b1", "b2", "c1", "c2", "Z_brute", "Z_transfer", "rel_err", "tolerance", "pass"};
    if (suite == "action-angle")
        return {"case", "u_re", "u_im", "b_abs2", "phi", "rho", "epsilon", "residual", "tolerance", "pass"};
    return {"suite", "case", "kind", "residual", "tolerance", "pass", "message"};
}

inline std::string emit_report(const SuiteReport& r, const std::string& format) {
    if (format == "json") return report_to_json(r).dump(2) + "\n";
    if (format != "csv") throw UsageError("unsupported report format '" + format + "'");
    const auto cols = csv_columns(r.suite);
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& c : r.cases) {
        const json cj = case_to_json(c);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const auto& k = cols[i];
            json v;
            if (k == "case") v = c.id;
            else if (cj.contains(k) && k != "inputs" && k != "outputs") v = cj[k];
            else v = detail::lookup(c, k);
            os << (i ? "," : "") << detail::csv_cell(v);
        }
        os << "\n";
    }
    return os.str();
}

// 0 all pass, 1 any failure
inline int exit_code(const SuiteReport& r) { return r.aggregate.pass ? 0 : 1; }

}  // namespace sixvertex
