#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "convention.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace sixvertex {

using json = nlohmann::ordered_json;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"ybe",    "rtt",        "commute",   "sixteen",      "lemma-audit",
                                                   "bethe",  "eigencheck", "partition", "action-angle", "all"};
    return names;
}

inline bool is_suite(const std::string& s) {
    for (const auto& n : suite_names())
        if (n == s) return true;
    return false;
}

struct SuiteGrid {
    std::vector<int> sites;
    int draws = 3;
    int pairs = 3;
    int points = 5;
    std::vector<double> eta;
    std::vector<int> magnons;
    std::vector<int> lengths;
    int max_area = 9;
    double field_V = 0.4;

    bool operator==(const SuiteGrid&) const = default;
};

// keys each suite's grid accepts
inline const std::set<std::string>& grid_keys(const std::string& suite) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"ybe", {"eta", "points"}},
        {"rtt", {"sites", "draws"}},
        {"commute", {"sites", "draws", "pairs"}},
        {"sixteen", {"sites", "draws"}},
        {"lemma-audit", {"sites", "draws", "lengths"}},
        {"bethe", {"sites", "magnons", "draws", "points"}},
        {"eigencheck", {"sites", "magnons", "draws", "points"}},
        {"partition", {"max_area", "draws", "field_V"}},
        {"action-angle", {"sites", "draws", "points"}},
    };
    return keys.at(suite);
}

inline SuiteGrid default_grid(const std::string& suite, double eta) {
    SuiteGrid g;
    if (suite == "ybe") {
        g.eta = {eta};
        g.points = 5;
    } else if (suite == "rtt") {
        g.sites = {1, 2, 3, 4};
    } else if (suite == "commute") {
        g.sites = {2, 3, 4, 5, 6};
    } else if (suite == "sixteen") {
        g.sites = {2, 3, 4, 5};
    } else if (suite == "lemma-audit") {
        g.sites = {2, 3, 4, 5, 6};
        g.draws = 1;
        g.lengths = {4, 5};
    } else if (suite == "bethe") {
        g.sites = {2, 3};
        g.magnons = {0, 1};
        g.draws = 1;
        g.points = 10;
    } else if (suite == "eigencheck") {
        g.sites = {2, 3};
        g.magnons = {0, 1};
        g.draws = 1;
        g.points = 3;
    } else if (suite == "partition") {
        g.max_area = 9;
        g.draws = 3;
        g.field_V = 0.4;
    } else if (suite == "action-angle") {
        g.sites = {1, 2, 3, 4};
        g.points = 20;
    }
    return g;
}

struct Tolerances {
    double ybe = 1e-12;
    double rtt = 1e-10;
    double sixteen = 1e-10;
    double commute = 1e-10;
    double recursion = 1e-12;
    double bethe_residual = 1e-10;
    double eigencheck = 1e-8;
    double vacuum = 1e-12;
    double log_derivative = 1e-6;
    double decomposition = 1e-10;
    double partition = 1e-10;
    double semigrand = 1e-10;
    double conjugate = 1e-14;
    double scalarization = 1e-12;
    double charges = 1e-10;

    bool operator==(const Tolerances&) const = default;

    template <class F>
    void each(F&& f) {
        f("ybe", ybe), f("rtt", rtt), f("sixteen", sixteen), f("commute", commute), f("recursion", recursion);
        f("bethe_residual", bethe_residual), f("eigencheck", eigencheck), f("vacuum", vacuum);
        f("log_derivative", log_derivative), f("decomposition", decomposition), f("partition", partition);
        f("semigrand", semigrand), f("conjugate", conjugate), f("scalarization", scalarization), f("charges", charges);
    }
    void set_all(double x) {
        each([x](const char*, double& t) { t = x; });
    }
};

struct RunConfig {
    std::string suite = "ybe";
    std::uint64_t seed = 1;
    Convention convention = Convention::Trigonometric;
    double eta = 0.7;
    double H = 0.0;
    double V = 0.0;
    double lambda_c = 1.0;
    double inhomogeneity_scale = 0.2;
    std::map<std::string, SuiteGrid> grids;
    Tolerances tolerances;
    std::string out_path;  // empty: stdout
    std::string format = "json";

    bool operator==(const RunConfig&) const = default;

    const SuiteGrid& grid(const std::string& s) const { return grids.at(s); }
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError(where + (where.empty() ? "" : ".") + it.key() + ": unknown key");
}

inline double get_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field + ": must be finite");
    return x;
}

inline int get_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field + ": expected an integer");
    return j.get<int>();
}

inline std::vector<int> get_int_list(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected a list of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<double> get_number_list(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace detail

inline void validate(const RunConfig& c) {
    if (!is_suite(c.suite)) throw ConfigError("suite: unknown suite '" + c.suite + "'");
    if (c.format != "json" && c.format != "csv") throw ConfigError("output.format: expected json or csv");
    if (c.lambda_c <= 0) throw ConfigError("params.lambda_c: must be positive");
    if (c.inhomogeneity_scale < 0) throw ConfigError("params.inhomogeneity_scale: must be nonnegative");
    Tolerances t = c.tolerances;
    t.each([](const char* name, double& x) {
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string("tolerances.") + name + ": must be positive");
    });
    for (const auto& [name, g] : c.grids) {
        const auto& keys = grid_keys(name);
        const std::string at = "grids." + name + ".";
        auto nonempty = [&](const char* key, std::size_t n) {
            if (keys.count(key) && n == 0) throw ConfigError(at + key + ": must be nonempty");
        };
        nonempty("sites", g.sites.size());
        nonempty("eta", g.eta.size());
        nonempty("magnons", g.magnons.size());
        nonempty("lengths", g.lengths.size());
        if (keys.count("sites"))
            for (int n : g.sites)
                if (n < 1 || n > 8) throw ConfigError(at + "sites: entries must lie in 1..8");
        if (keys.count("magnons"))
            for (int n : g.magnons)
                if (n < 0) throw ConfigError(at + "magnons: entries must be >= 0");
        if (keys.count("lengths"))
            for (int n : g.lengths)
                if (n < 4 || n > 8) throw ConfigError(at + "lengths: entries must lie in 4..8");
        if (keys.count("draws") && g.draws < 1) throw ConfigError(at + "draws: must be >= 1");
        if (keys.count("pairs") && g.pairs < 1) throw ConfigError(at + "pairs: must be >= 1");
        if (keys.count("points") && g.points < 1) throw ConfigError(at + "points: must be >= 1");
        if (keys.count("max_area") && (g.max_area < 1 || g.max_area > 12))
            throw ConfigError(at + "max_area: must lie in 1..12");
    }
}

// suite_override (the CLI positional) wins over the file's "suite"
inline RunConfig load_config(const std::string& text, const std::string& suite_override = "") {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error at " + detail::line_col(text, e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown(j, {"suite", "seed", "convention", "params", "grids", "tolerances", "output"}, "");
    RunConfig c;
    if (j.contains("suite")) {
        if (!j["suite"].is_string()) throw ConfigError("suite: expected a string");
        c.suite = j["suite"].get<std::string>();
    } else if (suite_override.empty()) {
        throw ConfigError("suite: required");
    }
    if (!suite_override.empty()) c.suite = suite_override;
    if (!is_suite(c.suite)) throw ConfigError("suite: unknown suite '" + c.suite + "'");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("convention")) {
        if (!j["convention"].is_string()) throw ConfigError("convention: expected a string");
        try {
            c.convention = convention_from_string(j["convention"].get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("convention: ") + e.what());
        }
    }
    if (j.contains("params")) {
        const auto& p = j["params"];
        if (!p.is_object()) throw ConfigError("params: expected an object");
        detail::reject_unknown(p, {"eta", "H", "V", "lambda_c", "inhomogeneity_scale"}, "params");
        if (p.contains("eta")) c.eta = detail::get_number(p["eta"], "params.eta");
        if (p.contains("H")) c.H = detail::get_number(p["H"], "params.H");
        if (p.contains("V")) c.V = detail::get_number(p["V"], "params.V");
        if (p.contains("lambda_c")) c.lambda_c = detail::get_number(p["lambda_c"], "params.lambda_c");
        if (p.contains("inhomogeneity_scale"))
            c.inhomogeneity_scale = detail::get_number(p["inhomogeneity_scale"], "params.inhomogeneity_scale");
    }
    for (const auto& s : suite_names())
        if (s != "all") c.grids[s] = default_grid(s, c.eta);
    if (j.contains("grids")) {
        const auto& g = j["grids"];
        if (!g.is_object()) throw ConfigError("grids: expected an object");
        for (auto it = g.begin(); it != g.end(); ++it) {
            const std::string name = it.key();
            if (!c.grids.count(name)) throw ConfigError("grids." + name + ": unknown suite");
            const auto& o = it.value();
            if (!o.is_object()) throw ConfigError("grids." + name + ": expected an object");
            detail::reject_unknown(o, grid_keys(name), "grids." + name);
            auto& sg = c.grids[name];
            const std::string at = "grids." + name + ".";
            if (o.contains("sites")) sg.sites = detail::get_int_list(o["sites"], at + "sites");
            if (o.contains("draws")) sg.draws = detail::get_int(o["draws"], at + "draws");
            if (o.contains("pairs")) sg.pairs = detail::get_int(o["pairs"], at + "pairs");
            if (o.contains("points")) sg.points = detail::get_int(o["points"], at + "points");
            if (o.contains("eta")) sg.eta = detail::get_number_list(o["eta"], at + "eta");
            if (o.contains("magnons")) sg.magnons = detail::get_int_list(o["magnons"], at + "magnons");
            if (o.contains("lengths")) sg.lengths = detail::get_int_list(o["lengths"], at + "lengths");
            if (o.contains("max_area")) sg.max_area = detail::get_int(o["max_area"], at + "max_area");
            if (o.contains("field_V")) sg.field_V = detail::get_number(o["field_V"], at + "field_V");
        }
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances: expected an object");
        std::set<std::string> names;
        c.tolerances.each([&](const char* n, double&) { names.insert(n); });
        detail::reject_unknown(t, names, "tolerances");
        c.tolerances.each([&](const char* n, double& x) {
            if (t.contains(n)) x = detail::get_number(t[n], std::string("tolerances.") + n);
        });
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) throw ConfigError("output: expected an object");
        detail::reject_unknown(o, {"path", "format"}, "output");
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw ConfigError("output.path: expected a string");
            c.out_path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) throw ConfigError("output.format: expected a string");
            c.format = o["format"].get<std::string>();
        }
    }
    validate(c);
    return c;
}

inline json grid_to_json(const std::string& suite, const SuiteGrid& g) {
    json o = json::object();
    const auto& k = grid_keys(suite);
    if (k.count("eta")) o["eta"] = g.eta;
    if (k.count("sites")) o["sites"] = g.sites;
    if (k.count("magnons")) o["magnons"] = g.magnons;
    if (k.count("lengths")) o["lengths"] = g.lengths;
    if (k.count("draws")) o["draws"] = g.draws;
    if (k.count("pairs")) o["pairs"] = g.pairs;
    if (k.count("points")) o["points"] = g.points;
    if (k.count("max_area")) o["max_area"] = g.max_area;
    if (k.count("field_V")) o["field_V"] = g.field_V;
    return o;
}

inline json config_to_json(const RunConfig& c) {
    json j;
    j["suite"] = c.suite;
    j["seed"] = c.seed;
    j["convention"] = to_string(c.convention);
    j["params"] = {{"eta", c.eta}, {"H", c.H}, {"V", c.V}, {"lambda_c", c.lambda_c},
                   {"inhomogeneity_scale", c.inhomogeneity_scale}};
    json g = json::object();
    for (const auto& s : suite_names())
        if (c.grids.count(s)) g[s] = grid_to_json(s, c.grids.at(s));
    j["grids"] = g;
    json t = json::object();
    Tolerances tol = c.tolerances;
    tol.each([&](const char* n, double& x) { t[n] = x; });
    j["tolerances"] = t;
    j["output"] = {{"path", c.out_path}, {"format", c.format}};
    return j;
}

inline std::string serialize_config(const RunConfig& c) { return config_to_json(c).dump(2); }

}  // namespace sixvertex
