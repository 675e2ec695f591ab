#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sixvertex/sixvertex.hpp"

using namespace sixvertex;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex model verification harness"};
    std::string suite, config_path, out_path, format;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::string suites_help;
    for (const auto& s : suite_names()) suites_help += (suites_help.empty() ? "" : " ") + s;
    app.add_option("suite", suite, "one of: " + suites_help)->required();
    app.add_option("--config", config_path, "JSON run config")->required();
    auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_path, "report path (default stdout)");
    auto* fmt_opt = app.add_option("--format", format, "json or csv");
    auto* tol_opt = app.add_option("--tol", tol, "set every tolerance to this value");
    app.footer("exit codes: 0 all checks pass, 1 some check failed, 2 usage or config error\n"
               "threads: " + std::string(kThreadEnv) + " (default: hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    SuiteReport report;
    RunConfig cfg;
    try {
        if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
        cfg = load_config(slurp(config_path), suite);
        if (*seed_opt) cfg.seed = seed;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (*fmt_opt) cfg.format = format;
        if (*tol_opt) cfg.tolerances.set_all(tol);
        validate(cfg);
    } catch (const Error& e) {
        std::cerr << "sixvertex: " << e.what() << "\n";
        return 2;
    }

    try {
        report = run_suite(cfg);
        const std::string text = emit_report(report, cfg.format);
        if (cfg.out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.out_path);
            if (!out) throw UsageError("cannot write '" + cfg.out_path + "'");
            out << text;
        }
    } catch (const UsageError& e) {
        std::cerr << "sixvertex: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sixvertex: " << e.what() << "\n";
        return 1;
    }
    const auto& a = report.aggregate;
    std::cerr << report.suite << ": " << a.pass_count << "/" << a.case_count << " cases pass, max check residual "
              << a.max_residual << ", " << (a.pass ? "PASS" : "FAIL") << "\n";
    return exit_code(report);
}
