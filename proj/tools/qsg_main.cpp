// qsg: scenario-driven verification harness for two-parameter operator
// families and the spectra of their generators.
//
//   qsg run --config <path> [--format json|table] [--out <path>] [--timing]
//   qsg list
//   qsg selftest
//
// Exit codes: 0 when no record FAILs, 1 when any FAILs (or the selftest
// fails), 2 on configuration or catalog errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qsg/catalog.hpp"
#include "qsg/errors.hpp"
#include "qsg/scenario.hpp"
#include "qsg/selftest.hpp"
#include "qsg/version.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& format,
            const std::string& out_path, bool timing) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    qsg::Report report;
    std::string payload;
    try {
        const qsg::ScenarioConfig config = qsg::parse_scenario_config(buffer.str());
        report = qsg::run_scenario(config);
        payload = qsg::emit_report(
            report, format == "table" ? qsg::ReportFormat::Table : qsg::ReportFormat::Json,
            timing);
    } catch (const qsg::ConfigError& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
        return 2;
    } catch (const qsg::CatalogError& e) {
        std::cerr << "catalog error: " << e.what() << "\n";
        return 2;
    }

    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write to '" << out_path << "'\n";
            return 2;
        }
        out << payload;
    }
    return report.summary.fail == 0 ? 0 : 1;
}

int cmd_list() {
    for (const auto& entry : qsg::list_catalog()) {
        std::cout << entry.name << "  -  " << entry.description << "\n";
    }
    return 0;
}

int cmd_selftest() { return qsg::run_selftest(std::cout) ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("qsg ") + "- quasi-semigroup spectral verification harness"};
    app.set_version_flag("--version", qsg::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "json";
    std::string out_path;
    bool timing = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("--config", config_path, "path to the scenario configuration (JSON)")
        ->required();
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    run->add_option("--out", out_path, "write the report to a file instead of stdout");
    run->add_flag("--timing", timing, "include wall time in the report (not byte-stable)");

    CLI::App* list = app.add_subcommand("list", "list the built-in backend catalog");
    CLI::App* selftest = app.add_subcommand("selftest", "run the kernel invariant suites");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, format, out_path, timing);
    if (list->parsed()) return cmd_list();
    if (selftest->parsed()) return cmd_selftest();
    return 2;
}
