#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gammaint/report.hpp"

#ifndef GAMMAINT_SCENARIO_DIR
#define GAMMAINT_SCENARIO_DIR "scenarios"
#endif

namespace {

std::string resolve_scenario(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    fs::path bundled = fs::path(GAMMAINT_SCENARIO_DIR) / (arg + ".yaml");
    if (fs::exists(bundled)) return bundled.string();
    throw gammaint::Error(gammaint::ErrorKind::InvalidInput, "no scenario file or bundled scenario named '" + arg + "'");
}

gammaint::ZWindow parse_window(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw gammaint::Error(gammaint::ErrorKind::InvalidInput, "--z-window expects A,B");
    gammaint::ZWindow w{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    if (w.lo > w.hi) throw gammaint::Error(gammaint::ErrorKind::InvalidInput, "--z-window needs A <= B");
    return w;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gamma-integral structure workbench for toric complete intersections"};
    app.require_subcommand(1, 1);

    std::string scenario, q_bound, z_window, json_out;
    double tol = 0;
    std::vector<std::string> names;
    for (const auto& [name, fn] : gammaint::commands()) names.push_back(name);
    names.push_back("report-all");
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, "run " + name);
        sub->add_option("--scenario", scenario, "scenario file or bundled name")->required();
        sub->add_option("--q-bound", q_bound, "q-degree truncation (rational)");
        sub->add_option("--z-window", z_window, "allowed z powers A,B");
        sub->add_option("--tol", tol, "numeric tolerance override");
        sub->add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
    }
    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        gammaint::RunOptions opts;
        if (!q_bound.empty()) opts.q_bound = gammaint::parse_rational(q_bound);
        if (!z_window.empty()) opts.z_window = parse_window(z_window);
        if (tol > 0) opts.tol = tol;
        gammaint::Session session(gammaint::load_scenario_file(resolve_scenario(scenario)), opts);
        gammaint::Report report = gammaint::run(command, session);
        if (json_out == "-") {
            std::cout << report.to_json().dump(2) << "\n";
        } else {
            std::cout << report.table();
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                out << report.to_json().dump(2) << "\n";
            }
        }
        return report.all_pass() ? 0 : 1;
    } catch (const gammaint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
