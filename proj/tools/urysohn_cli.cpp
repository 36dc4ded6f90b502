#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "urysohn/study.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDnf = 2;

int run_study_command(const std::string& config_path, const CLI::App& study,
                      urysohn::StudyConfig config, const std::string& format_flag,
                      const std::vector<std::string>& method_flags, double tolerance,
                      int max_iterations, bool no_timing, const std::string& out_path) {
    using urysohn::Method;
    using urysohn::OutputFormat;

    if (!config_path.empty()) {
        urysohn::StudyConfig from_file = urysohn::load_config(config_path);
        // Command-line flags override file values.
        if (study.count("--problem") == 0) config.problem = from_file.problem;
        if (study.count("--degree") == 0) config.degree = from_file.degree;
        if (study.count("--n") == 0) config.mesh_sizes = from_file.mesh_sizes;
        if (study.count("--m-exponent") == 0) config.m_exponent = from_file.m_exponent;
        if (study.count("--m-exponent-modified") == 0)
            config.m_exponent_modified = from_file.m_exponent_modified;
        if (study.count("--rho") == 0) config.rho = from_file.rho;
        if (study.count("--tol") == 0) config.newton.tolerance = from_file.newton.tolerance;
        if (study.count("--max-iterations") == 0)
            config.newton.max_iterations = from_file.newton.max_iterations;
        if (study.count("--grid") == 0) config.error_grid = from_file.error_grid;
        if (study.count("--format") == 0) config.format = from_file.format;
        if (study.count("--methods") == 0) config.methods = from_file.methods;
        if (study.count("--no-timing") == 0) config.record_timing = from_file.record_timing;
    }

    if (!format_flag.empty()) {
        const auto parsed = urysohn::parse_format(format_flag);
        if (!parsed) {
            std::cerr << "unknown format: " << format_flag << "\n";
            return kExitUsage;
        }
        config.format = *parsed;
    }
    if (!method_flags.empty()) {
        config.methods.clear();
        for (const auto& name : method_flags) {
            const auto parsed = urysohn::parse_method(name);
            if (!parsed) {
                std::cerr << "unknown method: " << name << "\n";
                return kExitUsage;
            }
            config.methods.push_back(*parsed);
        }
    }
    if (study.count("--tol") > 0) config.newton.tolerance = tolerance;
    if (study.count("--max-iterations") > 0) config.newton.max_iterations = max_iterations;
    if (no_timing) config.record_timing = false;

    urysohn::validate(config);
    const auto rows = urysohn::run_study(config);
    const std::string text = urysohn::emit(rows, config.format);

    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return kExitUsage;
        }
        out << text;
    }

    if (urysohn::has_failures(rows)) {
        std::cerr << "warning: some solves did not converge (DNF cells present)\n";
        return kExitDnf;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvers and convergence studies for Urysohn integral equations of the second kind"};
    app.require_subcommand(1);

    urysohn::StudyConfig config;
    std::string config_path;
    std::string format_flag;
    std::string out_path;
    std::vector<std::string> method_flags;
    double tolerance = config.newton.tolerance;
    int max_iterations = config.newton.max_iterations;
    bool no_timing = false;

    CLI::App* study = app.add_subcommand(
        "study", "Run a mesh-refinement study and print the error/order table");
    study->add_option("--problem", config.problem, "Problem name (atkinson-potra or linear)");
    study->add_option("--degree", config.degree, "Piecewise polynomial degree r")
        ->check(CLI::NonNegativeNumber);
    study->add_option("--n", config.mesh_sizes, "Coarse mesh sizes, e.g. 2,4,8,16,32")
        ->delimiter(',');
    study->add_option("--m-exponent", config.m_exponent,
                      "Fine-mesh law m = n^a for every method");
    study->add_option("--m-exponent-modified", config.m_exponent_modified,
                      "Override of the m = n^a law for the modified projection pair");
    study->add_option("--rho", config.rho, "Gauss-Legendre points per fine interval");
    study->add_option("--tol", tolerance, "Newton residual tolerance (sup norm)");
    study->add_option("--max-iterations", max_iterations, "Newton iteration budget");
    study->add_option("--methods", method_flags,
                      "Methods to run (nystrom, galerkin, iterated_galerkin, modified, "
                      "iterated_modified)")
        ->delimiter(',');
    study->add_option("--grid", config.error_grid, "Uniform points in the error grid");
    study->add_option("--format", format_flag, "Output format: csv, markdown or json");
    study->add_option("--out", out_path, "Write the table to this file instead of stdout");
    study->add_option("--config", config_path,
                      "JSON config file; explicit flags override its values");
    study->add_flag("--no-timing", no_timing, "Emit zero wall times for reproducible output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitUsage;
    }

    try {
        return run_study_command(config_path, *study, config, format_flag, method_flags, tolerance,
                                 max_iterations, no_timing, out_path);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
}
