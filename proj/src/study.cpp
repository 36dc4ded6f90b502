#include "urysohn/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "urysohn/problems.hpp"

namespace urysohn {

std::string_view format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::markdown: return "markdown";
        case OutputFormat::json: return "json";
    }
    throw std::logic_error("format_name: unknown format");
}

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "markdown") return OutputFormat::markdown;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

void validate(const StudyConfig& config) {
    if (config.problem.empty()) throw std::invalid_argument("study config: empty problem name");
    if (config.degree < 0) throw std::invalid_argument("study config: degree must be >= 0");
    if (config.mesh_sizes.empty()) throw std::invalid_argument("study config: empty mesh list");
    for (std::size_t i = 0; i < config.mesh_sizes.size(); ++i) {
        if (config.mesh_sizes[i] < 1)
            throw std::invalid_argument("study config: mesh sizes must be >= 1");
        if (i > 0 && config.mesh_sizes[i] <= config.mesh_sizes[i - 1])
            throw std::invalid_argument("study config: mesh sizes must be strictly increasing");
    }
    const auto exponent_ok = [](int a) { return a >= 1 && a <= 3; };
    if (!exponent_ok(config.m_exponent))
        throw std::invalid_argument("study config: m exponent must be 1, 2 or 3");
    if (config.m_exponent_modified && !exponent_ok(*config.m_exponent_modified))
        throw std::invalid_argument("study config: modified m exponent must be 1, 2 or 3");
    if (config.rho < 1 || config.rho > 10)
        throw std::invalid_argument("study config: rho must lie in [1,10]");
    if (config.rho < config.degree + 1)
        throw std::invalid_argument("study config: rho must be at least degree+1");
    if (!(config.newton.tolerance > 0.0))
        throw std::invalid_argument("study config: tolerance must be positive");
    if (config.newton.max_iterations < 1)
        throw std::invalid_argument("study config: max iterations must be >= 1");
    if (config.error_grid < 2)
        throw std::invalid_argument("study config: error grid needs at least 2 points");
    if (config.methods.empty()) throw std::invalid_argument("study config: no methods requested");
}

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json data = nlohmann::json::parse(in);
    if (!data.is_object()) throw std::invalid_argument("config file: expected a JSON object");

    StudyConfig config;
    for (const auto& [key, value] : data.items()) {
        if (key == "problem") {
            config.problem = value.get<std::string>();
        } else if (key == "degree") {
            config.degree = value.get<int>();
        } else if (key == "n") {
            config.mesh_sizes = value.get<std::vector<int>>();
        } else if (key == "m_exponent") {
            config.m_exponent = value.get<int>();
        } else if (key == "m_exponent_modified") {
            config.m_exponent_modified = value.get<int>();
        } else if (key == "rho") {
            config.rho = value.get<int>();
        } else if (key == "newton") {
            if (!value.is_object()) throw std::invalid_argument("config file: newton must be an object");
            for (const auto& [nkey, nvalue] : value.items()) {
                if (nkey == "tolerance")
                    config.newton.tolerance = nvalue.get<double>();
                else if (nkey == "max_iterations")
                    config.newton.max_iterations = nvalue.get<int>();
                else
                    throw std::invalid_argument("config file: unknown newton key: " + nkey);
            }
        } else if (key == "error_grid") {
            config.error_grid = value.get<int>();
        } else if (key == "format") {
            const auto parsed = parse_format(value.get<std::string>());
            if (!parsed) throw std::invalid_argument("config file: unknown format");
            config.format = *parsed;
        } else if (key == "methods") {
            config.methods.clear();
            for (const auto& entry : value) {
                const auto parsed = parse_method(entry.get<std::string>());
                if (!parsed)
                    throw std::invalid_argument("config file: unknown method: " +
                                                entry.get<std::string>());
                config.methods.push_back(*parsed);
            }
        } else if (key == "record_timing") {
            config.record_timing = value.get<bool>();
        } else {
            throw std::invalid_argument("config file: unknown key: " + key);
        }
    }
    return config;
}

double sup_error(const Solution& solution, const ScalarFunction& exact, int grid_size) {
    if (!exact) throw std::invalid_argument("sup_error: exact solution required");
    if (grid_size < 2) throw std::invalid_argument("sup_error: grid needs at least 2 points");
    double worst = 0.0;
    const auto probe = [&](double t) {
        const double diff = std::abs(solution.evaluate(t) - exact(t));
        if (diff > worst) worst = diff;
    };
    for (int i = 0; i < grid_size; ++i) probe(static_cast<double>(i) / (grid_size - 1));
    const auto& rule = solution.grid.rule();
    const auto& partition = rule.partition();
    for (int j = 0; j <= partition.interval_count(); ++j) probe(partition.breakpoint(j));
    for (int k = 0; k < rule.node_count(); ++k) probe(rule.node(k));
    return worst;
}

namespace {

UrysohnProblem make_problem(const std::string& name) {
    if (name == "atkinson-potra") return atkinson_potra_problem();
    if (name == "linear") return linear_test_problem(1.0);
    throw std::invalid_argument("run_study: unknown problem: " + name);
}

int pow_int(int base, int exponent) {
    int out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace

std::vector<StudyRow> run_study(const StudyConfig& config) {
    validate(config);
    const UrysohnProblem problem = make_problem(config.problem);
    if (!problem.exact)
        throw std::invalid_argument("run_study: problem has no exact solution to measure against");

    const auto exponent_for = [&](Method method) {
        const bool modified_pair =
            method == Method::modified || method == Method::iterated_modified;
        return modified_pair ? config.m_exponent_modified.value_or(config.m_exponent)
                             : config.m_exponent;
    };

    using clock = std::chrono::steady_clock;
    std::vector<StudyRow> rows;
    rows.reserve(config.mesh_sizes.size());

    for (const int n : config.mesh_sizes) {
        StudyRow row;
        row.n = n;
        // Base solutions cached so an iterated method reuses the solve its
        // definition starts from (same n, same fine mesh).
        std::optional<Solution> galerkin_base;
        std::optional<Solution> modified_base;

        for (const Method method : config.methods) {
            const int p = pow_int(n, exponent_for(method) - 1);
            const UniformPartition partition(n, p);
            MethodCell cell;
            const auto start = clock::now();
            try {
                std::optional<Solution> solution;
                switch (method) {
                    case Method::nystrom: {
                        auto rule = std::make_shared<const CompositeRule>(
                            gauss_legendre_rule(config.rho), partition);
                        solution = solve_nystrom(problem, rule, config.newton);
                        break;
                    }
                    case Method::galerkin:
                        if (!galerkin_base)
                            galerkin_base = solve_discrete_galerkin(
                                problem, partition, config.degree, config.rho, config.newton);
                        solution = *galerkin_base;
                        break;
                    case Method::iterated_galerkin:
                        if (!galerkin_base)
                            galerkin_base = solve_discrete_galerkin(
                                problem, partition, config.degree, config.rho, config.newton);
                        solution = iterated_solution(problem, *galerkin_base);
                        break;
                    case Method::modified:
                        if (!modified_base)
                            modified_base = solve_modified_projection(
                                problem, partition, config.degree, config.rho, config.newton);
                        solution = *modified_base;
                        break;
                    case Method::iterated_modified:
                        if (!modified_base)
                            modified_base = solve_modified_projection(
                                problem, partition, config.degree, config.rho, config.newton);
                        solution = iterated_solution(problem, *modified_base);
                        break;
                }
                cell.converged = true;
                cell.iterations = solution->iterations;
                cell.error = sup_error(*solution, problem.exact, config.error_grid);
            } catch (const SolveError& failure) {
                cell.converged = false;
                cell.iterations = failure.iterations();
                cell.note = failure.what();
            }
            cell.seconds = config.record_timing
                               ? std::chrono::duration<double>(clock::now() - start).count()
                               : 0.0;
            row.cells.emplace_back(method, cell);
        }
        rows.push_back(std::move(row));
    }

    // Empirical orders from consecutive successful rows.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ratio =
            static_cast<double>(rows[i].n) / static_cast<double>(rows[i - 1].n);
        for (auto& [method, cell] : rows[i].cells) {
            if (!cell.converged) continue;
            for (const auto& [prev_method, prev_cell] : rows[i - 1].cells) {
                if (prev_method != method) continue;
                if (prev_cell.converged && prev_cell.error > 0.0 && cell.error > 0.0)
                    cell.order = std::log2(prev_cell.error / cell.error) / std::log2(ratio);
                break;
            }
        }
    }
    return rows;
}

bool has_failures(const std::vector<StudyRow>& rows) {
    for (const auto& row : rows)
        for (const auto& [method, cell] : row.cells)
            if (!cell.converged) return true;
    return false;
}

namespace {

std::string scientific(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.5e", value);
    return buffer;
}

std::string emit_csv(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    out << "n,method,error,order,iters,seconds\n";
    for (const auto& row : rows) {
        for (const auto& [method, cell] : row.cells) {
            out << row.n << ',' << method_name(method) << ',';
            out << (cell.converged ? scientific(cell.error) : "DNF") << ',';
            if (cell.order) out << scientific(*cell.order);
            out << ',' << cell.iterations << ',' << scientific(cell.seconds) << '\n';
        }
    }
    return out.str();
}

std::string emit_markdown(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    if (rows.empty()) return {};
    out << "| n |";
    for (const auto& [method, cell] : rows.front().cells)
        out << ' ' << method_name(method) << " error | order |";
    out << '\n';
    out << "|---|";
    for (std::size_t i = 0; i < rows.front().cells.size(); ++i) out << "---|---|";
    out << '\n';
    char buffer[40];
    for (const auto& row : rows) {
        out << "| " << row.n << " |";
        for (const auto& [method, cell] : row.cells) {
            if (cell.converged) {
                std::snprintf(buffer, sizeof buffer, "%.3e", cell.error);
                out << ' ' << buffer << " |";
            } else {
                out << " DNF |";
            }
            if (cell.order) {
                std::snprintf(buffer, sizeof buffer, "%.2f", *cell.order);
                out << ' ' << buffer << " |";
            } else {
                out << "  |";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string emit_json(const std::vector<StudyRow>& rows) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& row : rows) {
        for (const auto& [method, cell] : row.cells) {
            nlohmann::json entry;
            entry["n"] = row.n;
            entry["method"] = method_name(method);
            if (cell.converged)
                entry["error"] = cell.error;
            else
                entry["error"] = nullptr;
            if (cell.order)
                entry["order"] = *cell.order;
            else
                entry["order"] = nullptr;
            entry["iters"] = cell.iterations;
            entry["seconds"] = cell.seconds;
            array.push_back(std::move(entry));
        }
    }
    return array.dump(2) + "\n";
}

}  // namespace

std::string emit(const std::vector<StudyRow>& rows, OutputFormat format) {
    if (rows.empty()) throw std::invalid_argument("emit: no rows");
    switch (format) {
        case OutputFormat::csv: return emit_csv(rows);
        case OutputFormat::markdown: return emit_markdown(rows);
        case OutputFormat::json: return emit_json(rows);
    }
    throw std::logic_error("emit: unknown format");
}

}  // namespace urysohn
