#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urysohn/solvers.hpp"

namespace urysohn {

enum class OutputFormat { csv, markdown, json };

std::string_view format_name(OutputFormat format);
std::optional<OutputFormat> parse_format(std::string_view name);

/// Configuration of a mesh-refinement study. The fine mesh is coupled to the
/// coarse one through m = n^a; the modified-projection pair may use its own
/// exponent (the superconvergent orders need a finer quadrature mesh than the
/// Galerkin pair).
struct StudyConfig {
    std::string problem = "atkinson-potra";
    int degree = 0;
    std::vector<int> mesh_sizes = {2, 4, 8, 16, 32};
    int m_exponent = 2;
    std::optional<int> m_exponent_modified{};
    int rho = 2;
    NewtonConfig newton{};
    int error_grid = 1001;
    OutputFormat format = OutputFormat::csv;
    std::vector<Method> methods = {Method::galerkin, Method::iterated_galerkin, Method::modified,
                                   Method::iterated_modified};
    bool record_timing = true;
};

/// Throws std::invalid_argument on an inconsistent configuration (mesh sizes
/// not strictly increasing, exponent outside {1,2,3}, rho < degree+1, ...).
void validate(const StudyConfig& config);

/// Parse a JSON config file whose keys mirror the StudyConfig fields.
StudyConfig load_config(const std::string& path);

/// One table cell: a solve attempt for (n, method). Failed solves are kept as
/// DNF cells with the failure reason; their errors never enter order
/// computations.
struct MethodCell {
    bool converged = false;
    double error = 0.0;
    std::optional<double> order{};
    int iterations = 0;
    double seconds = 0.0;
    std::string note{};
};

struct StudyRow {
    int n = 0;
    std::vector<std::pair<Method, MethodCell>> cells;
};

/// Sup-norm distance between a computed solution and the exact one, measured
/// over the union of `grid_size` uniform points, the partition breakpoints
/// and every quadrature node of the solution's rule.
double sup_error(const Solution& solution, const ScalarFunction& exact, int grid_size);

/// Run every requested method on every mesh; failed cells are recorded as
/// DNF and the study continues. Deterministic apart from the timing column.
std::vector<StudyRow> run_study(const StudyConfig& config);

bool has_failures(const std::vector<StudyRow>& rows);

/// Render rows as csv (`n,method,error,order,iters,seconds`, scientific
/// notation with six significant digits, order blank on the first mesh),
/// as a markdown table with an error and order column per method, or as a
/// JSON array of row objects with the csv field names.
std::string emit(const std::vector<StudyRow>& rows, OutputFormat format);

}  // namespace urysohn
