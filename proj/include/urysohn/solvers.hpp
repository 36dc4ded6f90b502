#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "urysohn/approximation.hpp"
#include "urysohn/errors.hpp"
#include "urysohn/operators.hpp"
#include "urysohn/problems.hpp"

namespace urysohn {

struct NewtonConfig {
    double tolerance = 1e-12;  // sup-norm residual target
    int max_iterations = 50;
};

struct NewtonResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;
};

using VectorFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFunction = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Damped-free Newton iteration with dense LU (partial pivoting) linear
/// solves. Returns once the sup-norm residual drops below the tolerance.
/// Throws SingularJacobianError when a linearization is numerically singular
/// and ConvergenceError (carrying the last residual) when the iteration
/// budget is exhausted. Affine systems converge in exactly one iteration.
NewtonResult newton_solve(const VectorFunction& residual, const JacobianFunction& jacobian,
                          const Eigen::VectorXd& initial, const NewtonConfig& config);

enum class Method { nystrom, galerkin, iterated_galerkin, modified, iterated_modified };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Result of one solution procedure: node values on the quadrature grid, the
/// piecewise polynomial component where the method has one, and an evaluator
/// valid at every s in [0,1].
struct Solution {
    Method method{};
    GridFunction grid;
    std::optional<PiecewisePolynomial> projected;
    ScalarFunction evaluate;
    int iterations = 0;
    double residual = 0.0;
};

/// Nystrom method: collocation of x = f + K x at the quadrature nodes,
/// extended off the nodes by natural interpolation x(s) = f(s) + (K x)(s).
Solution solve_nystrom(const UrysohnProblem& problem, std::shared_ptr<const CompositeRule> rule,
                       const NewtonConfig& config);

/// Discrete Galerkin method: z in X_n with z - Q_n K z = Q_n f, solved for
/// the n(r+1) basis coefficients.
Solution solve_discrete_galerkin(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config);

/// Discrete iterated Galerkin: one extra operator application,
/// z^S = f + K z^G, which projects back onto the Galerkin solution.
Solution solve_iterated_galerkin(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config);

/// Discrete modified projection method: z - (Q_n K z + K Q_n z - Q_n K Q_n z)
/// = f. Internally reduced to a fixed point for v = Q_n K z in X_n, keeping
/// the nonlinear system at n(r+1) unknowns; z is reconstructed as
/// z = f + v + K w - Q_n K w with w = Q_n f + v.
Solution solve_modified_projection(const UrysohnProblem& problem,
                                   const UniformPartition& partition, int degree, int rho,
                                   const NewtonConfig& config);

/// Discrete iterated modified projection: z~ = f + K z^M.
Solution solve_iterated_modified(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config);

/// One extra application of the discretized operator to a computed solution:
/// x~ = f + K x. Maps galerkin to iterated_galerkin and modified to
/// iterated_modified (nystrom maps to itself, fixed point of the update).
Solution iterated_solution(const UrysohnProblem& problem, const Solution& base);

}  // namespace urysohn
