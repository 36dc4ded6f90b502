#include "urysohn/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace urysohn {

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

NewtonResult newton_solve(const VectorFunction& residual, const JacobianFunction& jacobian,
                          const Eigen::VectorXd& initial, const NewtonConfig& config) {
    if (!(config.tolerance > 0.0))
        throw std::invalid_argument("newton_solve: tolerance must be positive");
    if (config.max_iterations < 1)
        throw std::invalid_argument("newton_solve: max_iterations must be >= 1");

    Eigen::VectorXd x = initial;
    if (x.size() == 0) return NewtonResult{x, 0, 0.0};

    int iterations = 0;
    for (;;) {
        const Eigen::VectorXd r = residual(x);
        if (r.size() != x.size())
            throw std::invalid_argument("newton_solve: residual dimension mismatch");
        const double norm = r.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(norm)) throw ConvergenceError(iterations, norm);
        if (norm <= config.tolerance) return NewtonResult{std::move(x), iterations, norm};
        if (iterations >= config.max_iterations) throw ConvergenceError(iterations, norm);

        const Eigen::MatrixXd j = jacobian(x);
        if (j.rows() != x.size() || j.cols() != x.size())
            throw std::invalid_argument("newton_solve: Jacobian dimension mismatch");
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-14)) throw SingularJacobianError(iterations, norm);
        const Eigen::VectorXd step = lu.solve(r);
        if (!step.allFinite()) throw SingularJacobianError(iterations, norm);
        x -= step;
        ++iterations;
    }
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::nystrom: return "nystrom";
        case Method::galerkin: return "galerkin";
        case Method::iterated_galerkin: return "iterated_galerkin";
        case Method::modified: return "modified";
        case Method::iterated_modified: return "iterated_modified";
    }
    throw std::logic_error("method_name: unknown method");
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "nystrom") return Method::nystrom;
    if (name == "galerkin") return Method::galerkin;
    if (name == "iterated_galerkin") return Method::iterated_galerkin;
    if (name == "modified") return Method::modified;
    if (name == "iterated_modified") return Method::iterated_modified;
    return std::nullopt;
}

namespace {

// K at every node for a raw value vector; the flat summation order fixes the
// rounding, so repeated evaluations are bit-identical.
std::vector<double> kernel_grid(const KernelTriple& kernel, const CompositeRule& rule,
                                const std::vector<double>& u) {
    const int count = rule.node_count();
    std::vector<double> out(static_cast<std::size_t>(count), 0.0);
    for (int a = 0; a < count; ++a) {
        const double s = rule.node(a);
        double sum = 0.0;
        for (int k = 0; k < count; ++k)
            sum += rule.weight(k) * kernel.value(s, rule.node(k), u[static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(a)] = sum;
    }
    return out;
}

// Dense basis-expansion matrix E with E(k, coefficient) = phi(zeta_k); one
// (r+1)-block per row.
Eigen::MatrixXd expansion_matrix(const BasisTable& table) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(table.node_count(), table.coefficient_count());
    const int width = table.degree() + 1;
    for (int k = 0; k < table.node_count(); ++k) {
        const int base = table.block_of(k) * width;
        for (int eta = 0; eta < width; ++eta) e(k, base + eta) = table.value(k, eta);
    }
    return e;
}

// Transposed rows of Q_n K'(x): returns T (node_count x coefficient_count)
// with T(l, (j,eta)) = sum_{k in block j} w_k phi_eta(zeta_k) w_l
// l(zeta_k, zeta_l, x_l), i.e. column (j,eta) holds the projection of the
// derivative rows onto that basis function.
Eigen::MatrixXd projected_derivative_rows(const KernelTriple& kernel, const CompositeRule& rule,
                                          const BasisTable& table, const std::vector<double>& u) {
    const int node_count = table.node_count();
    const int width = table.degree() + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(node_count, table.coefficient_count());
    Eigen::VectorXd row(node_count);
    for (int k = 0; k < node_count; ++k) {
        const double s = rule.node(k);
        for (int l = 0; l < node_count; ++l)
            row(l) = rule.weight(l) * kernel.du(s, rule.node(l), u[static_cast<std::size_t>(l)]);
        const int base = table.block_of(k) * width;
        const double scale = table.weight(k);
        for (int eta = 0; eta < width; ++eta) t.col(base + eta) += scale * table.value(k, eta) * row;
    }
    return t;
}

}  // namespace

Solution solve_nystrom(const UrysohnProblem& problem, std::shared_ptr<const CompositeRule> rule,
                       const NewtonConfig& config) {
    if (!rule) throw std::invalid_argument("solve_nystrom: null rule");
    NystromOperator op(problem.kernel, rule);
    const GridFunction f_grid = sample_to_grid(problem.rhs, rule);
    const Eigen::VectorXd f_nodes = to_eigen(f_grid.values());
    const Eigen::Index count = f_nodes.size();

    const auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const auto y = kernel_grid(problem.kernel, *rule, to_std(x));
        return x - to_eigen(y) - f_nodes;
    };
    const auto jacobian = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
        const GridFunction xg(rule, to_std(x));
        return Eigen::MatrixXd::Identity(count, count) -
               op.derivative_matrix(xg, std::span<const double>(rule->nodes()));
    };

    const NewtonResult result = newton_solve(residual, jacobian, f_nodes, config);

    GridFunction grid(rule, to_std(result.x));
    ScalarFunction evaluate = [rhs = problem.rhs, op, grid](double s) {
        return rhs(s) + op.apply(grid, s);
    };
    return Solution{Method::nystrom, grid, std::nullopt, std::move(evaluate), result.iterations,
                    result.residual};
}

Solution solve_discrete_galerkin(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config) {
    auto rule = std::make_shared<const CompositeRule>(gauss_legendre_rule(rho), partition);
    const BasisTable table(rule, degree);
    const int coeff_count = table.coefficient_count();

    const std::vector<double> f_nodes = sample_to_grid(problem.rhs, rule).values();
    const std::vector<double> f_coeff = table.project_values(f_nodes);
    const Eigen::MatrixXd expansion = expansion_matrix(table);

    const auto residual = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd {
        const auto u = table.expand(to_std(c));
        const auto y = kernel_grid(problem.kernel, *rule, u);
        return c - to_eigen(table.project_values(y)) - to_eigen(f_coeff);
    };

    const auto jacobian = [&](const Eigen::VectorXd& c) -> Eigen::MatrixXd {
        const auto u = table.expand(to_std(c));
        const Eigen::MatrixXd t = projected_derivative_rows(problem.kernel, *rule, table, u);
        return Eigen::MatrixXd::Identity(coeff_count, coeff_count) - t.transpose() * expansion;
    };

    const NewtonResult result = newton_solve(residual, jacobian, to_eigen(f_coeff), config);

    PiecewisePolynomial poly(partition, degree, to_std(result.x));
    GridFunction grid(rule, table.expand(poly.coefficients()));
    ScalarFunction evaluate = [poly](double s) { return poly(s); };
    return Solution{Method::galerkin, grid, poly, std::move(evaluate), result.iterations,
                    result.residual};
}

Solution solve_iterated_galerkin(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config) {
    return iterated_solution(problem,
                             solve_discrete_galerkin(problem, partition, degree, rho, config));
}

namespace {

// Node values shared between the residual and Jacobian callbacks of the
// modified projection solve; Newton evaluates both at the same iterate, so
// the Nystrom sweep for w runs once per iteration.
struct ModifiedState {
    bool valid = false;
    Eigen::VectorXd at;
    std::vector<double> w_values;   // w = Q_n f + v at the nodes
    std::vector<double> kw_values;  // K w at the nodes
    std::vector<double> z_values;   // reconstructed z at the nodes
};

}  // namespace

Solution solve_modified_projection(const UrysohnProblem& problem,
                                   const UniformPartition& partition, int degree, int rho,
                                   const NewtonConfig& config) {
    auto rule = std::make_shared<const CompositeRule>(gauss_legendre_rule(rho), partition);
    const BasisTable table(rule, degree);
    const int node_count = table.node_count();
    const int coeff_count = table.coefficient_count();
    const int width = degree + 1;

    const std::vector<double> f_nodes = sample_to_grid(problem.rhs, rule).values();
    const std::vector<double> f_coeff = table.project_values(f_nodes);
    const Eigen::MatrixXd expansion = expansion_matrix(table);

    // Unknown: v = Q_n K z in X_n. With w = Q_n f + v the solution is
    // reconstructed as z = f + v + K w - Q_n K w, and v solves the fixed
    // point v = Q_n K z, an n(r+1)-unknown system.
    auto state = std::make_shared<ModifiedState>();
    const auto refresh = [&, state](const Eigen::VectorXd& d) {
        if (state->valid && state->at.size() == d.size() &&
            (state->at.array() == d.array()).all())
            return;
        std::vector<double> w_coeff = f_coeff;
        for (int i = 0; i < coeff_count; ++i) w_coeff[static_cast<std::size_t>(i)] += d(i);
        state->w_values = table.expand(w_coeff);
        state->kw_values = kernel_grid(problem.kernel, *rule, state->w_values);
        const auto qkw_values = table.expand(table.project_values(state->kw_values));
        const auto v_values = table.expand(to_std(d));
        state->z_values.resize(static_cast<std::size_t>(node_count));
        for (int k = 0; k < node_count; ++k) {
            const auto i = static_cast<std::size_t>(k);
            state->z_values[i] = f_nodes[i] + v_values[i] + state->kw_values[i] - qkw_values[i];
        }
        state->at = d;
        state->valid = true;
    };

    const auto residual = [&, state](const Eigen::VectorXd& d) -> Eigen::VectorXd {
        refresh(d);
        const auto kz = kernel_grid(problem.kernel, *rule, state->z_values);
        return d - to_eigen(table.project_values(kz));
    };

    const auto jacobian = [&, state](const Eigen::VectorXd& d) -> Eigen::MatrixXd {
        refresh(d);
        // K'(w) E, row by row
        Eigen::MatrixXd kw_prime_e = Eigen::MatrixXd::Zero(node_count, coeff_count);
        Eigen::VectorXd row(node_count);
        for (int k = 0; k < node_count; ++k) {
            const double s = rule->node(k);
            for (int l = 0; l < node_count; ++l)
                row(l) = rule->weight(l) *
                         problem.kernel.du(s, rule->node(l),
                                           state->w_values[static_cast<std::size_t>(l)]);
            for (int l = 0; l < node_count; ++l) {
                const int base = table.block_of(l) * width;
                for (int eta = 0; eta < width; ++eta)
                    kw_prime_e(k, base + eta) += row(l) * table.value(l, eta);
            }
        }
        // dz/dv = E + (I - E P) K'(w) E, with P the projection onto the
        // coefficients; P = E^T diag(weights).
        Eigen::MatrixXd projected(coeff_count, coeff_count);
        projected.setZero();
        for (int l = 0; l < node_count; ++l) {
            const int base = table.block_of(l) * width;
            const double w = table.weight(l);
            for (int eta = 0; eta < width; ++eta)
                projected.row(base + eta) += w * table.value(l, eta) * kw_prime_e.row(l);
        }
        Eigen::MatrixXd dz = expansion + kw_prime_e - expansion * projected;
        // J = I - (rows of Q_n K'(z)) dz
        const Eigen::MatrixXd t =
            projected_derivative_rows(problem.kernel, *rule, table, state->z_values);
        return Eigen::MatrixXd::Identity(coeff_count, coeff_count) - t.transpose() * dz;
    };

    const NewtonResult result = newton_solve(residual, jacobian, to_eigen(f_coeff), config);
    refresh(result.x);

    std::vector<double> w_coeff = f_coeff;
    for (int i = 0; i < coeff_count; ++i) w_coeff[static_cast<std::size_t>(i)] += result.x(i);
    PiecewisePolynomial w_poly(partition, degree, w_coeff);
    PiecewisePolynomial v_poly(partition, degree, to_std(result.x));
    PiecewisePolynomial qkw_poly(partition, degree, table.project_values(state->kw_values));
    GridFunction w_grid(rule, state->w_values);
    GridFunction z_grid(rule, state->z_values);

    NystromOperator op(problem.kernel, rule);
    ScalarFunction evaluate = [rhs = problem.rhs, v_poly, qkw_poly, op, w_grid](double s) {
        return rhs(s) + v_poly(s) + op.apply(w_grid, s) - qkw_poly(s);
    };
    return Solution{Method::modified, z_grid, w_poly, std::move(evaluate), result.iterations,
                    result.residual};
}

Solution solve_iterated_modified(const UrysohnProblem& problem, const UniformPartition& partition,
                                 int degree, int rho, const NewtonConfig& config) {
    return iterated_solution(problem,
                             solve_modified_projection(problem, partition, degree, rho, config));
}

Solution iterated_solution(const UrysohnProblem& problem, const Solution& base) {
    NystromOperator op(problem.kernel, base.grid.rule_ptr());
    const GridFunction k_base = op.apply(base.grid);
    const std::vector<double> f_nodes = sample_to_grid(problem.rhs, base.grid.rule_ptr()).values();

    std::vector<double> values(f_nodes.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = f_nodes[k] + k_base.value(static_cast<int>(k));
    GridFunction grid(base.grid.rule_ptr(), std::move(values));

    ScalarFunction evaluate = [rhs = problem.rhs, op, source = base.grid](double s) {
        return rhs(s) + op.apply(source, s);
    };

    Method method = base.method;
    if (base.method == Method::galerkin) method = Method::iterated_galerkin;
    if (base.method == Method::modified) method = Method::iterated_modified;

    return Solution{method, grid, base.projected, std::move(evaluate), base.iterations,
                    base.residual};
}

}  // namespace urysohn
