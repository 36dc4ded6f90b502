#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "urysohn/approximation.hpp"
#include "urysohn/quadrature.hpp"

namespace urysohn {

using KernelFunction = std::function<double(double s, double t, double u)>;

/// Urysohn kernel together with its first and second partial derivatives in
/// the solution argument u. The derivatives are supplied analytically; the
/// test suite checks them against finite differences. `lower`/`upper` are
/// optional smooth extensions on the triangles t <= s and s <= t; the
/// operator sums never use them, they document the Green's-function-type
/// structure of the kernel.
struct KernelTriple {
    KernelFunction value;
    KernelFunction du;
    KernelFunction d2u;
    KernelFunction lower{};
    KernelFunction upper{};
};

/// Quadrature discretization of the integral operator: the integral over
/// [0,1] is replaced by the composite rule, so applying the operator to a
/// grid function needs only its node values. Evaluation is a fixed-order
/// sequential sum, hence bit-reproducible.
class NystromOperator {
public:
    NystromOperator(KernelTriple kernel, std::shared_ptr<const CompositeRule> rule);

    const KernelTriple& kernel() const noexcept { return kernel_; }
    const CompositeRule& rule() const noexcept { return *rule_; }
    const std::shared_ptr<const CompositeRule>& rule_ptr() const noexcept { return rule_; }

    /// (K x)(s) = sum_k w_k kappa(s, zeta_k, x_k).
    double apply(const GridFunction& x, double s) const;
    /// K x evaluated at every quadrature node.
    GridFunction apply(const GridFunction& x) const;

    /// Directional derivative (K'(x) v)(s) = sum_k w_k l(s, zeta_k, x_k) v_k;
    /// linear in v.
    double apply_derivative(const GridFunction& x, const GridFunction& v, double s) const;

    /// (K''(x)(v,v))(s) = sum_k w_k d2u(s, zeta_k, x_k) v_k^2.
    double apply_second_derivative(const GridFunction& x, const GridFunction& v, double s) const;

    /// Dense Jacobian rows: M(a, k) = w_k l(eval_points[a], zeta_k, x_k), so
    /// that (M v)(a) = (K'(x) v)(eval_points[a]).
    Eigen::MatrixXd derivative_matrix(const GridFunction& x,
                                      std::span<const double> eval_points) const;

private:
    void require_same_rule(const GridFunction& g, const char* where) const;

    KernelTriple kernel_;
    std::shared_ptr<const CompositeRule> rule_;
};

}  // namespace urysohn
