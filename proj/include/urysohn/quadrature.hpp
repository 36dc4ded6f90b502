#pragma once

#include <functional>
#include <vector>

namespace urysohn {

using ScalarFunction = std::function<double(double)>;

/// Uniform mesh of [0,1] with n coarse intervals, each split into p equal
/// fine intervals. Coarse breakpoints t_j = j/n carry the piecewise
/// polynomial space; fine breakpoints s_i = i/m (m = n*p) carry the
/// composite quadrature.
class UniformPartition {
public:
    UniformPartition(int intervals, int refinement);

    int interval_count() const noexcept { return n_; }
    int refinement() const noexcept { return p_; }
    int fine_interval_count() const noexcept { return n_ * p_; }

    double width() const noexcept { return 1.0 / n_; }
    double fine_width() const noexcept { return 1.0 / (n_ * static_cast<double>(p_)); }

    /// Coarse breakpoint t_j = j/n, j = 0..n.
    double breakpoint(int j) const;
    /// Fine breakpoint s_i = i/m, i = 0..m.
    double fine_breakpoint(int i) const;

    /// 1-based index j of the half-open interval (t_{j-1}, t_j] containing t;
    /// t = 0 maps to interval 1. Throws std::domain_error outside [0,1].
    int interval_of(double t) const;

    bool operator==(const UniformPartition& other) const noexcept {
        return n_ == other.n_ && p_ == other.p_;
    }

private:
    int n_;
    int p_;
};

/// Quadrature rule on the reference interval [0,1] with positive weights
/// summing to 1 and strictly increasing nodes.
struct BasicRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// rho-point Gauss-Legendre rule mapped to [0,1], exact for polynomials of
/// degree <= 2*rho - 1. Supported for 1 <= rho <= 10; nodes are computed by
/// Newton iteration on the Legendre roots to 1e-15.
BasicRule gauss_legendre_rule(int point_count);

/// Composite rule over the fine mesh: node (i,q) is s_{i-1} + mu_q * h_fine
/// with weight h_fine * w_q, flattened in (i, q) order.
class CompositeRule {
public:
    CompositeRule(BasicRule basic, UniformPartition partition);

    const UniformPartition& partition() const noexcept { return partition_; }
    const BasicRule& basic() const noexcept { return basic_; }

    int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
    double node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
    double weight(int k) const { return weights_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// 0-based coarse-interval index of flat node k (integer arithmetic, no
    /// floating-point locator involved).
    int coarse_block_of(int k) const {
        return (k / basic_.size()) / partition_.refinement();
    }

    /// Structural compatibility check used by grid/operator shape guards.
    bool compatible_with(const CompositeRule& other) const noexcept {
        return partition_ == other.partition_ && basic_.size() == other.basic_.size();
    }

private:
    BasicRule basic_;
    UniformPartition partition_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Composite quadrature sum over all nodes in flat order. Throws
/// std::runtime_error naming the node if a sample is non-finite.
double integrate(const CompositeRule& rule, const ScalarFunction& f);

}  // namespace urysohn
