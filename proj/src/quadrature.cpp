#include "urysohn/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urysohn {

UniformPartition::UniformPartition(int intervals, int refinement)
    : n_(intervals), p_(refinement) {
    if (intervals < 1) throw std::invalid_argument("UniformPartition: interval count must be >= 1");
    if (refinement < 1) throw std::invalid_argument("UniformPartition: refinement must be >= 1");
}

double UniformPartition::breakpoint(int j) const {
    if (j < 0 || j > n_) throw std::out_of_range("UniformPartition: breakpoint index");
    return static_cast<double>(j) / n_;
}

double UniformPartition::fine_breakpoint(int i) const {
    const int m = fine_interval_count();
    if (i < 0 || i > m) throw std::out_of_range("UniformPartition: fine breakpoint index");
    return static_cast<double>(i) / m;
}

int UniformPartition::interval_of(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("UniformPartition: point " + std::to_string(t) + " outside [0,1]");
    int j = static_cast<int>(std::ceil(t * n_));
    if (j < 1) j = 1;
    if (j > n_) j = n_;
    // Nudge against rounding in t*n so that breakpoints land in the left
    // (half-open) interval exactly.
    while (j > 1 && t <= breakpoint(j - 1)) --j;
    while (j < n_ && t > breakpoint(j)) ++j;
    return j;
}

namespace {

// Classical Legendre value and derivative on [-1,1] by the three-term
// recurrence; the derivative formula needs |x| < 1.
void legendre_with_derivative(int degree, double x, double& value, double& derivative) {
    double prev = 1.0;
    double cur = x;
    if (degree == 0) {
        value = 1.0;
        derivative = 0.0;
        return;
    }
    for (int k = 1; k < degree; ++k) {
        const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    value = cur;
    derivative = degree * (x * cur - prev) / (x * x - 1.0);
}

}  // namespace

BasicRule gauss_legendre_rule(int point_count) {
    if (point_count < 1 || point_count > 10)
        throw std::invalid_argument("gauss_legendre_rule: unsupported rule, point count " +
                                    std::to_string(point_count) + " not in [1,10]");

    const int rho = point_count;
    std::vector<double> roots(static_cast<std::size_t>(rho), 0.0);
    std::vector<double> ref_weights(static_cast<std::size_t>(rho), 0.0);

    const double pi = std::acos(-1.0);
    // Roots in the open upper half (0, 1); the lower half is the mirror image
    // and the middle root of an odd rule is exactly 0.
    for (int i = 0; i < rho / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (rho + 0.5));
        double value = 0.0;
        double derivative = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre_with_derivative(rho, x, value, derivative);
            const double step = value / derivative;
            x -= step;
            if (std::abs(step) <= 1e-15) break;
        }
        legendre_with_derivative(rho, x, value, derivative);
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        roots[static_cast<std::size_t>(rho - 1 - i)] = x;
        roots[static_cast<std::size_t>(i)] = -x;
        ref_weights[static_cast<std::size_t>(rho - 1 - i)] = w;
        ref_weights[static_cast<std::size_t>(i)] = w;
    }
    if (rho % 2 == 1) {
        double value = 0.0;
        double derivative = 1.0;
        legendre_with_derivative(rho, 0.0, value, derivative);
        roots[static_cast<std::size_t>(rho / 2)] = 0.0;
        ref_weights[static_cast<std::size_t>(rho / 2)] = 2.0 / (derivative * derivative);
    }

    BasicRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(rho));
    rule.weights.reserve(static_cast<std::size_t>(rho));
    for (int i = 0; i < rho; ++i) {
        rule.nodes.push_back(0.5 * (1.0 + roots[static_cast<std::size_t>(i)]));
        rule.weights.push_back(0.5 * ref_weights[static_cast<std::size_t>(i)]);
    }
    return rule;
}

CompositeRule::CompositeRule(BasicRule basic, UniformPartition partition)
    : basic_(std::move(basic)), partition_(partition) {
    if (basic_.size() < 1) throw std::invalid_argument("CompositeRule: empty basic rule");
    if (basic_.nodes.size() != basic_.weights.size())
        throw std::invalid_argument("CompositeRule: node/weight size mismatch");

    const int m = partition_.fine_interval_count();
    const double h_fine = partition_.fine_width();
    nodes_.reserve(static_cast<std::size_t>(m) * basic_.nodes.size());
    weights_.reserve(nodes_.capacity());
    for (int i = 1; i <= m; ++i) {
        const double left = partition_.fine_breakpoint(i - 1);
        for (std::size_t q = 0; q < basic_.nodes.size(); ++q) {
            nodes_.push_back(left + basic_.nodes[q] * h_fine);
            weights_.push_back(basic_.weights[q] * h_fine);
        }
    }
}

double integrate(const CompositeRule& rule, const ScalarFunction& f) {
    double sum = 0.0;
    const int count = rule.node_count();
    for (int k = 0; k < count; ++k) {
        const double value = f(rule.node(k));
        if (!std::isfinite(value))
            throw std::runtime_error("integrate: non-finite sample at node " + std::to_string(k) +
                                     " (t=" + std::to_string(rule.node(k)) + ")");
        sum += rule.weight(k) * value;
    }
    return sum;
}

}  // namespace urysohn
