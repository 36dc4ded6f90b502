#include "urysohn/approximation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace urysohn {

double legendre(int degree, double x) {
    if (degree < 0) throw std::invalid_argument("legendre: negative degree");
    if (degree == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < degree; ++k) {
        const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double orthonormal_legendre(int degree, double x) {
    return std::sqrt((2.0 * degree + 1.0) / 2.0) * legendre(degree, x);
}

LegendreBasis::LegendreBasis(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("LegendreBasis: negative degree");
}

double LegendreBasis::reference(int eta, double x) const {
    if (eta < 0 || eta > degree_) throw std::out_of_range("LegendreBasis: degree index");
    return orthonormal_legendre(eta, x);
}

double basis_eval(const UniformPartition& partition, int interval, int eta, double t) {
    if (interval < 1 || interval > partition.interval_count())
        throw std::out_of_range("basis_eval: interval index");
    if (eta < 0) throw std::invalid_argument("basis_eval: negative degree");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("basis_eval: point " + std::to_string(t) + " outside [0,1]");
    if (partition.interval_of(t) != interval) return 0.0;
    const double h = partition.width();
    const double xi = (2.0 * t - partition.breakpoint(interval) - partition.breakpoint(interval - 1)) / h;
    return std::sqrt((2.0 * eta + 1.0) / h) * legendre(eta, xi);
}

PiecewisePolynomial::PiecewisePolynomial(UniformPartition partition, int degree,
                                         std::vector<double> coefficients)
    : partition_(partition), degree_(degree), coefficients_(std::move(coefficients)) {
    if (degree_ < 0) throw std::invalid_argument("PiecewisePolynomial: negative degree");
    const std::size_t expected =
        static_cast<std::size_t>(partition_.interval_count()) * (degree_ + 1);
    if (coefficients_.size() != expected)
        throw std::invalid_argument("PiecewisePolynomial: expected " + std::to_string(expected) +
                                    " coefficients, got " + std::to_string(coefficients_.size()));
}

double PiecewisePolynomial::coefficient(int interval, int eta) const {
    if (interval < 1 || interval > partition_.interval_count())
        throw std::out_of_range("PiecewisePolynomial: interval index");
    if (eta < 0 || eta > degree_) throw std::out_of_range("PiecewisePolynomial: degree index");
    return coefficients_[static_cast<std::size_t>(interval - 1) * (degree_ + 1) + eta];
}

double PiecewisePolynomial::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("PiecewisePolynomial: point " + std::to_string(t) +
                                " outside [0,1]");
    const int j = partition_.interval_of(t);
    const double h = partition_.width();
    const double xi = (2.0 * t - partition_.breakpoint(j) - partition_.breakpoint(j - 1)) / h;
    double sum = 0.0;
    for (int eta = 0; eta <= degree_; ++eta) {
        sum += coefficients_[static_cast<std::size_t>(j - 1) * (degree_ + 1) + eta] *
               std::sqrt((2.0 * eta + 1.0) / h) * legendre(eta, xi);
    }
    return sum;
}

GridFunction::GridFunction(std::shared_ptr<const CompositeRule> rule, std::vector<double> values)
    : rule_(std::move(rule)), values_(std::move(values)) {
    if (!rule_) throw std::invalid_argument("GridFunction: null rule");
    if (static_cast<int>(values_.size()) != rule_->node_count())
        throw std::invalid_argument("GridFunction: expected " +
                                    std::to_string(rule_->node_count()) + " values, got " +
                                    std::to_string(values_.size()));
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!std::isfinite(values_[k]))
            throw std::invalid_argument("GridFunction: non-finite value at node " +
                                        std::to_string(k));
}

namespace {

std::vector<double> sampled_values(const ScalarFunction& f, const CompositeRule& rule) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(rule.node_count()));
    for (int k = 0; k < rule.node_count(); ++k) {
        const double value = f(rule.node(k));
        if (!std::isfinite(value))
            throw std::runtime_error("sample_to_grid: non-finite value at node " +
                                     std::to_string(k) + " (t=" + std::to_string(rule.node(k)) +
                                     ")");
        values.push_back(value);
    }
    return values;
}

}  // namespace

GridFunction sample_to_grid(const ScalarFunction& f, std::shared_ptr<const CompositeRule> rule) {
    if (!rule) throw std::invalid_argument("sample_to_grid: null rule");
    auto values = sampled_values(f, *rule);
    return GridFunction(std::move(rule), std::move(values));
}

GridFunction sample_to_grid(const PiecewisePolynomial& poly,
                            std::shared_ptr<const CompositeRule> rule) {
    if (!rule) throw std::invalid_argument("sample_to_grid: null rule");
    if (!(poly.partition() == rule->partition()))
        throw std::invalid_argument("sample_to_grid: polynomial and rule partitions differ");
    BasisTable table(rule, poly.degree());
    auto values = table.expand(poly.coefficients());
    return GridFunction(std::move(rule), std::move(values));
}

double discrete_inner_product(const ScalarFunction& f, const ScalarFunction& g, int interval,
                              const CompositeRule& rule) {
    const int n = rule.partition().interval_count();
    if (interval < 1 || interval > n)
        throw std::out_of_range("discrete_inner_product: interval index");
    const int per_block = rule.partition().refinement() * rule.basic().size();
    const int first = (interval - 1) * per_block;
    double sum = 0.0;
    for (int k = first; k < first + per_block; ++k) {
        const double t = rule.node(k);
        sum += rule.weight(k) * (f(t) * g(t));
    }
    return sum;
}

BasisTable::BasisTable(std::shared_ptr<const CompositeRule> rule, int degree)
    : rule_(std::move(rule)), degree_(degree) {
    if (!rule_) throw std::invalid_argument("BasisTable: null rule");
    if (degree_ < 0) throw std::invalid_argument("BasisTable: negative degree");
    if (rule_->basic().size() < degree_ + 1)
        throw std::invalid_argument(
            "BasisTable: quadrature has " + std::to_string(rule_->basic().size()) +
            " nodes, need at least " + std::to_string(degree_ + 1) +
            " for a degree-" + std::to_string(degree_) + " projection");

    const auto& partition = rule_->partition();
    const double h = partition.width();
    const int node_total = rule_->node_count();
    values_.resize(static_cast<std::size_t>(node_total) * (degree_ + 1));
    for (int k = 0; k < node_total; ++k) {
        const int j = block_of(k);
        const double xi =
            (2.0 * rule_->node(k) - partition.breakpoint(j + 1) - partition.breakpoint(j)) / h;
        for (int eta = 0; eta <= degree_; ++eta) {
            values_[static_cast<std::size_t>(k) * (degree_ + 1) + eta] =
                std::sqrt((2.0 * eta + 1.0) / h) * legendre(eta, xi);
        }
    }
}

std::vector<double> BasisTable::expand(const std::vector<double>& coefficients) const {
    if (static_cast<int>(coefficients.size()) != coefficient_count())
        throw std::invalid_argument("BasisTable::expand: coefficient count mismatch");
    std::vector<double> out(static_cast<std::size_t>(node_count()), 0.0);
    for (int k = 0; k < node_count(); ++k) {
        const int base = block_of(k) * (degree_ + 1);
        double sum = 0.0;
        for (int eta = 0; eta <= degree_; ++eta)
            sum += coefficients[static_cast<std::size_t>(base + eta)] * value(k, eta);
        out[static_cast<std::size_t>(k)] = sum;
    }
    return out;
}

std::vector<double> BasisTable::project_values(const std::vector<double>& node_values) const {
    if (static_cast<int>(node_values.size()) != node_count())
        throw std::invalid_argument("BasisTable::project_values: node count mismatch");
    std::vector<double> coeff(static_cast<std::size_t>(coefficient_count()), 0.0);
    for (int k = 0; k < node_count(); ++k) {
        const int base = block_of(k) * (degree_ + 1);
        const double wy = weight(k) * node_values[static_cast<std::size_t>(k)];
        for (int eta = 0; eta <= degree_; ++eta)
            coeff[static_cast<std::size_t>(base + eta)] += wy * value(k, eta);
    }
    return coeff;
}

PiecewisePolynomial project(const GridFunction& f, int degree) {
    BasisTable table(f.rule_ptr(), degree);
    return PiecewisePolynomial(f.rule().partition(), degree, table.project_values(f.values()));
}

PiecewisePolynomial project(const ScalarFunction& f, std::shared_ptr<const CompositeRule> rule,
                            int degree) {
    return project(sample_to_grid(f, std::move(rule)), degree);
}

}  // namespace urysohn
