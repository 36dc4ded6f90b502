#include "urysohn/operators.hpp"

#include <stdexcept>
#include <utility>

namespace urysohn {

NystromOperator::NystromOperator(KernelTriple kernel, std::shared_ptr<const CompositeRule> rule)
    : kernel_(std::move(kernel)), rule_(std::move(rule)) {
    if (!rule_) throw std::invalid_argument("NystromOperator: null rule");
    if (!kernel_.value || !kernel_.du || !kernel_.d2u)
        throw std::invalid_argument("NystromOperator: kernel triple incomplete");
}

void NystromOperator::require_same_rule(const GridFunction& g, const char* where) const {
    if (!g.rule().compatible_with(*rule_))
        throw std::invalid_argument(std::string(where) +
                                    ": grid function sampled on a different rule");
}

double NystromOperator::apply(const GridFunction& x, double s) const {
    require_same_rule(x, "NystromOperator::apply");
    double sum = 0.0;
    const int count = rule_->node_count();
    for (int k = 0; k < count; ++k)
        sum += rule_->weight(k) * kernel_.value(s, rule_->node(k), x.value(k));
    return sum;
}

GridFunction NystromOperator::apply(const GridFunction& x) const {
    require_same_rule(x, "NystromOperator::apply");
    const int count = rule_->node_count();
    std::vector<double> out(static_cast<std::size_t>(count), 0.0);
    for (int a = 0; a < count; ++a) {
        const double s = rule_->node(a);
        double sum = 0.0;
        for (int k = 0; k < count; ++k)
            sum += rule_->weight(k) * kernel_.value(s, rule_->node(k), x.value(k));
        out[static_cast<std::size_t>(a)] = sum;
    }
    return GridFunction(rule_, std::move(out));
}

double NystromOperator::apply_derivative(const GridFunction& x, const GridFunction& v,
                                         double s) const {
    require_same_rule(x, "NystromOperator::apply_derivative");
    require_same_rule(v, "NystromOperator::apply_derivative");
    double sum = 0.0;
    const int count = rule_->node_count();
    for (int k = 0; k < count; ++k)
        sum += rule_->weight(k) * kernel_.du(s, rule_->node(k), x.value(k)) * v.value(k);
    return sum;
}

double NystromOperator::apply_second_derivative(const GridFunction& x, const GridFunction& v,
                                                double s) const {
    require_same_rule(x, "NystromOperator::apply_second_derivative");
    require_same_rule(v, "NystromOperator::apply_second_derivative");
    double sum = 0.0;
    const int count = rule_->node_count();
    for (int k = 0; k < count; ++k) {
        const double vk = v.value(k);
        sum += rule_->weight(k) * kernel_.d2u(s, rule_->node(k), x.value(k)) * vk * vk;
    }
    return sum;
}

Eigen::MatrixXd NystromOperator::derivative_matrix(const GridFunction& x,
                                                   std::span<const double> eval_points) const {
    require_same_rule(x, "NystromOperator::derivative_matrix");
    const int count = rule_->node_count();
    Eigen::MatrixXd matrix(static_cast<Eigen::Index>(eval_points.size()), count);
    for (std::size_t a = 0; a < eval_points.size(); ++a) {
        const double s = eval_points[a];
        for (int k = 0; k < count; ++k)
            matrix(static_cast<Eigen::Index>(a), k) =
                rule_->weight(k) * kernel_.du(s, rule_->node(k), x.value(k));
    }
    return matrix;
}

}  // namespace urysohn
