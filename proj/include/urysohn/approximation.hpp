#pragma once

#include <memory>
#include <vector>

#include "urysohn/quadrature.hpp"

namespace urysohn {

/// Classical Legendre polynomial P_k on [-1,1].
double legendre(int degree, double x);

/// Legendre polynomial normalized to unit L2 norm on [-1,1]:
/// sqrt((2k+1)/2) * P_k.
double orthonormal_legendre(int degree, double x);

/// Reference-interval basis for piecewise polynomials of degree <= r.
class LegendreBasis {
public:
    explicit LegendreBasis(int degree);

    int degree() const noexcept { return degree_; }
    /// Orthonormal reference polynomial of degree eta at x in [-1,1].
    double reference(int eta, double x) const;

private:
    int degree_;
};

/// Value of the scaled basis function supported on coarse interval j
/// (1-based): sqrt((2*eta+1)/h) * P_eta(affine map of t into [-1,1]) inside
/// (t_{j-1}, t_j], zero elsewhere. The family is orthonormal under the
/// discrete inner product whenever the quadrature is exact to degree 2*eta.
double basis_eval(const UniformPartition& partition, int interval, int eta, double t);

/// Element of the degree-<=r piecewise polynomial space, stored as n*(r+1)
/// coefficients of the scaled Legendre basis, interval-major.
class PiecewisePolynomial {
public:
    PiecewisePolynomial(UniformPartition partition, int degree, std::vector<double> coefficients);

    const UniformPartition& partition() const noexcept { return partition_; }
    int degree() const noexcept { return degree_; }

    double coefficient(int interval, int eta) const;
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }

    /// Evaluation with the half-open interval convention: t_j (j >= 1)
    /// evaluates on (t_{j-1}, t_j]; 0 evaluates on the first interval.
    double operator()(double t) const;

private:
    UniformPartition partition_;
    int degree_;
    std::vector<double> coefficients_;
};

inline double pp_eval(const PiecewisePolynomial& poly, double t) { return poly(t); }

/// Function values at all quadrature nodes of a composite rule, the sampling
/// carrier for the Nystrom operators.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const CompositeRule> rule, std::vector<double> values);

    const CompositeRule& rule() const noexcept { return *rule_; }
    const std::shared_ptr<const CompositeRule>& rule_ptr() const noexcept { return rule_; }

    int size() const noexcept { return static_cast<int>(values_.size()); }
    double value(int k) const { return values_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::shared_ptr<const CompositeRule> rule_;
    std::vector<double> values_;
};

/// Sample a function (or a piecewise polynomial) at every quadrature node.
/// Throws std::runtime_error naming the node index on a non-finite value.
GridFunction sample_to_grid(const ScalarFunction& f, std::shared_ptr<const CompositeRule> rule);
GridFunction sample_to_grid(const PiecewisePolynomial& poly, std::shared_ptr<const CompositeRule> rule);

/// Quadrature inner product restricted to coarse interval j (1-based):
/// h_fine * sum over the p*rho nodes inside of w_q f g. Symmetric in f, g.
double discrete_inner_product(const ScalarFunction& f, const ScalarFunction& g, int interval,
                              const CompositeRule& rule);

/// Per-node basis values and block indices shared by the discrete projection
/// and by the solvers' Jacobian assembly. Rows are flat node indices, columns
/// are the r+1 local basis degrees.
class BasisTable {
public:
    BasisTable(std::shared_ptr<const CompositeRule> rule, int degree);

    const CompositeRule& rule() const noexcept { return *rule_; }
    const std::shared_ptr<const CompositeRule>& rule_ptr() const noexcept { return rule_; }
    int degree() const noexcept { return degree_; }
    int node_count() const noexcept { return rule_->node_count(); }
    int coefficient_count() const noexcept {
        return rule_->partition().interval_count() * (degree_ + 1);
    }

    /// 0-based coarse block of node k.
    int block_of(int k) const { return rule_->coarse_block_of(k); }
    /// Basis value phi_{block(k), eta}(zeta_k).
    double value(int k, int eta) const {
        return values_[static_cast<std::size_t>(k) * (degree_ + 1) + eta];
    }
    double weight(int k) const { return rule_->weight(k); }

    /// Node values of the element with the given coefficients (interval-major).
    std::vector<double> expand(const std::vector<double>& coefficients) const;
    /// Coefficients of the discrete orthogonal projection of node values.
    std::vector<double> project_values(const std::vector<double>& node_values) const;

private:
    std::shared_ptr<const CompositeRule> rule_;
    int degree_;
    std::vector<double> values_;
};

/// Discrete orthogonal projection onto the degree-<=r space: coefficients are
/// the discrete inner products against the scaled Legendre basis. Requires
/// rho >= r+1 so the quadrature is exact to degree 2r and the map is a
/// projection.
PiecewisePolynomial project(const GridFunction& f, int degree);
PiecewisePolynomial project(const ScalarFunction& f, std::shared_ptr<const CompositeRule> rule,
                            int degree);

}  // namespace urysohn
