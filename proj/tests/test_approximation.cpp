#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "urysohn/approximation.hpp"

using namespace urysohn;

namespace {

std::shared_ptr<const CompositeRule> make_rule(int n, int p, int rho) {
    return std::make_shared<const CompositeRule>(gauss_legendre_rule(rho), UniformPartition(n, p));
}

// Random smooth function: a low-order trigonometric/polynomial mix.
ScalarFunction random_smooth(std::mt19937& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double a = coeff(rng), b = coeff(rng), c = coeff(rng), d = coeff(rng);
    return [=](double t) { return a + b * t + c * std::sin(3.0 * t) + d * std::exp(t); };
}

double sup_of(const ScalarFunction& f, const std::vector<double>& points) {
    double worst = 0.0;
    for (double t : points) worst = std::max(worst, std::abs(f(t)));
    return worst;
}

std::vector<double> uniform_grid(int count) {
    std::vector<double> points(count);
    for (int i = 0; i < count; ++i) points[i] = static_cast<double>(i) / (count - 1);
    return points;
}

}  // namespace

TEST_CASE("orthonormal legendre polynomials have unit norm and exact degree") {
    // quadrature of degree >= 2r on [-1,1] through the [0,1] machinery
    const CompositeRule gauss(gauss_legendre_rule(8), UniformPartition(1, 1));
    for (int a = 0; a <= 5; ++a) {
        for (int b = 0; b <= 5; ++b) {
            double sum = 0.0;
            for (int k = 0; k < gauss.node_count(); ++k) {
                const double x = 2.0 * gauss.node(k) - 1.0;  // map to [-1,1]
                sum += 2.0 * gauss.weight(k) * orthonormal_legendre(a, x) * orthonormal_legendre(b, x);
            }
            CHECK(std::abs(sum - (a == b ? 1.0 : 0.0)) <= 1e-13);
        }
    }
    // leading behavior: P_k has degree exactly k, so the difference between
    // values at two points grows with k but is constant for k = 0
    CHECK(legendre(0, -0.3) == 1.0);
    CHECK(legendre(1, -0.3) == -0.3);
    CHECK(std::abs(legendre(2, 0.5) - 0.5 * (3 * 0.25 - 1)) <= 1e-15);

    const LegendreBasis basis(3);
    CHECK(basis.degree() == 3);
    CHECK(basis.reference(2, 0.4) == orthonormal_legendre(2, 0.4));
    CHECK_THROWS_AS(basis.reference(4, 0.0), std::out_of_range);
}

TEST_CASE("scaled basis: constant mode, support, domain checks") {
    const UniformPartition part(4, 1);
    const double h = part.width();
    CHECK(basis_eval(part, 2, 0, 0.3) == std::sqrt(1.0 / h));
    CHECK(basis_eval(part, 2, 0, 0.6) == 0.0);   // outside interval 2
    CHECK(basis_eval(part, 1, 1, 0.9) == 0.0);   // outside interval 1
    CHECK(basis_eval(part, 1, 0, 0.0) == std::sqrt(1.0 / h));
    CHECK_THROWS_AS(basis_eval(part, 1, 0, -0.2), std::domain_error);
    CHECK_THROWS_AS(basis_eval(part, 5, 0, 0.5), std::out_of_range);
}

TEST_CASE("discrete inner product: constants, symmetry, exact moment") {
    SUBCASE("f=g=1 gives the interval width") {
        const auto rule = make_rule(5, 3, 2);
        const auto one = [](double) { return 1.0; };
        for (int j = 1; j <= 5; ++j)
            CHECK(std::abs(discrete_inner_product(one, one, j, *rule) - 0.2) <= 1e-15);
    }
    SUBCASE("symmetric in its arguments") {
        const auto rule = make_rule(3, 2, 3);
        std::mt19937 rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = random_smooth(rng);
            const auto g = random_smooth(rng);
            for (int j = 1; j <= 3; ++j)
                CHECK(discrete_inner_product(f, g, j, *rule) ==
                      discrete_inner_product(g, f, j, *rule));
        }
    }
    SUBCASE("f=g=t on a single gauss-2 interval") {
        const auto rule = make_rule(1, 1, 2);
        const auto id = [](double t) { return t; };
        CHECK(std::abs(discrete_inner_product(id, id, 1, *rule) - 1.0 / 3.0) <= 1e-15);
    }
}

TEST_CASE("gram matrix of the scaled basis is the identity") {
    for (int r : {0, 1, 2}) {
        const auto rule = make_rule(3, 2, r + 1);
        const auto& part = rule->partition();
        for (int j = 1; j <= 3; ++j) {
            for (int a = 0; a <= r; ++a) {
                for (int b = 0; b <= r; ++b) {
                    const auto fa = [&](double t) { return basis_eval(part, j, a, t); };
                    const auto fb = [&](double t) { return basis_eval(part, j, b, t); };
                    const double entry = discrete_inner_product(fa, fb, j, *rule);
                    CHECK(std::abs(entry - (a == b ? 1.0 : 0.0)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("projection reproduces members of the space coefficientwise") {
    const auto rule = make_rule(4, 2, 3);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(4 * 3);
    for (auto& v : c) v = coeff(rng);
    const PiecewisePolynomial member(rule->partition(), 2, c);
    const PiecewisePolynomial back = project(sample_to_grid(member, rule), 2);
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(std::abs(back.coefficients()[i] - c[i]) <= 1e-12);
}

TEST_CASE("piecewise constant projection of t is the interval mean") {
    const auto rule = make_rule(2, 1, 2);
    const PiecewisePolynomial proj = project([](double t) { return t; }, rule, 0);
    CHECK(std::abs(proj(0.2) - 0.25) <= 1e-14);
    CHECK(std::abs(proj(0.7) - 0.75) <= 1e-14);
}

TEST_CASE("projection is idempotent for random smooth functions") {
    const auto rule = make_rule(6, 2, 3);
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_smooth(rng);
        const PiecewisePolynomial once = project(f, rule, 2);
        const PiecewisePolynomial twice = project(sample_to_grid(once, rule), 2);
        for (std::size_t i = 0; i < once.coefficients().size(); ++i)
            CHECK(std::abs(twice.coefficients()[i] - once.coefficients()[i]) <= 1e-12);
    }
}

TEST_CASE("projection reproduces global polynomials of degree <= r") {
    const auto grid = uniform_grid(1001);
    for (int r : {0, 1, 2}) {
        const auto rule = make_rule(5, 2, r + 1);
        const auto poly = [r](double t) {
            double value = 1.0;
            if (r >= 1) value += 2.0 * t;
            if (r >= 2) value -= 0.75 * t * t;
            return value;
        };
        const PiecewisePolynomial proj = project(poly, rule, r);
        for (double t : grid) CHECK(std::abs(proj(t) - poly(t)) <= 1e-12);
    }
}

TEST_CASE("projection requires enough quadrature points") {
    const auto rule = make_rule(2, 2, 1);
    CHECK_THROWS_AS(project([](double t) { return t; }, rule, 1), std::invalid_argument);
}

TEST_CASE("projection never amplifies by more than the basis bound") {
    std::mt19937 rng(5150);
    const auto grid = uniform_grid(257);
    SUBCASE("piecewise constants average, so the sup never grows") {
        const auto rule = make_rule(4, 2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_smooth(rng);
            const PiecewisePolynomial proj = project(f, rule, 0);
            auto points = grid;
            for (double t : rule->nodes()) points.push_back(t);
            const double bound = sup_of(f, points);
            for (double t : points)
                CHECK(std::abs(proj(t)) <= bound * (1.0 + 1e-12));
        }
    }
    SUBCASE("general degree bound (r+1)^2") {
        const int r = 2;
        const auto rule = make_rule(4, 2, r + 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_smooth(rng);
            const PiecewisePolynomial proj = project(f, rule, r);
            auto points = grid;
            for (double t : rule->nodes()) points.push_back(t);
            const double bound = (r + 1) * (r + 1) * sup_of(f, points);
            for (double t : points)
                CHECK(std::abs(proj(t)) <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("projection error of exp decays at order r+1") {
    const auto grid = uniform_grid(1001);
    for (int r : {0, 1, 2}) {
        std::vector<double> errors;
        for (int n : {4, 8, 16, 32}) {
            const auto rule = make_rule(n, 1, r + 1);
            const PiecewisePolynomial proj = project([](double t) { return std::exp(t); }, rule, r);
            double worst = 0.0;
            for (double t : grid) worst = std::max(worst, std::abs(proj(t) - std::exp(t)));
            errors.push_back(worst);
        }
        // least-squares slope of log2(error) against log2(n)
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < errors.size(); ++i) {
            const double x = std::log2(4.0) + static_cast<double>(i);
            const double y = std::log2(errors[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double count = static_cast<double>(errors.size());
        const double slope = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
        CHECK(std::abs(slope - (r + 1.0)) <= 0.2);
    }
}

TEST_CASE("evaluation conventions of piecewise polynomials") {
    const auto rule = make_rule(4, 2, 2);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> c(4);
    for (auto& v : c) v = coeff(rng);
    const PiecewisePolynomial constant(rule->partition(), 0, c);

    SUBCASE("breakpoints take the left interval value") {
        const double h = rule->partition().width();
        for (int j = 1; j <= 4; ++j) {
            const double expected = c[static_cast<std::size_t>(j - 1)] * std::sqrt(1.0 / h);
            CHECK(constant(rule->partition().breakpoint(j)) == expected);
        }
        CHECK(constant(0.0) == c[0] * std::sqrt(1.0 / rule->partition().width()));
    }
    SUBCASE("constant polynomial evaluates to its value everywhere") {
        const double h = rule->partition().width();
        std::vector<double> same(4, 0.5 * std::sqrt(h));
        const PiecewisePolynomial half(rule->partition(), 0, same);
        for (double t : uniform_grid(97)) CHECK(std::abs(half(t) - 0.5) <= 1e-14);
    }
    SUBCASE("domain error outside [0,1]") {
        CHECK_THROWS_AS(constant(1.5), std::domain_error);
        CHECK_THROWS_AS(pp_eval(constant, -0.5), std::domain_error);
    }
}

TEST_CASE("pp evaluation at nodes matches the direct basis expansion") {
    const auto rule = make_rule(3, 2, 3);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const int r = 2;
    std::vector<double> c(static_cast<std::size_t>(3 * (r + 1)));
    for (auto& v : c) v = coeff(rng);
    const PiecewisePolynomial poly(rule->partition(), r, c);
    for (int k = 0; k < rule->node_count(); ++k) {
        const int j = rule->coarse_block_of(k) + 1;
        double direct = 0.0;
        for (int eta = 0; eta <= r; ++eta)
            direct += poly.coefficient(j, eta) * basis_eval(rule->partition(), j, eta, rule->node(k));
        CHECK(std::abs(poly(rule->node(k)) - direct) <= 1e-13);
    }
}

TEST_CASE("grid sampling: zeros, support, shape checks") {
    const auto rule = make_rule(3, 1, 2);
    SUBCASE("zero function gives a zero grid") {
        const GridFunction zero = sample_to_grid([](double) { return 0.0; }, rule);
        for (double v : zero.values()) CHECK(v == 0.0);
        CHECK(zero.size() == rule->node_count());
    }
    SUBCASE("basis function vanishes at nodes outside its interval") {
        const auto& part = rule->partition();
        const GridFunction phi =
            sample_to_grid([&part](double t) { return basis_eval(part, 1, 0, t); }, rule);
        for (int k = 0; k < rule->node_count(); ++k) {
            if (rule->coarse_block_of(k) != 0) CHECK(phi.value(k) == 0.0);
        }
    }
    SUBCASE("non-finite samples are rejected with the node index") {
        CHECK_THROWS_WITH_AS(
            sample_to_grid([](double t) { return t < 0.4 ? 1.0 : std::nan(""); }, rule),
            doctest::Contains("node 2"), std::runtime_error);
    }
    SUBCASE("value count mismatches are rejected") {
        CHECK_THROWS_AS(GridFunction(rule, std::vector<double>(5, 0.0)), std::invalid_argument);
    }
}

TEST_CASE("project -> evaluate -> resample round trip is coefficient-stable") {
    const auto rule = make_rule(5, 2, 2);
    std::mt19937 rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_smooth(rng);
        const PiecewisePolynomial proj = project(f, rule, 1);
        const GridFunction resampled =
            sample_to_grid([&proj](double t) { return proj(t); }, rule);
        const PiecewisePolynomial again = project(resampled, 1);
        for (std::size_t i = 0; i < proj.coefficients().size(); ++i)
            CHECK(std::abs(again.coefficients()[i] - proj.coefficients()[i]) <= 1e-12);
    }
}

TEST_CASE("grid functions refuse non-finite values") {
    const auto rule = make_rule(2, 1, 2);
    std::vector<double> values(static_cast<std::size_t>(rule->node_count()), 0.0);
    values[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(GridFunction(rule, values), doctest::Contains("node 1"),
                         std::invalid_argument);
}
