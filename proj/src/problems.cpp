#include "urysohn/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urysohn {

double greens_kernel(double s, double t) { return t <= s ? (1.0 - s) * t : s * (1.0 - t); }

namespace {

// phi(t) = t(1-t)/(1+t)
double benchmark_exact(double t) { return t * (1.0 - t) / (1.0 + t); }

// Along the exact solution 1 + t + phi(t) = (1+3t)/(1+t), so the Hammerstein
// factor is f(t, phi(t)) = (1+t)/(1+3t). The right-hand side is
//   g(s) = phi(s) - integral_0^1 kappa_G(s,t) (1+t)/(1+3t) dt,
// and the integral splits at t = s into polynomial-division antiderivatives:
//   I1(s) = integral_0^s t(1+t)/(1+3t) dt
//         = s^2/6 + 2s/9 - (2/27) log(1+3s),
//   I2(s) = integral_s^1 (1-t^2)/(1+3t) dt
//         = -1/18 + (8/27) log 4 + s^2/6 - s/9 + (8/27)(-log(1+3s)).
double benchmark_rhs(double s) {
    const double log_term = std::log1p(3.0 * s);
    const double i1 = s * s / 6.0 + 2.0 * s / 9.0 - (2.0 / 27.0) * log_term;
    const double i2 = -1.0 / 18.0 + (8.0 / 27.0) * std::log(4.0) + s * s / 6.0 - s / 9.0 -
                      (8.0 / 27.0) * log_term;
    return benchmark_exact(s) - ((1.0 - s) * i1 + s * i2);
}

}  // namespace

UrysohnProblem atkinson_potra_problem() {
    UrysohnProblem problem;
    problem.name = "atkinson-potra";
    problem.kernel.value = [](double s, double t, double u) {
        return greens_kernel(s, t) / (1.0 + t + u);
    };
    problem.kernel.du = [](double s, double t, double u) {
        const double d = 1.0 + t + u;
        return -greens_kernel(s, t) / (d * d);
    };
    problem.kernel.d2u = [](double s, double t, double u) {
        const double d = 1.0 + t + u;
        return 2.0 * greens_kernel(s, t) / (d * d * d);
    };
    problem.kernel.lower = [](double s, double t, double u) {
        return (1.0 - s) * t / (1.0 + t + u);
    };
    problem.kernel.upper = [](double s, double t, double u) {
        return s * (1.0 - t) / (1.0 + t + u);
    };
    problem.rhs = benchmark_rhs;
    problem.exact = benchmark_exact;
    return problem;
}

UrysohnProblem linear_test_problem(double lambda) {
    const double pi = std::acos(-1.0);
    if (lambda > 0.0) {
        const double k = std::round(std::sqrt(lambda) / pi);
        if (k >= 1.0 && std::abs(lambda - k * k * pi * pi) <= 1e-9 * k * k * pi * pi)
            throw std::invalid_argument("linear_test_problem: lambda = " + std::to_string(lambda) +
                                        " is an eigenvalue of the scaled Green's operator");
    }
    UrysohnProblem problem;
    problem.name = "linear";
    problem.kernel.value = [lambda](double s, double t, double u) {
        return lambda * greens_kernel(s, t) * u;
    };
    problem.kernel.du = [lambda](double s, double t, double) {
        return lambda * greens_kernel(s, t);
    };
    problem.kernel.d2u = [](double, double, double) { return 0.0; };
    problem.rhs = [lambda, pi](double s) { return (1.0 - lambda / (pi * pi)) * std::sin(pi * s); };
    problem.exact = [pi](double t) { return std::sin(pi * t); };
    return problem;
}

double reference_integral(const ScalarFunction& integrand, double split) {
    if (!(split >= 0.0 && split <= 1.0))
        throw std::domain_error("reference_integral: split point outside [0,1]");
    static const BasicRule gauss10 = gauss_legendre_rule(10);
    constexpr int panels = 64;

    const auto piece = [&](double a, double b) {
        const double width = (b - a) / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) {
            const double left = a + i * width;
            for (int q = 0; q < gauss10.size(); ++q)
                sum += width * gauss10.weights[static_cast<std::size_t>(q)] *
                       integrand(left + gauss10.nodes[static_cast<std::size_t>(q)] * width);
        }
        return sum;
    };

    double total = 0.0;
    if (split > 0.0) total += piece(0.0, split);
    if (split < 1.0) total += piece(split, 1.0);
    return total;
}

}  // namespace urysohn
