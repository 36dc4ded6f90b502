#pragma once

#include <string>

#include "urysohn/operators.hpp"
#include "urysohn/quadrature.hpp"

namespace urysohn {

/// A Urysohn integral equation of the second kind,
///   x(s) - integral_0^1 kappa(s, t, x(t)) dt = f(s),
/// with an optional known exact solution for convergence studies.
struct UrysohnProblem {
    std::string name;
    KernelTriple kernel;
    ScalarFunction rhs;
    ScalarFunction exact{};  // empty when unknown
};

/// Benchmark with the Green's kernel of -d^2/ds^2 (zero boundary values),
///   kappa(s,t,u) = kappa_G(s,t) / (1 + t + u),
/// exact solution phi(t) = t(1-t)/(1+t), and right-hand side computed in
/// closed form (logarithmic antiderivatives, cross-checked by quadrature in
/// the test suite).
UrysohnProblem atkinson_potra_problem();

/// Linear smoke-test problem kappa(s,t,u) = lambda * kappa_G(s,t) * u with
/// manufactured solution phi(t) = sin(pi t), so f(s) = (1 - lambda/pi^2)
/// sin(pi s). Rejects lambda at an eigenvalue k^2 pi^2 of the inverse Green's
/// operator, where the equation is singular.
UrysohnProblem linear_test_problem(double lambda);

/// Green's kernel of the benchmark: (1-s)t for t <= s, s(1-t) for s <= t.
double greens_kernel(double s, double t);

/// Oracle integrator for integrands that are smooth except for one break at
/// t = split: integral over [0,1] computed as [0,split] + [split,1], each by
/// composite 10-point Gauss on 64 panels. Absolute accuracy ~1e-13 for the
/// benchmark integrands.
double reference_integral(const ScalarFunction& integrand, double split);

}  // namespace urysohn
