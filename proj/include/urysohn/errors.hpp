#pragma once

#include <stdexcept>
#include <string>

namespace urysohn {

/// Base class for nonlinear-solve failures. A study harness catches this to
/// record a DNF cell and keep going; it is never raised for programming
/// errors (those use the standard logic_error family).
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// The Jacobian was (numerically) singular at some Newton iterate.
class SingularJacobianError : public SolveError {
public:
    SingularJacobianError(int iteration, double residual)
        : SolveError("newton_solve: singular Jacobian at iteration " + std::to_string(iteration),
                     iteration, residual) {}
};

/// The residual tolerance was not reached within the iteration budget.
class ConvergenceError : public SolveError {
public:
    ConvergenceError(int iterations, double residual)
        : SolveError("newton_solve: no convergence after " + std::to_string(iterations) +
                         " iterations, residual " + std::to_string(residual),
                     iterations, residual) {}
};

}  // namespace urysohn
