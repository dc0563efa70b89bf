#pragma once

#include <span>
#include <string>
#include <vector>

#include "discpack/expression.hpp"

namespace discpack {

/// A square system of equations f_i(unknowns; parameters) = 0.
class EquationSystem {
public:
    EquationSystem(const std::vector<std::string>& equations, std::vector<std::string> unknowns,
                   std::vector<std::string> parameters = {});
    EquationSystem(std::vector<Expression> equations, std::vector<std::string> unknowns,
                   std::vector<std::string> parameters = {});

    std::size_t size() const { return equations_.size(); }
    const std::vector<std::string>& unknowns() const { return unknowns_; }
    const std::vector<std::string>& parameters() const { return parameters_; }

    std::vector<double> residuals(std::span<const double> x, std::span<const double> params) const;
    std::vector<Interval> residuals(std::span<const Interval> x,
                                    std::span<const Interval> params) const;
    /// Row-major Jacobian with respect to the unknowns.
    std::vector<double> jacobian(std::span<const double> x, std::span<const double> params) const;

private:
    std::vector<Expression> equations_;
    std::vector<Expression> jacobian_;
    std::vector<std::string> unknowns_;
    std::vector<std::string> parameters_;
};

struct NewtonOptions {
    double tol = 1e-12;
    int max_iterations = 100;
    /// Step halvings allowed per iteration before giving up.
    int max_halvings = 40;
};

/// Damped Newton iteration. Each step is halved until the residual max-norm
/// decreases. Returns a point whose residual max-norm is at most `tol`.
///
/// Throws SingularJacobian when the linearized system cannot be solved and
/// NoConvergence when no damped step reduces the residual or the iteration
/// cap is reached.
std::vector<double> newton_solve(const EquationSystem& system, std::span<const double> guess,
                                 std::span<const double> params = {},
                                 const NewtonOptions& options = {});

}  // namespace discpack
