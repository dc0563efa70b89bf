#include "discpack/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "discpack/error.hpp"

namespace discpack {

namespace {

std::vector<Expression> parse_all(const std::vector<std::string>& texts) {
    std::vector<Expression> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(Expression::parse(t));
    return out;
}

template <class T>
std::vector<T> concat(std::span<const T> a, std::span<const T> b) {
    std::vector<T> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

EquationSystem::EquationSystem(const std::vector<std::string>& equations,
                               std::vector<std::string> unknowns,
                               std::vector<std::string> parameters)
    : EquationSystem(parse_all(equations), std::move(unknowns), std::move(parameters)) {}

EquationSystem::EquationSystem(std::vector<Expression> equations, std::vector<std::string> unknowns,
                               std::vector<std::string> parameters)
    : unknowns_(std::move(unknowns)), parameters_(std::move(parameters)) {
    if (equations.size() != unknowns_.size()) {
        throw DomainError("equation system must be square: " + std::to_string(equations.size()) +
                          " equations, " + std::to_string(unknowns_.size()) + " unknowns");
    }
    std::vector<std::string> names = unknowns_;
    names.insert(names.end(), parameters_.begin(), parameters_.end());
    for (const auto& eq : equations) {
        equations_.push_back(eq.bind(names));
        for (const auto& u : unknowns_) jacobian_.push_back(eq.derivative(u).bind(names));
    }
}

std::vector<double> EquationSystem::residuals(std::span<const double> x,
                                              std::span<const double> params) const {
    const auto values = concat(x, params);
    std::vector<double> out;
    out.reserve(equations_.size());
    for (const auto& eq : equations_) out.push_back(eq.evaluate(std::span<const double>(values)));
    return out;
}

std::vector<Interval> EquationSystem::residuals(std::span<const Interval> x,
                                                std::span<const Interval> params) const {
    const auto values = concat(x, params);
    std::vector<Interval> out;
    out.reserve(equations_.size());
    for (const auto& eq : equations_) out.push_back(eq.evaluate(std::span<const Interval>(values)));
    return out;
}

std::vector<double> EquationSystem::jacobian(std::span<const double> x,
                                             std::span<const double> params) const {
    const auto values = concat(x, params);
    std::vector<double> out;
    out.reserve(jacobian_.size());
    for (const auto& d : jacobian_) out.push_back(d.evaluate(std::span<const double>(values)));
    return out;
}

std::vector<double> newton_solve(const EquationSystem& system, std::span<const double> guess,
                                 std::span<const double> params, const NewtonOptions& options) {
    const auto n = static_cast<Eigen::Index>(system.size());
    if (guess.size() != system.size()) throw DomainError("guess size does not match the system");
    if (params.size() != system.parameters().size()) {
        throw DomainError("parameter count does not match the system");
    }
    std::vector<double> x(guess.begin(), guess.end());
    std::vector<double> f = system.residuals(x, params);
    double norm = max_norm(f);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (norm <= options.tol) return x;
        const auto jac = system.jacobian(x, params);
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            j(jac.data(), n, n);
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(j);
        if (!lu.isInvertible()) throw SingularJacobian("singular Jacobian in Newton iteration");
        const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(f.data(), n);
        const Eigen::VectorXd step = lu.solve(rhs);

        double t = 1.0;
        bool improved = false;
        for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
            std::vector<double> trial(x);
            for (Eigen::Index i = 0; i < n; ++i) trial[i] += t * step[i];
            auto ft = system.residuals(trial, params);
            const double nt = max_norm(ft);
            if (nt < norm) {
                x = std::move(trial);
                f = std::move(ft);
                norm = nt;
                improved = true;
                break;
            }
        }
        if (!improved) {
            throw NoConvergence("Newton stalled at residual " + std::to_string(norm));
        }
    }
    if (norm <= options.tol) return x;
    throw NoConvergence("Newton iteration cap reached at residual " + std::to_string(norm));
}

}  // namespace discpack
