#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "discpack/expression.hpp"
#include "discpack/geometry.hpp"
#include "discpack/interval.hpp"
#include "discpack/newton.hpp"
#include "discpack/recipe.hpp"

namespace discpack {

struct FlowResult {
    FundamentalDomain domain;
    double density;
};

/// Evaluates one recipe at many ratios. Constrained recipes are solved by
/// continuation in r from the nearest previously solved ratio (initially the
/// recipe's stored guess), with steps of 1e-3 halved on Newton failure.
///
/// The continuation cache makes an evaluator unsafe for concurrent use;
/// give each thread its own instance.
class FlowEvaluator {
public:
    explicit FlowEvaluator(FlowRecipe recipe);

    /// Builds the packing at r and re-validates it at tolerance 1e-9.
    ///
    /// Throws DomainError for r outside the recipe's valid range, NoSolution
    /// when a stick step or the continuation fails, and InvalidPacking when
    /// the built domain has overlaps.
    FlowResult operator()(double r);

    const FlowRecipe& recipe() const { return recipe_; }

    /// Solved coordinates of a constrained recipe, in variable order.
    std::vector<double> solve(double r);

private:
    std::vector<double> coordinates(double r);
    std::vector<double> continue_to(double r);

    FlowRecipe recipe_;
    std::vector<Expression> lattice_;
    std::vector<Expression> disc_x_;
    std::vector<Expression> disc_y_;
    std::vector<Expression> implied_;
    std::optional<EquationSystem> system_;
    std::map<double, std::vector<double>> cache_;
};

/// One-shot evaluation; see FlowEvaluator.
FlowResult eval_flow(const FlowRecipe& recipe, double r);

/// pi (r^2+1) (r+1)^4 / (16 (r+2)^(3/2) r^(3/2)). Throws DomainError for r <= 0.
double closed_form_841(double r);

/// Density of the flow from r6 to 1 in closed form. Throws DomainError when
/// either radicand is negative.
double closed_form_r6(double r);

/// Brackets of width at most tol around each sign change of f - level,
/// located on a 1e-3 grid over the range and refined by bisection. Grid points
/// where f throws are skipped.
std::vector<Interval> find_crossings(const std::function<double(double)>& f, double level,
                                     const Interval& range, double tol);

/// 2/sqrt(3) - 1, the largest ratio fitting in a hole of the hexagonal packing.
double r8();

/// Hexagonal unit-disc packing with N(r) small discs in each of its two holes
/// per cell, on a triangular lattice of pitch 2r centered at the hole center.
/// Throws DomainError unless 0 < r <= r8.
FlowResult interstitial(double r);

enum class CurveTag { Lower, Upper, Analytic };
std::string to_string(CurveTag tag);
CurveTag curve_tag_from_string(const std::string& text);

struct CurveSample {
    double r;
    double value;
    CurveTag tag;
};

/// Samples with strictly increasing r.
class DensityCurve {
public:
    /// Throws DomainError unless r exceeds the last sample's r.
    void add(double r, double value, CurveTag tag);
    const std::vector<CurveSample>& samples() const { return samples_; }
    bool empty() const { return samples_.empty(); }
    std::size_t size() const { return samples_.size(); }

private:
    std::vector<CurveSample> samples_;
};

/// CSV with header "r,density,tag".
void write_curve_csv(std::ostream& out, const DensityCurve& curve);
DensityCurve read_curve_csv(std::istream& in);

struct LowerBound {
    double value;
    std::string source;  ///< "hexagonal", "interstitial" or a recipe name
    FundamentalDomain domain;
};

/// Best known packing at each ratio among the unit hexagonal packing, the
/// interstitial packings and the registered recipes.
class LowerBoundModel {
public:
    explicit LowerBoundModel(std::vector<FlowRecipe> recipes = {});

    LowerBound at(double r);
    /// Requires a strictly increasing grid within (0, 1).
    DensityCurve curve(const std::vector<double>& grid);

    std::vector<FlowEvaluator>& evaluators() { return evaluators_; }

private:
    std::vector<FlowEvaluator> evaluators_;
};

DensityCurve lower_bound_curve(const std::vector<double>& grid,
                               const std::vector<FlowRecipe>& recipes = {});

}  // namespace discpack
