#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discpack/interval.hpp"

namespace discpack {

/// Which of the two disc sizes a disc takes.
enum class RadiusSelector { One, Ratio };

double radius_for(RadiusSelector s, double r);

/// Disc placed by `stick(discs[first], discs[second], radius)`.
struct StickStep {
    std::size_t first;
    std::size_t second;
    RadiusSelector radius;
};

struct SeedDisc {
    double x;
    double y;
    RadiusSelector radius;
};

/// Disc whose coordinates are expressions in the recipe's variables and r.
struct ExpressionDisc {
    std::string x;
    std::string y;
    RadiusSelector radius;
};

struct Census {
    int one = 0;
    int ratio = 0;
};

/// Serializable description of a one-parameter family of periodic packings.
///
/// A sequential recipe builds discs one at a time from seeds by stick steps;
/// disc k has coordinates named xk, yk in the lattice expressions, and `cell`
/// lists the disc indices forming one fundamental domain.
///
/// A constrained recipe solves a square polynomial system in `variables` with
/// r as parameter. `implied_equations` hold on the family but are dependent on
/// the others; they are checked after solving, never fed to Newton.
struct FlowRecipe {
    enum class Kind { Sequential, Constrained };

    std::string name;
    Kind kind = Kind::Sequential;

    std::vector<SeedDisc> seeds;
    std::vector<StickStep> steps;
    std::vector<std::size_t> cell;

    std::vector<std::string> variables;
    std::vector<std::string> equations;
    std::vector<std::string> implied_equations;
    double initial_r = 0.0;
    std::map<std::string, double> initial_guess;
    std::vector<ExpressionDisc> discs;

    /// Components of the two lattice vectors as expressions.
    std::array<std::string, 2> lattice_u;
    std::array<std::string, 2> lattice_v;
    Census census;
    Interval valid_range{0.0, 1.0};

    /// Names available to lattice and disc expressions (besides r).
    std::vector<std::string> coordinate_names() const;
};

/// Parses and checks a recipe: parent indices reference earlier discs, the
/// cell census matches, constrained systems are square, and every expression
/// refers only to known names. Throws FormatError otherwise.
FlowRecipe recipe_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FlowRecipe& recipe);
FlowRecipe load_recipe(const std::string& path);

/// Recipes shipped with the library, compiled in from data/recipes/.
std::vector<std::string> builtin_recipe_names();
FlowRecipe builtin_recipe(const std::string& name);

/// A built-in name, or otherwise a path to a recipe file.
FlowRecipe resolve_recipe(const std::string& name_or_path);

}  // namespace discpack
