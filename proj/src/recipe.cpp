#include "discpack/recipe.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "discpack/error.hpp"
#include "discpack/expression.hpp"

namespace discpack {

namespace {

// Generated from data/recipes/*.json: pairs of {name, json text}.
const std::pair<const char*, const char*> kBuiltinRecipes[] = {
#include "builtin_recipes.inc"
};

RadiusSelector selector_from(const nlohmann::json& j) {
    const auto s = j.get<std::string>();
    if (s == "one") return RadiusSelector::One;
    if (s == "ratio") return RadiusSelector::Ratio;
    throw FormatError("radius selector must be \"one\" or \"ratio\", got \"" + s + "\"");
}

std::string selector_name(RadiusSelector s) { return s == RadiusSelector::One ? "one" : "ratio"; }

void check_expression(const std::string& text, const std::vector<std::string>& names,
                      const std::string& where) {
    const Expression e = Expression::parse(text);
    for (const auto& v : e.variables()) {
        if (std::find(names.begin(), names.end(), v) == names.end()) {
            throw FormatError(where + ": unknown name '" + v + "' in '" + text + "'");
        }
    }
}

std::array<std::string, 2> vector_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("lattice vector must have two components");
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

void validate(const FlowRecipe& recipe) {
    const std::string where = "recipe '" + recipe.name + "'";
    Census census;
    const auto count = [&census](RadiusSelector s) { ++(s == RadiusSelector::One ? census.one : census.ratio); };

    if (recipe.kind == FlowRecipe::Kind::Sequential) {
        if (recipe.seeds.empty()) throw FormatError(where + ": needs at least one seed");
        const std::size_t total = recipe.seeds.size() + recipe.steps.size();
        for (std::size_t k = 0; k < recipe.steps.size(); ++k) {
            const auto& s = recipe.steps[k];
            const std::size_t index = recipe.seeds.size() + k;
            if (s.first >= index || s.second >= index) {
                throw FormatError(where + ": step building disc " + std::to_string(index) +
                                  " references a later disc");
            }
            if (s.first == s.second) throw FormatError(where + ": step parents must differ");
        }
        if (recipe.cell.empty()) throw FormatError(where + ": empty cell");
        for (std::size_t i : recipe.cell) {
            if (i >= total) throw FormatError(where + ": cell index " + std::to_string(i) + " out of range");
            count(i < recipe.seeds.size() ? recipe.seeds[i].radius
                                          : recipe.steps[i - recipe.seeds.size()].radius);
        }
    } else {
        if (recipe.variables.size() != recipe.equations.size()) {
            throw FormatError(where + ": constrained system is not square (" +
                              std::to_string(recipe.equations.size()) + " equations, " +
                              std::to_string(recipe.variables.size()) + " variables)");
        }
        if (recipe.discs.empty()) throw FormatError(where + ": empty cell");
        std::vector<std::string> names = recipe.variables;
        names.push_back("r");
        for (const auto& eq : recipe.equations) check_expression(eq, names, where);
        for (const auto& eq : recipe.implied_equations) check_expression(eq, names, where);
        for (const auto& v : recipe.variables) {
            if (!recipe.initial_guess.contains(v)) {
                throw FormatError(where + ": initial guess misses variable '" + v + "'");
            }
        }
        if (!recipe.valid_range.contains(recipe.initial_r)) {
            throw FormatError(where + ": initial guess lies outside the valid range");
        }
        for (const auto& d : recipe.discs) {
            check_expression(d.x, names, where);
            check_expression(d.y, names, where);
            count(d.radius);
        }
    }
    auto names = recipe.coordinate_names();
    names.push_back("r");
    for (const auto& c : recipe.lattice_u) check_expression(c, names, where);
    for (const auto& c : recipe.lattice_v) check_expression(c, names, where);
    if (census.one != recipe.census.one || census.ratio != recipe.census.ratio) {
        throw FormatError(where + ": census does not match the cell (" + std::to_string(census.one) +
                          " unit, " + std::to_string(census.ratio) + " ratio discs)");
    }
    if (!(recipe.valid_range.lo() > 0.0 && recipe.valid_range.hi() <= 1.0)) {
        throw FormatError(where + ": valid range must lie within (0, 1]");
    }
}

}  // namespace

double radius_for(RadiusSelector s, double r) { return s == RadiusSelector::One ? 1.0 : r; }

std::vector<std::string> FlowRecipe::coordinate_names() const {
    if (kind == Kind::Constrained) return variables;
    std::vector<std::string> names;
    const std::size_t total = seeds.size() + steps.size();
    for (std::size_t i = 0; i < total; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
    }
    return names;
}

FlowRecipe recipe_from_json(const nlohmann::json& j) {
    FlowRecipe recipe;
    try {
        recipe.name = j.at("name").get<std::string>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "sequential") {
            recipe.kind = FlowRecipe::Kind::Sequential;
            for (const auto& s : j.at("seeds")) {
                recipe.seeds.push_back(
                    {s.at("x").get<double>(), s.at("y").get<double>(), selector_from(s.at("radius"))});
            }
            for (const auto& s : j.at("steps")) {
                const auto& parents = s.at("parents");
                if (!parents.is_array() || parents.size() != 2) {
                    throw FormatError("stick step needs two parents");
                }
                recipe.steps.push_back({parents[0].get<std::size_t>(), parents[1].get<std::size_t>(),
                                        selector_from(s.at("radius"))});
            }
            recipe.cell = j.at("cell").get<std::vector<std::size_t>>();
        } else if (kind == "constrained") {
            recipe.kind = FlowRecipe::Kind::Constrained;
            recipe.variables = j.at("variables").get<std::vector<std::string>>();
            recipe.equations = j.at("equations").get<std::vector<std::string>>();
            if (j.contains("implied_equations")) {
                recipe.implied_equations = j.at("implied_equations").get<std::vector<std::string>>();
            }
            const auto& guess = j.at("initial_guess");
            recipe.initial_r = guess.at("r").get<double>();
            recipe.initial_guess = guess.at("values").get<std::map<std::string, double>>();
            for (const auto& d : j.at("discs")) {
                recipe.discs.push_back({d.at("x").get<std::string>(), d.at("y").get<std::string>(),
                                        selector_from(d.at("radius"))});
            }
        } else {
            throw FormatError("recipe kind must be \"sequential\" or \"constrained\"");
        }
        recipe.lattice_u = vector_from(j.at("lattice").at("u"));
        recipe.lattice_v = vector_from(j.at("lattice").at("v"));
        recipe.census = {j.at("census").at("one").get<int>(), j.at("census").at("ratio").get<int>()};
        const auto& range = j.at("valid_range");
        if (!range.is_array() || range.size() != 2) throw FormatError("valid_range must be [lo, hi]");
        recipe.valid_range = Interval(range[0].get<double>(), range[1].get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("recipe JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("recipe JSON: ") + e.what());
    }
    validate(recipe);
    return recipe;
}

nlohmann::json to_json(const FlowRecipe& recipe) {
    nlohmann::json j;
    j["name"] = recipe.name;
    if (recipe.kind == FlowRecipe::Kind::Sequential) {
        j["kind"] = "sequential";
        j["seeds"] = nlohmann::json::array();
        for (const auto& s : recipe.seeds) {
            j["seeds"].push_back({{"x", s.x}, {"y", s.y}, {"radius", selector_name(s.radius)}});
        }
        j["steps"] = nlohmann::json::array();
        for (const auto& s : recipe.steps) {
            j["steps"].push_back({{"parents", {s.first, s.second}}, {"radius", selector_name(s.radius)}});
        }
        j["cell"] = recipe.cell;
    } else {
        j["kind"] = "constrained";
        j["variables"] = recipe.variables;
        j["equations"] = recipe.equations;
        j["implied_equations"] = recipe.implied_equations;
        j["initial_guess"] = {{"r", recipe.initial_r}, {"values", recipe.initial_guess}};
        j["discs"] = nlohmann::json::array();
        for (const auto& d : recipe.discs) {
            j["discs"].push_back({{"x", d.x}, {"y", d.y}, {"radius", selector_name(d.radius)}});
        }
    }
    j["lattice"] = {{"u", recipe.lattice_u}, {"v", recipe.lattice_v}};
    j["census"] = {{"one", recipe.census.one}, {"ratio", recipe.census.ratio}};
    j["valid_range"] = {recipe.valid_range.lo(), recipe.valid_range.hi()};
    return j;
}

FlowRecipe load_recipe(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open recipe file '" + path + "'");
    try {
        return recipe_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("recipe file '" + path + "': " + e.what());
    }
}

std::vector<std::string> builtin_recipe_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : kBuiltinRecipes) names.emplace_back(name);
    return names;
}

FlowRecipe builtin_recipe(const std::string& name) {
    for (const auto& [n, text] : kBuiltinRecipes) {
        if (name == n) return recipe_from_json(nlohmann::json::parse(text));
    }
    throw FormatError("no built-in recipe named '" + name + "'");
}

FlowRecipe resolve_recipe(const std::string& name_or_path) {
    const auto names = builtin_recipe_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
        return builtin_recipe(name_or_path);
    }
    return load_recipe(name_or_path);
}

}  // namespace discpack
