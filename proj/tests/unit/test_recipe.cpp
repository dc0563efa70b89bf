#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "discpack/error.hpp"
#include "discpack/recipe.hpp"

using namespace discpack;

namespace {

nlohmann::json sequential() {
    return nlohmann::json::parse(R"({
        "name": "test", "kind": "sequential",
        "seeds": [{"x": 0, "y": 0, "radius": "one"}, {"x": 2, "y": 0, "radius": "one"}],
        "steps": [{"parents": [0, 1], "radius": "one"}],
        "cell": [0],
        "lattice": {"u": ["x1-x0", "y1-y0"], "v": ["x2-x0", "y2-y0"]},
        "census": {"one": 1, "ratio": 0},
        "valid_range": [0.1, 1.0]
    })");
}

}  // namespace

TEST_SUITE("flows") {
    TEST_CASE("built-in recipes") {
        const auto names = builtin_recipe_names();
        CHECK(std::find(names.begin(), names.end(), "flow-841-mid") != names.end());
        CHECK(std::find(names.begin(), names.end(), "flow-r6-1") != names.end());
        const auto f = builtin_recipe("flow-841-mid");
        CHECK(f.kind == FlowRecipe::Kind::Sequential);
        CHECK(f.census.one == 2);
        CHECK(f.census.ratio == 2);
        const auto c = builtin_recipe("flow-r6-1");
        CHECK(c.kind == FlowRecipe::Kind::Constrained);
        CHECK(c.variables.size() == c.equations.size());
        CHECK(c.census.one == 1);
        CHECK(c.census.ratio == 6);
        CHECK_THROWS_AS(builtin_recipe("nope"), FormatError);
    }

    TEST_CASE("valid sequential recipe parses") {
        const auto r = recipe_from_json(sequential());
        CHECK(r.steps.size() == 1);
        CHECK(r.coordinate_names() == std::vector<std::string>{"x0", "y0", "x1", "y1", "x2", "y2"});
    }

    TEST_CASE("parent indices must reference earlier discs") {
        auto j = sequential();
        j["steps"][0]["parents"] = {0, 2};
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j["steps"][0]["parents"] = {1, 1};
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
    }

    TEST_CASE("census must match the cell") {
        auto j = sequential();
        j["census"]["one"] = 2;
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
    }

    TEST_CASE("malformed documents") {
        auto j = sequential();
        j["kind"] = "other";
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = sequential();
        j["seeds"][0]["radius"] = "big";
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = sequential();
        j["lattice"]["u"] = {"x7", "0"};
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = sequential();
        j.erase("cell");
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = sequential();
        j["valid_range"] = {0.5, 0.2};
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
    }

    TEST_CASE("constrained systems must be square") {
        auto j = to_json(builtin_recipe("flow-r6-1"));
        j["equations"].erase(j["equations"].size() - 1);
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = to_json(builtin_recipe("flow-r6-1"));
        j["equations"][0] = "z1";
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
        j = to_json(builtin_recipe("flow-r6-1"));
        j["initial_guess"]["values"].erase("x1");
        CHECK_THROWS_AS(recipe_from_json(j), FormatError);
    }

    TEST_CASE("JSON round trip") {
        for (const auto& name : builtin_recipe_names()) {
            const auto j = to_json(builtin_recipe(name));
            CHECK(to_json(recipe_from_json(nlohmann::json::parse(j.dump()))) == j);
        }
    }

    TEST_CASE("recipe files") {
        const std::string path = "discpack_test_recipe.json";
        {
            std::ofstream out(path);
            out << sequential().dump();
        }
        CHECK(load_recipe(path).name == "test");
        CHECK(resolve_recipe(path).name == "test");
        CHECK(resolve_recipe("flow-841-mid").name == "flow-841-mid");
        std::remove(path.c_str());
        CHECK_THROWS_AS(load_recipe(path), FormatError);
        {
            std::ofstream out(path);
            out << "{ not json";
        }
        CHECK_THROWS_AS(load_recipe(path), FormatError);
        std::remove(path.c_str());
    }
}
