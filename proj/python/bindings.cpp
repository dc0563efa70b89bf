#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "discpack/bounds.hpp"
#include "discpack/error.hpp"
#include "discpack/flows.hpp"
#include "discpack/harness.hpp"
#include "discpack/ratios.hpp"
#include "discpack/recipe.hpp"

namespace py = pybind11;
using namespace discpack;

namespace {

std::vector<BoundSample> to_samples(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<BoundSample> samples;
    samples.reserve(pairs.size());
    for (const auto& [r, v] : pairs) samples.emplace_back(r, v);
    return samples;
}

std::vector<FlowRecipe> to_recipes(const std::vector<std::string>& names) {
    std::vector<FlowRecipe> recipes;
    for (const auto& n : names) recipes.push_back(resolve_recipe(n));
    return recipes;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bounds on the maximal density of binary disc packings";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<NoSolution>(m, "NoSolution", base.ptr());
    py::register_exception<InvalidPacking>(m, "InvalidPacking", base.ptr());
    py::register_exception<InitialBoundsInvalid>(m, "InitialBoundsInvalid", base.ptr());

    m.def("delta1", [] { return delta1(); });
    m.def("florian_bound", py::overload_cast<double>(&florian_bound), py::arg("r"));
    m.def("blind_bound", py::overload_cast<double>(&blind_bound), py::arg("r"));
    m.def("r_blind", &r_blind);
    m.def("r8", &r8);
    m.def("closed_form_841", &closed_form_841, py::arg("r"));
    m.def("closed_form_r6", &closed_form_r6, py::arg("r"));

    m.def(
        "ratios",
        [](double tol) {
            py::list rows;
            for (const auto& v : compute_ratios(tol)) {
                py::dict row;
                row["name"] = v.name;
                row["lo"] = v.enclosure.lo();
                row["hi"] = v.enclosure.hi();
                row["polynomial"] = v.polynomial.to_string();
                rows.append(row);
            }
            return rows;
        },
        py::arg("tol") = 1e-10);

    m.def("builtin_recipes", &builtin_recipe_names);

    m.def(
        "eval_flow",
        [](const std::string& recipe, double r) {
            const auto result = eval_flow(resolve_recipe(recipe), r);
            return py::make_tuple(result.density, to_json(result.domain).dump());
        },
        py::arg("recipe"), py::arg("r"));

    m.def(
        "interstitial",
        [](double r) {
            const auto result = interstitial(r);
            return py::make_tuple(result.density, to_json(result.domain).dump());
        },
        py::arg("r"));

    m.def(
        "lower_bound",
        [](const std::vector<double>& grid, const std::vector<std::string>& recipes) {
            LowerBoundModel model(to_recipes(recipes));
            std::vector<std::tuple<double, double, std::string>> rows;
            DensityCurve check;
            for (double r : grid) {
                check.add(r, 0.0, CurveTag::Lower);
                const auto best = model.at(r);
                rows.emplace_back(r, best.value, best.source);
            }
            return rows;
        },
        py::arg("grid"), py::arg("recipes") = std::vector<std::string>{});

    m.def(
        "find_delta",
        [](const std::string& certifier, double lo, double hi, double precision) {
            return find_delta(*make_certifier(certifier), Interval(lo, hi), precision);
        },
        py::arg("certifier"), py::arg("lo"), py::arg("hi"), py::arg("precision") = 1e-4);

    m.def(
        "certify",
        [](const std::string& certifier, double lo, double hi, std::optional<double> delta, int max_depth) {
            const auto trace =
                certify_interval(*make_certifier(certifier), Interval(lo, hi), delta.value_or(delta1()), max_depth);
            return to_json(trace).dump();
        },
        py::arg("certifier"), py::arg("lo"), py::arg("hi"), py::arg("delta") = std::nullopt,
        py::arg("max_depth") = kDefaultMaxDepth);

    m.def(
        "sweep",
        [](const std::string& certifier, const std::vector<double>& grid, double precision) {
            const auto result = sweep(*make_certifier(certifier), grid, precision);
            std::vector<std::pair<double, double>> samples;
            for (const auto& s : result.samples) samples.emplace_back(s.r(), s.value());
            std::vector<double> failed;
            for (const auto& f : result.failures) failed.push_back(f.r);
            return py::make_tuple(samples, failed);
        },
        py::arg("certifier"), py::arg("grid"), py::arg("precision") = 1e-4);

    m.def(
        "lipschitz_envelope",
        [](const std::vector<std::pair<double, double>>& samples, double r) {
            return lipschitz_envelope(to_samples(samples), r);
        },
        py::arg("samples"), py::arg("r"));

    m.def(
        "best_upper",
        [](double r, const std::vector<std::pair<double, double>>& samples) {
            const auto best = best_upper(r, to_samples(samples));
            return py::make_tuple(best.value, to_string(best.source));
        },
        py::arg("r"), py::arg("samples") = std::vector<std::pair<double, double>>{});
}
