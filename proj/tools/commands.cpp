#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "discpack/bounds.hpp"
#include "discpack/error.hpp"
#include "discpack/flows.hpp"
#include "discpack/harness.hpp"
#include "discpack/ratios.hpp"
#include "discpack/recipe.hpp"

namespace discpack::cli {

namespace {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("--range expects LO:HI, got '" + text + "'");
    Range range;
    try {
        std::size_t used_lo = 0;
        std::size_t used_hi = 0;
        const std::string lo = text.substr(0, colon);
        const std::string hi = text.substr(colon + 1);
        range.lo = std::stod(lo, &used_lo);
        range.hi = std::stod(hi, &used_hi);
        if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw ConfigError("--range expects two numbers LO:HI, got '" + text + "'");
    }
    if (!(range.lo > 0.0 && range.lo <= range.hi && range.hi < 1.0)) {
        throw ConfigError("--range must satisfy 0 < LO <= HI < 1, got '" + text + "'");
    }
    return range;
}

std::vector<double> make_grid(const Range& range, double step) {
    if (!(step > 0.0)) throw ConfigError("--step must be positive");
    std::vector<double> grid;
    const auto count = static_cast<long>(std::floor((range.hi - range.lo) / step + 1e-9));
    for (long k = 0; k <= count; ++k) {
        const double r = std::min(range.hi, range.lo + static_cast<double>(k) * step);
        if (grid.empty() || r > grid.back()) grid.push_back(r);
    }
    if (range.hi - grid.back() <= 1e-9 * step) {
        grid.back() = range.hi;
    } else {
        grid.push_back(range.hi);
    }
    return grid;
}

/// Writes to --out when given, otherwise to the command's output stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct Common {
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--out", common.out_path, "Output file (default: standard output)");
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

nlohmann::json curve_sample_json(double r, double value, CurveTag tag, const std::string& source) {
    return {{"r", r}, {"density", value}, {"tag", to_string(tag)}, {"source", source}};
}

int cmd_ratios(double precision, const Common& common, std::ostream& out) {
    if (!(precision > 0.0)) throw ConfigError("--precision must be positive");
    const auto values = compute_ratios(precision);
    Sink sink(common.out_path, out);
    if (common.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& v : values) {
            j.push_back({{"name", v.name},
                         {"enclosure", to_json(v.enclosure)},
                         {"polynomial", v.polynomial.to_string()},
                         {"coefficients", to_json(v.polynomial)},
                         {"roots_in_unit_interval", v.roots_in_unit}});
        }
        *sink << j.dump(2) << '\n';
    } else {
        *sink << "name,lo,hi,polynomial\n";
        for (const auto& v : values) {
            *sink << v.name << ',' << to_decimal(v.enclosure.lo()) << ',' << to_decimal(v.enclosure.hi()) << ','
                  << v.polynomial.to_string() << '\n';
        }
    }
    return kExitOk;
}

std::vector<FlowRecipe> load_recipes(const std::vector<std::string>& names, std::ostream& err) {
    std::vector<FlowRecipe> recipes;
    bool failed = false;
    for (const auto& name : names) {
        try {
            recipes.push_back(resolve_recipe(name));
        } catch (const Error& e) {
            err << "error: recipe '" << name << "': " << e.what() << '\n';
            failed = true;
        }
    }
    if (failed) throw ConfigError("some recipes failed to load");
    return recipes;
}

int cmd_lower(const std::string& range_text, double step, const std::vector<std::string>& recipe_names,
              const Common& common, std::ostream& out, std::ostream& err) {
    const Range range = parse_range(range_text);
    const auto grid = make_grid(range, step);
    LowerBoundModel model(load_recipes(recipe_names, err));

    nlohmann::json samples = nlohmann::json::array();
    DensityCurve curve;
    for (double r : grid) {
        const auto best = model.at(r);
        curve.add(r, best.value, CurveTag::Lower);
        samples.push_back(curve_sample_json(r, best.value, CurveTag::Lower, best.source));
    }

    nlohmann::json crossings = nlohmann::json::array();
    for (auto& evaluator : model.evaluators()) {
        const auto& valid = evaluator.recipe().valid_range;
        const double lo = std::max(range.lo, valid.lo());
        const double hi = std::min(range.hi, valid.hi());
        if (!(lo < hi)) continue;
        const auto found =
            find_crossings([&evaluator](double r) { return evaluator(r).density; }, delta1(), Interval(lo, hi), 1e-10);
        for (const auto& c : found) {
            err << "crossing " << evaluator.recipe().name << " delta1 [" << to_decimal(c.lo()) << ", "
                << to_decimal(c.hi()) << "]\n";
            crossings.push_back({{"recipe", evaluator.recipe().name}, {"enclosure", to_json(c)}});
        }
    }

    Sink sink(common.out_path, out);
    if (common.format == "json") {
        *sink << nlohmann::json{{"curve", samples}, {"crossings", crossings}}.dump(2) << '\n';
    } else {
        write_curve_csv(*sink, curve);
    }
    return kExitOk;
}

int cmd_upper(const std::string& range_text, double step, double output_step, const std::string& certifier_name,
              double precision, const std::string& samples_path, const Common& common, std::ostream& out,
              std::ostream& err) {
    const Range range = parse_range(range_text);
    if (!(precision > 0.0)) throw ConfigError("--precision must be positive");
    const auto certifier = make_certifier(certifier_name);
    const auto grid = make_grid(range, step);
    const auto dense = make_grid(range, output_step > 0.0 ? output_step : step / 10.0);

    std::vector<BoundSample> samples;
    if (!samples_path.empty()) {
        std::ifstream in(samples_path);
        if (!in) throw ConfigError("cannot open samples file '" + samples_path + "'");
        samples = read_bound_samples(in);
    }
    const auto swept = sweep(*certifier, grid, precision);
    for (const auto& f : swept.failures) err << "sweep failure at r=" << to_decimal(f.r) << ": " << f.message << '\n';
    samples.insert(samples.end(), swept.samples.begin(), swept.samples.end());

    DensityCurve curve;
    nlohmann::json points = nlohmann::json::array();
    for (double r : dense) {
        const auto best = best_upper(r, samples);
        curve.add(r, best.value, CurveTag::Upper);
        points.push_back(curve_sample_json(r, best.value, CurveTag::Upper, to_string(best.source)));
    }

    Sink sink(common.out_path, out);
    if (common.format == "json") {
        nlohmann::json sample_json = nlohmann::json::array();
        for (const auto& s : swept.samples) sample_json.push_back({{"r", s.r()}, {"value", s.value()}});
        nlohmann::json failure_json = nlohmann::json::array();
        for (const auto& f : swept.failures) failure_json.push_back({{"r", f.r}, {"message", f.message}});
        *sink << nlohmann::json{{"certifier", certifier->name()},
                                {"samples", sample_json},
                                {"failures", failure_json},
                                {"curve", points}}
                     .dump(2)
              << '\n';
    } else {
        write_curve_csv(*sink, curve);
    }
    return kExitOk;
}

int cmd_certify(const std::string& range_text, std::optional<double> delta, const std::string& certifier_name,
                int max_depth, const Common& common, std::ostream& out, std::ostream& err) {
    const Range range = parse_range(range_text);
    if (max_depth < 1) throw ConfigError("--max-depth must be at least 1");
    const auto certifier = make_certifier(certifier_name);
    const double target = delta.value_or(delta1());
    const auto trace = certify_interval(*certifier, Interval(range.lo, range.hi), target, max_depth);

    Sink sink(common.out_path, out);
    if (common.format == "json") {
        *sink << to_json(trace).dump(2) << '\n';
    } else {
        write_trace_csv(*sink, trace);
    }

    err << "certify " << certifier->name() << " [" << to_decimal(range.lo) << ", " << to_decimal(range.hi)
        << "] delta=" << to_decimal(target) << ": " << to_string(trace.status) << ", " << trace.leaf_count
        << " leaves, " << trace.wall_seconds << " s\n";
    if (trace.success()) return kExitOk;
    std::size_t failing = 0;
    for (const auto* leaf : trace.leaves()) {
        if (leaf->verdict == Verdict::Proven) continue;
        if (++failing <= 20) {
            err << "unproven leaf [" << to_decimal(leaf->r.lo()) << ", " << to_decimal(leaf->r.hi()) << "]\n";
        }
    }
    if (failing > 20) err << "... " << failing - 20 << " more unproven leaves\n";
    return kExitCertificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on the maximal density of binary disc packings", "discpack"};
    app.require_subcommand(1);

    Common common;

    auto* ratios = app.add_subcommand("ratios", "Isolate the special disc ratios");
    double ratio_precision = 1e-10;
    ratios->add_option("--precision", ratio_precision, "Width of each enclosure")->capture_default_str();
    add_common(ratios, common);

    auto* lower = app.add_subcommand("lower", "Lower bound curve from explicit packings");
    std::string lower_range;
    double lower_step = 1e-3;
    std::vector<std::string> recipe_names;
    lower->add_option("--range", lower_range, "Ratio range LO:HI")->required();
    lower->add_option("--step", lower_step, "Grid step")->capture_default_str();
    lower->add_option("--recipe", recipe_names, "Built-in recipe name or recipe file (repeatable)");
    add_common(lower, common);

    auto* upper = app.add_subcommand("upper", "Upper bound curve from a certifier sweep");
    std::string upper_range;
    double upper_step = 1e-2;
    double output_step = 0.0;
    double upper_precision = 1e-4;
    std::string upper_certifier = "florian";
    std::string samples_path;
    upper->add_option("--range", upper_range, "Ratio range LO:HI")->required();
    upper->add_option("--step", upper_step, "Sweep grid step")->capture_default_str();
    upper->add_option("--output-step", output_step, "Output grid step (default: step/10)");
    upper->add_option("--precision", upper_precision, "Dichotomy precision")->capture_default_str();
    upper->add_option("--certifier", upper_certifier, "blind, florian or threshold:T")->capture_default_str();
    upper->add_option("--samples", samples_path, "Extra proven bounds, CSV r,value");
    add_common(upper, common);

    auto* certify = app.add_subcommand("certify", "Prove a density bound over a ratio interval");
    std::string certify_range;
    std::optional<double> delta;
    std::string certify_certifier = "blind";
    int max_depth = kDefaultMaxDepth;
    certify->add_option("--range", certify_range, "Ratio range LO:HI")->required();
    certify->add_option("--delta", delta, "Density bound to prove (default: delta1)");
    certify->add_option("--certifier", certify_certifier, "blind, florian or threshold:T")->capture_default_str();
    certify->add_option("--max-depth", max_depth, "Maximal bisection depth")->capture_default_str();
    add_common(certify, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*ratios) return cmd_ratios(ratio_precision, common, out);
        if (*lower) return cmd_lower(lower_range, lower_step, recipe_names, common, out, err);
        if (*upper) {
            return cmd_upper(upper_range, upper_step, output_step, upper_certifier, upper_precision, samples_path,
                             common, out, err);
        }
        if (*certify) return cmd_certify(certify_range, delta, certify_certifier, max_depth, common, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitConfigError;
}

}  // namespace discpack::cli
