#include "discpack/flows.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "discpack/bounds.hpp"
#include "discpack/error.hpp"

namespace discpack {

namespace {

constexpr double kValidateTol = 1e-9;
constexpr double kContinuationStep = 1e-3;
constexpr double kMinStep = 1e-9;
constexpr double kImpliedTol = 1e-8;

std::vector<Expression> bind_all(const std::vector<std::string>& texts,
                                 const std::vector<std::string>& names) {
    std::vector<Expression> out;
    for (const auto& t : texts) out.push_back(Expression::parse(t).bind(names));
    return out;
}

}  // namespace

FlowEvaluator::FlowEvaluator(FlowRecipe recipe) : recipe_(std::move(recipe)) {
    auto names = recipe_.coordinate_names();
    names.push_back("r");
    lattice_ = bind_all({recipe_.lattice_u[0], recipe_.lattice_u[1], recipe_.lattice_v[0],
                         recipe_.lattice_v[1]},
                        names);
    if (recipe_.kind == FlowRecipe::Kind::Constrained) {
        for (const auto& d : recipe_.discs) {
            disc_x_.push_back(Expression::parse(d.x).bind(names));
            disc_y_.push_back(Expression::parse(d.y).bind(names));
        }
        implied_ = bind_all(recipe_.implied_equations, names);
        system_.emplace(recipe_.equations, recipe_.variables, std::vector<std::string>{"r"});
        std::vector<double> guess;
        for (const auto& v : recipe_.variables) guess.push_back(recipe_.initial_guess.at(v));
        cache_.emplace(recipe_.initial_r, std::move(guess));
    }
}

std::vector<double> FlowEvaluator::continue_to(double r) {
    auto it = cache_.lower_bound(r);
    if (it != cache_.end() && it->first == r) return it->second;
    if (it == cache_.end() || (it != cache_.begin() && r - std::prev(it)->first < it->first - r)) {
        --it;
    }
    double current = it->first;
    std::vector<double> x = it->second;
    std::optional<std::pair<double, std::vector<double>>> previous;
    double h = kContinuationStep;

    while (current != r) {
        const double step = std::min(h, std::abs(r - current));
        const double next = r > current ? current + step : current - step;
        std::vector<double> guess = x;
        if (previous) {
            const double t = (next - current) / (current - previous->first);
            for (std::size_t i = 0; i < x.size(); ++i) guess[i] += t * (x[i] - previous->second[i]);
        }
        const double param[] = {next};
        try {
            auto solution = newton_solve(*system_, guess, param);
            previous.emplace(current, std::move(x));
            x = std::move(solution);
            current = next;
            cache_.emplace(current, x);
            h = std::min(kContinuationStep, 2.0 * h);
        } catch (const Error&) {
            h /= 2.0;
            if (h < kMinStep) {
                throw NoSolution("recipe '" + recipe_.name + "': continuation stalled at r=" +
                                 to_decimal(current) + " on the way to r=" + to_decimal(r));
            }
        }
    }
    return x;
}

std::vector<double> FlowEvaluator::solve(double r) {
    if (!system_) throw DomainError("recipe '" + recipe_.name + "' is not constrained");
    if (!recipe_.valid_range.contains(r)) {
        throw DomainError("r=" + to_decimal(r) + " lies outside the valid range of recipe '" +
                          recipe_.name + "'");
    }
    return continue_to(r);
}

std::vector<double> FlowEvaluator::coordinates(double r) {
    if (recipe_.kind == FlowRecipe::Kind::Constrained) return solve(r);
    std::vector<Disc> built;
    for (const auto& s : recipe_.seeds) built.emplace_back(s.x, s.y, radius_for(s.radius, r));
    for (const auto& s : recipe_.steps) {
        built.push_back(stick(built[s.first], built[s.second], radius_for(s.radius, r)));
    }
    std::vector<double> coords;
    for (const auto& d : built) {
        coords.push_back(d.x());
        coords.push_back(d.y());
    }
    return coords;
}

FlowResult FlowEvaluator::operator()(double r) {
    if (!recipe_.valid_range.contains(r)) {
        throw DomainError("r=" + to_decimal(r) + " lies outside the valid range of recipe '" +
                          recipe_.name + "'");
    }
    std::vector<double> values = coordinates(r);
    values.push_back(r);
    const std::span<const double> view(values);

    for (const auto& eq : implied_) {
        const double residual = eq.evaluate(view);
        if (!(std::abs(residual) <= kImpliedTol)) {
            throw NoSolution("recipe '" + recipe_.name + "': implied equation fails at r=" +
                             to_decimal(r) + " (residual " + to_decimal(residual) + ")");
        }
    }

    std::vector<Disc> discs;
    if (recipe_.kind == FlowRecipe::Kind::Sequential) {
        const std::size_t n_seeds = recipe_.seeds.size();
        for (std::size_t i : recipe_.cell) {
            const auto selector =
                i < n_seeds ? recipe_.seeds[i].radius : recipe_.steps[i - n_seeds].radius;
            discs.emplace_back(values[2 * i], values[2 * i + 1], radius_for(selector, r));
        }
    } else {
        for (std::size_t k = 0; k < recipe_.discs.size(); ++k) {
            discs.emplace_back(disc_x_[k].evaluate(view), disc_y_[k].evaluate(view),
                               radius_for(recipe_.discs[k].radius, r));
        }
    }
    FundamentalDomain domain({lattice_[0].evaluate(view), lattice_[1].evaluate(view)},
                             {lattice_[2].evaluate(view), lattice_[3].evaluate(view)},
                             std::move(discs));
    const auto violations = validate(domain, kValidateTol);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw InvalidPacking("recipe '" + recipe_.name + "' at r=" + to_decimal(r) + ": disc " +
                             std::to_string(v.i) + " overlaps disc " + std::to_string(v.j) +
                             " translated by (" + std::to_string(v.m) + ", " + std::to_string(v.n) +
                             ")");
    }
    const double d = density(domain);
    return {std::move(domain), d};
}

FlowResult eval_flow(const FlowRecipe& recipe, double r) { return FlowEvaluator(recipe)(r); }

double closed_form_841(double r) {
    if (!(r > 0.0)) throw DomainError("closed_form_841 requires r > 0");
    return M_PI * (r * r + 1.0) * std::pow(r + 1.0, 4) /
           (16.0 * (r + 2.0) * std::sqrt(r + 2.0) * r * std::sqrt(r));
}

double closed_form_r6(double r) {
    const double inner = 45.0 * r * r - 6.0 * r - 3.0;
    if (inner < 0.0) throw DomainError("closed_form_r6: negative radicand 45r^2-6r-3 at r=" + to_decimal(r));
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double r4 = r2 * r2;
    const double outer = 47.0 * r4 + 84.0 * r3 + 54.0 * r2 + 12.0 * r + 3.0 -
                         (7.0 * r3 + 13.0 * r2 + 9.0 * r + 3.0) * std::sqrt(inner);
    if (outer < 0.0) throw DomainError("closed_form_r6: negative outer radicand at r=" + to_decimal(r));
    return M_PI * (6.0 * r2 + 1.0) * std::sqrt(outer) /
           (std::sqrt(6.0) * (r4 + 12.0 * r2 + 12.0 * r + 3.0));
}

std::vector<Interval> find_crossings(const std::function<double(double)>& f, double level,
                                     const Interval& range, double tol) {
    if (!(tol > 0.0)) throw DomainError("find_crossings requires tol > 0");
    const auto g = [&](double x) -> std::optional<double> {
        try {
            const double v = f(x) - level;
            if (std::isfinite(v)) return v;
        } catch (const Error&) {
        }
        return std::nullopt;
    };
    const auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };

    std::vector<Interval> out;
    const double lo = range.lo();
    const double hi = range.hi();
    const auto n = static_cast<long>(std::ceil((hi - lo) / 1e-3));
    std::optional<std::pair<double, int>> last;
    for (long k = 0; k <= n; ++k) {
        const double x = k == n ? hi : lo + static_cast<double>(k) * 1e-3;
        const auto v = g(x);
        if (!v) continue;
        const int s = sign(*v);
        if (last && last->second != 0) {
            if (s == 0) {
                out.emplace_back(x, x);
            } else if (s != last->second) {
                double a = last->first;
                double b = x;
                while (b - a > tol) {
                    const double m = a + (b - a) / 2.0;
                    if (m <= a || m >= b) break;
                    const auto vm = g(m);
                    if (!vm) break;
                    if (*vm == 0.0) {
                        a = b = m;
                        break;
                    }
                    (sign(*vm) == last->second ? a : b) = m;
                }
                out.emplace_back(a, b);
            }
        }
        last.emplace(x, s);
        if (k == n) break;
    }
    return out;
}

double r8() { return 2.0 / std::sqrt(3.0) - 1.0; }

FlowResult interstitial(double r) {
    if (!(r > 0.0 && r <= r8() + 1e-12)) {
        throw DomainError("interstitial packing requires 0 < r <= 2/sqrt(3)-1, got " + to_decimal(r));
    }
    const double s3 = std::sqrt(3.0);
    const Vec2 vertices[] = {{0.0, 0.0}, {2.0, 0.0}, {1.0, s3}};
    const Vec2 up{1.0, 1.0 / s3};
    const Vec2 down{2.0, 2.0 / s3};
    const double needed = (1.0 + r) * (1.0 - 1e-12);
    const auto inside = [&](Vec2 p) {
        for (int k = 0; k < 3; ++k) {
            const Vec2 a = vertices[k];
            const Vec2 b = vertices[(k + 1) % 3];
            if (cross(b - a, p - a) < 0.0) return false;
        }
        return true;
    };

    std::vector<Disc> discs{Disc(0.0, 0.0, 1.0)};
    std::vector<Vec2> offsets;
    const int reach = static_cast<int>(std::ceil(1.0 / r)) + 1;
    for (int i = -reach; i <= reach; ++i) {
        for (int j = -reach; j <= reach; ++j) {
            const Vec2 offset{2.0 * r * i + r * j, s3 * r * j};
            const Vec2 p = up + offset;
            if (!inside(p)) continue;
            const bool clear = std::all_of(std::begin(vertices), std::end(vertices),
                                           [&](Vec2 v) { return norm(p - v) >= needed; });
            if (clear) offsets.push_back(offset);
        }
    }
    for (const auto& o : offsets) discs.emplace_back(up.x + o.x, up.y + o.y, r);
    for (const auto& o : offsets) discs.emplace_back(down.x - o.x, down.y - o.y, r);

    FundamentalDomain domain({2.0, 0.0}, {1.0, s3}, std::move(discs));
    if (!validate(domain, kValidateTol).empty()) {
        throw InvalidPacking("interstitial packing overlaps at r=" + to_decimal(r));
    }
    const double d = density(domain);
    return {std::move(domain), d};
}

std::string to_string(CurveTag tag) {
    switch (tag) {
        case CurveTag::Lower: return "lower";
        case CurveTag::Upper: return "upper";
        case CurveTag::Analytic: return "analytic";
    }
    return "unknown";
}

CurveTag curve_tag_from_string(const std::string& text) {
    if (text == "lower") return CurveTag::Lower;
    if (text == "upper") return CurveTag::Upper;
    if (text == "analytic") return CurveTag::Analytic;
    throw FormatError("unknown curve tag '" + text + "'");
}

void DensityCurve::add(double r, double value, CurveTag tag) {
    if (!samples_.empty() && !(r > samples_.back().r)) {
        throw DomainError("density curve samples need strictly increasing r");
    }
    samples_.push_back({r, value, tag});
}

void write_curve_csv(std::ostream& out, const DensityCurve& curve) {
    out << "r,density,tag\n";
    for (const auto& s : curve.samples()) {
        out << to_decimal(s.r) << ',' << to_decimal(s.value) << ',' << to_string(s.tag) << '\n';
    }
}

DensityCurve read_curve_csv(std::istream& in) {
    DensityCurve curve;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "r,density,tag") continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw FormatError("curve line " + std::to_string(line_no) + ": expected r,density,tag");
        }
        try {
            curve.add(std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                      curve_tag_from_string(line.substr(c2 + 1)));
        } catch (const std::logic_error&) {
            throw FormatError("curve line " + std::to_string(line_no) + ": not a number");
        } catch (const DomainError& e) {
            throw FormatError("curve line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return curve;
}

LowerBoundModel::LowerBoundModel(std::vector<FlowRecipe> recipes) {
    for (auto& recipe : recipes) evaluators_.emplace_back(std::move(recipe));
}

LowerBound LowerBoundModel::at(double r) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("lower bound requires r in (0, 1)");
    LowerBound best{delta1(), "hexagonal", hexagonal_domain()};
    best.value = density(best.domain);
    if (r <= r8()) {
        auto result = interstitial(r);
        if (result.density > best.value) best = {result.density, "interstitial", std::move(result.domain)};
    }
    for (auto& evaluator : evaluators_) {
        if (!evaluator.recipe().valid_range.contains(r)) continue;
        try {
            auto result = evaluator(r);
            if (result.density > best.value) {
                best = {result.density, evaluator.recipe().name, std::move(result.domain)};
            }
        } catch (const Error&) {
        }
    }
    return best;
}

DensityCurve LowerBoundModel::curve(const std::vector<double>& grid) {
    DensityCurve out;
    for (double r : grid) out.add(r, at(r).value, CurveTag::Lower);
    return out;
}

DensityCurve lower_bound_curve(const std::vector<double>& grid, const std::vector<FlowRecipe>& recipes) {
    return LowerBoundModel(recipes).curve(grid);
}

}  // namespace discpack
