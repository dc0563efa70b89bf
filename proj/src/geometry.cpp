#include "discpack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "discpack/error.hpp"

namespace discpack {

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Disc::Disc(double x, double y, double radius) : x_(x), y_(y), radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("disc requires finite center and radius > 0");
    }
}

FundamentalDomain::FundamentalDomain(Vec2 u, Vec2 v, std::vector<Disc> discs)
    : u_(u), v_(v), discs_(std::move(discs)) {
    if (!(std::abs(cross(u, v)) > 0.0) || !std::isfinite(cross(u, v))) {
        throw DomainError("degenerate lattice: |u x v| must be positive");
    }
}

double FundamentalDomain::area() const { return std::abs(cross(u_, v_)); }

Disc stick(const Disc& d1, const Disc& d2, double r3) {
    if (!(r3 > 0.0)) throw DomainError("stick requires r3 > 0");
    const Vec2 c1 = d1.center();
    const Vec2 axis = d2.center() - c1;
    const double a = norm(axis);
    const double b = d1.radius() + r3;
    const double c = d2.radius() + r3;
    const double slack = 1e-12 * (a + b + c);
    if (a == 0.0 || a > b + c + slack || a < std::abs(b - c) - slack) {
        throw NoSolution("stick: no disc of radius " + to_decimal(r3) +
                         " is tangent to both discs (center distance " + to_decimal(a) + ")");
    }
    // Extended precision so only the final rounding of each coordinate matters.
    using Wide = long double;
    const Wide ax = Wide(d2.x()) - Wide(c1.x);
    const Wide ay = Wide(d2.y()) - Wide(c1.y);
    const Wide wa = std::sqrt(ax * ax + ay * ay);
    const Wide wb = Wide(d1.radius()) + Wide(r3);
    const Wide wc = Wide(d2.radius()) + Wide(r3);
    const Wide t = (wa * wa + (wb - wc) * (wb + wc)) / (2 * wa);
    const Wide h = std::sqrt(std::max(Wide(0), (wb - t) * (wb + t)));
    const Wide p = t / wa;
    const Wide q = h / wa;
    return Disc(static_cast<double>(Wide(c1.x) + (p * ax - q * ay)),
                static_cast<double>(Wide(c1.y) + (p * ay + q * ax)), r3);
}

double density(const FundamentalDomain& d) {
    double covered = 0.0;
    for (const auto& disc : d.discs()) covered += disc.radius() * disc.radius();
    return M_PI * covered / d.area();
}

Interval density_interval(const FundamentalDomain& d) {
    Interval covered(0.0);
    for (const auto& disc : d.discs()) covered += pow(Interval(disc.radius()), 2);
    const Interval area = abs(Interval(d.u().x) * Interval(d.v().y) - Interval(d.u().y) * Interval(d.v().x));
    return pi_interval() * covered / area;
}

std::vector<Violation> validate(const FundamentalDomain& d, double tol) {
    const auto& discs = d.discs();
    std::vector<Violation> out;
    if (discs.empty()) return out;

    double max_r = 0.0;
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -min_x;
    double min_y = min_x;
    double max_y = -min_x;
    for (const auto& disc : discs) {
        max_r = std::max(max_r, disc.radius());
        min_x = std::min(min_x, disc.x());
        max_x = std::max(max_x, disc.x());
        min_y = std::min(min_y, disc.y());
        max_y = std::max(max_y, disc.y());
    }
    // A translate w = m u + n v can matter only if |w| <= spread + 2 max_r, and
    // by Cramer's rule |m| <= |w| |v| / A, |n| <= |w| |u| / A.
    const double reach = std::hypot(max_x - min_x, max_y - min_y) + 2.0 * max_r;
    const double area = d.area();
    const int bound_m = static_cast<int>(std::ceil(reach * norm(d.v()) / area));
    const int bound_n = static_cast<int>(std::ceil(reach * norm(d.u()) / area));

    struct Image {
        std::size_t index;
        int m;
        int n;
        Vec2 c;
    };
    const double bucket = 2.0 * max_r;
    auto key = [bucket](Vec2 p) {
        const auto bx = static_cast<long long>(std::floor(p.x / bucket));
        const auto by = static_cast<long long>(std::floor(p.y / bucket));
        return std::pair{bx, by};
    };
    struct PairHash {
        std::size_t operator()(const std::pair<long long, long long>& k) const {
            return std::hash<long long>()(k.first * 1000003LL ^ k.second);
        }
    };
    std::unordered_map<std::pair<long long, long long>, std::vector<Image>, PairHash> grid;
    for (int m = -bound_m; m <= bound_m; ++m) {
        for (int n = -bound_n; n <= bound_n; ++n) {
            const Vec2 shift = static_cast<double>(m) * d.u() + static_cast<double>(n) * d.v();
            for (std::size_t j = 0; j < discs.size(); ++j) {
                const Vec2 c = discs[j].center() + shift;
                grid[key(c)].push_back({j, m, n, c});
            }
        }
    }

    for (std::size_t i = 0; i < discs.size(); ++i) {
        const Vec2 ci = discs[i].center();
        const auto [bx, by] = key(ci);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find({bx + dx, by + dy});
                if (it == grid.end()) continue;
                for (const auto& img : it->second) {
                    const bool canonical =
                        img.index > i ||
                        (img.index == i && (img.m > 0 || (img.m == 0 && img.n > 0)));
                    if (!canonical) continue;
                    const double dist = norm(img.c - ci);
                    const double required = discs[i].radius() + discs[img.index].radius();
                    if (dist < required - tol) {
                        out.push_back({i, img.index, img.m, img.n, dist, required});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.i, a.j, a.m, a.n) < std::tie(b.i, b.j, b.m, b.n);
    });
    return out;
}

FundamentalDomain scaled(const FundamentalDomain& d, double factor) {
    if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
    std::vector<Disc> discs;
    discs.reserve(d.discs().size());
    for (const auto& disc : d.discs()) {
        discs.emplace_back(factor * disc.x(), factor * disc.y(), factor * disc.radius());
    }
    return FundamentalDomain(factor * d.u(), factor * d.v(), std::move(discs));
}

FundamentalDomain with_radius_replaced(const FundamentalDomain& d, double from, double to) {
    std::vector<Disc> discs;
    discs.reserve(d.discs().size());
    for (const auto& disc : d.discs()) {
        discs.emplace_back(disc.x(), disc.y(), disc.radius() == from ? to : disc.radius());
    }
    return FundamentalDomain(d.u(), d.v(), std::move(discs));
}

FundamentalDomain hexagonal_domain() {
    return FundamentalDomain({2.0, 0.0}, {1.0, std::sqrt(3.0)}, {Disc(0.0, 0.0, 1.0)});
}

nlohmann::json to_json(const FundamentalDomain& d) {
    nlohmann::json discs = nlohmann::json::array();
    for (const auto& disc : d.discs()) discs.push_back({disc.x(), disc.y(), disc.radius()});
    return {{"u", {d.u().x, d.u().y}}, {"v", {d.v().x, d.v().y}}, {"discs", discs}};
}

FundamentalDomain domain_from_json(const nlohmann::json& j) {
    try {
        const auto vec = [](const nlohmann::json& a) {
            if (!a.is_array() || a.size() != 2) throw FormatError("lattice vector must have 2 entries");
            return Vec2{a[0].get<double>(), a[1].get<double>()};
        };
        std::vector<Disc> discs;
        for (const auto& item : j.at("discs")) {
            if (!item.is_array() || item.size() != 3) throw FormatError("disc must be [x, y, r]");
            discs.emplace_back(item[0].get<double>(), item[1].get<double>(), item[2].get<double>());
        }
        return FundamentalDomain(vec(j.at("u")), vec(j.at("v")), std::move(discs));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("fundamental domain JSON: ") + e.what());
    }
}

}  // namespace discpack
