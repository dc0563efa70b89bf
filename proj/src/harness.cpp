#include "discpack/harness.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>

#include "discpack/error.hpp"
#include "discpack/polynomial.hpp"

namespace discpack {

std::string to_string(Verdict v) { return v == Verdict::Proven ? "proven" : "unproven"; }

Verdict verdict_from_string(const std::string& text) {
    if (text == "proven") return Verdict::Proven;
    if (text == "unproven") return Verdict::Unproven;
    throw FormatError("unknown verdict '" + text + "'");
}

bool Certifier::refutes(const Interval&, double) const { return false; }
bool Certifier::probe(const Interval&, double) const { return true; }

Verdict BlindCertifier::check(const Interval& r, double delta) const {
    if (!(r.lo() >= kBlindThreshold && r.hi() <= 1.0) || delta < delta1()) return Verdict::Unproven;
    return blind_bound(r).hi() <= delta ? Verdict::Proven : Verdict::Unproven;
}

bool BlindCertifier::refutes(const Interval& r, double delta) const {
    if (delta < delta1() || r.hi() < kBlindThreshold || r.lo() > 1.0) return true;
    // The bound decreases in r, so its smallest value sits at r.hi.
    if (r.hi() > 1.0) return false;
    return blind_bound(Interval(r.hi())).lo() > delta;
}

Verdict FlorianCertifier::check(const Interval& r, double delta) const {
    if (!(r.lo() > 0.0 && r.hi() <= 1.0) || delta < delta1()) return Verdict::Unproven;
    return florian_bound(r).hi() <= delta ? Verdict::Proven : Verdict::Unproven;
}

bool FlorianCertifier::refutes(const Interval& r, double delta) const {
    if (delta < delta1() || r.hi() <= 0.0 || r.lo() > 1.0) return true;
    if (r.hi() > 1.0) return false;
    return florian_bound(Interval(r.hi())).lo() > delta;
}

std::string ThresholdCertifier::name() const { return "threshold:" + to_decimal(threshold_); }

Verdict ThresholdCertifier::check(const Interval&, double delta) const {
    return delta >= threshold_ ? Verdict::Proven : Verdict::Unproven;
}

bool ThresholdCertifier::refutes(const Interval&, double delta) const { return delta < threshold_; }

std::unique_ptr<Certifier> make_certifier(const std::string& text) {
    if (text == "blind") return std::make_unique<BlindCertifier>();
    if (text == "florian") return std::make_unique<FlorianCertifier>();
    const std::string prefix = "threshold:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string value = text.substr(prefix.size());
        std::size_t used = 0;
        double t = 0.0;
        try {
            t = std::stod(value, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != value.size() || !std::isfinite(t)) {
            throw FormatError("bad threshold in certifier '" + text + "'");
        }
        return std::make_unique<ThresholdCertifier>(t);
    }
    throw FormatError("unknown certifier '" + text + "' (expected blind, florian or threshold:T)");
}

namespace {

Verdict run_check(const Certifier& c, const Interval& r, double delta) {
    if (c.has_probe() && !c.probe(r, delta)) return Verdict::Unproven;
    return c.check(r, delta);
}

}  // namespace

double find_delta(const Certifier& c, const Interval& r, double precision, std::optional<double> delta_lo,
                  std::optional<double> delta_hi) {
    if (!(precision > 0.0)) throw DomainError("find_delta requires precision > 0");
    double lo = delta_lo.value_or(delta1() - kDefaultDeltaOffset);
    double hi = delta_hi ? *delta_hi : florian_bound(r).hi();
    if (!(lo < hi)) {
        throw InitialBoundsInvalid("find_delta needs delta_lo < delta_hi, got " + to_decimal(lo) + " and " +
                                   to_decimal(hi));
    }
    if (c.check(r, hi) != Verdict::Proven) {
        throw InitialBoundsInvalid(c.name() + " cannot prove delta_hi=" + to_decimal(hi));
    }
    if (c.check(r, lo) != Verdict::Unproven) {
        throw InitialBoundsInvalid(c.name() + " already proves delta_lo=" + to_decimal(lo));
    }
    while (hi - lo > precision) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        (run_check(c, r, mid) == Verdict::Proven ? hi : lo) = mid;
    }
    return hi;
}

std::string to_string(ProofTrace::Status s) {
    return s == ProofTrace::Status::Success ? "success" : "depth_exceeded";
}

namespace {

void collect_leaves(const TraceNode& node, std::vector<const TraceNode*>& out) {
    if (node.children.empty()) {
        out.push_back(&node);
        return;
    }
    for (const auto& child : node.children) collect_leaves(child, out);
}

struct Bisector {
    const Certifier& certifier;
    double delta;
    int max_depth;
    std::size_t nodes = 0;
    std::size_t leaves = 0;

    TraceNode run(const Interval& r, int depth) {
        ++nodes;
        TraceNode node{r, delta, run_check(certifier, r, delta), {}};
        const bool splittable = depth < max_depth && !r.is_point() && r.lo() < r.mid() && r.mid() < r.hi();
        if (node.verdict == Verdict::Proven || !splittable || certifier.refutes(r, delta)) {
            ++leaves;
            return node;
        }
        const auto [left, right] = r.bisect();
        node.children.push_back(run(left, depth + 1));
        node.children.push_back(run(right, depth + 1));
        const bool all = std::all_of(node.children.begin(), node.children.end(),
                                     [](const TraceNode& n) { return n.verdict == Verdict::Proven; });
        node.verdict = all ? Verdict::Proven : Verdict::Unproven;
        return node;
    }
};

}  // namespace

std::vector<const TraceNode*> ProofTrace::leaves() const {
    std::vector<const TraceNode*> out;
    collect_leaves(root, out);
    return out;
}

ProofTrace certify_interval(const Certifier& c, const Interval& r, double delta, int max_depth) {
    if (max_depth < 1) throw DomainError("certify_interval requires max_depth >= 1");
    const auto start = std::chrono::steady_clock::now();
    Bisector bisector{c, delta, max_depth};
    ProofTrace trace;
    trace.root = bisector.run(r, 1);
    trace.status = trace.root.verdict == Verdict::Proven ? ProofTrace::Status::Success
                                                         : ProofTrace::Status::DepthExceeded;
    trace.leaf_count = bisector.leaves;
    trace.node_count = bisector.nodes;
    trace.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return trace;
}

namespace {

nlohmann::json node_to_json(const TraceNode& node) {
    nlohmann::json j{{"interval", to_json(node.r)}, {"delta", to_decimal(node.delta)},
                     {"verdict", to_string(node.verdict)}};
    if (!node.children.empty()) {
        j["children"] = nlohmann::json::array();
        for (const auto& child : node.children) j["children"].push_back(node_to_json(child));
    }
    return j;
}

TraceNode node_from_json(const nlohmann::json& j, std::size_t& nodes, std::size_t& leaves) {
    ++nodes;
    TraceNode node{interval_from_json(j.at("interval")), std::stod(j.at("delta").get<std::string>()),
                   verdict_from_string(j.at("verdict").get<std::string>()), {}};
    if (j.contains("children")) {
        for (const auto& child : j.at("children")) node.children.push_back(node_from_json(child, nodes, leaves));
    } else {
        ++leaves;
    }
    return node;
}

}  // namespace

nlohmann::json to_json(const ProofTrace& trace) {
    return {{"status", to_string(trace.status)},
            {"leaves", trace.leaf_count},
            {"nodes", trace.node_count},
            {"root", node_to_json(trace.root)}};
}

ProofTrace trace_from_json(const nlohmann::json& j) {
    try {
        ProofTrace trace;
        trace.root = node_from_json(j.at("root"), trace.node_count, trace.leaf_count);
        const auto status = j.at("status").get<std::string>();
        if (status == "success") {
            trace.status = ProofTrace::Status::Success;
        } else if (status == "depth_exceeded") {
            trace.status = ProofTrace::Status::DepthExceeded;
        } else {
            throw FormatError("unknown trace status '" + status + "'");
        }
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("proof trace JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("proof trace JSON: ") + e.what());
    }
}

void write_trace_csv(std::ostream& out, const ProofTrace& trace) {
    out << "lo,hi,delta,verdict\n";
    for (const auto* leaf : trace.leaves()) {
        out << to_decimal(leaf->r.lo()) << ',' << to_decimal(leaf->r.hi()) << ',' << to_decimal(leaf->delta)
            << ',' << to_string(leaf->verdict) << '\n';
    }
}

std::vector<TraceLeaf> read_trace_csv(std::istream& in) {
    std::vector<TraceLeaf> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (line_no == 1 && line == "lo,hi,delta,verdict")) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
            fields.push_back(line.substr(start, pos - start));
        }
        fields.push_back(line.substr(start));
        if (fields.size() != 4) throw FormatError("trace line " + std::to_string(line_no) + ": expected 4 fields");
        try {
            out.push_back({Interval(std::stod(fields[0]), std::stod(fields[1])), std::stod(fields[2]),
                           verdict_from_string(fields[3])});
        } catch (const std::logic_error&) {
            throw FormatError("trace line " + std::to_string(line_no) + ": not a number");
        } catch (const DomainError& e) {
            throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

SweepResult sweep(const Certifier& c, const std::vector<double>& grid, double precision) {
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("sweep grid must be sorted");
    SweepResult result;
    for (double r : grid) {
        try {
            const Interval point(r);
            double value = 0.0;
            try {
                value = find_delta(c, point, precision);
            } catch (const InitialBoundsInvalid&) {
                value = find_delta(c, point, precision, 0.0, 1.0);
            }
            result.samples.emplace_back(r, value);
        } catch (const Error& e) {
            result.failures.push_back({r, e.what()});
        }
    }
    return result;
}

}  // namespace discpack
