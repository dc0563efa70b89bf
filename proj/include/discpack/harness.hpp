#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discpack/bounds.hpp"
#include "discpack/interval.hpp"

namespace discpack {

enum class Verdict { Proven, Unproven };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& text);

/// Decision procedure for "delta(rho) <= delta for every rho in r".
///
/// check must be side-effect free, monotone in delta and anti-monotone in r.
class Certifier {
public:
    virtual ~Certifier() = default;
    virtual std::string name() const = 0;
    virtual Verdict check(const Interval& r, double delta) const = 0;

    /// True when check is certain to fail on every subinterval of r, so the
    /// bisection driver stops splitting. Never affects what gets proven.
    virtual bool refutes(const Interval& r, double delta) const;

    /// Optional cheap first pass: false means check would fail anyway.
    virtual bool has_probe() const { return false; }
    virtual bool probe(const Interval& r, double delta) const;
};

/// Proves max(delta1, blind_bound) <= delta, using the interval enclosure of
/// the Blind bound. Unproven wherever r reaches below 0.6735.
class BlindCertifier : public Certifier {
public:
    std::string name() const override { return "blind"; }
    Verdict check(const Interval& r, double delta) const override;
    bool refutes(const Interval& r, double delta) const override;
};

/// Proves max(delta1, florian_bound) <= delta.
class FlorianCertifier : public Certifier {
public:
    std::string name() const override { return "florian"; }
    Verdict check(const Interval& r, double delta) const override;
    bool refutes(const Interval& r, double delta) const override;
};

/// Test certifier: Proven iff delta >= threshold, whatever r.
class ThresholdCertifier : public Certifier {
public:
    explicit ThresholdCertifier(double threshold) : threshold_(threshold) {}
    std::string name() const override;
    Verdict check(const Interval& r, double delta) const override;
    bool refutes(const Interval& r, double delta) const override;
    double threshold() const { return threshold_; }

private:
    double threshold_;
};

/// "blind", "florian" or "threshold:T". Throws FormatError otherwise.
std::unique_ptr<Certifier> make_certifier(const std::string& text);

inline constexpr double kDefaultDeltaOffset = 1e-6;

/// Dichotomy on delta between an unproven delta_lo and a proven delta_hi,
/// stopping once they are within precision. Returns the final proven value.
///
/// delta_lo defaults to delta1 - 1e-6; delta_hi to the upper end of the
/// Florian bound enclosure over r. Throws InitialBoundsInvalid when delta_hi
/// is not proven or delta_lo is.
double find_delta(const Certifier& c, const Interval& r, double precision,
                  std::optional<double> delta_lo = std::nullopt,
                  std::optional<double> delta_hi = std::nullopt);

struct TraceNode {
    Interval r;
    double delta = 0.0;
    Verdict verdict = Verdict::Unproven;
    std::vector<TraceNode> children;
};

struct ProofTrace {
    enum class Status { Success, DepthExceeded };

    TraceNode root;
    Status status = Status::DepthExceeded;
    std::size_t leaf_count = 0;
    std::size_t node_count = 0;
    double wall_seconds = 0.0;

    bool success() const { return status == Status::Success; }
    /// Leaves in left-to-right order.
    std::vector<const TraceNode*> leaves() const;
};

std::string to_string(ProofTrace::Status s);

inline constexpr int kDefaultMaxDepth = 40;

/// Depth-first, left-first bisection of r until every leaf is proven. The
/// root has depth 1, so max_depth = 1 never splits. Refuted nodes are not
/// split further.
ProofTrace certify_interval(const Certifier& c, const Interval& r, double delta,
                            int max_depth = kDefaultMaxDepth);

/// Nested nodes; wall time is left out so output is deterministic.
nlohmann::json to_json(const ProofTrace& trace);
ProofTrace trace_from_json(const nlohmann::json& j);

struct TraceLeaf {
    Interval r;
    double delta;
    Verdict verdict;
};

/// CSV with header "lo,hi,delta,verdict", one row per leaf.
void write_trace_csv(std::ostream& out, const ProofTrace& trace);
std::vector<TraceLeaf> read_trace_csv(std::istream& in);

struct SweepFailure {
    double r;
    std::string message;
};

struct SweepResult {
    std::vector<BoundSample> samples;
    std::vector<SweepFailure> failures;
};

/// find_delta at each [r, r] of a sorted grid. When the default starting
/// bounds are rejected the point is retried between 0 and 1; points that
/// still fail are recorded and skipped.
SweepResult sweep(const Certifier& c, const std::vector<double>& grid, double precision);

}  // namespace discpack
