#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/optimality.hpp"
#include "essint/params.hpp"

namespace essint {

/// Insertion-ordered JSON: report keys come out in the order they were set.
using Json = nlohmann::ordered_json;

/// Parsed problem document.  The measure space is materialized on load
/// (interval specifications are discretized immediately); the original bytes
/// are kept so reports can carry a content digest of their input.
struct ProblemFile {
    int dimension = 0;

    std::optional<AtomicMeasureSpace> space;
    bool space_from_interval = false;
    double interval_a = 0.0;
    double interval_b = 0.0;
    int interval_nodes = 0;
    QuadratureRule interval_rule = QuadratureRule::Uniform;

    /// Set values aligned with the space's atom order; empty when the
    /// document has no "sets" section.
    std::vector<SetValue> sets;

    std::optional<Objective> objective;

    /// Per-atom scalar constraint functions (inequality systems); aligned
    /// with the atom order, empty when absent.
    std::vector<Objective> constraints;

    Vec point;

    std::optional<PerturbationSchedule> schedule;

    /// Semi-infinite block: polynomial coefficients (ascending powers) for
    /// each coordinate of the constraint gradient a(t) and for the bound b(t).
    bool has_sip = false;
    std::vector<std::vector<double>> sip_a;
    std::vector<double> sip_b;

    Params params;

    std::string raw;  // original document bytes

    /// The sampled multifunction (space + per-atom sets).  ParseError when
    /// either block is missing.
    SampledMultifunction multifunction() const;

    Vec sip_gradient(double t) const;
    double sip_bound(double t) const;
};

/// Parse a problem document; errors are field-addressed ParseError.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// Canonical re-serialization of a parsed problem.  Fixed point of
/// write-then-read: parse(canonical_json(problem_to_json(p))) serializes to
/// the same bytes.
Json problem_to_json(const ProblemFile& p);

/// Canonical text form: insertion-ordered keys, doubles at 17 significant
/// digits, two-space indent, trailing newline.  Byte-stable across runs.
std::string canonical_json(const Json& j);

/// FNV-1a 64-bit content hash as 16 hex digits.
std::string content_digest(const std::string& bytes);

/// Report header shared by all commands: version, command name, input digest.
Json report_skeleton(const std::string& command, const ProblemFile& p);

Json vec_to_json(const Vec& v);
Json mat_to_json(const Mat& M);
Vec vec_from_json(const Json& j);

}  // namespace essint
