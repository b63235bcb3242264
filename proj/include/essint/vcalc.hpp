#pragma once

#include <string>
#include <vector>

#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/setcalc.hpp"

namespace essint {

/// Do tangent directions stay inside the set at ball scale?  Exact membership
/// checks at two scales per tangent generator plus seeded random conic
/// combinations (the sampling part is heuristic and documented as such).
bool check_tangential_stability(const SetValue& S, const Vec& xbar, double r,
                                std::uint64_t seed = 42);

/// Two-sided comparison of the tangent cone of the intersection against the
/// intersection of the per-atom tangent cones.
struct ChipReport {
    ConeUnion lhs;                 // tangent cone of the intersection
    ConeUnion rhs;                 // intersection of per-atom tangent cones
    bool holds = false;            // rhs subset lhs (the reverse is automatic)
    std::vector<Vec> witnesses;    // rhs generators missing from lhs
    bool stability_detected = false;  // uniform tangential stability seen
    double stability_radius = 0.0;    // the common radius that worked
    std::uint64_t seed = 42;
};

ChipReport check_chip(const SampledMultifunction& MF, const Vec& xbar,
                      std::uint64_t seed = 42, long budget = 1000000);

/// Normal cone of the intersection versus the set integral of per-atom
/// normal cones, under one of three hypothesis routes.
enum class NormalsMode { ConesAtOrigin, Chip, RegularFamily };

NormalsMode parse_normals_mode(const std::string& name);
std::string normals_mode_name(NormalsMode mode);

struct NormalsReport {
    NormalsMode mode = NormalsMode::Chip;
    AumannIntegral integral;       // set integral of per-atom limiting cones
    ConeUnion direct;              // directly computed cone of the intersection
    bool inclusion_checked = false;  // direct generators lie in the integral
    bool equality_checked = false;   // regular-family mode only: both directions
};

NormalsReport normals_of_intersection(const SampledMultifunction& MF, const Vec& xbar,
                                      NormalsMode mode, long budget = 1000000);

/// Interior points of the regular normal cone of the intersection must lie
/// in the plain (unclosed) integral cone.  Samples strictly interior probes;
/// vacuous when that interior is empty.
struct InteriorProbeReport {
    bool vacuous = false;     // interior empty; nothing to check
    bool all_pass = false;
    int probes = 0;
    double max_residual = 0.0;
    std::vector<Vec> failures;          // probes that missed the integral
    std::vector<Vec> example_selection;  // per-atom selection for the first probe
};

InteriorProbeReport interior_normal_estimate(const SampledMultifunction& MF,
                                             const Vec& xbar, std::uint64_t seed = 42,
                                             long budget = 1000000);

}  // namespace essint
