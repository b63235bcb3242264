#pragma once

#include <cstdint>

namespace essint {

/// Default numeric tolerances.  Feasibility questions (LP residuals, set
/// membership) run at `feas`; activity detection and certificate residuals
/// run at the looser `active`, so borderline-active rows do not flap the
/// combinatorics of an otherwise well-posed instance.
struct Tolerances {
    double feas = 1e-8;    // membership, LP/KKT residuals
    double active = 1e-6;  // activity detection, certificate residuals
    double strict_slack = 1e-6;  // strict-inequality slack in pattern probes
};

struct Params {
    Tolerances tol;
    double radius = 1.0;     // localization ball radius
    double p = 2.0;          // penalty exponent (only p = 2 is implemented)
    std::uint64_t seed = 42; // RNG seed for sampling-based checks
    int max_halvings = 40;   // conic scale halvings before giving up
    long selection_budget = 1000000;  // cross-atom/piece enumeration cap
};

inline constexpr int kMaxEnumerationDim = 4;  // ray/facet enumeration guard
inline constexpr const char* kVersion = "0.1.0";

}  // namespace essint
