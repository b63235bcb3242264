#pragma once

#include <vector>

#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/params.hpp"

namespace essint {

/// One dual witness produced by the extremal-principle engine at step k.
struct EPWitness {
    int k = 0;
    std::vector<Vec> xk;     // per-atom selections, xk[i] in the i-th value
    std::vector<Vec> xstar;  // per-atom normals, normalized as a family
    double q_norm = 0.0;     // weighted q-norm of xstar (1 by construction)
    Vec balance;             // sum_i w_i xstar[i]
    double eps_k = 0.0;      // 2 * ||xhat - xbar||
    double phi_value = 0.0;  // penalty value at the minimizer
    Vec xhat;                // penalty minimizer inside the ball
    double u_norm = 0.0;     // weighted q-norm of the unnormalized duals
    double ball_multiplier = 0.0;  // multiplier of the trust-ball constraint
    bool ball_active = false;
};

/// Post-hoc witness audit that re-derives every invariant from geometry
/// primitives alone (no reuse of engine internals).
struct WitnessAudit {
    bool ok = false;
    double normal_residual = 0.0;    // worst per-atom distance to the regular normal cone
    double balance_residual = 0.0;   // stationarity miss (includes the ball term)
    double q_norm_error = 0.0;       // | q_norm - 1 |
    double estimate_slack = 0.0;     // worst violation of ||xk - xbar|| <= 2||a_k|| + eps_k
};

/// For each perturbation step k: does the shifted intersection miss the
/// closed ball B(xbar, r) entirely?  Throws NotMemberError when xbar is not
/// in every value, SelectionBlowupError past the assignment budget.
std::vector<bool> check_local_extremality(const SampledMultifunction& MF, const Vec& xbar,
                                          double r, const PerturbationSchedule& sched,
                                          long budget = 1000000);

/// Does the intersection meet B(xbar, r) in the single point xbar?
/// Exact for polyhedral pieces: per piece-assignment, either the assigned
/// intersection misses the ball or it contains xbar and degenerates to it.
bool check_nonoverlap(const SampledMultifunction& MF, const Vec& xbar, double r,
                      long budget = 1000000);

/// Constructive sequential extremal principle: for each k, minimize the
/// weighted squared-distance penalty over the ball, read off projection
/// selections and normalized duals.  p must be 2 (NotSupportedError
/// otherwise); preconditions are re-checked (PreconditionFailedError) and a
/// vanishing penalty raises DegenerateZeroDualError.
std::vector<EPWitness> sequential_ep(const SampledMultifunction& MF, const Vec& xbar,
                                     double r, const PerturbationSchedule& sched,
                                     double p = 2.0, long budget = 1000000);

/// Single penalty step with an explicit per-atom shift; the work-horse of
/// sequential_ep and conic_ep.  Skips the precondition re-checks.
EPWitness ep_step(const SampledMultifunction& MF, const Vec& xbar, double r,
                  const std::vector<Vec>& a_k, int k, double p = 2.0,
                  long budget = 1000000);

/// Independent invariant audit of a witness (tolerances per the module
/// defaults: membership 1e-6, balance 1e-6, estimate slack 1e-8).
WitnessAudit audit_witness(const SampledMultifunction& MF, const Vec& xbar,
                           const std::vector<Vec>& a_k, const EPWitness& w);

/// Result of the cone-valued (exact, at the origin) extremal principle.
struct ConicEPResult {
    EPWitness witness;            // the stabilized witness
    int halvings = 0;             // index of the accepted scale alpha = 2^(1-k)
    double last_delta = 0.0;      // q-norm change at acceptance
    bool limiting_membership = false;  // per-atom x* in the limiting cone at 0
};

/// Exact extremal principle for cone-valued systems at the origin: scale the
/// base perturbation down dyadically until the normalized witness stabilizes
/// (change <= stab_tol), then certify per-atom limiting-normal membership.
/// Preconditions (cone values, extremality at the origin, nonoverlap) raise
/// PreconditionFailedError; NoStabilizationError after max_halvings.
ConicEPResult conic_ep(const SampledMultifunction& MF, const std::vector<Vec>& a,
                       double p = 2.0, int max_halvings = 40, double stab_tol = 1e-6,
                       long budget = 1000000);

}  // namespace essint
