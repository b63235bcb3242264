#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/extremal.hpp"

namespace essint {

/// Piecewise-linear/quadratic cost with an exactly computable subdifferential.
class Objective {
  public:
    enum class Kind { Affine, MaxAffine, Quadratic };

    static Objective affine(Vec c, double d);
    static Objective max_affine(std::vector<Vec> cs, std::vector<double> ds);
    /// Q must be symmetric positive semidefinite (validated).
    static Objective quadratic(Mat Q, Vec c, double d);

    Kind kind() const { return kind_; }
    int dim() const;
    double value(const Vec& x) const;
    bool differentiable() const { return kind_ != Kind::MaxAffine; }
    /// Gradient where it exists; throws NotSupportedError for max_affine.
    Vec gradient(const Vec& x) const;
    /// Vertices spanning the subdifferential polytope at x, as columns.
    /// Capped at 64 vertices (Error beyond).
    Mat subdifferential_vertices(const Vec& x, double active_tol = 1e-8) const;

    const std::vector<Vec>& pieces_c() const { return cs_; }
    const std::vector<double>& pieces_d() const { return ds_; }
    const Mat& quad() const { return Q_; }

  private:
    Objective() = default;
    Kind kind_ = Kind::Affine;
    std::vector<Vec> cs_;
    std::vector<double> ds_;
    Mat Q_;
};

/// Can a nontrivial family of per-atom normals balance to zero?
struct NqcReport {
    bool holds = false;
    bool shortcut_interior = false;  // common-interior-point sufficient condition fired
    std::optional<std::vector<Vec>> violator;  // per-atom selections when it fails
};

enum class NqcKind { Regular, Limiting };

/// Probe-LP search for a zero-sum nontrivial normal selection.  For
/// polyhedral pieces the regular and limiting searches coincide (every
/// nearby regular cone is one of the activity-pattern cones that make up
/// the limiting cone), so `kind` only selects the reported wording;
/// `epsilon` records the neighborhood the regular reading refers to.
NqcReport check_normal_qualification(const SampledMultifunction& MF, const Vec& xbar,
                                     NqcKind kind, double epsilon = 1e-3,
                                     bool use_shortcut = true,
                                     std::uint64_t seed = 42, long budget = 1000000);

/// One per-atom multiplier entry of a stationarity certificate.
struct AtomMultiplier {
    int atom = -1;
    double lambda = 0.0;
    Vec generator;
};

struct Certificate {
    bool certified = false;
    double stationarity_residual = 0.0;
    Vec gstar;                            // the subgradient vertex used
    std::vector<AtomMultiplier> multipliers;
    std::string qualification;            // which hypotheses were verified, text
    bool qualification_passed = false;
    std::vector<std::string> warnings;
    std::string closure_note;             // the finitely-generated-closure caveat
    std::vector<double> density;          // nodal multiplier density (SIP only)
};

/// Stationarity certificate for an expectation-constrained program: find a
/// subgradient vertex and nonnegative per-atom normal multipliers whose
/// weighted sum cancels it.  Routes: cone values at the origin, or CHIP plus
/// normal regularity of the intersection (PreconditionFailedError otherwise).
Certificate stochastic_certificate(const Objective& h, const SampledMultifunction& MF,
                                   const Vec& xbar, long budget = 1000000);

/// Same conclusion for per-atom inequality constraints f_i(x) <= 0: active
/// atoms contribute cone(subdifferential vertices); inactive atoms are
/// forced out.  Throws InfeasibleError / QualificationFailedError.
Certificate inequality_certificate(const std::vector<Objective>& f_atoms,
                                   const Objective& h, const AtomicMeasureSpace& space,
                                   const Vec& xbar);

/// Semi-infinite constraint system <a(t), x> <= b(t) on an interval,
/// discretized by quadrature; finds a nonnegative nodal density canceling
/// the cost gradient.  Two-stage: least-residual then minimum weighted-norm
/// density on the optimal face.
Certificate sip_certificate(const std::function<Vec(double)>& a,
                            const std::function<double(double)>& b,
                            const Objective& h, const Vec& xbar,
                            double t0, double t1, int N, QuadratureRule rule);

/// Outcome of the strict-minimizer sequential alternative.
struct StrictMinResult {
    int branch = 0;                // 1: stationarity data; 2: degenerate duals
    EPWitness witness;             // witness in the augmented (n+1)-space
    // branch 1 payload
    Vec subgradient;               // g in the subdifferential of h at y
    Vec y;                         // where the subgradient was read off
    std::vector<Vec> normals;      // per-atom regular normals eta_i
    double stationarity_residual = 0.0;
    // branch 2 payload
    std::vector<Vec> violator;     // nonzero per-atom duals balancing to ~0
    double violator_balance = 0.0;
    double violator_max_norm = 0.0;
};

/// Run the extremal principle on the epigraphical augmentation of a strict
/// local minimizer and classify the limiting dual.  h must be polyhedral
/// (affine / max_affine).  Strictness is sampled (200 seeded probes) and its
/// failure raises NonoverlapFailedError.
StrictMinResult strict_min_alternative(const Objective& h, const SampledMultifunction& MF,
                                       const Vec& xbar, double r, int k_max = 8,
                                       std::uint64_t seed = 42, long budget = 1000000);

}  // namespace essint
