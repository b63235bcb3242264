#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "essint/params.hpp"

namespace essint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Closed convex polyhedron {x : A x <= b}.  Zero rows mean the whole space.
/// Emptiness is decided once by LP at construction and cached.
class Polyhedron {
  public:
    Polyhedron(Mat A, Vec b);
    const Mat& A() const { return A_; }
    const Vec& b() const { return b_; }
    int dim() const { return static_cast<int>(A_.cols()); }
    int rows() const { return static_cast<int>(A_.rows()); }
    bool is_empty() const { return empty_; }
    bool contains(const Vec& x, double tol = 1e-8) const;
    std::vector<int> active_rows(const Vec& x, double active_tol = 1e-6) const;
    Polyhedron shifted(const Vec& a) const;  // {x : x + a in this}

  private:
    Mat A_;
    Vec b_;
    bool empty_;
};

/// Finite union of nonempty polyhedra.  Empty pieces are stripped at
/// construction; a SetValue is never empty.
class SetValue {
  public:
    explicit SetValue(std::vector<Polyhedron> pieces);
    const std::vector<Polyhedron>& pieces() const { return pieces_; }
    int dim() const { return pieces_.front().dim(); }
    bool contains(const Vec& x, double tol = 1e-8) const;
    bool is_convex() const { return pieces_.size() == 1; }
    SetValue shifted(const Vec& a) const;

  private:
    std::vector<Polyhedron> pieces_;
};

/// Finitely generated cone {G lambda : lambda >= 0}; generators are columns.
/// Zero columns mean the trivial cone {0}.
class FinCone {
  public:
    explicit FinCone(Mat generators);
    static FinCone trivial(int dim) { return FinCone(Mat(dim, 0)); }
    const Mat& generators() const { return G_; }
    int dim() const { return static_cast<int>(G_.rows()); }
    int count() const { return static_cast<int>(G_.cols()); }
    bool is_trivial(double tol = 1e-12) const;
    bool contains(const Vec& v, double tol = 1e-8) const;
    /// Nonnegative multipliers expressing v over the generators, if any.
    std::optional<Vec> member_multipliers(const Vec& v, double tol = 1e-8) const;

  private:
    Mat G_;
};

/// Polyhedral cone in halfspace form {v : A v <= 0}.  Zero rows mean the
/// whole space.
class HCone {
  public:
    explicit HCone(Mat A);
    static HCone full(int dim) { return HCone(Mat(0, dim)); }
    const Mat& A() const { return A_; }
    int dim() const { return static_cast<int>(A_.cols()); }
    bool contains(const Vec& v, double tol = 1e-8) const;

  private:
    Mat A_;
};

/// Finite union of finitely generated cones.  Every part contains 0.
class ConeUnion {
  public:
    explicit ConeUnion(std::vector<FinCone> parts);
    const std::vector<FinCone>& parts() const { return parts_; }
    int dim() const { return parts_.front().dim(); }
    bool contains(const Vec& v, double tol = 1e-8) const;
    bool is_convex() const { return parts_.size() == 1; }
    /// All generators pooled into one matrix (columns).
    Mat pooled_generators() const;

  private:
    std::vector<FinCone> parts_;
};

// ---- projections ----------------------------------------------------------

struct ProjectionResult {
    Vec point;
    Vec multipliers;      // one per constraint row, >= 0
    double kkt_residual;  // || 2(x - z) + A' mult || and feasibility terms
};

/// Euclidean projection onto a polyhedron.  Throws EmptySetError.
ProjectionResult project_detailed(const Polyhedron& P, const Vec& z);
Vec project(const Polyhedron& P, const Vec& z);
Vec project(const SetValue& S, const Vec& z);
double distance(const Polyhedron& P, const Vec& z);  // +inf when empty
double distance(const SetValue& S, const Vec& z);

// ---- representation conversions and polarity ------------------------------

/// V-representation of {v : A v <= 0} by brute-force ray enumeration.
/// Requires ambient dimension <= kMaxEnumerationDim.
FinCone rays(const HCone& H);
/// H-representation of a finitely generated cone (same set).  Requires
/// ambient dimension <= kMaxEnumerationDim.
HCone halfspaces(const FinCone& C);
/// Polar cone {v : <g, v> <= 0 for all generators g}; exact, any dimension.
HCone polar(const FinCone& C);
/// Inverse of `polar`: the cone whose polar is H (generators = rows of A);
/// exact, any dimension.
FinCone polar_inv(const HCone& H);

// ---- tangent and normal cones ---------------------------------------------

/// Contingent cone of a union of polyhedra at a member point, as a union of
/// finitely generated cones (one per piece containing x).  Throws
/// NotMemberError; uses ray enumeration, dimension <= kMaxEnumerationDim.
ConeUnion tangent_cone(const SetValue& S, const Vec& x,
                       double active_tol = 1e-6, double tol = 1e-8);

/// Dual of the tangent cone, in halfspace form: rows are the tangent
/// generators.  Membership tests against it are exact inner products.
HCone regular_normal_cone(const SetValue& S, const Vec& x,
                          double active_tol = 1e-6, double tol = 1e-8);

/// Membership in the regular normal cone decided by per-piece multiplier
/// LPs only (no enumeration, any ambient dimension).
bool regular_normal_member(const SetValue& S, const Vec& x, const Vec& v,
                           double active_tol = 1e-6, double tol = 1e-8);

/// Euclidean distance from v to the regular normal cone (enumerated form).
double regular_normal_distance(const SetValue& S, const Vec& x, const Vec& v,
                               double active_tol = 1e-6, double tol = 1e-8);

/// One feasible local activity pattern near a point: which pieces a nearby
/// realizing point stays inside, and exactly which rows it keeps active.
struct ActivityPattern {
    std::vector<int> in_pieces;            // piece indices kept (ascending)
    std::vector<std::vector<int>> active;  // active row subset per kept piece
};

/// Enumerate patterns realizable arbitrarily near x (LP probe in the
/// direction variable with strict-slack delta).  Any ambient dimension.
std::vector<ActivityPattern> admissible_patterns(const SetValue& S, const Vec& x,
                                                 double delta = 1e-6,
                                                 double active_tol = 1e-6,
                                                 double tol = 1e-8,
                                                 long budget = 1000000);

/// Regular normal cone of the stratum a pattern describes, via multiplier
/// LPs (any dimension).
bool pattern_normal_member(const SetValue& S, const ActivityPattern& pat,
                           const Vec& v, double tol = 1e-8);

/// Same cone with explicit generators (dimension <= kMaxEnumerationDim).
FinCone pattern_normal_cone(const SetValue& S, const ActivityPattern& pat);

/// Limiting normal cone by activity-pattern enumeration, as a pruned union.
/// Dimension <= kMaxEnumerationDim.
ConeUnion limiting_normal_cone(const SetValue& S, const Vec& x,
                               double delta = 1e-6, double active_tol = 1e-6,
                               double tol = 1e-8, long budget = 1000000);

/// Membership in the limiting normal cone without enumeration of rays
/// (patterns only); any ambient dimension.
bool limiting_normal_member(const SetValue& S, const Vec& x, const Vec& v,
                            double delta = 1e-6, double active_tol = 1e-6,
                            double tol = 1e-8, long budget = 1000000);

// ---- small utilities -------------------------------------------------------

/// Strictly positive combination test: v in ri(cone(G)).
bool in_relative_interior(const Vec& v, const FinCone& C, double tol = 1e-9);
/// The all-ones combination of generators, a canonical ri point.
Vec relative_interior_point(const FinCone& C);

/// Subset test P <= Q decided row-by-row with support LPs.
bool polyhedron_subset(const Polyhedron& P, const Polyhedron& Q, double tol = 1e-8);

/// Canonical form: normalized (sup-norm 1), deduplicated, sorted columns.
Mat canonical_generators(const Mat& G);

/// Drop generators expressible from the remaining ones; canonical output.
FinCone reduce_generators(const FinCone& C);

/// Canonicalize parts and drop any part contained in another (deterministic).
std::vector<FinCone> prune_parts(std::vector<FinCone> parts);

/// Intersection of finitely generated cones via their halfspace forms.
/// Dimension <= kMaxEnumerationDim when more than one cone is passed.
FinCone intersect_cones(const std::vector<FinCone>& cones);

/// True when every piece passes through the origin scale-free (b = 0).
bool is_conic(const SetValue& S, double tol = 1e-12);

}  // namespace essint
