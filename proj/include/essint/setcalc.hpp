#pragma once

#include <vector>

#include "essint/geom.hpp"
#include "essint/mspace.hpp"

namespace essint {

/// One cone (possibly a union) per atom of a finite measure space.
class ConeField {
  public:
    ConeField(AtomicMeasureSpace space, std::vector<ConeUnion> cones);

    const AtomicMeasureSpace& space() const { return space_; }
    const ConeUnion& cone(int i) const { return cones_[static_cast<std::size_t>(i)]; }
    int dim() const { return cones_.front().dim(); }
    int size() const { return static_cast<int>(cones_.size()); }

  private:
    AtomicMeasureSpace space_;
    std::vector<ConeUnion> cones_;
};

/// Which atom (and which part / column of that atom's cone) a pooled
/// generator came from.  Lets certificate code split a multiplier vector
/// back into per-atom selections.
struct GeneratorTag {
    int atom;
    int part;
    int col;
};

/// One per-atom part selection, pooled: cone(columns of `generators`).
struct AumannPart {
    Mat generators;
    std::vector<GeneratorTag> tags;  // one per column
};

struct AumannIntegral {
    ConeUnion cone;                  // canonical, pruned union
    std::vector<AumannPart> parts;   // raw selections, for attribution
    bool closure_needed = false;     // finitely generated unions are closed
};

/// Weighted set integral of a cone field over its atomic space.  Strictly
/// positive weights leave each convex cone invariant, so a selection's sum
/// is the cone generated by the pooled per-atom generators; union-valued
/// atoms contribute one part per selection.  Throws SelectionBlowupError
/// past `budget` selections and DimensionTooLargeError when union-valued
/// atoms appear above the enumeration dimension.
AumannIntegral aumann_integral(const ConeField& F, long budget = 1000000);

struct ConeMemberResult {
    bool member = false;
    int part = -1;       // index into AumannIntegral::parts (or ConeUnion parts)
    Vec lambda;          // multipliers over that part's generators
    double residual = 0.0;
};

/// Membership of v in a union of finitely generated cones, with the
/// witnessing multipliers.  residual reports the best part's miss when the
/// answer is negative.
ConeMemberResult cone_member(const Vec& v, const ConeUnion& C, double tol = 1e-8);
ConeMemberResult cone_member(const Vec& v, const AumannIntegral& I, double tol = 1e-8);

/// Split a multiplier vector over a pooled part into per-atom selections
/// x_i with sum_i w_i x_i equal to the represented point.
std::vector<Vec> attribute_selection(const AumannPart& part, const Vec& lambda,
                                     const AtomicMeasureSpace& space, int dim);

}  // namespace essint
