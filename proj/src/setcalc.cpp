#include "essint/setcalc.hpp"

#include "essint/errors.hpp"
#include "essint/nnls.hpp"
#include "essint/params.hpp"

namespace essint {

ConeField::ConeField(AtomicMeasureSpace space, std::vector<ConeUnion> cones)
    : space_(std::move(space)), cones_(std::move(cones)) {
    if (static_cast<int>(cones_.size()) != space_.size())
        throw Error("cone field: one cone per atom required");
    for (const auto& c : cones_)
        if (c.dim() != cones_.front().dim())
            throw Error("cone field: mixed ambient dimensions");
}

AumannIntegral aumann_integral(const ConeField& F, long budget) {
    const int m = F.size();
    const int n = F.dim();
    bool union_valued = false;
    double combos = 1.0;
    for (int i = 0; i < m; ++i) {
        combos *= static_cast<double>(F.cone(i).parts().size());
        if (F.cone(i).parts().size() > 1) union_valued = true;
    }
    if (union_valued && n > kMaxEnumerationDim)
        throw DimensionTooLargeError("set integral: union-valued atoms above the enumeration dimension");
    if (combos > static_cast<double>(budget))
        throw SelectionBlowupError("set integral: selection budget exceeded");

    std::vector<AumannPart> parts;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
        AumannPart part;
        int cols = 0;
        for (int i = 0; i < m; ++i)
            cols += F.cone(i).parts()[pick[static_cast<std::size_t>(i)]].count();
        part.generators = Mat(n, cols);
        int at = 0;
        for (int i = 0; i < m; ++i) {
            const FinCone& c = F.cone(i).parts()[pick[static_cast<std::size_t>(i)]];
            for (int j = 0; j < c.count(); ++j) {
                part.generators.col(at) = c.generators().col(j);
                part.tags.push_back({i, static_cast<int>(pick[static_cast<std::size_t>(i)]), j});
                ++at;
            }
        }
        parts.push_back(std::move(part));
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == F.cone(static_cast<int>(p)).parts().size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
    std::vector<FinCone> cones;
    cones.reserve(parts.size());
    for (const auto& part : parts) cones.push_back(FinCone(part.generators));
    return AumannIntegral{ConeUnion(prune_parts(std::move(cones))), std::move(parts), false};
}

namespace {

ConeMemberResult member_over_parts(const Vec& v, const std::vector<Mat>& gens, double tol) {
    ConeMemberResult best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int p = 0; p < static_cast<int>(gens.size()); ++p) {
        const Mat& G = gens[static_cast<std::size_t>(p)];
        double res;
        Vec lam;
        if (G.cols() == 0) {
            res = v.norm();
            lam = Vec::Zero(0);
        } else {
            NNLSResult r = solve_nnls(G, v);
            res = r.residual_norm;
            lam = r.x;
        }
        if (res < best.residual - 1e-15) {
            best.residual = res;
            best.part = p;
            best.lambda = lam;
        }
        if (res <= tol) {
            best.member = true;
            best.residual = res;
            best.part = p;
            best.lambda = lam;
            return best;
        }
    }
    return best;
}

}  // namespace

ConeMemberResult cone_member(const Vec& v, const ConeUnion& C, double tol) {
    std::vector<Mat> gens;
    for (const auto& c : C.parts()) gens.push_back(c.generators());
    return member_over_parts(v, gens, tol);
}

ConeMemberResult cone_member(const Vec& v, const AumannIntegral& I, double tol) {
    std::vector<Mat> gens;
    for (const auto& p : I.parts) gens.push_back(p.generators);
    return member_over_parts(v, gens, tol);
}

std::vector<Vec> attribute_selection(const AumannPart& part, const Vec& lambda,
                                     const AtomicMeasureSpace& space, int dim) {
    if (lambda.size() != part.generators.cols())
        throw Error("attribution: multiplier length mismatch");
    std::vector<Vec> out(static_cast<std::size_t>(space.size()), Vec(Vec::Zero(dim)));
    for (int j = 0; j < part.generators.cols(); ++j) {
        const GeneratorTag& t = part.tags[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(t.atom)] += lambda(j) * part.generators.col(j);
    }
    for (int i = 0; i < space.size(); ++i)
        out[static_cast<std::size_t>(i)] /= space.weight(i);
    return out;
}

}  // namespace essint
