#include "essint/vcalc.hpp"

#include <algorithm>
#include <cmath>

#include "essint/errors.hpp"
#include "essint/optimality.hpp"
#include "essint/rng.hpp"

namespace essint {

bool check_tangential_stability(const SetValue& S, const Vec& xbar, double r,
                                std::uint64_t seed) {
    if (!S.contains(xbar)) throw NotMemberError("stability: point is not in the set");
    if (!(r > 0.0)) throw BadRangeError("stability: radius must be positive");
    ConeUnion T = tangent_cone(S, xbar);
    for (const FinCone& part : T.parts()) {
        for (int j = 0; j < part.count(); ++j) {
            Vec g = part.generators().col(j);
            double gn = g.norm();
            if (gn <= 1e-12) continue;
            if (!S.contains(xbar + (r / (2.0 * gn)) * g, 1e-8)) return false;
            if (!S.contains(xbar + (r / (2000.0 * gn)) * g, 1e-8)) return false;
        }
    }
    // Heuristic sweep: random conic combinations scaled to lie well inside
    // the ball.  Exact per-generator checks above cover the polyhedral rays.
    Rng rng(seed);
    const int parts = static_cast<int>(T.parts().size());
    for (int probe = 0; probe < 100; ++probe) {
        const FinCone& part =
            T.parts()[static_cast<std::size_t>(std::min<int>(parts - 1,
                static_cast<int>(rng.uniform() * parts)))];
        if (part.count() == 0) continue;
        Vec v = Vec::Zero(S.dim());
        for (int j = 0; j < part.count(); ++j) v += rng.uniform() * part.generators().col(j);
        double vn = v.norm();
        if (vn <= 1e-12) continue;
        double rho = rng.uniform() * r / 2.0;
        if (!S.contains(xbar + (rho / vn) * v, 1e-8)) return false;
    }
    return true;
}

namespace {

SetValue intersection_or_throw(const SampledMultifunction& MF, const Vec& xbar,
                               long budget) {
    IntersectionResult inter = essential_intersection(MF, budget);
    if (inter.empty() || !inter.value->contains(xbar))
        throw NotMemberError("intersection: base point is not in every value");
    return *inter.value;
}

// Intersection of the per-atom cone unions, distributing over part choices.
ConeUnion intersect_union_family(const std::vector<ConeUnion>& family, long budget) {
    double combos = 1.0;
    for (const auto& u : family) combos *= static_cast<double>(u.parts().size());
    if (combos > static_cast<double>(budget))
        throw SelectionBlowupError("cone intersection: part-selection budget exceeded");
    std::vector<FinCone> parts;
    std::vector<std::size_t> pick(family.size(), 0);
    while (true) {
        std::vector<FinCone> chosen;
        chosen.reserve(family.size());
        for (std::size_t i = 0; i < family.size(); ++i)
            chosen.push_back(family[i].parts()[pick[i]]);
        parts.push_back(intersect_cones(chosen));
        std::size_t p = 0;
        while (p < pick.size() && ++pick[p] == family[p].parts().size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
    return ConeUnion(prune_parts(std::move(parts)));
}

}  // namespace

ChipReport check_chip(const SampledMultifunction& MF, const Vec& xbar,
                      std::uint64_t seed, long budget) {
    SetValue inter = intersection_or_throw(MF, xbar, budget);
    ConeUnion lhs = tangent_cone(inter, xbar);
    std::vector<ConeUnion> atom_tangents;
    for (int i = 0; i < MF.space().size(); ++i)
        atom_tangents.push_back(tangent_cone(MF.value(i), xbar));
    ConeUnion rhs = intersect_union_family(atom_tangents, budget);

    std::vector<Vec> witnesses;
    for (const FinCone& part : rhs.parts())
        for (int j = 0; j < part.count(); ++j)
            if (!lhs.contains(part.generators().col(j), 1e-8))
                witnesses.push_back(part.generators().col(j));

    bool stability = false;
    double stability_radius = 0.0;
    for (double rt : {1.0, 0.1}) {
        bool all = true;
        for (int i = 0; i < MF.space().size() && all; ++i)
            all = check_tangential_stability(MF.value(i), xbar, rt, seed);
        if (all) {
            stability = true;
            stability_radius = rt;
            break;
        }
    }
    return ChipReport{std::move(lhs), std::move(rhs), witnesses.empty(),
                      std::move(witnesses), stability, stability_radius, seed};
}

NormalsMode parse_normals_mode(const std::string& name) {
    if (name == "cones_at_origin") return NormalsMode::ConesAtOrigin;
    if (name == "chip") return NormalsMode::Chip;
    if (name == "regular_family") return NormalsMode::RegularFamily;
    throw BadRangeError("unknown normals mode: " + name);
}

std::string normals_mode_name(NormalsMode mode) {
    switch (mode) {
        case NormalsMode::ConesAtOrigin: return "cones_at_origin";
        case NormalsMode::Chip: return "chip";
        default: return "regular_family";
    }
}

namespace {

bool atom_normally_regular(const SetValue& S, const Vec& xbar, long budget) {
    HCone reg = regular_normal_cone(S, xbar);
    ConeUnion lim = limiting_normal_cone(S, xbar, 1e-6, 1e-6, 1e-8, budget);
    for (const FinCone& part : lim.parts())
        for (int j = 0; j < part.count(); ++j)
            if (!reg.contains(part.generators().col(j), 1e-8)) return false;
    return true;
}

}  // namespace

NormalsReport normals_of_intersection(const SampledMultifunction& MF, const Vec& xbar,
                                      NormalsMode mode, long budget) {
    SetValue inter = intersection_or_throw(MF, xbar, budget);

    if (mode == NormalsMode::ConesAtOrigin) {
        for (int i = 0; i < MF.space().size(); ++i)
            if (!is_conic(MF.value(i)))
                throw PreconditionFailedError("normals: values must be cones for this mode");
        if (xbar.lpNorm<Eigen::Infinity>() > 1e-12)
            throw PreconditionFailedError("normals: cone mode evaluates at the origin");
    } else {
        ChipReport chip = check_chip(MF, xbar, 42, budget);
        if (!chip.holds)
            throw PreconditionFailedError("normals: tangent-cone intersection property fails");
        if (mode == NormalsMode::RegularFamily) {
            for (int i = 0; i < MF.space().size(); ++i)
                if (!atom_normally_regular(MF.value(i), xbar, budget))
                    throw PreconditionFailedError("normals: atom " + MF.space().id(i) +
                                                  " is not normally regular");
        }
    }

    std::vector<ConeUnion> atom_normals;
    for (int i = 0; i < MF.space().size(); ++i)
        atom_normals.push_back(limiting_normal_cone(MF.value(i), xbar, 1e-6, 1e-6, 1e-8, budget));
    AumannIntegral integral = aumann_integral(ConeField(MF.space(), atom_normals), budget);

    ConeUnion direct = mode == NormalsMode::ConesAtOrigin
                           ? limiting_normal_cone(inter, xbar, 1e-6, 1e-6, 1e-8, budget)
                           : ConeUnion({rays(regular_normal_cone(inter, xbar))});

    bool inclusion = true;
    for (const FinCone& part : direct.parts())
        for (int j = 0; j < part.count(); ++j)
            if (!cone_member(part.generators().col(j), integral, 1e-6).member)
                inclusion = false;

    bool equality = false;
    if (mode == NormalsMode::RegularFamily) {
        // Reverse inclusion, exact on the halfspace form of the regular cone.
        HCone reg = regular_normal_cone(inter, xbar);
        bool back = true;
        for (const FinCone& part : integral.cone.parts())
            for (int j = 0; j < part.count(); ++j)
                if (!reg.contains(part.generators().col(j), 1e-8)) back = false;
        equality = inclusion && back;
    }
    return NormalsReport{mode, std::move(integral), std::move(direct), inclusion, equality};
}

InteriorProbeReport interior_normal_estimate(const SampledMultifunction& MF,
                                             const Vec& xbar, std::uint64_t seed,
                                             long budget) {
    SetValue inter = intersection_or_throw(MF, xbar, budget);
    bool conic = xbar.lpNorm<Eigen::Infinity>() <= 1e-12;
    for (int i = 0; i < MF.space().size() && conic; ++i) conic = is_conic(MF.value(i));
    if (!conic) {
        ChipReport chip = check_chip(MF, xbar, seed, budget);
        if (!chip.holds)
            throw PreconditionFailedError("interior estimate: tangent-cone intersection property fails");
    }
    NqcReport nqc = check_normal_qualification(MF, xbar, NqcKind::Regular, 1e-3, true,
                                               seed, budget);
    if (!nqc.holds)
        throw PreconditionFailedError("interior estimate: normal qualification fails");

    InteriorProbeReport report;
    FinCone C = rays(regular_normal_cone(inter, xbar));
    const int n = inter.dim();
    bool full_dim = false;
    if (C.count() > 0) {
        Eigen::FullPivLU<Mat> lu(C.generators());
        lu.setThreshold(1e-9);
        full_dim = static_cast<int>(lu.rank()) == n;
    }
    if (!full_dim) {
        report.vacuous = true;
        report.all_pass = true;
        return report;
    }

    std::vector<ConeUnion> atom_normals;
    for (int i = 0; i < MF.space().size(); ++i)
        atom_normals.push_back(limiting_normal_cone(MF.value(i), xbar, 1e-6, 1e-6, 1e-8, budget));
    AumannIntegral integral = aumann_integral(ConeField(MF.space(), atom_normals), budget);

    Rng rng(seed);
    report.probes = 100;
    report.all_pass = true;
    for (int t = 0; t < report.probes; ++t) {
        Vec v = Vec::Zero(n);
        for (int j = 0; j < C.count(); ++j)
            v += rng.uniform(0.5, 1.5) * C.generators().col(j);
        ConeMemberResult res = cone_member(v, integral, 1e-6);
        report.max_residual = std::max(report.max_residual, res.residual);
        if (!res.member) {
            report.all_pass = false;
            report.failures.push_back(v);
        } else if (t == 0) {
            report.example_selection = attribute_selection(
                integral.parts[static_cast<std::size_t>(res.part)], res.lambda,
                MF.space(), n);
        }
    }
    return report;
}

}  // namespace essint
