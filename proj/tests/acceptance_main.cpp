// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
//
//   essint_acceptance <fixtures_dir> <essint_binary>
//
// Exit 0 iff every criterion passes inside its wall-clock budget.  Each
// criterion re-derives its expectations from brute-force oracles or closed
// forms; nothing here reuses engine internals to check the engine.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "essint/errors.hpp"
#include "essint/extremal.hpp"
#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/optimality.hpp"
#include "essint/setcalc.hpp"
#include "essint/vcalc.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

namespace {

using namespace essint;
using fixtures::v1;
using fixtures::v2;

std::string g_fixtures;
std::string g_binary;

#define REQ(cond, msg)      \
    do {                    \
        if (!(cond)) {      \
            *why = (msg);   \
            return false;   \
        }                   \
    } while (0)

AtomicMeasureSpace half_half() { return AtomicMeasureSpace({"a", "b"}, {0.5, 0.5}); }

// ---- 1: sequential principle on a two-cone pair ----------------------------
//
// down-cone / up-cone pair at the origin, perturbations a_k = ((0,1/k), 0).
// Closed form: duals are ((0,1),(0,-1)) for every k.

bool crit_sequential(std::string* why) {
    AtomicMeasureSpace space = half_half();
    std::vector<SetValue> vals{fixtures::down_cone(), fixtures::up_cone()};
    SampledMultifunction MF(space, vals);

    std::vector<std::vector<Vec>> terms;
    for (int k = 1; k <= 20; ++k) terms.push_back({v2(0.0, 1.0 / k), v2(0.0, 0.0)});
    PerturbationSchedule sched(space, terms, 2.0);

    Vec xbar = Vec::Zero(2);
    std::vector<EPWitness> ws = sequential_ep(MF, xbar, 1.0, sched);
    REQ(ws.size() == 20, "expected 20 witnesses");

    for (int k = 0; k < 20; ++k) {
        const EPWitness& w = ws[static_cast<std::size_t>(k)];
        const std::string at = " at step " + std::to_string(k + 1);
        REQ(w.balance.norm() <= 1e-6, "dual balance misses zero" + at);
        REQ(std::abs(w.q_norm - 1.0) <= 1e-6, "reported q-norm is not 1" + at);
        REQ(std::abs(weighted_p_norm(space, w.xstar, 2.0) - 1.0) <= 1e-6,
            "recomputed q-norm is not 1" + at);
        for (int i = 0; i < 2; ++i) {
            REQ(regular_normal_distance(vals[static_cast<std::size_t>(i)], w.xk[static_cast<std::size_t>(i)],
                                        w.xstar[static_cast<std::size_t>(i)]) <= 1e-6,
                "dual escapes the regular normal cone" + at);
            double bound = 2.0 * sched.term(k)[static_cast<std::size_t>(i)].norm() + w.eps_k + 1e-8;
            REQ((w.xk[static_cast<std::size_t>(i)] - xbar).norm() <= bound,
                "selection drifts past the estimate" + at);
        }
        REQ((w.xstar[0] - v2(0.0, 1.0)).norm() <= 1e-6 &&
                (w.xstar[1] - v2(0.0, -1.0)).norm() <= 1e-6,
            "duals differ from the closed form" + at);
    }
    return true;
}

// ---- 2: exact conic principle on dyadic systems -----------------------------
//
// One-dimensional atoms "1".."M" with weights 2^-m; atom 1 carries {x <= 0},
// the rest {x >= 0}, base shift (1, 0, ..., 0).  The stabilized minimizer has
// the closed form xhat = -w_1 alpha / W with W = 1 - 2^-M.

bool crit_conic(std::string* why) {
    Mat Apos(1, 1), Aneg(1, 1);
    Apos << 1.0;
    Aneg << -1.0;
    for (int M : {3, 5, 8}) {
        AtomicMeasureSpace space = dyadic_space(M);
        std::vector<SetValue> vals;
        for (int i = 0; i < M; ++i)
            vals.push_back(SetValue({Polyhedron(i == 0 ? Apos : Aneg, Vec::Zero(1))}));
        SampledMultifunction MF(space, vals);

        std::vector<Vec> base(static_cast<std::size_t>(M), v1(0.0));
        base[0] = v1(1.0);

        ConicEPResult res = conic_ep(MF, base);
        const std::string at = " at M=" + std::to_string(M);
        REQ(res.last_delta <= 1e-6, "no stabilization" + at);
        REQ(res.limiting_membership, "limiting membership not certified" + at);

        const EPWitness& w = res.witness;
        REQ(w.balance.norm() <= 1e-6, "dual balance misses zero" + at);
        REQ(std::abs(w.q_norm - 1.0) <= 1e-6, "q-norm is not 1" + at);
        Vec zero1 = Vec::Zero(1);
        for (int i = 0; i < M; ++i)
            REQ(limiting_normal_member(vals[static_cast<std::size_t>(i)], zero1,
                                       w.xstar[static_cast<std::size_t>(i)]),
                "dual escapes the limiting cone" + at);

        double W = 1.0 - std::ldexp(1.0, -M);
        double alpha = std::ldexp(1.0, 1 - w.k);
        REQ(std::abs(w.xhat(0) - (-0.5 * alpha / W)) <= 1e-9,
            "minimizer differs from the closed form" + at);
    }
    return true;
}

// ---- 3: normal-cone identity on random conic families -----------------------
//
// Values are polars of random finitely generated cones, so every value is a
// convex polyhedral cone and the normal cone of the intersection must equal
// the set integral of the per-atom normal cones, both directions, with no
// qualification hypothesis.

bool crit_identity(std::string* why) {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> Uw(0.2, 1.0);
    std::uniform_int_distribution<int> K2(1, 2), K3(1, 3);

    int trials = 0;
    for (int t = 0; t < 24; ++t) {
        int n = (t % 2 == 0) ? 2 : 3;
        int m = 2 + (t / 2) % 2;

        std::vector<std::string> ids;
        std::vector<double> wts;
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            ids.push_back("a" + std::to_string(i + 1));
            wts.push_back(Uw(gen));
            total += wts.back();
        }
        for (double& w : wts) w /= total;
        AtomicMeasureSpace space(ids, wts);

        std::vector<SetValue> vals;
        for (int i = 0; i < m; ++i) {
            int cols = (n == 2) ? K2(gen) : K3(gen);
            Mat G(n, cols);
            for (int c = 0; c < cols; ++c) {
                Vec g(n);
                do {
                    for (int r = 0; r < n; ++r) g(r) = U(gen);
                } while (g.norm() < 0.3);
                G.col(c) = g;
            }
            vals.push_back(SetValue({Polyhedron(G.transpose(), Vec::Zero(cols))}));
        }
        SampledMultifunction MF(space, vals);
        Vec zero = Vec::Zero(n);

        IntersectionResult inter = essential_intersection(MF);
        const std::string at = " in trial " + std::to_string(t + 1);
        REQ(!inter.empty(), "intersection reported empty" + at);
        REQ(inter.value->contains(zero, 1e-9), "origin missing from the intersection" + at);

        ConeUnion direct = limiting_normal_cone(*inter.value, zero);
        std::vector<ConeUnion> cones;
        for (int i = 0; i < m; ++i)
            cones.push_back(limiting_normal_cone(vals[static_cast<std::size_t>(i)], zero));
        AumannIntegral I = aumann_integral(ConeField(space, cones));

        for (const FinCone& part : direct.parts())
            for (int c = 0; c < part.count(); ++c)
                REQ(cone_member(part.generators().col(c), I, 1e-8).member,
                    "direct generator escapes the integral" + at);

        HCone reg = regular_normal_cone(*inter.value, zero);
        for (const AumannPart& part : I.parts)
            for (int c = 0; c < part.generators.cols(); ++c)
                REQ(reg.contains(part.generators.col(c), 1e-8),
                    "integral generator escapes the direct cone" + at);
        ++trials;
    }
    REQ(trials >= 20, "fewer than 20 trials ran");
    return true;
}

// ---- 4: tangent-intersection property ---------------------------------------

bool crit_chip(std::string* why) {
    AtomicMeasureSpace space = half_half();
    Vec zero = Vec::Zero(2);

    struct Pair {
        const char* name;
        SetValue A, B;
    };
    const Pair conic_pairs[] = {
        {"cone pair", fixtures::down_cone(), fixtures::up_cone()},
        {"quadrant pair", fixtures::half_plane(1.0, 0.0), fixtures::half_plane(0.0, 1.0)},
        {"bowtie pair", fixtures::bowtie_up(), fixtures::bowtie_down()},
    };
    for (const Pair& p : conic_pairs) {
        SampledMultifunction MF(space, {p.A, p.B});
        ChipReport rep = check_chip(MF, zero);
        REQ(rep.holds && rep.witnesses.empty(), std::string("property fails on the ") + p.name);
    }

    for (int N : {5, 11, 21}) {
        AtomicMeasureSpace sp = discretize_interval(0.0, 1.0, N, QuadratureRule::Trapezoid);
        std::vector<SetValue> vals;
        for (int i = 0; i < N; ++i) vals.push_back(fixtures::half_plane(-1.0, sp.node(i) - 0.5));
        SampledMultifunction MF(sp, vals);
        ChipReport rep = check_chip(MF, zero);
        REQ(rep.holds, "property fails on the interval system with N=" + std::to_string(N));
    }

    // The reverse inclusion (intersection tangent inside the per-atom tangent
    // intersection) is automatic; verify it generator by generator, on the
    // adversarial union pairs too.
    const Pair union_pairs[] = {
        {"bowtie/quadrant pair", fixtures::bowtie_up(), fixtures::quadrant()},
        {"bowtie pair", fixtures::bowtie_up(), fixtures::bowtie_down()},
    };
    for (const Pair& p : union_pairs) {
        SampledMultifunction MF(space, {p.A, p.B});
        ChipReport rep = check_chip(MF, zero);
        REQ(rep.holds == rep.witnesses.empty(),
            std::string("witness bookkeeping broken on the ") + p.name);
        for (const FinCone& part : rep.lhs.parts())
            for (int c = 0; c < part.count(); ++c)
                REQ(rep.rhs.contains(part.generators().col(c), 1e-8),
                    std::string("automatic inclusion fails on the ") + p.name);
    }
    return true;
}

// ---- 5: normal qualification probe ------------------------------------------

bool crit_nqc(std::string* why) {
    AtomicMeasureSpace space = half_half();
    Vec zero = Vec::Zero(2);

    std::vector<SetValue> opp{fixtures::half_plane(0.0, 1.0), fixtures::half_plane(0.0, -1.0)};
    SampledMultifunction bad(space, opp);
    for (bool shortcut : {true, false}) {
        NqcReport rep = check_normal_qualification(bad, zero, NqcKind::Regular, 1e-3, shortcut);
        REQ(!rep.holds, "opposite half-planes must fail the qualification");
        REQ(rep.violator.has_value(), "failing probe must return a violator");
        const std::vector<Vec>& sel = *rep.violator;
        REQ(sel.size() == 2, "violator has the wrong arity");
        Vec sum = Vec::Zero(2);
        double max_norm = 0.0;
        for (int i = 0; i < 2; ++i) {
            sum += space.weight(i) * sel[static_cast<std::size_t>(i)];
            max_norm = std::max(max_norm, sel[static_cast<std::size_t>(i)].norm());
            REQ(limiting_normal_member(opp[static_cast<std::size_t>(i)], zero,
                                       sel[static_cast<std::size_t>(i)]),
                "violator entry is not a limiting normal");
        }
        REQ(sum.norm() <= 1e-8, "violator does not balance to zero");
        REQ(max_norm >= 1e-6, "violator is trivial");
    }

    SampledMultifunction indep(space,
                               {fixtures::half_plane(1.0, 0.0), fixtures::half_plane(0.0, 1.0)});
    SampledMultifunction shared(space, {fixtures::half_plane(1.0, 0.0, 1.0),
                                        fixtures::half_plane(0.0, 1.0, 1.0)});
    for (bool shortcut : {true, false}) {
        REQ(check_normal_qualification(indep, zero, NqcKind::Regular, 1e-3, shortcut).holds,
            "independent pair must pass");
        REQ(check_normal_qualification(shared, v2(1.0, 1.0), NqcKind::Limiting, 1e-3, shortcut)
                .holds,
            "common-interior pair must pass");
    }
    return true;
}

// ---- 6: stationarity certificates and dual encodings ------------------------

bool crit_certificates(std::string* why) {
    AtomicMeasureSpace space = half_half();
    Vec xbar = Vec::Zero(2);
    Vec a1 = v2(1.0, 1.0), a2 = v2(1.0, -1.0);
    SampledMultifunction MF(space, {fixtures::half_plane(a1(0), a1(1)),
                                    fixtures::half_plane(a2(0), a2(1))});
    std::vector<Objective> fs{Objective::affine(a1, 0.0), Objective::affine(a2, 0.0)};

    Objective good = Objective::affine(v2(-1.0, 0.0), 0.0);
    Certificate st = stochastic_certificate(good, MF, xbar);
    Certificate iq = inequality_certificate(fs, good, space, xbar);
    REQ(st.certified && st.qualification_passed, "set-valued route refuses the minimizer");
    REQ(iq.certified, "inequality route refuses the minimizer");
    REQ(st.multipliers.size() == 2 && iq.multipliers.size() == 2, "expected one multiplier per atom");
    for (const AtomMultiplier& am : st.multipliers)
        REQ(std::abs(am.lambda - 1.0) <= 1e-6, "set-valued multiplier differs from 1");
    for (const AtomMultiplier& am : iq.multipliers)
        REQ(std::abs(am.lambda - 1.0) <= 1e-6, "inequality multiplier differs from 1");

    Objective badh = Objective::affine(v2(0.0, -1.0), 0.0);
    Certificate str = stochastic_certificate(badh, MF, xbar);
    Certificate iqr = inequality_certificate(fs, badh, space, xbar);
    REQ(!str.certified && str.stationarity_residual >= 0.5, "set-valued route must refuse");
    REQ(!iqr.certified && iqr.stationarity_residual >= 0.5, "inequality route must refuse");

    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto unit = [&]() {
        Vec g(2);
        do {
            g << U(gen), U(gen);
        } while (g.norm() < 0.3);
        g /= g.norm();
        return g;
    };
    for (int t = 0; t < 20; ++t) {
        Vec b1 = unit(), b2 = unit(), c = unit();
        SampledMultifunction MFt(space, {fixtures::half_plane(b1(0), b1(1)),
                                         fixtures::half_plane(b2(0), b2(1))});
        Objective h = Objective::affine(c, 0.0);
        Certificate cs = stochastic_certificate(h, MFt, xbar);
        Certificate ci = inequality_certificate(
            {Objective::affine(b1, 0.0), Objective::affine(b2, 0.0)}, h, space, xbar);
        const std::string at = " in trial " + std::to_string(t + 1);
        REQ(cs.certified == ci.certified, "dual encodings disagree" + at);
        REQ(std::abs(cs.stationarity_residual - ci.stationarity_residual) <= 1e-8,
            "residuals drift between encodings" + at);
    }
    return true;
}

// ---- 7: semi-infinite multiplier density ------------------------------------
//
// a(t) = (-1, t - 1/2), b = 0, cost x_1 at the origin: the flat density 1 is
// the minimum-weighted-norm multiplier at every trapezoid refinement.

bool crit_sip(std::string* why) {
    auto a = [](double t) { return v2(-1.0, t - 0.5); };
    auto b = [](double) { return 0.0; };
    Objective h = Objective::affine(v2(1.0, 0.0), 0.0);
    Vec xbar = Vec::Zero(2);

    double prev = std::numeric_limits<double>::infinity();
    for (int N : {11, 21, 41}) {
        Certificate c = sip_certificate(a, b, h, xbar, 0.0, 1.0, N, QuadratureRule::Trapezoid);
        const std::string at = " at N=" + std::to_string(N);
        REQ(c.certified, "flat-density system refused" + at);
        REQ(c.stationarity_residual <= 1e-10, "residual too large" + at);
        REQ(static_cast<int>(c.density.size()) == N, "density has the wrong length" + at);
        for (double d : c.density)
            REQ(std::abs(d - 1.0) <= 1e-6, "density is not flat" + at);
        REQ(c.stationarity_residual <= prev + 1e-12, "residual increased under refinement" + at);
        prev = c.stationarity_residual;
    }

    auto a_vert = [](double) { return v2(0.0, 1.0); };
    Certificate r = sip_certificate(a_vert, b, h, xbar, 0.0, 1.0, 11, QuadratureRule::Trapezoid);
    REQ(!r.certified, "orthogonal constraint field must be refused");
    REQ(r.stationarity_residual >= 1.0 - 1e-6, "refusal residual below the closed form");
    return true;
}

// ---- 8: strict-minimizer alternative ----------------------------------------

bool crit_strict_min(std::string* why) {
    AtomicMeasureSpace one({"a"}, {1.0});
    Vec zero = Vec::Zero(2);

    SampledMultifunction cone(one, {fixtures::up_cone()});
    StrictMinResult r1 = strict_min_alternative(Objective::affine(v2(0.0, 1.0), 0.0), cone, zero, 1.0);
    REQ(r1.branch == 1, "strict cone case must land in the stationarity branch");
    REQ(r1.stationarity_residual <= 1e-6, "stationarity residual too large");
    REQ((r1.subgradient - v2(0.0, 1.0)).norm() <= 1e-6, "subgradient differs from the cost gradient");

    AtomicMeasureSpace two = half_half();
    SampledMultifunction pair(two, {fixtures::down_cone(), fixtures::up_cone()});
    StrictMinResult r2 = strict_min_alternative(Objective::affine(v2(0.0, 0.0), 0.0), pair, zero, 1.0);
    REQ(r2.branch == 2, "degenerate pair must land in the dual branch");
    REQ(r2.violator_balance <= 1e-6, "violator does not balance");
    REQ(r2.violator_max_norm >= 1e-6, "violator is trivial");

    SampledMultifunction flat(one, {fixtures::half_plane(0.0, 1.0)});
    bool threw = false;
    try {
        strict_min_alternative(Objective::affine(v2(0.0, 0.0), 0.0), flat, zero, 1.0);
    } catch (const NonoverlapFailedError&) {
        threw = true;
    }
    REQ(threw, "non-strict minimizer must be rejected");
    return true;
}

// ---- 9: geometry kernels against brute-force oracles -------------------------
//
// Dense direction sweeps: tangent membership, regular-normal membership and
// limiting-normal membership must agree with the grid oracles on every one
// of 6283 directions, for every point/set pair; projections must match the
// brute-force distance.

bool crit_geometry(std::string* why) {
    struct Probe {
        const char* name;
        SetValue S;
        Vec x;
    };
    const Probe probes[] = {
        {"quadrant vertex", fixtures::quadrant(), v2(0.0, 0.0)},
        {"quadrant edge", fixtures::quadrant(), v2(-1.0, 0.0)},
        {"quadrant interior", fixtures::quadrant(), v2(-0.5, -0.5)},
        {"half-plane edge", fixtures::half_plane(0.0, 1.0), v2(0.0, 0.0)},
        {"bowtie-up vertex", fixtures::bowtie_up(), v2(0.0, 0.0)},
        {"down-cone vertex", fixtures::down_cone(), v2(0.0, 0.0)},
        {"down-cone edge", fixtures::down_cone(), v2(1.0, -1.0)},
        {"box vertex", fixtures::box(0.5, 1.5, 0.25, 1.25), v2(0.5, 0.25)},
        {"box edge", fixtures::box(0.5, 1.5, 0.25, 1.25), v2(1.0, 0.25)},
        {"bowtie-down vertex", fixtures::bowtie_down(), v2(0.0, 0.0)},
    };

    const int grid = 6283;
    for (const Probe& p : probes) {
        ConeUnion tan = tangent_cone(p.S, p.x);
        ConeUnion lim = limiting_normal_cone(p.S, p.x);
        oracle::TangentScan tscan(p.S, p.x, grid);
        oracle::LimitingScan lscan(p.S, p.x);

        int mismatches = 0;
        for (int i = 0; i < grid; ++i) {
            Vec v = oracle::dir2(2.0 * M_PI * i / grid);
            if (oracle::tangent_dir(p.S, p.x, v) != tan.contains(v, 1e-8)) ++mismatches;
            if (tscan.regular_member(v) != regular_normal_member(p.S, p.x, v)) ++mismatches;
            if (lscan.member(v) != lim.contains(v, 1e-8)) ++mismatches;
        }
        REQ(mismatches == 0,
            std::string("membership disagreement on the ") + p.name + ": " +
                std::to_string(mismatches) + " of " + std::to_string(3 * grid));

        for (int j = 0; j < 97; ++j) {
            Vec d = oracle::dir2(2.0 * M_PI * j / 97.0);
            for (double rho : {1e-1, 1e-2, 1e-3}) {
                Vec z = p.x + rho * d;
                double od = oracle::brute_distance(p.S, z);
                Vec y = project(p.S, z);
                REQ(p.S.contains(y, 1e-8), std::string("projection leaves the set: ") + p.name);
                REQ(std::abs((z - y).norm() - od) <= 1e-9,
                    std::string("projection distance off: ") + p.name);
                REQ(std::abs(distance(p.S, z) - od) <= 1e-9,
                    std::string("distance disagrees with the oracle: ") + p.name);
            }
        }
    }
    return true;
}

// ---- 10: byte-determinism of the command line --------------------------------

struct RunOut {
    int status = -1;
    std::string text;
};

RunOut run_cli_once(const std::string& cmdline) {
    RunOut out;
    std::string full = "ESSINT_NO_PARALLEL=1 " + cmdline + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (pipe == nullptr) return out;
    char buf[4096];
    std::size_t nread = 0;
    while ((nread = fread(buf, 1, sizeof buf, pipe)) > 0) out.text.append(buf, nread);
    int rc = pclose(pipe);
    if (rc >= 0 && WIFEXITED(rc)) out.status = WEXITSTATUS(rc);
    return out;
}

bool crit_determinism(std::string* why) {
    const std::pair<const char*, const char*> cases[] = {
        {"normal-cone", "quadrant.json"},
        {"tangent-cone", "quadrant.json"},
        {"aumann", "conic_2d.json"},
        {"extremal-check", "twocone_ep.json"},
        {"ep-solve", "twocone_ep.json"},
        {"conic-ep", "conic_dyadic.json"},
        {"chip-check", "quadrant.json"},
        {"nqc-check", "nqc_opposite.json"},
        {"certify-stochastic", "cert_model.json"},
        {"certify-inequality", "cert_refused.json"},
        {"certify-sip", "sip_model.json"},
        {"strict-min", "strictmin_degenerate.json"},
    };
    for (const auto& [cmd, fx] : cases) {
        std::string line =
            "\"" + g_binary + "\" " + cmd + " \"" + g_fixtures + "/" + fx + "\"";
        RunOut first = run_cli_once(line);
        RunOut second = run_cli_once(line);
        const std::string at = std::string(" for ") + cmd + " " + fx;
        REQ(first.status >= 0 && second.status >= 0, "command failed to launch" + at);
        REQ(first.status <= 1, "unexpected exit status " + std::to_string(first.status) + at);
        REQ(!first.text.empty(), "command produced no output" + at);
        REQ(first.status == second.status, "exit status changed between runs" + at);
        REQ(first.text == second.text, "output bytes changed between runs" + at);
    }
    return true;
}

struct Criterion {
    const char* name;
    double budget_s;
    bool (*fn)(std::string*);
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <fixtures_dir> <essint_binary>\n", argv[0]);
        return 2;
    }
    g_fixtures = argv[1];
    g_binary = argv[2];

    const Criterion table[] = {
        {"sequential principle on a two-cone pair", 5.0, crit_sequential},
        {"exact conic principle on dyadic systems", 10.0, crit_conic},
        {"normal-cone identity on random conic families", 30.0, crit_identity},
        {"tangent-intersection property", 10.0, crit_chip},
        {"normal qualification probe", 10.0, crit_nqc},
        {"stationarity certificates, both encodings", 5.0, crit_certificates},
        {"semi-infinite multiplier density", 5.0, crit_sip},
        {"strict-minimizer alternative", 10.0, crit_strict_min},
        {"geometry kernels against brute-force oracles", 60.0, crit_geometry},
        {"byte-determinism of the command line", 120.0, crit_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(table); ++i) {
        std::string why;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = table[i].fn(&why);
        } catch (const Error& e) {
            ok = false;
            why = std::string("unexpected error: ") + e.what();
        } catch (const std::exception& e) {
            ok = false;
            why = std::string("unexpected exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > table[i].budget_s) {
            ok = false;
            why = "over the " + std::to_string(table[i].budget_s) + "s budget";
        }
        std::printf("[%2zu/10] %s  %-46s %6.2fs%s%s\n", i + 1, ok ? "PASS" : "FAIL",
                    table[i].name, secs, why.empty() ? "" : "  -- ", why.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/10 acceptance criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
