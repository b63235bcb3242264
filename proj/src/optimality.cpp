#include "essint/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "essint/errors.hpp"
#include "essint/lp.hpp"
#include "essint/nnls.hpp"
#include "essint/qp.hpp"
#include "essint/rng.hpp"
#include "essint/setcalc.hpp"
#include "essint/vcalc.hpp"

namespace essint {

namespace {

constexpr int kSubdiffVertexCap = 64;

const char* kClosureNote =
    "closure note: the integral cone is finitely generated and therefore closed; "
    "the closure operation in the continuum statement is the identity here and the "
    "certificate does not probe the infinite-family gap";

}  // namespace

// ---- Objective ----------------------------------------------------------------

Objective Objective::affine(Vec c, double d) {
    Objective h;
    h.kind_ = Kind::Affine;
    h.cs_.push_back(std::move(c));
    h.ds_.push_back(d);
    return h;
}

Objective Objective::max_affine(std::vector<Vec> cs, std::vector<double> ds) {
    if (cs.empty() || cs.size() != ds.size())
        throw Error("objective: max_affine needs matching gradient/offset lists");
    for (const auto& c : cs)
        if (c.size() != cs.front().size())
            throw Error("objective: max_affine pieces have mixed dimensions");
    if (static_cast<int>(cs.size()) > kSubdiffVertexCap)
        throw Error("objective: subdifferential vertex cap exceeded");
    Objective h;
    h.kind_ = Kind::MaxAffine;
    h.cs_ = std::move(cs);
    h.ds_ = std::move(ds);
    return h;
}

Objective Objective::quadratic(Mat Q, Vec c, double d) {
    if (Q.rows() != Q.cols() || Q.rows() != c.size())
        throw Error("objective: quadratic shape mismatch");
    if ((Q - Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-9)
        throw Error("objective: quadratic form must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(Q);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw Error("objective: quadratic form must be positive semidefinite");
    Objective h;
    h.kind_ = Kind::Quadratic;
    h.Q_ = std::move(Q);
    h.cs_.push_back(std::move(c));
    h.ds_.push_back(d);
    return h;
}

int Objective::dim() const { return static_cast<int>(cs_.front().size()); }

double Objective::value(const Vec& x) const {
    switch (kind_) {
        case Kind::Affine:
            return cs_[0].dot(x) + ds_[0];
        case Kind::Quadratic:
            return 0.5 * x.dot(Q_ * x) + cs_[0].dot(x) + ds_[0];
        case Kind::MaxAffine: {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < cs_.size(); ++j)
                best = std::max(best, cs_[j].dot(x) + ds_[j]);
            return best;
        }
    }
    return 0.0;
}

Vec Objective::gradient(const Vec& x) const {
    if (kind_ == Kind::Affine) return cs_[0];
    if (kind_ == Kind::Quadratic) return Q_ * x + cs_[0];
    throw NotSupportedError("objective: max_affine is not differentiable");
}

Mat Objective::subdifferential_vertices(const Vec& x, double active_tol) const {
    if (kind_ != Kind::MaxAffine) {
        Mat V(dim(), 1);
        V.col(0) = gradient(x);
        return V;
    }
    double v = value(x);
    std::vector<int> active;
    for (std::size_t j = 0; j < cs_.size(); ++j)
        if (std::abs(cs_[j].dot(x) + ds_[j] - v) <= active_tol)
            active.push_back(static_cast<int>(j));
    if (static_cast<int>(active.size()) > kSubdiffVertexCap)
        throw Error("objective: subdifferential vertex cap exceeded");
    Mat V(dim(), static_cast<int>(active.size()));
    for (int k = 0; k < static_cast<int>(active.size()); ++k)
        V.col(k) = cs_[static_cast<std::size_t>(active[static_cast<std::size_t>(k)])];
    return V;
}

// ---- normal qualification -------------------------------------------------------

NqcReport check_normal_qualification(const SampledMultifunction& MF, const Vec& xbar,
                                     NqcKind kind, double epsilon, bool use_shortcut,
                                     std::uint64_t seed, long budget) {
    (void)kind;
    (void)epsilon;
    const int m = MF.space().size();
    const int n = MF.dim();
    for (int i = 0; i < m; ++i)
        if (!MF.value(i).contains(xbar))
            throw NotMemberError("qualification: base point is not in every value");

    NqcReport report;
    if (use_shortcut) {
        // Sufficient condition: a common interior point of convex values.
        bool all_convex = true;
        int rows = 0;
        for (int i = 0; i < m; ++i) {
            if (!MF.value(i).is_convex()) {
                all_convex = false;
                break;
            }
            rows += MF.value(i).pieces()[0].rows();
        }
        if (all_convex) {
            Mat A(rows, n);
            Vec b(rows);
            int at = 0;
            for (int i = 0; i < m; ++i) {
                const Polyhedron& P = MF.value(i).pieces()[0];
                A.middleRows(at, P.rows()) = P.A();
                b.segment(at, P.rows()) = P.b() - 1e-3 * Vec::Ones(P.rows());
                at += P.rows();
            }
            if (lp_feasible_point(A, b, empty_matrix(n), empty_vector()).status ==
                LPStatus::Optimal) {
                report.holds = true;
                report.shortcut_interior = true;
                return report;
            }
        }
    }

    std::vector<ConeUnion> cones;
    double combos = 1.0;
    for (int i = 0; i < m; ++i) {
        cones.push_back(limiting_normal_cone(MF.value(i), xbar, 1e-6, 1e-6, 1e-8, budget));
        combos *= static_cast<double>(cones.back().parts().size());
    }
    if (combos > static_cast<double>(budget))
        throw SelectionBlowupError("qualification: part-combination budget exceeded");

    // Probe objectives: one coordinate probe per atom per sign, plus a few
    // random tuples; a probe "pays" only through its atom's selection, which
    // the zero-sum constraint cannot annihilate.
    std::vector<std::vector<Vec>> probes;
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < n; ++l)
            for (double s : {1.0, -1.0}) {
                std::vector<Vec> tuple(static_cast<std::size_t>(m), Vec(Vec::Zero(n)));
                tuple[static_cast<std::size_t>(i)] = s * Vec::Unit(n, l);
                probes.push_back(std::move(tuple));
            }
    Rng rng(seed);
    for (int t = 0; t < 8; ++t) {
        std::vector<Vec> tuple;
        for (int i = 0; i < m; ++i) tuple.push_back(rng.unit_vector(n));
        probes.push_back(std::move(tuple));
    }

    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
        std::vector<const Mat*> G;
        int k_total = 0;
        for (int i = 0; i < m; ++i) {
            G.push_back(&cones[static_cast<std::size_t>(i)]
                             .parts()[pick[static_cast<std::size_t>(i)]]
                             .generators());
            k_total += static_cast<int>(G.back()->cols());
        }
        if (k_total > 0) {
            Mat A_eq = Mat::Zero(n, k_total);
            int at = 0;
            for (int i = 0; i < m; ++i) {
                A_eq.middleCols(at, G[static_cast<std::size_t>(i)]->cols()) =
                    MF.space().weight(i) * (*G[static_cast<std::size_t>(i)]);
                at += static_cast<int>(G[static_cast<std::size_t>(i)]->cols());
            }
            Mat A_ub(2 * k_total, k_total);
            A_ub << -Mat::Identity(k_total, k_total), Mat::Identity(k_total, k_total);
            Vec b_ub(2 * k_total);
            b_ub << Vec::Zero(k_total), Vec::Ones(k_total);
            for (const auto& tuple : probes) {
                Vec c_lp = Vec::Zero(k_total);
                at = 0;
                for (int i = 0; i < m; ++i) {
                    c_lp.segment(at, G[static_cast<std::size_t>(i)]->cols()) =
                        -G[static_cast<std::size_t>(i)]->transpose() *
                        tuple[static_cast<std::size_t>(i)];
                    at += static_cast<int>(G[static_cast<std::size_t>(i)]->cols());
                }
                LPResult lp = solve_lp(c_lp, A_ub, b_ub, A_eq, Vec::Zero(n));
                if (lp.status == LPStatus::Optimal && -lp.objective > 1e-8) {
                    std::vector<Vec> violator;
                    at = 0;
                    for (int i = 0; i < m; ++i) {
                        violator.push_back(*G[static_cast<std::size_t>(i)] *
                                           lp.x.segment(at, G[static_cast<std::size_t>(i)]->cols()));
                        at += static_cast<int>(G[static_cast<std::size_t>(i)]->cols());
                    }
                    report.holds = false;
                    report.violator = std::move(violator);
                    return report;
                }
            }
        }
        std::size_t p = 0;
        while (p < pick.size() &&
               ++pick[p] == cones[p].parts().size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
    report.holds = true;
    return report;
}

// ---- certificates ----------------------------------------------------------------

namespace {

struct FitResult {
    double residual = std::numeric_limits<double>::infinity();
    Vec gstar;
    Vec lambda;
    int part = -1;
};

// Best nonnegative fit of -g* by the (weighted) columns, over subgradient
// vertices and integral parts.
FitResult best_fit(const Mat& vertices, const std::vector<Mat>& part_columns) {
    FitResult best;
    for (int v = 0; v < vertices.cols(); ++v) {
        Vec g = vertices.col(v);
        for (int p = 0; p < static_cast<int>(part_columns.size()); ++p) {
            const Mat& E = part_columns[static_cast<std::size_t>(p)];
            double res;
            Vec lam;
            if (E.cols() == 0) {
                res = g.norm();
                lam = Vec::Zero(0);
            } else {
                NNLSResult r = solve_nnls(E, -g);
                res = r.residual_norm;
                lam = r.x;
            }
            if (res < best.residual - 1e-15) {
                best.residual = res;
                best.gstar = g;
                best.lambda = lam;
                best.part = p;
            }
        }
    }
    return best;
}

bool intersection_normally_regular(const SetValue& S, const Vec& xbar, long budget) {
    HCone reg = regular_normal_cone(S, xbar);
    ConeUnion lim = limiting_normal_cone(S, xbar, 1e-6, 1e-6, 1e-8, budget);
    for (const FinCone& part : lim.parts())
        for (int j = 0; j < part.count(); ++j)
            if (!reg.contains(part.generators().col(j), 1e-8)) return false;
    return true;
}

}  // namespace

Certificate stochastic_certificate(const Objective& h, const SampledMultifunction& MF,
                                   const Vec& xbar, long budget) {
    const int m = MF.space().size();
    IntersectionResult inter = essential_intersection(MF, budget);
    if (inter.empty() || !inter.value->contains(xbar))
        throw NotMemberError("certificate: base point is not in every value");

    Certificate cert;
    bool conic = xbar.lpNorm<Eigen::Infinity>() <= 1e-12;
    for (int i = 0; i < m && conic; ++i) conic = is_conic(MF.value(i));
    if (conic) {
        cert.qualification =
            "cone-valued system at the origin; singular subdifferential is {0} "
            "(locally Lipschitz cost), so the balance qualification holds automatically";
    } else {
        ChipReport chip = check_chip(MF, xbar, 42, budget);
        if (!chip.holds)
            throw PreconditionFailedError(
                "certificate: tangent-cone intersection property fails");
        if (!intersection_normally_regular(*inter.value, xbar, budget))
            throw PreconditionFailedError(
                "certificate: intersection is not normally regular");
        cert.qualification =
            "tangent-cone intersection property verified and the intersection is "
            "normally regular; singular subdifferential is {0} (locally Lipschitz cost)";
    }
    cert.qualification_passed = true;
    cert.closure_note = kClosureNote;

    std::vector<ConeUnion> atom_normals;
    for (int i = 0; i < m; ++i)
        atom_normals.push_back(limiting_normal_cone(MF.value(i), xbar, 1e-6, 1e-6, 1e-8, budget));
    AumannIntegral integral = aumann_integral(ConeField(MF.space(), atom_normals), budget);

    std::vector<Mat> part_columns;
    for (const AumannPart& part : integral.parts) {
        Mat E = part.generators;
        for (int j = 0; j < E.cols(); ++j)
            E.col(j) *= MF.space().weight(part.tags[static_cast<std::size_t>(j)].atom);
        part_columns.push_back(std::move(E));
    }
    FitResult fit = best_fit(h.subdifferential_vertices(xbar), part_columns);
    cert.stationarity_residual = fit.residual;
    cert.gstar = fit.gstar;
    cert.certified = fit.residual <= 1e-6;
    if (fit.part >= 0) {
        const AumannPart& part = integral.parts[static_cast<std::size_t>(fit.part)];
        for (int j = 0; j < fit.lambda.size(); ++j)
            if (fit.lambda(j) > 1e-12)
                cert.multipliers.push_back({part.tags[static_cast<std::size_t>(j)].atom,
                                            fit.lambda(j),
                                            part.generators.col(j)});
    }
    return cert;
}

Certificate inequality_certificate(const std::vector<Objective>& f_atoms,
                                   const Objective& h, const AtomicMeasureSpace& space,
                                   const Vec& xbar) {
    if (static_cast<int>(f_atoms.size()) != space.size())
        throw Error("certificate: one constraint function per atom required");
    const int n = static_cast<int>(xbar.size());

    for (int i = 0; i < space.size(); ++i)
        if (f_atoms[static_cast<std::size_t>(i)].value(xbar) > 1e-8)
            throw InfeasibleError("certificate: constraint of atom " + space.id(i) +
                                  " is violated at the base point");

    Certificate cert;
    std::vector<int> active;
    for (int i = 0; i < space.size(); ++i)
        if (std::abs(f_atoms[static_cast<std::size_t>(i)].value(xbar)) <= 1e-6)
            active.push_back(i);

    // Qualification: 0 must stay outside each active subdifferential
    // polytope (minimum-norm point of the convex hull).
    for (int i : active) {
        Mat V = f_atoms[static_cast<std::size_t>(i)].subdifferential_vertices(xbar);
        const int k = static_cast<int>(V.cols());
        Mat Q = 2.0 * V.transpose() * V;
        Mat E = Mat::Ones(1, k);
        Mat G = -Mat::Identity(k, k);
        Vec mu0 = Vec::Zero(k);
        mu0(0) = 1.0;
        QPResult qp = solve_qp_from(Q, Vec::Zero(k), G, Vec::Zero(k), E, Vec::Ones(1), mu0);
        if (qp.status != QPStatus::Optimal)
            throw Error("certificate: qualification QP failed");
        if ((V * qp.z).norm() <= 1e-8)
            throw QualificationFailedError("certificate: zero subgradient at active atom " +
                                           space.id(i));
    }
    cert.qualification =
        "all active constraint subdifferentials exclude zero; inactive atoms carry "
        "trivial normal cones and are forced out of the multiplier support";
    cert.qualification_passed = true;
    cert.closure_note = kClosureNote;

    std::vector<int> col_atom;
    std::vector<Vec> col_gen;
    for (int i : active) {
        Mat V = f_atoms[static_cast<std::size_t>(i)].subdifferential_vertices(xbar);
        for (int j = 0; j < V.cols(); ++j) {
            col_atom.push_back(i);
            col_gen.push_back(V.col(j));
        }
    }
    Mat E(n, static_cast<int>(col_gen.size()));
    for (int j = 0; j < E.cols(); ++j)
        E.col(j) = space.weight(col_atom[static_cast<std::size_t>(j)]) *
                   col_gen[static_cast<std::size_t>(j)];
    FitResult fit = best_fit(h.subdifferential_vertices(xbar), {E});
    cert.stationarity_residual = fit.residual;
    cert.gstar = fit.gstar;
    cert.certified = fit.residual <= 1e-6;
    for (int j = 0; j < fit.lambda.size(); ++j)
        if (fit.lambda(j) > 1e-12)
            cert.multipliers.push_back({col_atom[static_cast<std::size_t>(j)], fit.lambda(j),
                                        col_gen[static_cast<std::size_t>(j)]});
    return cert;
}

Certificate sip_certificate(const std::function<Vec(double)>& a,
                            const std::function<double(double)>& b,
                            const Objective& h, const Vec& xbar,
                            double t0, double t1, int N, QuadratureRule rule) {
    if (!h.differentiable())
        throw PreconditionFailedError("certificate: the cost must be differentiable here");
    AtomicMeasureSpace nu = discretize_interval(t0, t1, N, rule);
    const int n = static_cast<int>(xbar.size());

    std::vector<Vec> grads;
    std::vector<double> slacks;
    for (int i = 0; i < nu.size(); ++i) {
        Vec ai = a(nu.node(i));
        if (ai.size() != n) throw Error("certificate: constraint gradient dimension mismatch");
        grads.push_back(ai);
        slacks.push_back(ai.dot(xbar) - b(nu.node(i)));
    }
    for (int i = 0; i < nu.size(); ++i)
        if (slacks[static_cast<std::size_t>(i)] > 1e-8)
            throw InfeasibleError("certificate: node " + std::to_string(i + 1) +
                                  " is violated at the base point");

    Certificate cert;
    std::vector<int> active;
    for (int i = 0; i < nu.size(); ++i)
        if (std::abs(slacks[static_cast<std::size_t>(i)]) <= 1e-6) active.push_back(i);
    for (int i : active)
        if (grads[static_cast<std::size_t>(i)].norm() <= 1e-12)
            throw GradientVanishesError("certificate: zero constraint gradient at node " +
                                        std::to_string(i + 1));
    bool screen_ok = true;
    for (int i = 0; i < nu.size(); ++i) {
        bool is_active = std::find(active.begin(), active.end(), i) != active.end();
        if (!is_active && slacks[static_cast<std::size_t>(i)] > -1e-6) screen_ok = false;
    }
    if (!screen_ok)
        cert.warnings.push_back(
            "inactive-node screen failed: some node is near-active without being counted; "
            "the certificate is node-level only and flagged non-rigorous");
    cert.qualification =
        "active-node gradients are nonzero; interiority screened at the nodes only";
    cert.qualification_passed = true;
    cert.closure_note = kClosureNote;

    Vec g = h.gradient(xbar);
    const int k = static_cast<int>(active.size());
    Vec lambda = Vec::Zero(k);
    double residual = g.norm();
    if (k > 0) {
        Mat E(n, k);
        for (int j = 0; j < k; ++j)
            E.col(j) = nu.weight(active[static_cast<std::size_t>(j)]) *
                       grads[static_cast<std::size_t>(active[static_cast<std::size_t>(j)])];
        NNLSResult stage1 = solve_nnls(E, -g);
        residual = stage1.residual_norm;
        // Canonical density: among all optimal multipliers, take the one of
        // least weighted norm on the fitted face (pins down NNLS's sparse
        // representative; the model systems then report the flat density).
        Mat Q = Mat::Zero(k, k);
        for (int j = 0; j < k; ++j)
            Q(j, j) = 2.0 * nu.weight(active[static_cast<std::size_t>(j)]);
        Vec fitted = E * stage1.x;
        QPResult qp = solve_qp_from(Q, Vec::Zero(k), -Mat::Identity(k, k), Vec::Zero(k),
                                    E, fitted, stage1.x);
        lambda = qp.status == QPStatus::Optimal ? qp.z : stage1.x;
        residual = (g + E * lambda).norm();
    }
    cert.stationarity_residual = residual;
    cert.gstar = g;
    cert.certified = residual <= 1e-6;
    cert.density.assign(static_cast<std::size_t>(nu.size()), 0.0);
    for (int j = 0; j < k; ++j) {
        int i = active[static_cast<std::size_t>(j)];
        cert.density[static_cast<std::size_t>(i)] = lambda(j);
        if (lambda(j) > 1e-12)
            cert.multipliers.push_back({i, lambda(j), grads[static_cast<std::size_t>(i)]});
    }
    return cert;
}

// ---- strict-minimizer alternative --------------------------------------------------

namespace {

Polyhedron epigraph(const Objective& h) {
    const int n = h.dim();
    const auto& cs = h.pieces_c();
    const auto& ds = h.pieces_d();
    Mat A(static_cast<int>(cs.size()), n + 1);
    Vec b(static_cast<int>(cs.size()));
    for (int j = 0; j < static_cast<int>(cs.size()); ++j) {
        A.row(j).head(n) = cs[static_cast<std::size_t>(j)].transpose();
        A(j, n) = -1.0;
        b(j) = -ds[static_cast<std::size_t>(j)];
    }
    return Polyhedron(A, b);
}

Polyhedron lift_piece(const Polyhedron& P, double level) {
    const int n = P.dim();
    Mat A = Mat::Zero(P.rows() + 1, n + 1);
    Vec b(P.rows() + 1);
    A.topLeftCorner(P.rows(), n) = P.A();
    b.head(P.rows()) = P.b();
    A(P.rows(), n) = 1.0;
    b(P.rows()) = level;
    return Polyhedron(A, b);
}

}  // namespace

StrictMinResult strict_min_alternative(const Objective& h, const SampledMultifunction& MF,
                                       const Vec& xbar, double r, int k_max,
                                       std::uint64_t seed, long budget) {
    if (h.kind() == Objective::Kind::Quadratic)
        throw PreconditionFailedError("strict-min: polyhedral cost (affine/max_affine) required");
    const int n = MF.dim();
    const int m = MF.space().size();
    IntersectionResult inter = essential_intersection(MF, budget);
    if (inter.empty() || !inter.value->contains(xbar))
        throw NotMemberError("strict-min: base point is not in every value");
    const double hx = h.value(xbar);

    // Sampled strictness screen: any distinct feasible point at or below the
    // base value refutes strict minimality outright.
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        Vec z = xbar + rng.uniform() * r * rng.unit_vector(n);
        for (const Polyhedron& P : inter.value->pieces()) {
            Vec y = project(P, z);
            double d = (y - xbar).norm();
            if (d > 1e-9 && d <= r && h.value(y) <= hx + 1e-12)
                throw NonoverlapFailedError(
                    "strict-min: a feasible point no worse than the base point exists");
        }
    }

    std::vector<std::string> ids;
    std::vector<double> weights;
    ids.push_back("0");
    weights.push_back(1.0);
    for (int i = 0; i < m; ++i) {
        ids.push_back(MF.space().id(i));
        weights.push_back(MF.space().weight(i));
    }
    std::vector<SetValue> values;
    values.push_back(SetValue({epigraph(h)}));
    for (int i = 0; i < m; ++i) {
        std::vector<Polyhedron> pieces;
        for (const Polyhedron& P : MF.value(i).pieces()) pieces.push_back(lift_piece(P, hx));
        values.push_back(SetValue(std::move(pieces)));
    }
    SampledMultifunction aug(AtomicMeasureSpace(std::move(ids), std::move(weights)),
                             std::move(values));
    Vec xbar_aug(n + 1);
    xbar_aug << xbar, hx;

    std::vector<std::vector<Vec>> terms;
    for (int k = 1; k <= k_max; ++k) {
        std::vector<Vec> term(static_cast<std::size_t>(m + 1), Vec(Vec::Zero(n + 1)));
        term[0](n) = -1.0 / static_cast<double>(k);
        terms.push_back(std::move(term));
    }
    PerturbationSchedule sched(aug.space(), std::move(terms));

    std::vector<EPWitness> witnesses;
    try {
        witnesses = sequential_ep(aug, xbar_aug, r, sched, 2.0, budget);
    } catch (const PreconditionFailedError& e) {
        throw NonoverlapFailedError(std::string("strict-min: strictness violated (") +
                                    e.what() + ")");
    }

    StrictMinResult out;
    out.witness = witnesses.back();
    const EPWitness& w = out.witness;
    const double alpha0 = w.xstar[0](n);
    const Vec xi0 = w.xstar[0].head(n);
    out.y = w.xk[0].head(n);

    std::vector<Vec> xi;
    for (int i = 0; i < m; ++i) xi.push_back(w.xstar[static_cast<std::size_t>(i + 1)].head(n));

    if (std::abs(alpha0) > 1e-8) {
        // Vertical dual present: divide the balance by |alpha0| to read off a
        // subgradient of h and per-atom normals.
        double scale = -alpha0;  // epigraph normals point downward
        out.subgradient = xi0 / scale;
        double eta_max = 0.0;
        Vec station = out.subgradient;
        for (int i = 0; i < m; ++i) {
            out.normals.push_back(xi[static_cast<std::size_t>(i)] / scale);
            eta_max = std::max(eta_max, out.normals.back().norm());
            station += MF.space().weight(i) * out.normals.back();
        }
        out.stationarity_residual = station.norm();
        if (out.subgradient.norm() <= 1e-6 && eta_max > 1e-6) {
            // The "stationarity" degenerates to nonzero normals canceling each
            // other: that is the qualification-failure branch.
            out.branch = 2;
            out.violator = out.normals;
            Vec bal = Vec::Zero(n);
            for (int i = 0; i < m; ++i)
                bal += MF.space().weight(i) * out.violator[static_cast<std::size_t>(i)];
            out.violator_balance = bal.norm();
            out.violator_max_norm = eta_max;
        } else if (out.subgradient.norm() <= 1e-6) {
            // Purely vertical witness: subgradient and normals all vanish, so
            // the witness itself carries no constraint information.  The
            // alternative then turns on whether some nontrivial normal family
            // balances to zero, which the qualification probe decides exactly.
            NqcReport nqc = check_normal_qualification(MF, xbar, NqcKind::Regular, 1e-3,
                                                       true, seed, budget);
            if (!nqc.holds && nqc.violator) {
                out.branch = 2;
                out.violator = *nqc.violator;
                Vec bal = Vec::Zero(n);
                double vmax = 0.0;
                for (int i = 0; i < m; ++i) {
                    bal += MF.space().weight(i) * out.violator[static_cast<std::size_t>(i)];
                    vmax = std::max(vmax, out.violator[static_cast<std::size_t>(i)].norm());
                }
                out.violator_balance = bal.norm();
                out.violator_max_norm = vmax;
            } else {
                out.branch = 1;
            }
        } else {
            out.branch = 1;
        }
    } else {
        out.branch = 2;
        out.violator = xi;
        Vec bal = Vec::Zero(n);
        double vmax = 0.0;
        for (int i = 0; i < m; ++i) {
            bal += MF.space().weight(i) * xi[static_cast<std::size_t>(i)];
            vmax = std::max(vmax, xi[static_cast<std::size_t>(i)].norm());
        }
        out.violator_balance = bal.norm();
        out.violator_max_norm = vmax;
    }
    return out;
}

}  // namespace essint
