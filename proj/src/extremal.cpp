#include "essint/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "essint/errors.hpp"
#include "essint/lp.hpp"
#include "essint/qp.hpp"
#include "essint/rng.hpp"

namespace essint {

namespace {

void require_member_all(const SampledMultifunction& MF, const Vec& xbar) {
    for (int i = 0; i < MF.space().size(); ++i)
        if (!MF.value(i).contains(xbar))
            throw NotMemberError("extremal: base point is not in the value of atom " +
                                 MF.space().id(i));
}

double assignment_count(const SampledMultifunction& MF) {
    double combos = 1.0;
    for (int i = 0; i < MF.space().size(); ++i)
        combos *= static_cast<double>(MF.value(i).pieces().size());
    return combos;
}

// Iterate piece assignments; `visit` gets one polyhedron index per atom.
template <typename F>
void for_each_assignment(const SampledMultifunction& MF, F&& visit) {
    const int m = MF.space().size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
        visit(pick);
        std::size_t p = 0;
        while (p < pick.size() &&
               ++pick[p] == MF.value(static_cast<int>(p)).pieces().size()) {
            pick[p] = 0;
            ++p;
        }
        if (p == pick.size()) break;
    }
}

Polyhedron stack_assignment(const SampledMultifunction& MF,
                            const std::vector<std::size_t>& pick,
                            const std::vector<Vec>* shifts) {
    const int m = MF.space().size();
    const int n = MF.dim();
    int rows = 0;
    for (int i = 0; i < m; ++i) rows += MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]].rows();
    Mat A(rows, n);
    Vec b(rows);
    int at = 0;
    for (int i = 0; i < m; ++i) {
        const Polyhedron& P = MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]];
        A.middleRows(at, P.rows()) = P.A();
        Vec bi = P.b();
        if (shifts) bi -= P.A() * (*shifts)[static_cast<std::size_t>(i)];
        b.segment(at, P.rows()) = bi;
        at += P.rows();
    }
    return Polyhedron(A, b);
}

}  // namespace

std::vector<bool> check_local_extremality(const SampledMultifunction& MF, const Vec& xbar,
                                          double r, const PerturbationSchedule& sched,
                                          long budget) {
    require_member_all(MF, xbar);
    if (!(r > 0.0)) throw BadRangeError("extremal: radius must be positive");
    if (assignment_count(MF) > static_cast<double>(budget))
        throw SelectionBlowupError("extremal: piece-assignment budget exceeded");
    std::vector<bool> out;
    for (int k = 0; k < sched.count(); ++k) {
        const std::vector<Vec>& a = sched.term(k);
        bool empty_in_ball = true;
        for_each_assignment(MF, [&](const std::vector<std::size_t>& pick) {
            if (!empty_in_ball) return;
            Polyhedron P = stack_assignment(MF, pick, &a);
            if (P.is_empty()) return;
            if (distance(P, xbar) <= r) empty_in_ball = false;
        });
        out.push_back(empty_in_ball);
    }
    return out;
}

bool check_nonoverlap(const SampledMultifunction& MF, const Vec& xbar, double r,
                      long budget) {
    require_member_all(MF, xbar);
    if (!(r > 0.0)) throw BadRangeError("extremal: radius must be positive");
    if (assignment_count(MF) > static_cast<double>(budget))
        throw SelectionBlowupError("extremal: piece-assignment budget exceeded");
    const int n = MF.dim();
    std::vector<Vec> probes;
    for (int i = 0; i < n; ++i) {
        probes.push_back(Vec::Unit(n, i));
        probes.push_back(-Vec::Unit(n, i));
    }
    Rng rng(42);
    for (int j = 0; j < 8; ++j) probes.push_back(rng.unit_vector(n));

    bool only_xbar = true;
    for_each_assignment(MF, [&](const std::vector<std::size_t>& pick) {
        if (!only_xbar) return;
        Polyhedron P = stack_assignment(MF, pick, nullptr);
        if (P.is_empty()) return;
        if (!P.contains(xbar)) {
            // A convex region not through xbar: any point of it inside the
            // ball is a second intersection point.
            if (distance(P, xbar) <= r) only_xbar = false;
            return;
        }
        // Convex and containing xbar: it meets the ball in more than xbar
        // exactly when it contains any direction of positive length.
        Vec shift = P.b() - P.A() * xbar;
        for (const Vec& c : probes) {
            Mat A_ub(P.rows() + 2 * n, n);
            Vec b_ub(P.rows() + 2 * n);
            A_ub.topRows(P.rows()) = P.A();
            b_ub.head(P.rows()) = shift;
            for (int i = 0; i < n; ++i) {
                A_ub.row(P.rows() + 2 * i) = Eigen::RowVectorXd::Unit(n, i);
                A_ub.row(P.rows() + 2 * i + 1) = -Eigen::RowVectorXd::Unit(n, i);
                b_ub(P.rows() + 2 * i) = r;
                b_ub(P.rows() + 2 * i + 1) = r;
            }
            LPResult lp = solve_lp(-c, A_ub, b_ub, empty_matrix(n), empty_vector());
            if (lp.status == LPStatus::Optimal && -lp.objective > 1e-8) {
                only_xbar = false;
                return;
            }
        }
    });
    return only_xbar;
}

namespace {

struct PenaltySolution {
    Vec xhat;
    std::vector<Vec> y;
    double phi = 0.0;
    double sigma = 0.0;
    bool ball_active = false;
};

// Minimize sum_i w_i ||x + a_i - y_i||^2 + sigma ||x - xbar||^2 over one
// piece assignment, jointly in (x, y_1..y_m).
struct AssignmentQP {
    Mat Q, G, E;
    Vec c0, h, d;
    Vec z0;
    int n = 0, m = 0;

    AssignmentQP(const SampledMultifunction& MF, const std::vector<std::size_t>& pick,
                 const std::vector<Vec>& a, const Vec& xbar) {
        n = MF.dim();
        m = MF.space().size();
        const int nv = n * (m + 1);
        Q = Mat::Zero(nv, nv);
        c0 = Vec::Zero(nv);
        double wsum = 0.0;
        for (int i = 0; i < m; ++i) {
            double w = MF.space().weight(i);
            wsum += w;
            Q.block(0, n * (i + 1), n, n) = -2.0 * w * Mat::Identity(n, n);
            Q.block(n * (i + 1), 0, n, n) = -2.0 * w * Mat::Identity(n, n);
            Q.block(n * (i + 1), n * (i + 1), n, n) = 2.0 * w * Mat::Identity(n, n);
            c0.head(n) += 2.0 * w * a[static_cast<std::size_t>(i)];
            c0.segment(n * (i + 1), n) = -2.0 * w * a[static_cast<std::size_t>(i)];
        }
        Q.topLeftCorner(n, n) = 2.0 * wsum * Mat::Identity(n, n);
        int rows = 0;
        for (int i = 0; i < m; ++i)
            rows += MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]].rows();
        G = Mat::Zero(rows, nv);
        h = Vec(rows);
        int at = 0;
        z0 = Vec::Zero(nv);
        z0.head(n) = xbar;
        for (int i = 0; i < m; ++i) {
            const Polyhedron& P = MF.value(i).pieces()[pick[static_cast<std::size_t>(i)]];
            G.block(at, n * (i + 1), P.rows(), n) = P.A();
            h.segment(at, P.rows()) = P.b();
            at += P.rows();
            z0.segment(n * (i + 1), n) = project(P, xbar);
        }
        E = empty_matrix(nv);
        d = empty_vector();
    }

    QPResult solve(double sigma, const Vec& xbar) const {
        Mat Qs = Q;
        Vec cs = c0;
        if (sigma > 0.0) {
            Qs.topLeftCorner(n, n) += 2.0 * sigma * Mat::Identity(n, n);
            cs.head(n) -= 2.0 * sigma * xbar;
        }
        return solve_qp_from(Qs, cs, G, h, E, d, z0);
    }
};

double penalty_value(const SampledMultifunction& MF, const std::vector<Vec>& a,
                     const Vec& x, const std::vector<Vec>& y) {
    double phi = 0.0;
    for (int i = 0; i < MF.space().size(); ++i)
        phi += MF.space().weight(i) *
               (x + a[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]).squaredNorm();
    return phi;
}

PenaltySolution solve_penalty(const SampledMultifunction& MF, const Vec& xbar, double r,
                              const std::vector<Vec>& a, long budget) {
    if (assignment_count(MF) > static_cast<double>(budget))
        throw SelectionBlowupError("extremal: piece-assignment budget exceeded");
    const int n = MF.dim();
    const int m = MF.space().size();
    PenaltySolution best;
    double best_phi = std::numeric_limits<double>::infinity();
    for_each_assignment(MF, [&](const std::vector<std::size_t>& pick) {
        AssignmentQP qp(MF, pick, a, xbar);
        auto extract = [&](const QPResult& res, double sigma, bool active) {
            PenaltySolution sol;
            sol.xhat = res.z.head(n);
            for (int i = 0; i < m; ++i) sol.y.push_back(res.z.segment(n * (i + 1), n));
            sol.phi = penalty_value(MF, a, sol.xhat, sol.y);
            sol.sigma = sigma;
            sol.ball_active = active;
            return sol;
        };
        QPResult free = qp.solve(0.0, xbar);
        if (free.status != QPStatus::Optimal) throw Error("extremal: penalty QP failed");
        PenaltySolution sol;
        if ((free.z.head(n) - xbar).norm() <= r + 1e-12) {
            sol = extract(free, 0.0, false);
        } else {
            // The unconstrained minimizer leaves the ball: pick the exact
            // multiplier of ||x - xbar|| <= r by bisection; the constrained
            // distance is non-increasing in sigma.
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                QPResult res = qp.solve(hi, xbar);
                if (res.status != QPStatus::Optimal) throw Error("extremal: penalty QP failed");
                if ((res.z.head(n) - xbar).norm() <= r) break;
                lo = hi;
                hi *= 2.0;
            }
            for (int it = 0; it < 90; ++it) {
                double mid = 0.5 * (lo + hi);
                QPResult res = qp.solve(mid, xbar);
                if (res.status != QPStatus::Optimal) throw Error("extremal: penalty QP failed");
                if ((res.z.head(n) - xbar).norm() > r)
                    lo = mid;
                else
                    hi = mid;
            }
            QPResult res = qp.solve(hi, xbar);
            sol = extract(res, hi, true);
        }
        if (sol.phi < best_phi - 1e-12) {
            best_phi = sol.phi;
            best = std::move(sol);
        }
    });
    return best;
}

}  // namespace

EPWitness ep_step(const SampledMultifunction& MF, const Vec& xbar, double r,
                  const std::vector<Vec>& a_k, int k, double p, long budget) {
    if (p != 2.0)
        throw NotSupportedError("extremal: only p = 2 is implemented");
    const int m = MF.space().size();
    PenaltySolution sol = solve_penalty(MF, xbar, r, a_k, budget);
    if (sol.phi <= 1e-14)
        throw DegenerateZeroDualError(
            "extremal: zero penalty at the minimizer contradicts extremality");

    EPWitness w;
    w.k = k;
    w.xhat = sol.xhat;
    w.phi_value = sol.phi;
    w.ball_multiplier = sol.sigma;
    w.ball_active = sol.ball_active;
    w.eps_k = 2.0 * (sol.xhat - xbar).norm();

    std::vector<Vec> ustar;
    for (int i = 0; i < m; ++i) {
        Vec u = 2.0 * (sol.xhat + a_k[static_cast<std::size_t>(i)] -
                       sol.y[static_cast<std::size_t>(i)]);
        if (u.norm() <= 2e-12) u.setZero();
        ustar.push_back(u);
        w.xk.push_back(sol.y[static_cast<std::size_t>(i)]);
    }
    double unorm = weighted_p_norm(MF.space(), ustar, 2.0);
    if (unorm <= 1e-14)
        throw DegenerateZeroDualError("extremal: vanishing dual family");
    w.u_norm = unorm;
    for (int i = 0; i < m; ++i) w.xstar.push_back(ustar[static_cast<std::size_t>(i)] / unorm);
    w.q_norm = weighted_p_norm(MF.space(), w.xstar, 2.0);
    w.balance = Vec::Zero(MF.dim());
    for (int i = 0; i < m; ++i)
        w.balance += MF.space().weight(i) * w.xstar[static_cast<std::size_t>(i)];
    return w;
}

std::vector<EPWitness> sequential_ep(const SampledMultifunction& MF, const Vec& xbar,
                                     double r, const PerturbationSchedule& sched,
                                     double p, long budget) {
    if (p != 2.0)
        throw NotSupportedError("extremal: only p = 2 is implemented");
    std::vector<bool> extremal = check_local_extremality(MF, xbar, r, sched, budget);
    for (std::size_t k = 0; k < extremal.size(); ++k)
        if (!extremal[k])
            throw PreconditionFailedError("extremal: local extremality fails at step " +
                                          std::to_string(k + 1));
    if (!check_nonoverlap(MF, xbar, r, budget))
        throw PreconditionFailedError("extremal: nonoverlap condition fails");
    std::vector<EPWitness> out;
    for (int k = 0; k < sched.count(); ++k)
        out.push_back(ep_step(MF, xbar, r, sched.term(k), k + 1, p, budget));
    return out;
}

WitnessAudit audit_witness(const SampledMultifunction& MF, const Vec& xbar,
                           const std::vector<Vec>& a_k, const EPWitness& w) {
    WitnessAudit audit;
    const int m = MF.space().size();
    for (int i = 0; i < m; ++i) {
        const Vec& xs = w.xstar[static_cast<std::size_t>(i)];
        const Vec& xi = w.xk[static_cast<std::size_t>(i)];
        if (!MF.value(i).contains(xi, 1e-6)) return audit;  // ok stays false
        double res = regular_normal_distance(MF.value(i), xi, xs);
        audit.normal_residual = std::max(audit.normal_residual, res);
        double slack = (xi - xbar).norm() -
                       (2.0 * a_k[static_cast<std::size_t>(i)].norm() + w.eps_k);
        audit.estimate_slack = std::max(audit.estimate_slack, slack);
    }
    Vec balance = Vec::Zero(MF.dim());
    for (int i = 0; i < m; ++i)
        balance += MF.space().weight(i) * w.xstar[static_cast<std::size_t>(i)];
    // Stationarity of the penalty step: the dual family balances against the
    // trust-ball normal, which vanishes when the ball is inactive.
    Vec ball_term = Vec::Zero(MF.dim());
    if (w.ball_active && w.u_norm > 0.0)
        ball_term = (2.0 * w.ball_multiplier / w.u_norm) * (w.xhat - xbar);
    audit.balance_residual = (balance + ball_term).norm();
    audit.q_norm_error = std::abs(weighted_p_norm(MF.space(), w.xstar, 2.0) - 1.0);
    audit.ok = audit.normal_residual <= 1e-6 && audit.balance_residual <= 1e-6 &&
               audit.q_norm_error <= 1e-6 && audit.estimate_slack <= 1e-8;
    return audit;
}

ConicEPResult conic_ep(const SampledMultifunction& MF, const std::vector<Vec>& a,
                       double p, int max_halvings, double stab_tol, long budget) {
    if (p != 2.0)
        throw NotSupportedError("extremal: only p = 2 is implemented");
    for (int i = 0; i < MF.space().size(); ++i)
        if (!is_conic(MF.value(i)))
            throw PreconditionFailedError("conic: value of atom " + MF.space().id(i) +
                                          " is not a cone");
    const Vec origin = Vec::Zero(MF.dim());
    require_member_all(MF, origin);
    // Extremality at the origin is scale-free for cones: the shifted
    // intersection is empty for one positive scale iff for all of them.
    IntersectionResult shifted = essential_intersection(MF.shifted(a), budget);
    if (!shifted.empty())
        throw PreconditionFailedError("conic: system is not extremal at the origin");
    double rad = 1.0;
    for (const Vec& ai : a) rad = std::max(rad, 2.0 * ai.norm());
    if (!check_nonoverlap(MF, origin, rad, budget))
        throw PreconditionFailedError("conic: nonoverlap fails at the origin");

    ConicEPResult out;
    EPWitness prev;
    bool have_prev = false;
    for (int k = 1; k <= max_halvings; ++k) {
        std::vector<Vec> ak;
        double alpha = std::ldexp(1.0, 1 - k);
        ak.reserve(a.size());
        for (const Vec& ai : a) ak.push_back(alpha * ai);
        EPWitness w = ep_step(MF, origin, rad, ak, k, p, budget);
        if (have_prev) {
            std::vector<Vec> diff;
            for (std::size_t i = 0; i < w.xstar.size(); ++i)
                diff.push_back(w.xstar[i] - prev.xstar[i]);
            double delta = weighted_p_norm(MF.space(), diff, 2.0);
            if (delta <= stab_tol) {
                out.witness = w;
                out.halvings = k;
                out.last_delta = delta;
                out.limiting_membership = true;
                for (int i = 0; i < MF.space().size(); ++i)
                    if (!limiting_normal_member(MF.value(i), origin,
                                                w.xstar[static_cast<std::size_t>(i)],
                                                1e-6, 1e-6, 1e-6, budget))
                        out.limiting_membership = false;
                if (w.balance.norm() > 1e-6)
                    throw PreconditionFailedError(
                        "conic: duals cannot balance (degenerate system)");
                return out;
            }
        }
        prev = w;
        have_prev = true;
    }
    throw NoStabilizationError("conic: witness did not stabilize within the halving budget");
}

}  // namespace essint
