#include "essint/qp.hpp"

#include <limits>
#include <vector>

#include "essint/errors.hpp"
#include "essint/lp.hpp"

namespace essint {

namespace {

constexpr int kMaxIter = 2000;

Eigen::MatrixXd active_rows(const Eigen::MatrixXd& G, const Eigen::MatrixXd& E,
                            const std::vector<int>& work) {
    const int n = static_cast<int>(G.cols() > 0 ? G.cols() : E.cols());
    Eigen::MatrixXd A(static_cast<int>(work.size()) + static_cast<int>(E.rows()), n);
    for (int k = 0; k < static_cast<int>(work.size()); ++k)
        A.row(k) = G.row(work[static_cast<std::size_t>(k)]);
    if (E.rows() > 0) A.bottomRows(E.rows()) = E;
    return A;
}

double kkt_residual(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                    const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                    const Eigen::MatrixXd& E, const Eigen::VectorXd& d,
                    const Eigen::VectorXd& z, const Eigen::VectorXd& lambda,
                    const Eigen::VectorXd& mu) {
    Eigen::VectorXd grad = Q * z + c;
    if (G.rows() > 0) grad += G.transpose() * lambda;
    if (E.rows() > 0) grad += E.transpose() * mu;
    double r = grad.lpNorm<Eigen::Infinity>();
    for (int i = 0; i < G.rows(); ++i) {
        double slack = G.row(i).dot(z) - h(i);
        r = std::max(r, slack);                       // primal feasibility
        r = std::max(r, -std::min(0.0, lambda(i)));   // dual feasibility
        r = std::max(r, std::abs(lambda(i) * slack)); // complementarity
    }
    for (int i = 0; i < E.rows(); ++i) r = std::max(r, std::abs(E.row(i).dot(z) - d(i)));
    return r;
}

}  // namespace

QPResult solve_qp_from(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                       const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                       const Eigen::MatrixXd& E, const Eigen::VectorXd& d,
                       const Eigen::VectorXd& z0) {
    const int n = static_cast<int>(Q.rows());
    const int mg = static_cast<int>(G.rows());
    Eigen::VectorXd z = z0;

    std::vector<int> work;
    for (int i = 0; i < mg; ++i)
        if (G.row(i).dot(z) > h(i) - 1e-9) work.push_back(i);

    QPResult out;
    for (int iter = 1; iter <= kMaxIter; ++iter) {
        out.iterations = iter;
        const int na = static_cast<int>(work.size()) + static_cast<int>(E.rows());
        Eigen::MatrixXd A = active_rows(G, E, work);
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + na, n + na);
        K.topLeftCorner(n, n) = Q;
        if (na > 0) {
            K.topRightCorner(n, na) = A.transpose();
            K.bottomLeftCorner(na, n) = A;
        }
        Eigen::VectorXd rhs(n + na);
        rhs.head(n) = -(Q * z + c);
        for (int k = 0; k < static_cast<int>(work.size()); ++k)
            rhs(n + k) = h(work[static_cast<std::size_t>(k)]) - G.row(work[static_cast<std::size_t>(k)]).dot(z);
        for (int k = 0; k < E.rows(); ++k)
            rhs(n + static_cast<int>(work.size()) + k) = d(k) - E.row(k).dot(z);

        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(K);
        Eigen::VectorXd sol = cod.solve(rhs);
        double cons = (K * sol - rhs).lpNorm<Eigen::Infinity>();
        bool consistent = cons <= 1e-7 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>());

        if (consistent) {
            Eigen::VectorXd p = sol.head(n);
            if (p.lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + z.lpNorm<Eigen::Infinity>())) {
                // Stationary on the face; test working-set multipliers.
                int drop = -1;
                for (int k = 0; k < static_cast<int>(work.size()); ++k) {
                    if (sol(n + k) < -1e-9) { drop = k; break; }
                }
                if (drop < 0) {
                    out.status = QPStatus::Optimal;
                    out.z = z;
                    out.lambda = Eigen::VectorXd::Zero(mg);
                    for (int k = 0; k < static_cast<int>(work.size()); ++k)
                        out.lambda(work[static_cast<std::size_t>(k)]) = std::max(0.0, sol(n + k));
                    out.mu = sol.tail(E.rows());
                    out.objective = 0.5 * z.dot(Q * z) + c.dot(z);
                    out.kkt_residual = kkt_residual(Q, c, G, h, E, d, z, out.lambda, out.mu);
                    return out;
                }
                work.erase(work.begin() + drop);
                continue;
            }
            // Step toward the face minimizer, stopping at the first blocker.
            double alpha = 1.0;
            int blocker = -1;
            for (int i = 0; i < mg; ++i) {
                bool in_work = false;
                for (int w : work)
                    if (w == i) { in_work = true; break; }
                if (in_work) continue;
                double gp = G.row(i).dot(p);
                if (gp > 1e-12) {
                    double ai = (h(i) - G.row(i).dot(z)) / gp;
                    if (ai < alpha - 1e-12) {
                        alpha = ai;
                        blocker = i;
                    } else if (ai < alpha + 1e-12 && blocker >= 0 && i < blocker) {
                        blocker = i;
                    }
                }
            }
            z += std::max(0.0, alpha) * p;
            if (blocker >= 0) work.push_back(blocker);
            continue;
        }

        // The face problem has no finite minimum: move along a flat descent
        // direction in the kernel of [Q; A] until a constraint blocks.
        Eigen::MatrixXd S(n + na, n);
        S.topRows(n) = Q;
        if (na > 0) S.bottomRows(na) = A;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
        lu.setThreshold(1e-9);
        Eigen::MatrixXd kernel = lu.kernel();
        Eigen::VectorXd grad = Q * z + c;
        Eigen::VectorXd u;
        for (int k = 0; k < kernel.cols(); ++k) {
            double s = grad.dot(kernel.col(k));
            if (std::abs(s) > 1e-10 * std::max(1.0, kernel.col(k).norm())) {
                u = kernel.col(k);
                if (s > 0) u = -u;
                break;
            }
        }
        if (u.size() == 0) throw Error("qp: inconsistent face system without descent direction");
        double alpha = std::numeric_limits<double>::infinity();
        int blocker = -1;
        for (int i = 0; i < mg; ++i) {
            bool in_work = false;
            for (int w : work)
                if (w == i) { in_work = true; break; }
            if (in_work) continue;
            double gu = G.row(i).dot(u);
            if (gu > 1e-12) {
                double ai = (h(i) - G.row(i).dot(z)) / gu;
                if (ai < alpha - 1e-12 || (ai < alpha + 1e-12 && (blocker < 0 || i < blocker))) {
                    alpha = std::min(alpha, ai);
                    blocker = i;
                }
            }
        }
        if (blocker < 0) {
            out.status = QPStatus::Unbounded;
            out.z = z;
            return out;
        }
        z += std::max(0.0, alpha) * u;
        work.push_back(blocker);
    }
    throw Error("qp: iteration limit");
}

QPResult solve_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                  const Eigen::MatrixXd& E, const Eigen::VectorXd& d) {
    LPResult feas = lp_feasible_point(G, h, E, d);
    if (feas.status == LPStatus::Infeasible) {
        QPResult out;
        out.status = QPStatus::Infeasible;
        return out;
    }
    return solve_qp_from(Q, c, G, h, E, d, feas.x);
}

}  // namespace essint
