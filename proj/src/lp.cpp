#include "essint/lp.hpp"

#include <limits>
#include <vector>

#include "essint/errors.hpp"

namespace essint {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;
constexpr int kMaxIter = 20000;

// Full-tableau simplex state in standard form: min c'z, T z = rhs, z >= 0,
// with rhs >= 0 maintained throughout.
struct Tableau {
    Eigen::MatrixXd T;        // m x n
    Eigen::VectorXd rhs;      // m
    std::vector<int> basis;   // m, column index of the basic variable per row

    void pivot(int row, int col) {
        T.row(row) /= T(row, col);
        rhs(row) /= T(row, col);
        T(row, col) = 1.0;  // cut round-off drift on the pivot itself
        for (int i = 0; i < T.rows(); ++i) {
            if (i == row) continue;
            double f = T(i, col);
            if (f == 0.0) continue;
            T.row(i) -= f * T.row(row);
            rhs(i) -= f * rhs(row);
            T(i, col) = 0.0;
        }
        basis[static_cast<std::size_t>(row)] = col;
    }

    // Bland's rule over the allowed columns; returns false when optimal.
    // Throws on iteration blowup (should be unreachable with Bland's rule).
    bool step(const Eigen::VectorXd& cost, const std::vector<bool>& allowed,
              bool* unbounded) {
        const int m = static_cast<int>(T.rows());
        const int n = static_cast<int>(T.cols());
        Eigen::VectorXd cb(m);
        for (int i = 0; i < m; ++i) cb(i) = cost(basis[static_cast<std::size_t>(i)]);
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (!allowed[static_cast<std::size_t>(j)]) continue;
            double red = cost(j) - cb.dot(T.col(j));
            if (red < -kCostTol) { enter = j; break; }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) > kPivotTol) {
                double ratio = rhs(i) / T(i, enter);
                if (ratio < best - 1e-12 ||
                    (ratio < best + 1e-12 &&
                     (leave < 0 || basis[static_cast<std::size_t>(i)] <
                                       basis[static_cast<std::size_t>(leave)]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) { *unbounded = true; return false; }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LPResult solve_lp(const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& A_ub, const Eigen::VectorXd& b_ub,
                  const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq) {
    const int n = static_cast<int>(c.size());
    const int mu = static_cast<int>(A_ub.rows());
    const int me = static_cast<int>(A_eq.rows());
    const int m = mu + me;
    // Standard-form variables: x = u - v with u, v >= 0, then one slack per
    // inequality row, then one artificial per row for phase 1.
    const int nv = 2 * n + mu;
    const int ntot = nv + m;

    Tableau tab;
    tab.T = Eigen::MatrixXd::Zero(m, ntot);
    tab.rhs = Eigen::VectorXd::Zero(m);
    tab.basis.assign(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        Eigen::RowVectorXd row(n);
        double b;
        if (i < mu) {
            row = A_ub.row(i);
            b = b_ub(i);
        } else {
            row = A_eq.row(i - mu);
            b = b_eq(i - mu);
        }
        double sign = (b < 0.0) ? -1.0 : 1.0;
        tab.T.block(i, 0, 1, n) = sign * row;
        tab.T.block(i, n, 1, n) = -sign * row;
        if (i < mu) tab.T(i, 2 * n + i) = sign;
        tab.T(i, nv + i) = 1.0;
        tab.rhs(i) = sign * b;
        tab.basis[static_cast<std::size_t>(i)] = nv + i;
    }

    // Phase 1: minimize the artificial mass.
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(ntot);
    cost1.tail(m).setOnes();
    std::vector<bool> allowed(static_cast<std::size_t>(ntot), true);
    bool unbounded = false;
    int iter = 0;
    while (tab.step(cost1, allowed, &unbounded)) {
        if (++iter > kMaxIter) throw Error("lp: phase 1 iteration limit");
    }
    double art = 0.0;
    for (int i = 0; i < m; ++i)
        if (tab.basis[static_cast<std::size_t>(i)] >= nv) art += tab.rhs(i);
    if (art > 1e-8) return {LPStatus::Infeasible, Eigen::VectorXd(), 0.0};

    // Drive leftover zero-level artificials out of the basis where possible;
    // rows that cannot pivot are redundant and stay parked at zero.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[static_cast<std::size_t>(i)] < nv) continue;
        for (int j = 0; j < nv; ++j) {
            if (std::abs(tab.T(i, j)) > 1e-7) {
                tab.pivot(i, j);
                break;
            }
        }
    }
    for (int j = nv; j < ntot; ++j) allowed[static_cast<std::size_t>(j)] = false;

    // Phase 2.
    Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(ntot);
    cost2.head(n) = c;
    cost2.segment(n, n) = -c;
    unbounded = false;
    iter = 0;
    while (tab.step(cost2, allowed, &unbounded)) {
        if (++iter > kMaxIter) throw Error("lp: phase 2 iteration limit");
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(ntot);
    for (int i = 0; i < m; ++i) z(tab.basis[static_cast<std::size_t>(i)]) = tab.rhs(i);
    Eigen::VectorXd x = z.head(n) - z.segment(n, n);
    if (unbounded) return {LPStatus::Unbounded, x, -std::numeric_limits<double>::infinity()};
    return {LPStatus::Optimal, x, c.dot(x)};
}

LPResult lp_feasible_point(const Eigen::MatrixXd& A_ub, const Eigen::VectorXd& b_ub,
                           const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq) {
    int n = static_cast<int>(A_ub.cols() > 0 ? A_ub.cols() : A_eq.cols());
    return solve_lp(Eigen::VectorXd::Zero(n), A_ub, b_ub, A_eq, b_eq);
}

}  // namespace essint
