#pragma once

#include <Eigen/Dense>

namespace essint {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Eigen::VectorXd x;       // primal point (valid when status != Infeasible)
    double objective = 0.0;  // c'x at the returned point
};

/// Minimize c'x subject to A_ub x <= b_ub and A_eq x = b_eq, x free.
/// Dense two-phase simplex with Bland's rule; intended for desk-scale
/// problems (tens of rows and columns).  Either constraint block may be
/// empty (0 rows).
LPResult solve_lp(const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& A_ub, const Eigen::VectorXd& b_ub,
                  const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq);

/// Feasibility of {x : A_ub x <= b_ub, A_eq x = b_eq}.  On success returns
/// a feasible point.
LPResult lp_feasible_point(const Eigen::MatrixXd& A_ub, const Eigen::VectorXd& b_ub,
                           const Eigen::MatrixXd& A_eq, const Eigen::VectorXd& b_eq);

inline Eigen::MatrixXd empty_matrix(int cols) { return Eigen::MatrixXd(0, cols); }
inline Eigen::VectorXd empty_vector() { return Eigen::VectorXd(0); }

}  // namespace essint
