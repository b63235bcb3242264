#pragma once

#include <Eigen/Dense>

namespace essint {

enum class QPStatus { Optimal, Infeasible, Unbounded };

struct QPResult {
    QPStatus status = QPStatus::Infeasible;
    Eigen::VectorXd z;
    Eigen::VectorXd lambda;    // multipliers of G z <= h rows (>= 0 at optimum)
    Eigen::VectorXd mu;        // multipliers of E z = d rows
    double objective = 0.0;
    double kkt_residual = 0.0; // stationarity + feasibility + complementarity
    int iterations = 0;
};

/// Minimize  1/2 z'Qz + c'z  subject to  G z <= h,  E z = d.
/// Q must be positive semidefinite; the active-set method resolves flat
/// directions through rank-revealing solves, so a singular Q is fine as long
/// as the problem is bounded below on the feasible set.
QPResult solve_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                  const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                  const Eigen::MatrixXd& E, const Eigen::VectorXd& d);

/// Same, starting from a known feasible point.
QPResult solve_qp_from(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c,
                       const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                       const Eigen::MatrixXd& E, const Eigen::VectorXd& d,
                       const Eigen::VectorXd& z0);

}  // namespace essint
