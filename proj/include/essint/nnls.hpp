#pragma once

#include <Eigen/Dense>

namespace essint {

struct NNLSResult {
    Eigen::VectorXd x;         // multipliers, x >= 0
    Eigen::VectorXd residual;  // E x - f
    double residual_norm = 0.0;
};

/// Minimize ||E x - f|| over x >= 0 (Lawson-Hanson active set).
NNLSResult solve_nnls(const Eigen::MatrixXd& E, const Eigen::VectorXd& f);

}  // namespace essint
