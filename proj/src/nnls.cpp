#include "essint/nnls.hpp"

#include <vector>

#include "essint/errors.hpp"

namespace essint {

namespace {

Eigen::VectorXd passive_least_squares(const Eigen::MatrixXd& E, const Eigen::VectorXd& f,
                                      const std::vector<int>& passive) {
    Eigen::MatrixXd Ep(E.rows(), static_cast<int>(passive.size()));
    for (int k = 0; k < static_cast<int>(passive.size()); ++k)
        Ep.col(k) = E.col(passive[static_cast<std::size_t>(k)]);
    return Ep.colPivHouseholderQr().solve(f);
}

}  // namespace

NNLSResult solve_nnls(const Eigen::MatrixXd& E, const Eigen::VectorXd& f) {
    const int n = static_cast<int>(E.cols());
    NNLSResult out;
    out.x = Eigen::VectorXd::Zero(n);
    if (n == 0) {
        out.residual = -f;
        out.residual_norm = f.norm();
        return out;
    }

    std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    double wtol = 1e-12 * std::max(1.0, E.cwiseAbs().maxCoeff() * (1.0 + f.norm()));

    int outer = 0;
    while (true) {
        if (++outer > 10 * n + 50) throw Error("nnls: iteration limit");
        Eigen::VectorXd w = E.transpose() * (f - E * x);
        int j = -1;
        double wmax = wtol;
        for (int k = 0; k < n; ++k) {
            if (!in_passive[static_cast<std::size_t>(k)] && w(k) > wmax) {
                wmax = w(k);
                j = k;
            }
        }
        if (j < 0) break;
        in_passive[static_cast<std::size_t>(j)] = true;

        int inner = 0;
        while (true) {
            if (++inner > 10 * n + 50) throw Error("nnls: inner iteration limit");
            std::vector<int> passive;
            for (int k = 0; k < n; ++k)
                if (in_passive[static_cast<std::size_t>(k)]) passive.push_back(k);
            Eigen::VectorXd zp = passive_least_squares(E, f, passive);
            bool all_pos = true;
            for (int k = 0; k < static_cast<int>(passive.size()); ++k)
                if (zp(k) <= 1e-12) { all_pos = false; break; }
            if (all_pos) {
                x.setZero();
                for (int k = 0; k < static_cast<int>(passive.size()); ++k)
                    x(passive[static_cast<std::size_t>(k)]) = zp(k);
                break;
            }
            double alpha = 1.0;
            for (int k = 0; k < static_cast<int>(passive.size()); ++k) {
                int idx = passive[static_cast<std::size_t>(k)];
                if (zp(k) <= 1e-12) {
                    double denom = x(idx) - zp(k);
                    if (denom > 0.0) alpha = std::min(alpha, x(idx) / denom);
                }
            }
            for (int k = 0; k < static_cast<int>(passive.size()); ++k) {
                int idx = passive[static_cast<std::size_t>(k)];
                x(idx) += alpha * (zp(k) - x(idx));
            }
            for (int k = 0; k < n; ++k) {
                if (in_passive[static_cast<std::size_t>(k)] && x(k) < 1e-12) {
                    x(k) = 0.0;
                    in_passive[static_cast<std::size_t>(k)] = false;
                }
            }
        }
    }

    out.x = x;
    out.residual = E * x - f;
    out.residual_norm = out.residual.norm();
    return out;
}

}  // namespace essint
