#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace essint {

/// Seeded deterministic sampling helper.  Draws raw 64-bit words from the
/// (fully specified) mt19937_64 engine and maps them itself, so identical
/// seeds give identical streams regardless of the standard library's
/// distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via the Marsaglia polar method.
    double gaussian() {
        while (true) {
            double u = 2.0 * uniform() - 1.0;
            double v = 2.0 * uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    Eigen::VectorXd gaussian_vector(int n) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = gaussian();
        return x;
    }

    /// Uniform direction on the unit sphere.
    Eigen::VectorXd unit_vector(int n) {
        while (true) {
            Eigen::VectorXd x = gaussian_vector(n);
            double s = x.norm();
            if (s > 1e-12) return x / s;
        }
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace essint
