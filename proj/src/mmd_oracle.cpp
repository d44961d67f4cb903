#include "kclust/mmd_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "kclust/rng.hpp"

namespace kclust {

McEstimate mmd_monte_carlo_oracle(const Component& p, const Component& q, double zeta,
                                  long n_pairs, std::uint64_t seed) {
    if (!(zeta > 0.0)) throw std::invalid_argument("mmd_monte_carlo_oracle: zeta must be positive");
    if (n_pairs < 2) throw std::invalid_argument("mmd_monte_carlo_oracle: need at least 2 pairs");
    if (p.dim() != q.dim())
        throw std::invalid_argument("mmd_monte_carlo_oracle: dimension mismatch");
    Rng rng(seed);
    auto g = [zeta](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return std::exp(-(a - b).squaredNorm() / zeta);
    };
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (long l = 0; l < n_pairs; ++l) {
        const Eigen::VectorXd x = p.sample(rng);
        const Eigen::VectorXd xp = p.sample(rng);
        const Eigen::VectorXd y = q.sample(rng);
        const Eigen::VectorXd yp = q.sample(rng);
        const double h = g(x, xp) + g(y, yp) - g(x, yp) - g(xp, y);
        sum.add(h);
        sum_sq.add(h * h);
    }
    const double n = static_cast<double>(n_pairs);
    const double mean = sum.value() / n;
    const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), n_pairs};
}

}  // namespace kclust
