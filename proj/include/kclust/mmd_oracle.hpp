#ifndef KCLUST_MMD_ORACLE_HPP
#define KCLUST_MMD_ORACLE_HPP

#include <cstdint>

#include "kclust/components.hpp"

namespace kclust {

// Monte-Carlo estimate of a squared MMD with its standard error.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long pairs = 0;
};

// Unbiased sampling estimate of MMD^2(p, q) under the Gaussian kernel
// g_zeta, used as an independent check of the closed-form routes.  Each of
// the n_pairs draws takes fresh x, x' ~ p and y, y' ~ q and evaluates
//
//   h = g(x, x') + g(y, y') - g(x, y') - g(x', y),
//
// whose mean is exactly MMD^2(p, q); the reported std_error is the sample
// standard deviation of h over the draws divided by sqrt(n_pairs).
// Deterministic given the seed.
McEstimate mmd_monte_carlo_oracle(const Component& p, const Component& q, double zeta,
                                  long n_pairs, std::uint64_t seed);

}  // namespace kclust

#endif  // KCLUST_MMD_ORACLE_HPP
