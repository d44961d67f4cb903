#ifndef KCLUST_MMD_HPP
#define KCLUST_MMD_HPP

#include <span>

#include "kclust/bandwidth.hpp"
#include "kclust/kernel.hpp"

namespace kclust {

// MMD geometry between smoothed data points.
//
// Replacing each point x_i by psi_i = N(x_i, beta^2 I) and comparing the
// components with the Gaussian kernel of bandwidth zeta yields closed forms
// in the kernel matrix at eta = 4 beta^2 + zeta:
//
//   <mu_i, mu_j>      = (zeta/eta)^(d/2) G[i][j]
//   rho^2(psi_i, psi_j) = C (1 - G[i][j]),        C = 2 (zeta/eta)^(d/2).
//
// Every function below checks that the kernel matrix was built at exactly
// the eta implied by `bw` and throws std::invalid_argument otherwise.

// rho(psi_i, psi_j).
double mmd_pointwise(int i, int j, const KernelMatrix& G, const BandwidthSplit& bw);

// rho(psi_i, mean of {psi_j : j in cluster}); cluster must be non-empty.
// The radicand is clamped at zero before the square root.
double mmd_point_to_cluster(int i, std::span<const int> cluster, const KernelMatrix& G,
                            const BandwidthSplit& bw);

// rho(mean of cluster a, mean of cluster b); both clusters non-empty.
double mmd_cluster_to_cluster(std::span<const int> a, std::span<const int> b,
                              const KernelMatrix& G, const BandwidthSplit& bw);

// Compensated sum of G[i][j] over i in a, j in b.
double gram_block_sum(std::span<const int> a, std::span<const int> b, const KernelMatrix& G);

}  // namespace kclust

#endif  // KCLUST_MMD_HPP
