#ifndef KCLUST_COUNTEREXAMPLES_HPP
#define KCLUST_COUNTEREXAMPLES_HPP

#include <cstdint>

#include "kclust/components.hpp"

namespace kclust {

// Two-component mixture on which optimal kernel k-means provably prefers a
// wrong partition: a bimodal first component
//   gamma_1 = 1/2 U[-eps, eps] + 1/2 U[r-eps, r+eps]
// with weight 1 - lambda2, and a distant second component
//   gamma_2 = U[D r - eps, D r + eps]
// with small weight lambda2.  Validity: D > 2 > r > eps > 0, 4 eps^2 < zeta,
// lambda2 in (0, 0.5).
struct Thm1Params {
    double r = 0.5;
    double eps = 0.005;
    double D = 50.0;
    double lambda2 = 0.015;
    double zeta = 1.0;

    void validate() const;
};

MixingMeasure theorem1_mixture(const Thm1Params& p);

// One trial of the impossibility experiment: sample n points, evaluate the
// k-means objective of the planted two-cluster partition and of the
// alternative partition that splits gamma_1's two intervals (grouping the
// interval at r with the far interval), and compare.  The trial is void when
// some interval received no sample points.
struct ImpossibilityTrial {
    double planted_objective = 0.0;
    double alternative_objective = 0.0;
    bool kmeans_failed = false;  // alternative beats planted
    bool void_trial = false;
};
ImpossibilityTrial run_impossibility_trial(const Thm1Params& p, int n, double beta,
                                           std::uint64_t seed);

// Two-component mixture on which farthest-first k-means fails for about half
// of the first-center choices and single linkage fails deterministically:
//   gamma_1 = 1/2 U[-eps, eps] + 1/2 U[r-eps, r+eps]
//   gamma_2 = 1/2 U[2r-K-eps, 2r-K+eps] + 1/2 U[3r-K-eps, 3r-K+eps]
// with equal mixture weights, where K = k_off shifts gamma_2 so that the
// cross-component gap is smaller than the within-component gaps.
// Validity: 1 > r > 2 k_off > 16 eps > 0.
struct Thm3Params {
    double r = 0.5;
    double k_off = 0.2;
    double eps = 0.01;
    double zeta = 1.0;

    void validate() const;
};

MixingMeasure theorem3_mixture(const Thm3Params& p);

// One trial of the necessity experiment: sample n points, run farthest-first
// k-means from every sample point as first center and record the fraction of
// first centers whose final partition misses the planted one, and run single
// linkage once.  Void when one of the four intervals is unpopulated.
struct NecessityTrial {
    double ffk_failed_fraction = 0.0;
    bool lnk_failed = false;
    bool void_trial = false;
};
NecessityTrial run_necessity_trial(const Thm3Params& p, int n, double beta, std::uint64_t seed);

}  // namespace kclust

#endif  // KCLUST_COUNTEREXAMPLES_HPP
