#ifndef KCLUST_DIAGNOSTICS_HPP
#define KCLUST_DIAGNOSTICS_HPP

#include <string>

#include "kclust/bandwidth.hpp"
#include "kclust/components.hpp"
#include "kclust/partition.hpp"

namespace kclust {

// Separation diagnostics of a labeled sample against the true mixture.
struct SeparationReport {
    // Minimum MMD between distinct true components; +infinity when K = 1.
    double min_pair_mmd = 0.0;
    // max_i rho(psi_i, mean embedding of its planted cluster).
    double max_radius = 0.0;
    // Largest pointwise MMD within a planted cluster.
    double max_diameter = 0.0;
    // min_pair_mmd / max_radius; +infinity when max_radius = 0.
    double ratio = 0.0;
    // min_pair_mmd - 4 * max_radius, so that the sufficient separation
    // condition holds at slack epsilon iff epsilon_margin > epsilon.
    double epsilon_margin = 0.0;

    static std::string csv_header();
    std::string csv_row() const;
};

// Computes the report from the sample's planted partition; every planted
// cluster must be non-empty.
SeparationReport separation_stats(const LabeledSample& sample, const MixingMeasure& lam,
                                  const BandwidthSplit& bw);

// Sufficient separation at slack epsilon:
// min_pair_mmd > 4 * max_radius + epsilon.
bool check_sufficient(const SeparationReport& report, double epsilon);

// Fraction of points on which two partitions agree under the best label
// matching: exhaustive over permutations for K <= 6, optimal assignment on
// the K x K confusion matrix above that.  Partitions of unequal K are
// compared after padding the smaller one with empty clusters.
double partition_agreement(const Partition& a, const Partition& b);

}  // namespace kclust

#endif  // KCLUST_DIAGNOSTICS_HPP
