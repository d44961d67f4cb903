#ifndef KCLUST_ESTIMATION_HPP
#define KCLUST_ESTIMATION_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "kclust/components.hpp"
#include "kclust/partition.hpp"

namespace kclust {

// Plug-in estimate of a mixing measure from a clustered sample: component k
// is the equal-weight blend of the smoothing kernels N(x_i, beta^2 I) over
// cluster k, carrying weight |c_k| / n.
struct EstimatedMixingMeasure {
    std::vector<std::vector<int>> clusters;  // member indices, increasing
    double beta = 1.0;
    int n = 0;

    int k() const { return static_cast<int>(clusters.size()); }
    std::vector<double> weights() const;
};

// Builds the estimate from a partition; empty clusters are rejected.
EstimatedMixingMeasure estimate_mixing_measure(const Eigen::MatrixXd& points, const Partition& p,
                                               double beta);

// Materializes the estimate as a MixingMeasure whose components are finite
// mixtures of Gaussians, enabling component_mmd and wasserstein against
// arbitrary mixtures.
MixingMeasure to_mixing_measure(const EstimatedMixingMeasure& est, const Eigen::MatrixXd& points);

// Minimum-cost transport between two discrete weight vectors under the given
// cost matrix (rows: a, columns: b).  Exact LP optimum via the
// transportation simplex.
double min_cost_transport(const Eigen::MatrixXd& cost, std::span<const double> a,
                          std::span<const double> b);

// Level-1 Wasserstein distance between mixing measures with the component
// MMD rho as ground metric.
double wasserstein(const MixingMeasure& a, const MixingMeasure& b, double zeta);

// Plug-in Bayes reassignment: the cluster maximizing the summed KDE kernel
// sum_{j in c_k} exp(-||x - x_j||^2 / (2 beta^2)) / (2 pi beta^2)^(d/2),
// equivalently argmax_k weight_k * (estimated component density at x).
// Ties resolve to the lowest index and set *tie when provided.
int bayes_reassign(const EstimatedMixingMeasure& est, const Eigen::MatrixXd& points,
                   const Eigen::VectorXd& x, bool* tie = nullptr);

// Agreement between plug-in reassignment and the true Bayes labels over the
// grid points outside the exceptional set E(t).  Estimated cluster labels
// are first matched to true components by the permutation maximizing
// agreement with the sample's planted partition.  When every grid point is
// exceptional the scan is vacuous and carries no agreement value.
struct BayesScan {
    double fraction = 0.0;
    int considered = 0;
    bool vacuous = true;
};
BayesScan bayes_agreement_scan(const EstimatedMixingMeasure& est, const MixingMeasure& truth,
                               const LabeledSample& sample, const Eigen::VectorXd& grid, double t);

// Plain-text serialization (bandwidth, weights as cluster sizes, member
// lists); read_estimate(write_estimate(e)) round-trips exactly.
void write_estimate(const EstimatedMixingMeasure& est, const std::string& path);
EstimatedMixingMeasure read_estimate(const std::string& path);

}  // namespace kclust

#endif  // KCLUST_ESTIMATION_HPP
