#ifndef KCLUST_BANDWIDTH_HPP
#define KCLUST_BANDWIDTH_HPP

#include <cmath>
#include <stdexcept>

namespace kclust {

// Bandwidth pair (beta, zeta) for clustering smoothed data.
//
// beta is the smoothing bandwidth: each data point x_i is replaced by the
// Gaussian component psi_i = N(x_i, beta^2 I).  zeta is the bandwidth of the
// Gaussian kernel used to compare those components.  Their interaction is
// fully captured by the effective bandwidth
//
//     eta = 4 beta^2 + zeta,
//
// which is always recomputed from (beta, zeta) and never stored separately,
// and by the scale factor
//
//     C = 2 (zeta / eta)^(d/2)
//
// that converts kernel values at bandwidth eta into squared MMD values
// between the smoothed components (see mmd_pointwise).
class BandwidthSplit {
public:
    BandwidthSplit(double beta, double zeta, int dim) : beta_(beta), zeta_(zeta), dim_(dim) {
        if (!(beta > 0.0)) throw std::invalid_argument("BandwidthSplit: beta must be positive");
        if (!(zeta > 0.0)) throw std::invalid_argument("BandwidthSplit: zeta must be positive");
        if (dim < 1) throw std::invalid_argument("BandwidthSplit: dim must be >= 1");
    }

    double beta() const { return beta_; }
    double zeta() const { return zeta_; }
    int dim() const { return dim_; }

    double eta() const { return 4.0 * beta_ * beta_ + zeta_; }

    // (zeta / eta)^(d/2): scale of embedding inner products <mu_i, mu_j>.
    double embed_scale() const { return std::pow(zeta_ / eta(), 0.5 * dim_); }

    // C = 2 (zeta / eta)^(d/2): scale relating squared MMD to 1 - kernel.
    double mmd_scale() const { return 2.0 * embed_scale(); }

private:
    double beta_;
    double zeta_;
    int dim_;
};

}  // namespace kclust

#endif  // KCLUST_BANDWIDTH_HPP
