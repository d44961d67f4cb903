#include "kclust/counterexamples.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kclust/bandwidth.hpp"
#include "kclust/clustering.hpp"
#include "kclust/diagnostics.hpp"
#include "kclust/kernel.hpp"

namespace kclust {

void Thm1Params::validate() const {
    if (!(D > 2.0 && 2.0 > r && r > eps && eps > 0.0))
        throw std::invalid_argument("Thm1Params: need D > 2 > r > eps > 0");
    if (!(4.0 * eps * eps < zeta))
        throw std::invalid_argument("Thm1Params: need 4 eps^2 < zeta");
    if (!(lambda2 > 0.0 && lambda2 < 0.5))
        throw std::invalid_argument("Thm1Params: need lambda2 in (0, 0.5)");
}

MixingMeasure theorem1_mixture(const Thm1Params& p) {
    p.validate();
    FiniteMix gamma1;
    gamma1.weights = {0.5, 0.5};
    gamma1.parts.emplace_back(UniformComponent{-p.eps, p.eps});
    gamma1.parts.emplace_back(UniformComponent{p.r - p.eps, p.r + p.eps});
    std::vector<Component> comps;
    comps.emplace_back(std::move(gamma1));
    comps.emplace_back(UniformComponent{p.D * p.r - p.eps, p.D * p.r + p.eps});
    return MixingMeasure({1.0 - p.lambda2, p.lambda2}, std::move(comps));
}

namespace {

// Samples always land inside one of the construction's disjoint intervals,
// so nearest-center classification recovers the interval exactly.
std::vector<int> classify_by_center(const Eigen::MatrixXd& points,
                                    const std::vector<double>& centers) {
    std::vector<int> out(points.rows());
    for (int i = 0; i < points.rows(); ++i) {
        const double x = points(i, 0);
        int best = 0;
        double best_d = std::abs(x - centers[0]);
        for (std::size_t c = 1; c < centers.size(); ++c) {
            const double d = std::abs(x - centers[c]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        out[i] = best;
    }
    return out;
}

bool all_populated(const std::vector<int>& interval, int count) {
    std::vector<int> seen(count, 0);
    for (int c : interval) ++seen[c];
    for (int s : seen)
        if (s == 0) return false;
    return true;
}

}  // namespace

ImpossibilityTrial run_impossibility_trial(const Thm1Params& p, int n, double beta,
                                           std::uint64_t seed) {
    const MixingMeasure lam = theorem1_mixture(p);
    const LabeledSample sample = sample_labeled(lam, n, seed);

    const std::vector<int> interval =
        classify_by_center(sample.points, {0.0, p.r, p.D * p.r});
    ImpossibilityTrial trial;
    if (!all_populated(interval, 3)) {
        trial.void_trial = true;
        return trial;
    }

    // Alternative split: the interval at 0 alone versus the interval at r
    // grouped with the far interval.
    std::vector<int> alt_labels(interval.size());
    for (std::size_t i = 0; i < interval.size(); ++i) alt_labels[i] = interval[i] == 0 ? 0 : 1;
    const Partition alternative(std::move(alt_labels), 2);

    const BandwidthSplit bw(beta, p.zeta, 1);
    const KernelMatrix G = kernel_matrix(sample.points, bw.eta());
    trial.planted_objective = kmeans_objective(G, sample.planted, bw);
    trial.alternative_objective = kmeans_objective(G, alternative, bw);
    trial.kmeans_failed = trial.alternative_objective < trial.planted_objective;
    return trial;
}

void Thm3Params::validate() const {
    if (!(1.0 > r && r > 2.0 * k_off && 2.0 * k_off > 16.0 * eps && eps > 0.0))
        throw std::invalid_argument("Thm3Params: need 1 > r > 2 k_off > 16 eps > 0");
    if (!(zeta > 0.0)) throw std::invalid_argument("Thm3Params: zeta must be positive");
}

MixingMeasure theorem3_mixture(const Thm3Params& p) {
    p.validate();
    FiniteMix gamma1;
    gamma1.weights = {0.5, 0.5};
    gamma1.parts.emplace_back(UniformComponent{-p.eps, p.eps});
    gamma1.parts.emplace_back(UniformComponent{p.r - p.eps, p.r + p.eps});
    FiniteMix gamma2;
    gamma2.weights = {0.5, 0.5};
    gamma2.parts.emplace_back(
        UniformComponent{2.0 * p.r - p.k_off - p.eps, 2.0 * p.r - p.k_off + p.eps});
    gamma2.parts.emplace_back(
        UniformComponent{3.0 * p.r - p.k_off - p.eps, 3.0 * p.r - p.k_off + p.eps});
    std::vector<Component> comps;
    comps.emplace_back(std::move(gamma1));
    comps.emplace_back(std::move(gamma2));
    return MixingMeasure({0.5, 0.5}, std::move(comps));
}

NecessityTrial run_necessity_trial(const Thm3Params& p, int n, double beta, std::uint64_t seed) {
    const MixingMeasure lam = theorem3_mixture(p);
    const LabeledSample sample = sample_labeled(lam, n, seed);

    const std::vector<int> interval = classify_by_center(
        sample.points, {0.0, p.r, 2.0 * p.r - p.k_off, 3.0 * p.r - p.k_off});
    NecessityTrial trial;
    if (!all_populated(interval, 4)) {
        trial.void_trial = true;
        return trial;
    }

    const BandwidthSplit bw(beta, p.zeta, 1);
    const KernelMatrix G = kernel_matrix(sample.points, bw.eta());

    int failed = 0;
    for (int first = 0; first < n; ++first) {
        const ClusteringResult res = ffk(G, 2, bw, first);
        if (partition_agreement(res.partition, sample.planted) < 1.0) ++failed;
    }
    trial.ffk_failed_fraction = static_cast<double>(failed) / n;

    const ClusteringResult single = linkage(G, 2, bw, LinkageMode::single);
    trial.lnk_failed = partition_agreement(single.partition, sample.planted) < 1.0;
    return trial;
}

}  // namespace kclust
