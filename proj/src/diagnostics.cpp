#include "kclust/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "kclust/clustering.hpp"
#include "kclust/csv.hpp"
#include "kclust/detail/assignment.hpp"
#include "kclust/kernel.hpp"
#include "kclust/mmd.hpp"

namespace kclust {

std::string SeparationReport::csv_header() {
    return "min_pair_mmd,max_radius,max_diameter,ratio,epsilon_margin";
}

std::string SeparationReport::csv_row() const {
    return format_real(min_pair_mmd) + "," + format_real(max_radius) + "," +
           format_real(max_diameter) + "," + format_real(ratio) + "," +
           format_real(epsilon_margin);
}

SeparationReport separation_stats(const LabeledSample& sample, const MixingMeasure& lam,
                                  const BandwidthSplit& bw) {
    if (lam.dim() != bw.dim())
        throw std::invalid_argument("separation_stats: bandwidth dimension mismatch");
    if (sample.points.cols() != lam.dim())
        throw std::invalid_argument("separation_stats: sample dimension mismatch");
    if (sample.planted.k != lam.k())
        throw std::invalid_argument("separation_stats: planted K differs from mixture K");
    sample.planted.validate();
    sample.planted.require_nonempty();

    const KernelMatrix G = kernel_matrix(sample.points, bw.eta());

    SeparationReport rep;
    rep.min_pair_mmd = std::numeric_limits<double>::infinity();
    for (int a = 0; a < lam.k(); ++a)
        for (int b = a + 1; b < lam.k(); ++b)
            rep.min_pair_mmd = std::min(
                rep.min_pair_mmd, component_mmd(lam.components[a], lam.components[b], bw.zeta()));

    // max_i rho(psi_i, planted cluster mean) is exactly the k-center objective
    rep.max_radius = kcenter_objective(G, sample.planted, bw);

    rep.max_diameter = 0.0;
    const int n = sample.planted.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sample.planted.labels[i] == sample.planted.labels[j])
                rep.max_diameter = std::max(rep.max_diameter, mmd_pointwise(i, j, G, bw));

    rep.ratio = rep.max_radius > 0.0 ? rep.min_pair_mmd / rep.max_radius
                                     : std::numeric_limits<double>::infinity();
    rep.epsilon_margin = rep.min_pair_mmd - 4.0 * rep.max_radius;
    return rep;
}

bool check_sufficient(const SeparationReport& report, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("check_sufficient: epsilon must be >= 0");
    return report.min_pair_mmd > 4.0 * report.max_radius + epsilon;
}

double partition_agreement(const Partition& a, const Partition& b) {
    a.validate();
    b.validate();
    if (a.n() != b.n()) throw std::invalid_argument("partition_agreement: size mismatch");
    if (a.n() == 0) throw std::invalid_argument("partition_agreement: empty partitions");
    const int n = a.n();
    const int k = std::max(a.k, b.k);  // pad the smaller partition with empty clusters

    Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < n; ++i) confusion(a.labels[i], b.labels[i]) += 1.0;

    double best = 0.0;
    if (k <= 6) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            double matched = 0.0;
            for (int c = 0; c < k; ++c) matched += confusion(perm[c], c);
            best = std::max(best, matched);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        const std::vector<int> row_to_col = detail::solve_assignment_min(-confusion);
        for (int r = 0; r < k; ++r) best += confusion(r, row_to_col[r]);
    }
    return best / n;
}

}  // namespace kclust
