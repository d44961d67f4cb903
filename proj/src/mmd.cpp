#include "kclust/mmd.hpp"

#include <cmath>

#include "kclust/rng.hpp"

namespace kclust {

namespace {

void check_match(const KernelMatrix& G, const BandwidthSplit& bw, const char* where) {
    if (G.eta() != bw.eta())
        throw std::invalid_argument(std::string(where) +
                                    ": kernel matrix bandwidth does not match 4*beta^2 + zeta");
}

void check_index(int i, const KernelMatrix& G, const char* where) {
    if (i < 0 || i >= G.n()) throw std::invalid_argument(std::string(where) + ": index out of range");
}

void check_cluster(std::span<const int> c, const KernelMatrix& G, const char* where) {
    if (c.empty()) throw std::invalid_argument(std::string(where) + ": empty cluster");
    for (int j : c) check_index(j, G, where);
}

}  // namespace

double gram_block_sum(std::span<const int> a, std::span<const int> b, const KernelMatrix& G) {
    CompensatedSum acc;
    for (int i : a)
        for (int j : b) acc.add(G(i, j));
    return acc.value();
}

double mmd_pointwise(int i, int j, const KernelMatrix& G, const BandwidthSplit& bw) {
    check_match(G, bw, "mmd_pointwise");
    check_index(i, G, "mmd_pointwise");
    check_index(j, G, "mmd_pointwise");
    const double sq = bw.mmd_scale() * (1.0 - G(i, j));
    return std::sqrt(std::max(0.0, sq));
}

double mmd_point_to_cluster(int i, std::span<const int> cluster, const KernelMatrix& G,
                            const BandwidthSplit& bw) {
    check_match(G, bw, "mmd_point_to_cluster");
    check_index(i, G, "mmd_point_to_cluster");
    check_cluster(cluster, G, "mmd_point_to_cluster");
    const double m = static_cast<double>(cluster.size());
    const double within = gram_block_sum(cluster, cluster, G);
    CompensatedSum cross;
    for (int j : cluster) cross.add(G(i, j));
    const double sq = bw.embed_scale() * (1.0 + within / (m * m) - 2.0 * cross.value() / m);
    return std::sqrt(std::max(0.0, sq));
}

double mmd_cluster_to_cluster(std::span<const int> a, std::span<const int> b,
                              const KernelMatrix& G, const BandwidthSplit& bw) {
    check_match(G, bw, "mmd_cluster_to_cluster");
    check_cluster(a, G, "mmd_cluster_to_cluster");
    check_cluster(b, G, "mmd_cluster_to_cluster");
    const double ma = static_cast<double>(a.size());
    const double mb = static_cast<double>(b.size());
    const double saa = gram_block_sum(a, a, G);
    const double sbb = gram_block_sum(b, b, G);
    const double sab = gram_block_sum(a, b, G);
    const double sq =
        bw.embed_scale() * (saa / (ma * ma) + sbb / (mb * mb) - 2.0 * sab / (ma * mb));
    return std::sqrt(std::max(0.0, sq));
}

}  // namespace kclust
