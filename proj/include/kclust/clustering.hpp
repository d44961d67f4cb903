#ifndef KCLUST_CLUSTERING_HPP
#define KCLUST_CLUSTERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kclust/bandwidth.hpp"
#include "kclust/kernel.hpp"
#include "kclust/mmd.hpp"
#include "kclust/partition.hpp"

namespace kclust {

enum class Algorithm { KMN, FFK, CTR, LNK_single, LNK_complete, LNK_average };

std::string algorithm_name(Algorithm a);

struct ClusteringResult {
    Partition partition;
    double objective = 0.0;
    Algorithm algorithm = Algorithm::KMN;
    int iterations = 0;
    // Determinism handle: the seed for randomized algorithms, the first
    // center for FFK, zero for the deterministic linkage family.
    std::uint64_t seed = 0;
};

// k-means objective in MMD form,
//   sum_k sum_{i in c_k} rho^2(psi_i, mean embedding of c_k)
//     = (zeta/eta)^(d/2) * (n - sum_k S_k / |c_k|),
// where S_k is the Gram block sum over cluster k.  Empty clusters are
// rejected.
double kmeans_objective(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw);

// k-center objective max_i rho(psi_i, mean embedding of its cluster).
double kcenter_objective(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw);

// Next-merge distance of a partition under a linkage criterion: the minimum
// over cluster pairs of the single/complete/average pairwise MMD.  This is
// the height at which the dendrogram would merge next, and serves as the
// recomputable objective for linkage results.
enum class LinkageMode { single, complete, average };
double linkage_split(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw,
                     LinkageMode mode);

// Lloyd-style kernel k-means from `restarts` random initial partitions,
// keeping the best final objective.  Each restart assigns points to the
// cluster with the nearest mean embedding (ties keep the current cluster,
// otherwise lowest index) until stable; a cluster emptied by reassignment is
// reseeded with the point farthest from its own cluster mean.  Deterministic
// given the seed.
ClusteringResult kernel_kmeans(const KernelMatrix& G, int k, const BandwidthSplit& bw,
                               int restarts, std::uint64_t seed);

// Exhaustive minimization of the k-means objective over all partitions into
// exactly k non-empty clusters.  Bounded to k = 1 (any n), k = 2 (n <= 16),
// k = 3 (n <= 12); larger instances are rejected.
ClusteringResult kernel_kmeans_exact(const KernelMatrix& G, int k, const BandwidthSplit& bw);

// Farthest-first k-means: phase one grows a center set greedily from the
// given first center, phase two runs Lloyd iterations to stability.  Under
// the standard rule the next center maximizes the distance to the nearest
// chosen center; the literal_max rule instead maximizes the distance to the
// farthest chosen center.  Deterministic given first_center.
enum class FfkRule { standard, literal_max };
ClusteringResult ffk(const KernelMatrix& G, int k, const BandwidthSplit& bw, int first_center,
                     FfkRule rule = FfkRule::standard);

// Kernel k-center.  Heuristic mode: farthest-first seeding (first center
// drawn from the seed) followed by first-improvement single-point
// relocations until no move lowers the objective.  Exact mode enumerates
// partitions under the same bounds as kernel_kmeans_exact.
enum class KcenterMode { heuristic, exact };
ClusteringResult kcenter(const KernelMatrix& G, int k, const BandwidthSplit& bw, KcenterMode mode,
                         std::uint64_t seed = 0);

// One agglomerative merge: slots a < b were joined at the given criterion
// value (slot = smallest member index of the merged cluster).
struct Merge {
    int a = 0;
    int b = 0;
    double dist = 0.0;
};

// Agglomerative clustering on pairwise MMD distances, cut at k clusters.
// Merge ties break on the lexicographically smallest slot pair.  The full
// merge sequence is appended to *merges when provided.
ClusteringResult linkage(const KernelMatrix& G, int k, const BandwidthSplit& bw, LinkageMode mode,
                         std::vector<Merge>* merges = nullptr);

}  // namespace kclust

#endif  // KCLUST_CLUSTERING_HPP
