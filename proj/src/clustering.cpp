#include "kclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "kclust/rng.hpp"

namespace kclust {

namespace {

constexpr int kMaxLloydIterations = 500;

void check_instance(const KernelMatrix& G, int k, const BandwidthSplit& bw, const char* where) {
    if (G.eta() != bw.eta())
        throw std::invalid_argument(std::string(where) +
                                    ": kernel matrix bandwidth does not match 4*beta^2 + zeta");
    if (k < 1 || k > G.n())
        throw std::invalid_argument(std::string(where) + ": k must lie in [1, n]");
}

// Block sums S_c = sum_{i,j in c} G[i][j] for every cluster, compensated.
std::vector<double> cluster_self_sums(const KernelMatrix& G, const Partition& p) {
    std::vector<CompensatedSum> acc(p.k);
    const int n = p.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.labels[i] == p.labels[j]) acc[p.labels[i]].add(G(i, j));
    std::vector<double> out(p.k);
    for (int c = 0; c < p.k; ++c) out[c] = acc[c].value();
    return out;
}

// Row sums R(i, c) = sum_{j in c} G[i][j] as one dense product.
Eigen::MatrixXd cluster_row_sums(const KernelMatrix& G, const std::vector<int>& labels, int k) {
    const int n = static_cast<int>(labels.size());
    Eigen::MatrixXd indicator = Eigen::MatrixXd::Zero(n, k);
    for (int i = 0; i < n; ++i) indicator(i, labels[i]) = 1.0;
    return G.entries() * indicator;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::KMN: return "kmeans";
        case Algorithm::FFK: return "ffk";
        case Algorithm::CTR: return "kcenter";
        case Algorithm::LNK_single: return "linkage-single";
        case Algorithm::LNK_complete: return "linkage-complete";
        case Algorithm::LNK_average: return "linkage-average";
    }
    return "unknown";
}

double kmeans_objective(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw) {
    check_instance(G, p.k, bw, "kmeans_objective");
    if (p.n() != G.n()) throw std::invalid_argument("kmeans_objective: partition size mismatch");
    p.validate();
    p.require_nonempty();
    const std::vector<int> sizes = p.cluster_sizes();
    const std::vector<double> self = cluster_self_sums(G, p);
    CompensatedSum within;
    for (int c = 0; c < p.k; ++c) within.add(self[c] / sizes[c]);
    return bw.embed_scale() * (p.n() - within.value());
}

double kcenter_objective(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw) {
    check_instance(G, p.k, bw, "kcenter_objective");
    if (p.n() != G.n()) throw std::invalid_argument("kcenter_objective: partition size mismatch");
    p.validate();
    p.require_nonempty();
    const std::vector<int> sizes = p.cluster_sizes();
    const std::vector<double> self = cluster_self_sums(G, p);
    const int n = p.n();
    double worst_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const int c = p.labels[i];
        CompensatedSum cross;
        for (int j = 0; j < n; ++j)
            if (p.labels[j] == c) cross.add(G(i, j));
        const double m = sizes[c];
        const double sq = 1.0 + self[c] / (m * m) - 2.0 * cross.value() / m;
        worst_sq = std::max(worst_sq, sq);
    }
    return std::sqrt(std::max(0.0, bw.embed_scale() * worst_sq));
}

double linkage_split(const KernelMatrix& G, const Partition& p, const BandwidthSplit& bw,
                     LinkageMode mode) {
    check_instance(G, p.k, bw, "linkage_split");
    if (p.n() != G.n()) throw std::invalid_argument("linkage_split: partition size mismatch");
    p.validate();
    p.require_nonempty();
    if (p.k == 1) return std::numeric_limits<double>::infinity();
    const auto clusters = p.clusters();
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < p.k; ++a) {
        for (int b = a + 1; b < p.k; ++b) {
            double crit;
            if (mode == LinkageMode::single) {
                crit = std::numeric_limits<double>::infinity();
                for (int i : clusters[a])
                    for (int j : clusters[b]) crit = std::min(crit, mmd_pointwise(i, j, G, bw));
            } else if (mode == LinkageMode::complete) {
                crit = 0.0;
                for (int i : clusters[a])
                    for (int j : clusters[b]) crit = std::max(crit, mmd_pointwise(i, j, G, bw));
            } else {
                CompensatedSum acc;
                for (int i : clusters[a])
                    for (int j : clusters[b]) acc.add(mmd_pointwise(i, j, G, bw));
                crit = acc.value() /
                       (static_cast<double>(clusters[a].size()) * clusters[b].size());
            }
            best = std::min(best, crit);
        }
    }
    return best;
}

namespace {

// Reseeds every empty cluster with the point farthest from its own cluster
// mean, never draining a singleton.  Returns true when labels changed.
bool repair_empty_clusters(const KernelMatrix& G, std::vector<int>& labels, int k) {
    bool changed = false;
    while (true) {
        std::vector<int> sizes(k, 0);
        for (int lab : labels) ++sizes[lab];
        int empty = -1;
        for (int c = 0; c < k; ++c)
            if (sizes[c] == 0) {
                empty = c;
                break;
            }
        if (empty < 0) return changed;

        const int n = static_cast<int>(labels.size());
        const Eigen::MatrixXd R = cluster_row_sums(G, labels, k);
        std::vector<double> self(k, 0.0);
        for (int i = 0; i < n; ++i) self[labels[i]] += R(i, labels[i]);
        int farthest = -1;
        double farthest_sq = -1.0;
        for (int i = 0; i < n; ++i) {
            const int c = labels[i];
            if (sizes[c] < 2) continue;
            const double m = sizes[c];
            const double sq = 1.0 + self[c] / (m * m) - 2.0 * R(i, c) / m;
            if (sq > farthest_sq) {
                farthest_sq = sq;
                farthest = i;
            }
        }
        if (farthest < 0)
            throw std::invalid_argument("lloyd: cannot repair empty cluster (k > n?)");
        labels[farthest] = empty;
        changed = true;
    }
}

// Lloyd iterations to stability; returns the iteration count.
int lloyd(const KernelMatrix& G, std::vector<int>& labels, int k) {
    const int n = static_cast<int>(labels.size());
    int iterations = 0;
    repair_empty_clusters(G, labels, k);
    for (; iterations < kMaxLloydIterations; ++iterations) {
        std::vector<int> sizes(k, 0);
        for (int lab : labels) ++sizes[lab];
        const Eigen::MatrixXd R = cluster_row_sums(G, labels, k);
        std::vector<double> self(k, 0.0);
        for (int i = 0; i < n; ++i) self[labels[i]] += R(i, labels[i]);
        // Squared distance to cluster c, up to the per-point constant:
        // q(i, c) = S_c / m_c^2 - 2 R(i, c) / m_c.
        std::vector<double> base(k);
        for (int c = 0; c < k; ++c) base[c] = self[c] / (static_cast<double>(sizes[c]) * sizes[c]);
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            const int cur = labels[i];
            int best = 0;
            double best_q = base[0] - 2.0 * R(i, 0) / sizes[0];
            for (int c = 1; c < k; ++c) {
                const double q = base[c] - 2.0 * R(i, c) / sizes[c];
                if (q < best_q) {
                    best_q = q;
                    best = c;
                }
            }
            // ties keep the current cluster; otherwise the ascending scan
            // already picked the lowest minimizing index
            const double cur_q = base[cur] - 2.0 * R(i, cur) / sizes[cur];
            if (best != cur && best_q < cur_q) {
                labels[i] = best;
                changed = true;
            }
        }
        if (repair_empty_clusters(G, labels, k)) changed = true;
        if (!changed) break;
    }
    return iterations;
}

// Enumeration bound for the exhaustive modes.
void check_exact_bounds(int n, int k, const char* where) {
    const bool ok = (k == 1) || (k == 2 && n <= 16) || (k == 3 && n <= 12);
    if (!ok)
        throw std::invalid_argument(std::string(where) +
                                    ": exact mode limited to k=1, k=2 (n<=16), k=3 (n<=12)");
}

// Visits every partition of n items into exactly k non-empty clusters as a
// restricted-growth label string (canonical labeling, each partition once).
void for_each_partition(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> labels(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (n - pos < k - used) return;  // not enough items left to open all clusters
        if (pos == n) {
            if (used == k) visit(labels);
            return;
        }
        const int cap = std::min(used + 1, k);
        for (int c = 0; c < cap; ++c) {
            labels[pos] = c;
            rec(pos + 1, std::max(used, c + 1));
        }
    };
    rec(0, 0);
}

ClusteringResult finish(const KernelMatrix& G, const BandwidthSplit& bw, std::vector<int> labels,
                        int k, Algorithm algo, int iterations, std::uint64_t seed) {
    ClusteringResult res;
    res.partition = Partition(std::move(labels), k);
    res.algorithm = algo;
    res.iterations = iterations;
    res.seed = seed;
    switch (algo) {
        case Algorithm::KMN:
        case Algorithm::FFK:
            res.objective = kmeans_objective(G, res.partition, bw);
            break;
        case Algorithm::CTR:
            res.objective = kcenter_objective(G, res.partition, bw);
            break;
        case Algorithm::LNK_single:
            res.objective = linkage_split(G, res.partition, bw, LinkageMode::single);
            break;
        case Algorithm::LNK_complete:
            res.objective = linkage_split(G, res.partition, bw, LinkageMode::complete);
            break;
        case Algorithm::LNK_average:
            res.objective = linkage_split(G, res.partition, bw, LinkageMode::average);
            break;
    }
    return res;
}

}  // namespace

ClusteringResult kernel_kmeans(const KernelMatrix& G, int k, const BandwidthSplit& bw,
                               int restarts, std::uint64_t seed) {
    check_instance(G, k, bw, "kernel_kmeans");
    if (restarts < 1) throw std::invalid_argument("kernel_kmeans: restarts must be >= 1");
    const int n = G.n();
    Rng rng(seed);
    std::vector<int> best_labels;
    double best_obj = std::numeric_limits<double>::infinity();
    int best_iters = 0;
    for (int r = 0; r < restarts; ++r) {
        std::vector<int> labels(n);
        // uniform initial labels, redrawn until every cluster is non-empty
        for (int attempt = 0;; ++attempt) {
            std::vector<int> sizes(k, 0);
            for (int i = 0; i < n; ++i) {
                labels[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
                ++sizes[labels[i]];
            }
            if (*std::min_element(sizes.begin(), sizes.end()) > 0) break;
            if (attempt >= 128) {  // deterministic fallback for tiny n
                for (int i = 0; i < n; ++i) labels[i] = i % k;
                break;
            }
        }
        const int iters = lloyd(G, labels, k);
        const double obj = kmeans_objective(G, Partition(labels, k), bw);
        if (obj < best_obj) {
            best_obj = obj;
            best_labels = labels;
            best_iters = iters;
        }
    }
    return finish(G, bw, std::move(best_labels), k, Algorithm::KMN, best_iters, seed);
}

ClusteringResult kernel_kmeans_exact(const KernelMatrix& G, int k, const BandwidthSplit& bw) {
    check_instance(G, k, bw, "kernel_kmeans_exact");
    check_exact_bounds(G.n(), k, "kernel_kmeans_exact");
    const int n = G.n();
    std::vector<int> best_labels;
    // objective = scale * (n - sum_c S_c / m_c): maximize the within sum
    double best_within = -std::numeric_limits<double>::infinity();
    long visited = 0;
    for_each_partition(n, k, [&](const std::vector<int>& labels) {
        ++visited;
        std::vector<int> sizes(k, 0);
        for (int lab : labels) ++sizes[lab];
        std::vector<double> self(k, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (labels[i] == labels[j]) self[labels[i]] += G(i, j);
        double within = 0.0;
        for (int c = 0; c < k; ++c) within += self[c] / sizes[c];
        if (within > best_within) {
            best_within = within;
            best_labels = labels;
        }
    });
    return finish(G, bw, std::move(best_labels), k, Algorithm::KMN, static_cast<int>(visited), 0);
}

ClusteringResult ffk(const KernelMatrix& G, int k, const BandwidthSplit& bw, int first_center,
                     FfkRule rule) {
    check_instance(G, k, bw, "ffk");
    const int n = G.n();
    if (first_center < 0 || first_center >= n)
        throw std::invalid_argument("ffk: first_center out of range");
    std::vector<int> centers{first_center};
    std::vector<bool> is_center(n, false);
    is_center[first_center] = true;
    while (static_cast<int>(centers.size()) < k) {
        int next = -1;
        double next_d = -1.0;
        for (int i = 0; i < n; ++i) {
            if (is_center[i]) continue;
            double d;
            if (rule == FfkRule::standard) {
                d = std::numeric_limits<double>::infinity();
                for (int c : centers) d = std::min(d, mmd_pointwise(i, c, G, bw));
            } else {
                d = 0.0;
                for (int c : centers) d = std::max(d, mmd_pointwise(i, c, G, bw));
            }
            if (d > next_d) {
                next_d = d;
                next = i;
            }
        }
        centers.push_back(next);
        is_center[next] = true;
    }
    // phase-one assignment: nearest center, earliest-picked center on ties
    std::vector<int> labels(n, 0);
    for (int i = 0; i < n; ++i) {
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
            const double d = mmd_pointwise(i, centers[c], G, bw);
            if (d < best_d) {
                best_d = d;
                labels[i] = c;
            }
        }
    }
    const int iters = lloyd(G, labels, k);
    return finish(G, bw, std::move(labels), k, Algorithm::FFK, iters,
                  static_cast<std::uint64_t>(first_center));
}

namespace {

// Incremental state for the k-center relocation search.
struct KcenterState {
    Eigen::MatrixXd R;          // n x k cluster row sums
    std::vector<double> self;   // S_c
    std::vector<int> sizes;

    void rebuild(const KernelMatrix& G, const std::vector<int>& labels, int k) {
        R = cluster_row_sums(G, labels, k);
        sizes.assign(k, 0);
        for (int lab : labels) ++sizes[lab];
        self.assign(k, 0.0);
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) self[labels[i]] += R(i, labels[i]);
    }
};

// Squared k-center objective after tentatively moving point `mv` from
// cluster `from` to cluster `to`, evaluated against the cached sums without
// mutating them.
double kcenter_sq_after_move(const KernelMatrix& G, const std::vector<int>& labels,
                             const KcenterState& st, int mv, int from, int to) {
    const int n = static_cast<int>(labels.size());
    const double g_self = G(mv, mv);
    const double m_from = st.sizes[from] - 1;
    const double m_to = st.sizes[to] + 1;
    const double self_from = st.self[from] - 2.0 * st.R(mv, from) + g_self;
    const double self_to = st.self[to] + 2.0 * st.R(mv, to) + g_self;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int c = (i == mv) ? to : labels[i];
        double m, self, row;
        if (c == from) {
            m = m_from;
            self = self_from;
            row = st.R(i, from) - G(i, mv);
        } else if (c == to) {
            m = m_to;
            self = self_to;
            row = st.R(i, to) + G(i, mv);
        } else {
            m = st.sizes[c];
            self = st.self[c];
            row = st.R(i, c);
        }
        worst = std::max(worst, 1.0 + self / (m * m) - 2.0 * row / m);
    }
    return worst;
}

double kcenter_sq_current(const std::vector<int>& labels, const KcenterState& st) {
    double worst = 0.0;
    for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
        const int c = labels[i];
        const double m = st.sizes[c];
        worst = std::max(worst, 1.0 + st.self[c] / (m * m) - 2.0 * st.R(i, c) / m);
    }
    return worst;
}

}  // namespace

ClusteringResult kcenter(const KernelMatrix& G, int k, const BandwidthSplit& bw, KcenterMode mode,
                         std::uint64_t seed) {
    check_instance(G, k, bw, "kcenter");
    const int n = G.n();
    if (mode == KcenterMode::exact) {
        check_exact_bounds(n, k, "kcenter");
        std::vector<int> best_labels;
        double best_obj = std::numeric_limits<double>::infinity();
        long visited = 0;
        for_each_partition(n, k, [&](const std::vector<int>& labels) {
            ++visited;
            const double obj = kcenter_objective(G, Partition(labels, k), bw);
            if (obj < best_obj) {
                best_obj = obj;
                best_labels = labels;
            }
        });
        return finish(G, bw, std::move(best_labels), k, Algorithm::CTR, static_cast<int>(visited),
                      seed);
    }

    // heuristic: farthest-first seeding from a seeded first center
    Rng rng(seed);
    const int first = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<int> centers{first};
    std::vector<bool> is_center(n, false);
    is_center[first] = true;
    while (static_cast<int>(centers.size()) < k) {
        int next = -1;
        double next_d = -1.0;
        for (int i = 0; i < n; ++i) {
            if (is_center[i]) continue;
            double d = std::numeric_limits<double>::infinity();
            for (int c : centers) d = std::min(d, mmd_pointwise(i, c, G, bw));
            if (d > next_d) {
                next_d = d;
                next = i;
            }
        }
        centers.push_back(next);
        is_center[next] = true;
    }
    std::vector<int> labels(n, 0);
    for (int i = 0; i < n; ++i) {
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
            const double d = mmd_pointwise(i, centers[c], G, bw);
            if (d < best_d) {
                best_d = d;
                labels[i] = c;
            }
        }
    }

    // first-improvement single-point relocations until no move lowers the
    // squared objective
    KcenterState st;
    st.rebuild(G, labels, k);
    double cur_sq = kcenter_sq_current(labels, st);
    int passes = 0;
    bool improved = true;
    while (improved && passes < 1000) {
        improved = false;
        ++passes;
        for (int i = 0; i < n; ++i) {
            const int from = labels[i];
            if (st.sizes[from] <= 1) continue;  // relocation may not empty a cluster
            for (int to = 0; to < k; ++to) {
                if (to == from) continue;
                const double cand = kcenter_sq_after_move(G, labels, st, i, from, to);
                if (cand < cur_sq) {
                    labels[i] = to;
                    st.rebuild(G, labels, k);
                    cur_sq = kcenter_sq_current(labels, st);
                    improved = true;
                    break;
                }
            }
        }
    }
    return finish(G, bw, std::move(labels), k, Algorithm::CTR, passes, seed);
}

ClusteringResult linkage(const KernelMatrix& G, int k, const BandwidthSplit& bw, LinkageMode mode,
                         std::vector<Merge>* merges) {
    check_instance(G, k, bw, "linkage");
    const int n = G.n();
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        D(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            const double d = mmd_pointwise(i, j, G, bw);
            D(i, j) = d;
            D(j, i) = d;
        }
    }
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    std::vector<double> size(n, 1.0);
    std::vector<int> slot_of(n);
    for (int i = 0; i < n; ++i) slot_of[i] = i;

    const int total_merges = n - k;
    for (int step = 0; step < total_merges; ++step) {
        // smallest criterion value; ties resolve to the lexicographically
        // smallest (slot, slot) pair, which the ascending scan delivers
        int bq = -1, br = -1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t ai = 0; ai < active.size(); ++ai) {
            const int q = active[ai];
            for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
                const int r = active[bi];
                if (D(q, r) < best) {
                    best = D(q, r);
                    bq = q;
                    br = r;
                }
            }
        }
        if (merges != nullptr) merges->push_back({bq, br, best});
        // Lance-Williams update into the lower slot bq
        for (int j : active) {
            if (j == bq || j == br) continue;
            double nd;
            if (mode == LinkageMode::single)
                nd = std::min(D(bq, j), D(br, j));
            else if (mode == LinkageMode::complete)
                nd = std::max(D(bq, j), D(br, j));
            else
                nd = (size[bq] * D(bq, j) + size[br] * D(br, j)) / (size[bq] + size[br]);
            D(bq, j) = nd;
            D(j, bq) = nd;
        }
        size[bq] += size[br];
        active.erase(std::find(active.begin(), active.end(), br));
        for (int i = 0; i < n; ++i)
            if (slot_of[i] == br) slot_of[i] = bq;
    }

    // active slots in ascending order become cluster labels 0..k-1
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        const auto it = std::lower_bound(active.begin(), active.end(), slot_of[i]);
        labels[i] = static_cast<int>(it - active.begin());
    }
    const Algorithm algo = mode == LinkageMode::single     ? Algorithm::LNK_single
                           : mode == LinkageMode::complete ? Algorithm::LNK_complete
                                                           : Algorithm::LNK_average;
    return finish(G, bw, std::move(labels), k, algo, total_merges, 0);
}

}  // namespace kclust
