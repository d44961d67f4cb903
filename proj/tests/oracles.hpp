#ifndef KCLUST_TESTS_ORACLES_HPP
#define KCLUST_TESTS_ORACLES_HPP

// Independent reference implementations used only by the test suite.  These
// deliberately avoid the library's kernel/Gram code paths: inner products are
// expanded straight from the defining formulas with long double accumulation,
// enumeration is a fresh restricted-growth-string recursion, and linkage is a
// naive recompute-from-scratch agglomerator.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace oracles {

// <mu_psi_i, mu_psi_j> for KDE components N(x_i, beta^2 I) under g_zeta.
inline double embed_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double beta,
                          double zeta) {
    const double eta = 4.0 * beta * beta + zeta;
    const double d = static_cast<double>(a.size());
    return std::pow(zeta / eta, 0.5 * d) * std::exp(-(a - b).squaredNorm() / eta);
}

// Expanded RKHS k-means objective sum_k sum_{i in c_k} ||mu_i - mean_k||^2.
inline double kmeans_objective(const Eigen::MatrixXd& X, const std::vector<int>& labels, int k,
                               double beta, double zeta) {
    const int n = static_cast<int>(X.rows());
    long double total = 0.0L;
    for (int c = 0; c < k; ++c) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (labels[i] == c) idx.push_back(i);
        if (idx.empty()) continue;
        const long double m = static_cast<long double>(idx.size());
        long double mean_self = 0.0L;
        for (int j : idx)
            for (int l : idx)
                mean_self += embed_inner(X.row(j).transpose(), X.row(l).transpose(), beta, zeta);
        mean_self /= m * m;
        for (int i : idx) {
            const long double self =
                embed_inner(X.row(i).transpose(), X.row(i).transpose(), beta, zeta);
            long double cross = 0.0L;
            for (int j : idx)
                cross += embed_inner(X.row(i).transpose(), X.row(j).transpose(), beta, zeta);
            total += self - 2.0L * cross / m + mean_self;
        }
    }
    return static_cast<double>(total);
}

// Expanded k-center objective max_i ||mu_i - mean_{label(i)}||.
inline double kcenter_objective(const Eigen::MatrixXd& X, const std::vector<int>& labels, int k,
                                double beta, double zeta) {
    const int n = static_cast<int>(X.rows());
    long double worst = 0.0L;
    for (int c = 0; c < k; ++c) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (labels[i] == c) idx.push_back(i);
        if (idx.empty()) continue;
        const long double m = static_cast<long double>(idx.size());
        long double mean_self = 0.0L;
        for (int j : idx)
            for (int l : idx)
                mean_self += embed_inner(X.row(j).transpose(), X.row(l).transpose(), beta, zeta);
        mean_self /= m * m;
        for (int i : idx) {
            const long double self =
                embed_inner(X.row(i).transpose(), X.row(i).transpose(), beta, zeta);
            long double cross = 0.0L;
            for (int j : idx)
                cross += embed_inner(X.row(i).transpose(), X.row(j).transpose(), beta, zeta);
            long double sq = self - 2.0L * cross / m + mean_self;
            if (sq < 0.0L) sq = 0.0L;
            const long double r = std::sqrt(static_cast<double>(sq));
            worst = std::max(worst, r);
        }
    }
    return static_cast<double>(worst);
}

// Enumerates every partition of [n] onto exactly k non-empty clusters in
// canonical (restricted growth) label form.
template <class F>
inline void partitions_rec(int n, int k, std::vector<int>& labels, int pos, int used, F&& fn) {
    if (pos == n) {
        if (used == k) fn(const_cast<const std::vector<int>&>(labels));
        return;
    }
    const int top = std::min(used, k - 1);
    for (int c = 0; c <= top; ++c) {
        labels[pos] = c;
        partitions_rec(n, k, labels, pos + 1, std::max(used, c + 1), fn);
    }
}

template <class F>
inline void for_each_partition(int n, int k, F&& fn) {
    std::vector<int> labels(n);
    partitions_rec(n, k, labels, 0, 0, fn);
}

// Exhaustive k-means minimizer over the expanded objective.
inline std::vector<int> exact_kmeans(const Eigen::MatrixXd& X, int k, double beta, double zeta) {
    std::vector<int> best;
    double best_obj = std::numeric_limits<double>::infinity();
    for_each_partition(static_cast<int>(X.rows()), k, [&](const std::vector<int>& labels) {
        const double obj = kmeans_objective(X, labels, k, beta, zeta);
        if (obj < best_obj) {
            best_obj = obj;
            best = labels;
        }
    });
    return best;
}

// Naive agglomerative clustering on an arbitrary symmetric distance matrix.
// mode: 0 = single, 1 = complete, 2 = average.  Clusters are kept ordered by
// smallest member, and merge ties break on the first pair in that order.
inline std::vector<int> reference_linkage(const Eigen::MatrixXd& dist, int k, int mode) {
    const int n = static_cast<int>(dist.rows());
    std::vector<std::vector<int>> clusters(n);
    for (int i = 0; i < n; ++i) clusters[i] = {i};
    while (static_cast<int>(clusters.size()) > k) {
        int best_a = -1, best_b = -1;
        double best_link = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                double link;
                if (mode == 0) {
                    link = std::numeric_limits<double>::infinity();
                    for (int i : clusters[a])
                        for (int j : clusters[b]) link = std::min(link, dist(i, j));
                } else if (mode == 1) {
                    link = 0.0;
                    for (int i : clusters[a])
                        for (int j : clusters[b]) link = std::max(link, dist(i, j));
                } else {
                    long double sum = 0.0L;
                    for (int i : clusters[a])
                        for (int j : clusters[b]) sum += dist(i, j);
                    link = static_cast<double>(sum / (static_cast<long double>(clusters[a].size()) *
                                                      clusters[b].size()));
                }
                if (link < best_link) {
                    best_link = link;
                    best_a = static_cast<int>(a);
                    best_b = static_cast<int>(b);
                }
            }
        }
        std::vector<int>& keep = clusters[best_a];
        keep.insert(keep.end(), clusters[best_b].begin(), clusters[best_b].end());
        std::sort(keep.begin(), keep.end());
        clusters.erase(clusters.begin() + best_b);
        std::sort(clusters.begin(), clusters.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      return a.front() < b.front();
                  });
    }
    std::vector<int> labels(n, -1);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int i : clusters[c]) labels[i] = static_cast<int>(c);
    return labels;
}

// Best label-matching agreement by brute force over all k! permutations.
inline double brute_agreement(const std::vector<int>& a, const std::vector<int>& b, int k) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        int match = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (perm[a[i]] == b[i]) ++match;
        best = std::max(best, match);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(a.size());
}

// Exact minimum-cost transport by enumerating every basis (spanning set of
// m + n - 1 cells), solving the marginal equations, and keeping the cheapest
// feasible solution.  Exponential; fine for the tiny instances in tests.
inline double brute_transport(const Eigen::MatrixXd& cost, const std::vector<double>& a,
                              const std::vector<double>& b) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    const int cells = m * n;
    const int basis_size = m + n - 1;
    std::vector<int> pick(basis_size);
    std::iota(pick.begin(), pick.end(), 0);
    double best = std::numeric_limits<double>::infinity();

    auto advance = [&]() {
        int i = basis_size - 1;
        while (i >= 0 && pick[i] == cells - basis_size + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < basis_size; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };

    do {
        // constraints: row sums = a (m rows), column sums = b (first n-1 cols;
        // the last is implied), unknowns = flows on the picked cells
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + n - 1, basis_size);
        Eigen::VectorXd rhs(m + n - 1);
        for (int r = 0; r < m; ++r) rhs(r) = a[r];
        for (int c = 0; c < n - 1; ++c) rhs(m + c) = b[c];
        for (int p = 0; p < basis_size; ++p) {
            const int r = pick[p] / n;
            const int c = pick[p] % n;
            A(r, p) = 1.0;
            if (c < n - 1) A(m + c, p) = 1.0;
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() < basis_size) continue;
        const Eigen::VectorXd x = lu.solve(rhs);
        if ((A * x - rhs).cwiseAbs().maxCoeff() > 1e-9) continue;
        if (x.minCoeff() < -1e-9) continue;
        double total = 0.0;
        for (int p = 0; p < basis_size; ++p) total += cost(pick[p] / n, pick[p] % n) * x(p);
        best = std::min(best, total);
    } while (advance());
    return best;
}

}  // namespace oracles

#endif  // KCLUST_TESTS_ORACLES_HPP
