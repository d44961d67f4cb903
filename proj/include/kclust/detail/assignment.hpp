#ifndef KCLUST_DETAIL_ASSIGNMENT_HPP
#define KCLUST_DETAIL_ASSIGNMENT_HPP

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace kclust::detail {

// Minimum-cost perfect assignment on a square matrix via shortest augmenting
// paths with potentials (O(K^3)).  Returns the column assigned to each row.
inline std::vector<int> solve_assignment_min(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

// Label mapping from partition `from` onto partition `onto` maximizing the
// pointwise agreement; both label arrays over the same n points, labels in
// [0, k).  Exhaustive over permutations for k <= 6, assignment solve above.
inline std::vector<int> best_label_map(const std::vector<int>& from, const std::vector<int>& onto,
                                       int k);

}  // namespace kclust::detail

#include <algorithm>
#include <numeric>

namespace kclust::detail {

inline std::vector<int> best_label_map(const std::vector<int>& from, const std::vector<int>& onto,
                                       int k) {
    Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < from.size(); ++i) confusion(from[i], onto[i]) += 1.0;
    if (k <= 6) {
        std::vector<int> perm(k), best_perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        best_perm = perm;
        double best = -1.0;
        do {
            double matched = 0.0;
            for (int c = 0; c < k; ++c) matched += confusion(c, perm[c]);
            if (matched > best) {
                best = matched;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best_perm;
    }
    return solve_assignment_min(-confusion);
}

}  // namespace kclust::detail

#endif  // KCLUST_DETAIL_ASSIGNMENT_HPP
