#ifndef KCLUST_PARTITION_HPP
#define KCLUST_PARTITION_HPP

#include <stdexcept>
#include <vector>

namespace kclust {

// Assignment of n points to K clusters.
//
// Labels are 0-based: labels[i] in [0, K).  External CSV files use 1-based
// labels; the IO layer converts at the boundary.  K >= 1 always; clusters may
// be empty unless a caller requires surjectivity (see require_nonempty).
struct Partition {
    std::vector<int> labels;
    int k = 1;

    Partition() = default;
    Partition(std::vector<int> l, int k_) : labels(std::move(l)), k(k_) { validate(); }

    int n() const { return static_cast<int>(labels.size()); }

    void validate() const {
        if (k < 1) throw std::invalid_argument("Partition: k must be >= 1");
        for (int lab : labels)
            if (lab < 0 || lab >= k)
                throw std::invalid_argument("Partition: label out of range [0, k)");
    }

    std::vector<int> cluster_sizes() const {
        std::vector<int> sizes(k, 0);
        for (int lab : labels) ++sizes[lab];
        return sizes;
    }

    // Member indices per cluster, each list in increasing point order.
    std::vector<std::vector<int>> clusters() const {
        std::vector<std::vector<int>> out(k);
        for (int i = 0; i < n(); ++i) out[labels[i]].push_back(i);
        return out;
    }

    void require_nonempty() const {
        for (int size : cluster_sizes())
            if (size == 0) throw std::invalid_argument("Partition: empty cluster");
    }
};

}  // namespace kclust

#endif  // KCLUST_PARTITION_HPP
