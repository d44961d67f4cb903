#include "kclust/kernel.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace kclust {

double gaussian_eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("gaussian_eval: eta must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("gaussian_eval: dimension mismatch");
    return std::exp(-(x - y).squaredNorm() / eta);
}

KernelMatrix::KernelMatrix(Eigen::MatrixXd entries, double eta)
    : entries_(std::move(entries)), eta_(eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("KernelMatrix: eta must be positive");
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("KernelMatrix: matrix must be square");
}

namespace {

void fill_rows(const Eigen::MatrixXd& points, double eta, Eigen::MatrixXd& out, int row_begin,
               int row_end) {
    const int n = static_cast<int>(points.rows());
    for (int i = row_begin; i < row_end; ++i) {
        out(i, i) = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            out(i, j) = std::exp(-(points.row(i) - points.row(j)).squaredNorm() / eta);
        }
    }
}

}  // namespace

KernelMatrix kernel_matrix(const Eigen::MatrixXd& points, double eta, int threads) {
    if (!(eta > 0.0)) throw std::invalid_argument("kernel_matrix: eta must be positive");
    if (points.rows() < 1) throw std::invalid_argument("kernel_matrix: empty point set");
    const int n = static_cast<int>(points.rows());
    Eigen::MatrixXd out(n, n);
    if (threads <= 1 || n < 64) {
        fill_rows(points, eta, out, 0, n);
    } else {
        // Disjoint row blocks; every entry depends only on its own pair of
        // points, so the result matches the sequential fill bit for bit.
        const int workers = std::min(threads, n);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const int chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fill_rows, std::cref(points), eta, std::ref(out), lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return KernelMatrix(std::move(out), eta);
}

}  // namespace kclust
