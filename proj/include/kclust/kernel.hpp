#ifndef KCLUST_KERNEL_HPP
#define KCLUST_KERNEL_HPP

#include <Eigen/Dense>
#include <stdexcept>

namespace kclust {

// Gaussian kernel g_eta(x, y) = exp(-||x - y||^2 / eta).
double gaussian_eval(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double eta);

// Symmetric positive semi-definite kernel matrix G[i][j] = g_eta(x_i, x_j)
// over a fixed point set, tagged with the bandwidth it was built at so that
// downstream MMD routines can reject mismatched bandwidths.
class KernelMatrix {
public:
    KernelMatrix(Eigen::MatrixXd entries, double eta);

    int n() const { return static_cast<int>(entries_.rows()); }
    double eta() const { return eta_; }
    double operator()(int i, int j) const { return entries_(i, j); }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
    double eta_;
};

// Builds the kernel matrix for the rows of `points` (n x d).  When
// `threads` > 1 the rows are filled in disjoint blocks by worker threads;
// every entry is computed independently, so the result is bit-identical to
// the sequential order.
KernelMatrix kernel_matrix(const Eigen::MatrixXd& points, double eta, int threads = 1);

}  // namespace kclust

#endif  // KCLUST_KERNEL_HPP
