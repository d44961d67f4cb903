#ifndef KCLUST_KDE_HPP
#define KCLUST_KDE_HPP

#include <Eigen/Dense>

#include "kclust/components.hpp"

namespace kclust {

// One kernel density component f~_i = N(center, beta^2 I) in density form:
// f~_i(x) = exp(-||x - center||^2 / (2 beta^2)) / (2 pi beta^2)^(d/2).
struct KdeComponent {
    Eigen::VectorXd center;
    double beta = 1.0;

    double density(const Eigen::VectorXd& x) const;
};

// Kernel density estimate f^ = (1/n) sum_i f~_i over a point set, all
// components sharing one bandwidth.
struct KdeEstimate {
    Eigen::MatrixXd centers;  // n x d
    double beta = 1.0;

    int n() const { return static_cast<int>(centers.rows()); }
    int dim() const { return static_cast<int>(centers.cols()); }
};

// Reference bandwidth schedule beta_n = (log n / n)^(1/(d+4)).  Requires
// n >= 2 so that the value is strictly positive.
double default_bandwidth(int n, int dim);

KdeEstimate kde_fit(const Eigen::MatrixXd& points, double beta);

double kde_eval(const KdeEstimate& kde, const Eigen::VectorXd& x);

// Sup-norm error max_g |f^(g) - f(g)| over a fixed evaluation grid:
// `grid_points` equispaced points per axis spanning the data range extended
// by 3 beta on each side (one-dimensional data only).
double kde_sup_error(const KdeEstimate& kde, const MixingMeasure& truth, int grid_points = 512);

// The evaluation grid used by kde_sup_error, exposed for reuse by the
// Bayes-agreement scan.
Eigen::VectorXd kde_grid(const Eigen::MatrixXd& points, double beta, int grid_points = 512);

}  // namespace kclust

#endif  // KCLUST_KDE_HPP
