#include "kclust/kde.hpp"

#include <cmath>
#include <stdexcept>

namespace kclust {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double KdeComponent::density(const Eigen::VectorXd& x) const {
    if (x.size() != center.size())
        throw std::invalid_argument("KdeComponent::density: dimension mismatch");
    const int d = static_cast<int>(center.size());
    const double norm = std::pow(kTwoPi * beta * beta, -0.5 * d);
    return norm * std::exp(-(x - center).squaredNorm() / (2.0 * beta * beta));
}

double default_bandwidth(int n, int dim) {
    if (n < 2) throw std::invalid_argument("default_bandwidth: requires n >= 2");
    if (dim < 1) throw std::invalid_argument("default_bandwidth: requires dim >= 1");
    return std::pow(std::log(static_cast<double>(n)) / n, 1.0 / (dim + 4));
}

KdeEstimate kde_fit(const Eigen::MatrixXd& points, double beta) {
    if (points.rows() < 1) throw std::invalid_argument("kde_fit: empty point set");
    if (!(beta > 0.0)) throw std::invalid_argument("kde_fit: beta must be positive");
    return {points, beta};
}

double kde_eval(const KdeEstimate& kde, const Eigen::VectorXd& x) {
    if (x.size() != kde.dim()) throw std::invalid_argument("kde_eval: dimension mismatch");
    const int d = kde.dim();
    const double norm = std::pow(kTwoPi * kde.beta * kde.beta, -0.5 * d);
    const double denom = 2.0 * kde.beta * kde.beta;
    double acc = 0.0;
    for (int i = 0; i < kde.n(); ++i)
        acc += std::exp(-(x.transpose() - kde.centers.row(i)).squaredNorm() / denom);
    return norm * acc / kde.n();
}

Eigen::VectorXd kde_grid(const Eigen::MatrixXd& points, double beta, int grid_points) {
    if (points.cols() != 1)
        throw std::invalid_argument("kde_grid: evaluation grid is one-dimensional");
    if (grid_points < 2) throw std::invalid_argument("kde_grid: need at least 2 grid points");
    const double lo = points.minCoeff() - 3.0 * beta;
    const double hi = points.maxCoeff() + 3.0 * beta;
    Eigen::VectorXd grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid(i) = lo + (hi - lo) * i / (grid_points - 1.0);
    return grid;
}

double kde_sup_error(const KdeEstimate& kde, const MixingMeasure& truth, int grid_points) {
    if (kde.dim() != 1 || truth.dim() != 1)
        throw std::invalid_argument("kde_sup_error: grid evaluation is one-dimensional");
    const Eigen::VectorXd grid = kde_grid(kde.centers, kde.beta, grid_points);
    double worst = 0.0;
    Eigen::VectorXd x(1);
    for (int i = 0; i < grid.size(); ++i) {
        x(0) = grid(i);
        worst = std::max(worst, std::abs(kde_eval(kde, x) - density_eval(truth, x)));
    }
    return worst;
}

}  // namespace kclust
