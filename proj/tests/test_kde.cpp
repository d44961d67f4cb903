#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kclust/components.hpp"
#include "kclust/kde.hpp"
#include "kclust/quadrature.hpp"
#include "kclust/rng.hpp"

using namespace kclust;

namespace {

Eigen::VectorXd pt(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TEST_CASE("default bandwidth schedule") {
    CHECK(default_bandwidth(1000, 1) == doctest::Approx(0.36971527041389918).epsilon(1e-15));
    CHECK(default_bandwidth(400, 1) == doctest::Approx(0.43161308301352808).epsilon(1e-15));
    // closed form (log n / n)^(1/(d+4))
    CHECK(default_bandwidth(400, 1) ==
          doctest::Approx(std::pow(std::log(400.0) / 400.0, 0.2)).epsilon(1e-15));
    CHECK(default_bandwidth(500, 3) ==
          doctest::Approx(std::pow(std::log(500.0) / 500.0, 1.0 / 7.0)).epsilon(1e-15));
    // log(n)/n peaks at n = e, so the schedule is strictly decreasing only
    // from n = 3 on; n = 2 and n = 4 coincide exactly (log 4 / 4 = log 2 / 2)
    CHECK(default_bandwidth(2, 1) == default_bandwidth(4, 1));
    double prev = default_bandwidth(3, 1);
    for (int n : {4, 16, 64, 256, 1024}) {
        const double cur = default_bandwidth(n, 1);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(default_bandwidth(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(default_bandwidth(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(default_bandwidth(10, 0), std::invalid_argument);
}

TEST_CASE("kde component density") {
    const KdeComponent comp{pt(2.0), 1.0};
    // peak value 1/sqrt(2 pi)
    CHECK(comp.density(pt(2.0)) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    CHECK(comp.density(pt(1.0)) == doctest::Approx(comp.density(pt(3.0))).epsilon(1e-15));
    // scaling: halving beta doubles the peak in 1-D
    const KdeComponent narrow{pt(2.0), 0.5};
    CHECK(narrow.density(pt(2.0)) == doctest::Approx(2.0 * comp.density(pt(2.0))).epsilon(1e-14));
    // each component integrates to 1
    const double mass = integrate_adaptive([&](double x) { return comp.density(pt(x)); }, -8.0, 12.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kde_fit validates and stores") {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 2.0;
    const KdeEstimate kde = kde_fit(X, 0.4);
    CHECK(kde.n() == 3);
    CHECK(kde.dim() == 1);
    CHECK(kde.beta == 0.4);
    CHECK_THROWS_AS(kde_fit(X, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(kde_fit(Eigen::MatrixXd(0, 1), 0.4), std::invalid_argument);
}

TEST_CASE("kde_eval is the average of component densities") {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 5.0;
    const KdeEstimate kde = kde_fit(X, 0.7);
    const Eigen::VectorXd q = pt(0.8);
    double expect = 0.0;
    for (int i = 0; i < 3; ++i) expect += KdeComponent{X.row(i).transpose(), 0.7}.density(q);
    expect /= 3.0;
    CHECK(kde_eval(kde, q) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("kde integrates to one") {
    Rng rng(31);
    Eigen::MatrixXd X(40, 1);
    for (int i = 0; i < 40; ++i) X(i, 0) = rng.normal();
    const KdeEstimate kde = kde_fit(X, default_bandwidth(40, 1));
    const double lo = X.minCoeff() - 8.0 * kde.beta;
    const double hi = X.maxCoeff() + 8.0 * kde.beta;
    const double mass = integrate_adaptive([&](double x) { return kde_eval(kde, pt(x)); }, lo, hi);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kde_grid spans the extended data range") {
    Eigen::MatrixXd X(3, 1);
    X << -1.0, 0.0, 2.0;
    const Eigen::VectorXd grid = kde_grid(X, 0.5, 11);
    CHECK(grid.size() == 11);
    CHECK(grid(0) == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(grid(10) == doctest::Approx(3.5).epsilon(1e-15));
    for (int i = 1; i < 11; ++i) CHECK(grid(i) > grid(i - 1));
    // equispaced
    const double step = grid(1) - grid(0);
    for (int i = 1; i < 11; ++i)
        CHECK(grid(i) - grid(i - 1) == doctest::Approx(step).epsilon(1e-12));
    CHECK_THROWS_AS(kde_grid(Eigen::MatrixXd(3, 2), 0.5, 11), std::invalid_argument);
    CHECK_THROWS_AS(kde_grid(X, 0.5, 1), std::invalid_argument);
}

TEST_CASE("sup error vanishes when the truth is the kde itself") {
    Rng rng(8);
    Eigen::MatrixXd X(6, 1);
    for (int i = 0; i < 6; ++i) X(i, 0) = 2.0 * rng.normal();
    const double beta = 0.6;
    const KdeEstimate kde = kde_fit(X, beta);
    // mixture with one equal-weight Gaussian per kde component
    std::vector<double> w(6, 1.0 / 6.0);
    std::vector<Component> comps;
    for (int i = 0; i < 6; ++i)
        comps.emplace_back(GaussianComponent{X.row(i).transpose(), beta * beta});
    const MixingMeasure truth(std::move(w), std::move(comps));
    CHECK(kde_sup_error(kde, truth) <= 1e-12);
}

TEST_CASE("sup error matches a direct grid scan") {
    Rng rng(12);
    Eigen::MatrixXd X(15, 1);
    for (int i = 0; i < 15; ++i) X(i, 0) = rng.normal();
    const double beta = 0.5;
    const KdeEstimate kde = kde_fit(X, beta);
    const MixingMeasure truth({1.0}, {Component(GaussianComponent{pt(0.0), 1.0})});
    const Eigen::VectorXd grid = kde_grid(X, beta, 512);
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        worst = std::max(worst,
                         std::abs(kde_eval(kde, pt(grid(i))) - density_eval(truth, pt(grid(i)))));
    CHECK(kde_sup_error(kde, truth) == doctest::Approx(worst).epsilon(1e-15));
}

TEST_CASE("sup error trend: medians strictly decrease with n") {
    const MixingMeasure truth({1.0}, {Component(GaussianComponent{pt(0.0), 1.0})});
    std::vector<double> medians;
    for (int n : {64, 256, 1024}) {
        std::vector<double> errs;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const LabeledSample s = sample_labeled(truth, n, seed);
            const KdeEstimate kde = kde_fit(s.points, default_bandwidth(n, 1));
            errs.push_back(kde_sup_error(kde, truth));
        }
        medians.push_back(median(errs));
    }
    CHECK(medians[1] < medians[0]);
    CHECK(medians[2] < medians[1]);
    // frozen reference points for the first and last medians
    CHECK(medians[0] == doctest::Approx(0.092263196).epsilon(1e-6));
    CHECK(medians[2] == doctest::Approx(0.029179835).epsilon(1e-6));
}
