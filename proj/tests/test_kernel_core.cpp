#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kclust/bandwidth.hpp"
#include "kclust/components.hpp"
#include "kclust/errors.hpp"
#include "kclust/kernel.hpp"
#include "kclust/mmd.hpp"
#include "kclust/mmd_oracle.hpp"
#include "kclust/quadrature.hpp"
#include "kclust/rng.hpp"
#include "oracles.hpp"

using namespace kclust;

namespace {

Eigen::VectorXd pt(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

Eigen::MatrixXd random_points(int n, int d, Rng& rng, double spread = 3.0) {
    Eigen::MatrixXd X(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = spread * rng.normal();
    return X;
}

}  // namespace

TEST_CASE("gaussian_eval basic values") {
    CHECK(gaussian_eval(pt(3.7), pt(3.7), 0.4) == 1.0);
    Eigen::VectorXd a(2), b(2);
    a << 0.0, 0.0;
    b << 1.0, 1.0;  // squared distance 2 == eta
    CHECK(gaussian_eval(a, b, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    // 1-D pair at distance 3 with eta = 2: exp(-9/2)
    CHECK(gaussian_eval(pt(0.0), pt(3.0), 2.0) ==
          doctest::Approx(0.011108996538242306).epsilon(1e-14));
    CHECK(gaussian_eval(pt(1.0), pt(4.0), 2.0) == gaussian_eval(pt(4.0), pt(1.0), 2.0));
}

TEST_CASE("gaussian_eval rejects bad input") {
    CHECK_THROWS_AS(gaussian_eval(pt(0.0), pt(1.0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_eval(pt(0.0), pt(1.0), -1.0), std::invalid_argument);
    Eigen::VectorXd b2(2);
    b2 << 0.0, 1.0;
    CHECK_THROWS_AS(gaussian_eval(pt(0.0), b2, 1.0), std::invalid_argument);
}

TEST_CASE("kernel_matrix structure") {
    Rng rng(7);
    const Eigen::MatrixXd X = random_points(9, 2, rng);
    const KernelMatrix G = kernel_matrix(X, 1.7);
    CHECK(G.n() == 9);
    CHECK(G.eta() == 1.7);
    for (int i = 0; i < 9; ++i) {
        CHECK(G(i, i) == 1.0);
        for (int j = 0; j < 9; ++j) {
            CHECK(G(i, j) == G(j, i));
            CHECK(G(i, j) > 0.0);
            CHECK(G(i, j) <= 1.0);
        }
    }
}

TEST_CASE("kernel_matrix two-point example") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, std::sqrt(2.0);
    const KernelMatrix G = kernel_matrix(X, 2.0);
    CHECK(G(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("kernel_matrix rejects empty input") {
    Eigen::MatrixXd X(0, 1);
    CHECK_THROWS_AS(kernel_matrix(X, 1.0), std::invalid_argument);
}

TEST_CASE("kernel_matrix parallel fill is bit-identical") {
    Rng rng(11);
    const Eigen::MatrixXd X = random_points(33, 3, rng);
    const KernelMatrix seq = kernel_matrix(X, 2.3, 1);
    const KernelMatrix par = kernel_matrix(X, 2.3, 4);
    CHECK((seq.entries() - par.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel matrix is positive semi-definite on random data") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        const int n = 16 + static_cast<int>(rng.below(49));  // up to 64
        const Eigen::MatrixXd X = random_points(n, 1 + static_cast<int>(rng.below(3)), rng);
        const KernelMatrix G = kernel_matrix(X, 0.5 + 2.0 * rng.uniform());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.entries());
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("bandwidth split algebra") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    CHECK(bw.eta() == 4.0 * 0.25 + 1.0);
    CHECK(bw.mmd_scale() == doctest::Approx(2.0 * std::sqrt(1.0 / 2.0)).epsilon(1e-15));
    CHECK(bw.embed_scale() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(BandwidthSplit(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(BandwidthSplit(1.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(BandwidthSplit(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("mmd_pointwise closed form") {
    // beta^2 = 0.25, zeta = 1 -> eta = 2, C = sqrt(2); squared gap 2
    Eigen::MatrixXd X(2, 1);
    X << 0.0, std::sqrt(2.0);
    const BandwidthSplit bw(0.5, 1.0, 1);
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    CHECK(mmd_pointwise(0, 0, G, bw) == 0.0);
    const double rho = mmd_pointwise(0, 1, G, bw);
    CHECK(rho * rho == doctest::Approx(0.8939534673502062).epsilon(1e-14));
    CHECK(rho == doctest::Approx(0.9454911249452351).epsilon(1e-14));
}

TEST_CASE("mmd_pointwise matches the Monte-Carlo oracle") {
    const Component p = GaussianComponent{pt(0.0), 0.25};
    const Component q = GaussianComponent{pt(std::sqrt(2.0)), 0.25};
    const McEstimate mc = mmd_monte_carlo_oracle(p, q, 1.0, 400000, 42);
    CHECK(std::abs(mc.estimate - 0.8939534673502062) <= 3.0 * mc.std_error);
}

TEST_CASE("mmd_pointwise far-distance limit approaches C") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 60.0;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    const double rho2 = std::pow(mmd_pointwise(0, 1, G, bw), 2);
    CHECK(rho2 == doctest::Approx(bw.mmd_scale()).epsilon(1e-12));
}

TEST_CASE("mmd_pointwise rejects a mismatched kernel matrix") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 1.0;
    const KernelMatrix G = kernel_matrix(X, 2.0);
    const BandwidthSplit other(0.5, 1.5, 1);  // eta = 2.5 != 2
    CHECK_THROWS_AS(mmd_pointwise(0, 1, G, other), std::invalid_argument);
}

TEST_CASE("mmd_pointwise is strictly increasing in distance") {
    const BandwidthSplit bw(0.4, 0.8, 1);
    Eigen::MatrixXd X(6, 1);
    X << 0.0, 0.3, 0.9, 1.4, 2.6, 5.0;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    double prev = -1.0;
    for (int j = 1; j < 6; ++j) {
        const double rho = mmd_pointwise(0, j, G, bw);
        CHECK(rho > prev);
        prev = rho;
    }
}

TEST_CASE("metric axioms for pointwise MMD on random triples") {
    Rng rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const Eigen::MatrixXd X = random_points(3, 2, rng);
        const BandwidthSplit bw(0.2 + rng.uniform(), 0.2 + rng.uniform(), 2);
        const KernelMatrix G = kernel_matrix(X, bw.eta());
        const double ab = mmd_pointwise(0, 1, G, bw);
        const double bc = mmd_pointwise(1, 2, G, bw);
        const double ac = mmd_pointwise(0, 2, G, bw);
        CHECK(ab >= 0.0);
        CHECK(mmd_pointwise(0, 0, G, bw) == 0.0);
        CHECK(ab == mmd_pointwise(1, 0, G, bw));
        CHECK(ac <= ab + bc + 1e-10);
    }
}

TEST_CASE("mmd_point_to_cluster degenerate cases") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 2.0;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    const std::vector<int> self{0};
    CHECK(mmd_point_to_cluster(0, self, G, bw) == 0.0);
    const std::vector<int> other{1};
    CHECK(mmd_point_to_cluster(0, other, G, bw) ==
          doctest::Approx(mmd_pointwise(0, 1, G, bw)).epsilon(1e-15));
    const std::vector<int> empty;
    CHECK_THROWS_AS(mmd_point_to_cluster(0, empty, G, bw), std::invalid_argument);
}

TEST_CASE("mmd_point_to_cluster matches the expanded RKHS norm") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 2.0;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    const std::vector<int> all{0, 1, 2};
    const double rho = mmd_point_to_cluster(0, all, G, bw);

    // term-by-term expansion of || mu_0 - (1/3) sum_j mu_j ||^2
    long double sq = oracles::embed_inner(X.row(0).transpose(), X.row(0).transpose(), 0.5, 1.0);
    for (int j = 0; j < 3; ++j)
        sq -= (2.0L / 3.0L) *
              oracles::embed_inner(X.row(0).transpose(), X.row(j).transpose(), 0.5, 1.0);
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
            sq += (1.0L / 9.0L) *
                  oracles::embed_inner(X.row(j).transpose(), X.row(l).transpose(), 0.5, 1.0);
    CHECK(rho * rho == doctest::Approx(static_cast<double>(sq)).epsilon(1e-12));
    CHECK(rho * rho == doctest::Approx(0.3335656462352149).epsilon(1e-13));
    CHECK(rho == doctest::Approx(0.5775514230224136).epsilon(1e-13));
}

TEST_CASE("mmd_cluster_to_cluster degenerate cases") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    Eigen::MatrixXd X(4, 1);
    X << 0.0, 0.1, 10.0, 10.1;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    const std::vector<int> a{0, 1};
    CHECK(mmd_cluster_to_cluster(a, a, G, bw) == 0.0);
    const std::vector<int> s0{0}, s1{1};
    CHECK(mmd_cluster_to_cluster(s0, s1, G, bw) ==
          doctest::Approx(mmd_pointwise(0, 1, G, bw)).epsilon(1e-15));
    const std::vector<int> empty;
    CHECK_THROWS_AS(mmd_cluster_to_cluster(a, empty, G, bw), std::invalid_argument);
}

TEST_CASE("mmd_cluster_to_cluster matches the Monte-Carlo oracle on blob pairs") {
    const BandwidthSplit bw(0.5, 1.0, 1);
    Eigen::MatrixXd X(4, 1);
    X << 0.0, 0.1, 10.0, 10.1;
    const KernelMatrix G = kernel_matrix(X, bw.eta());
    const std::vector<int> a{0, 1}, b{2, 3};
    const double rho = mmd_cluster_to_cluster(a, b, G, bw);

    // the same two 2-component Gaussian mixtures, sampled
    FiniteMix pm;
    pm.weights = {0.5, 0.5};
    pm.parts.emplace_back(GaussianComponent{pt(0.0), 0.25});
    pm.parts.emplace_back(GaussianComponent{pt(0.1), 0.25});
    FiniteMix qm;
    qm.weights = {0.5, 0.5};
    qm.parts.emplace_back(GaussianComponent{pt(10.0), 0.25});
    qm.parts.emplace_back(GaussianComponent{pt(10.1), 0.25});
    const McEstimate mc = mmd_monte_carlo_oracle(Component(pm), Component(qm), 1.0, 400000, 99);
    CHECK(std::abs(mc.estimate - rho * rho) <= 3.0 * mc.std_error);
}

TEST_CASE("monte-carlo oracle null cases and determinism") {
    const Component g = GaussianComponent{pt(0.3), 0.5};
    const McEstimate same = mmd_monte_carlo_oracle(g, g, 1.0, 50000, 3);
    CHECK(std::abs(same.estimate) <= 3.0 * same.std_error + 1e-12);

    const Component u = UniformComponent{0.0, 1.0};
    const McEstimate unull = mmd_monte_carlo_oracle(u, u, 1.0, 50000, 4);
    CHECK(std::abs(unull.estimate) <= 3.0 * unull.std_error + 1e-12);

    const Component q = GaussianComponent{pt(1.0), 0.25};
    const McEstimate a = mmd_monte_carlo_oracle(g, q, 0.7, 20000, 11);
    const McEstimate b = mmd_monte_carlo_oracle(g, q, 0.7, 20000, 11);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("gram_block_sum equals the naive double loop") {
    Rng rng(13);
    const Eigen::MatrixXd X = random_points(12, 1, rng);
    const KernelMatrix G = kernel_matrix(X, 2.0);
    const std::vector<int> a{0, 2, 4, 6}, b{1, 3, 5};
    long double naive = 0.0L;
    for (int i : a)
        for (int j : b) naive += G(i, j);
    CHECK(gram_block_sum(a, b, G) == doctest::Approx(static_cast<double>(naive)).epsilon(1e-15));
}

TEST_CASE("rng streams are deterministic and well-ranged") {
    Rng a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform(), y = b.uniform(), z = c.uniform();
        all_equal = all_equal && x == y;
        any_diff = any_diff || x != z;
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("rng normal moments") {
    Rng rng(77);
    const int n = 200000;
    long double sum = 0.0L, sq = 0.0L;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    const double mean = static_cast<double>(sum / n);
    const double var = static_cast<double>(sq / n) - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("rng categorical and below validate input") {
    Rng rng(1);
    const std::vector<double> neg{0.5, -0.1};
    CHECK_THROWS_AS(rng.categorical(neg), std::invalid_argument);
    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(rng.categorical(zero), std::invalid_argument);
    CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
    const std::vector<double> w{0.25, 0.75};
    int counts[2] = {0, 0};
    for (int i = 0; i < 20000; ++i) ++counts[rng.categorical(w)];
    CHECK(std::abs(counts[1] / 20000.0 - 0.75) < 0.02);
}

TEST_CASE("compensated summation beats naive accumulation") {
    CompensatedSum acc;
    acc.add(1.0);
    for (int i = 0; i < 10000000; ++i) acc.add(1e-16);
    CHECK(acc.value() == doctest::Approx(1.0 + 1e-9).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    const double third = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const double mass = integrate_adaptive(
        [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }, -6.0, 6.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    const double sq = integrate2_adaptive([](double x, double y) { return x * y; }, 0.0, 1.0, 0.0,
                                          2.0);
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("adaptive quadrature reports non-convergence") {
    // far beyond any panel budget: effectively noise at every refinement
    auto wild = [](double x) { return std::sin(1e9 * x * x + 3.0 * x); };
    CHECK_THROWS_AS(integrate_adaptive(wild, 0.0, 1.0), numerical_error);
}
