#ifndef KCLUST_QUADRATURE_HPP
#define KCLUST_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "kclust/errors.hpp"

namespace kclust {

inline constexpr int kGaussLegendreOrder = 64;

// 64-point Gauss-Legendre rule on [-1, 1].  Nodes are the roots of P_64,
// found once by Newton iteration from the Chebyshev initial guess; weights
// via w_i = 2 / ((1 - x_i^2) P'_64(x_i)^2).
struct GaussLegendre64 {
    std::array<double, kGaussLegendreOrder> nodes{};
    std::array<double, kGaussLegendreOrder> weights{};

    GaussLegendre64() {
        const int n = kGaussLegendreOrder;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                // evaluate P_n and P_{n-1} by the three-term recurrence
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre64& gauss_legendre_64() {
    static const GaussLegendre64 rule;
    return rule;
}

// Fixed-panel integral of f over [a, b]: `panels` equal sub-intervals,
// 64-point Gauss-Legendre on each.
template <class F>
double gl_fixed(F&& f, double a, double b, int panels) {
    const auto& rule = gauss_legendre_64();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < kGaussLegendreOrder; ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * acc;
    }
    return total;
}

// Panel-doubling integral of f over [a, b]: start with one 64-point panel
// and double the panel count until the relative change drops below rel_tol.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9, int max_rounds = 12) {
    double prev = gl_fixed(f, a, b, 1);
    int panels = 2;
    for (int round = 0; round < max_rounds; ++round, panels *= 2) {
        const double cur = gl_fixed(f, a, b, panels);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw numerical_error("integrate_adaptive: panel doubling did not converge");
}

// Same scheme for a double integral over [ax, bx] x [ay, by] with a product
// Gauss-Legendre rule, doubling the panel count on both axes together.
template <class F>
double integrate2_adaptive(F&& f, double ax, double bx, double ay, double by,
                           double rel_tol = 1e-9, int max_rounds = 8) {
    auto eval = [&](int panels) {
        return gl_fixed([&](double x) { return gl_fixed([&](double y) { return f(x, y); }, ay, by, panels); },
                        ax, bx, panels);
    };
    double prev = eval(1);
    int panels = 2;
    for (int round = 0; round < max_rounds; ++round, panels *= 2) {
        const double cur = eval(panels);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw numerical_error("integrate2_adaptive: panel doubling did not converge");
}

}  // namespace kclust

#endif  // KCLUST_QUADRATURE_HPP
