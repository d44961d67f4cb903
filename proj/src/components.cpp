#include "kclust/components.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kclust/quadrature.hpp"

namespace kclust {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_weights(const std::vector<double>& w, std::size_t parts, const char* where) {
    if (w.size() != parts || w.empty())
        throw std::invalid_argument(std::string(where) + ": weight/part count mismatch");
    double sum = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) throw std::invalid_argument(std::string(where) + ": weights must be positive");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightTol)
        throw std::invalid_argument(std::string(where) + ": weights must sum to 1");
}

double gaussian_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, double variance) {
    const int d = static_cast<int>(mean.size());
    const double norm = std::pow(kTwoPi * variance, -0.5 * d);
    return norm * std::exp(-(x - mean).squaredNorm() / (2.0 * variance));
}

}  // namespace

Component::Component(GaussianComponent g) : value_(std::move(g)), dim_(0) {
    const auto& gc = std::get<GaussianComponent>(value_);
    if (gc.mean.size() < 1) throw std::invalid_argument("GaussianComponent: empty mean");
    if (!(gc.variance > 0.0)) throw std::invalid_argument("GaussianComponent: variance must be positive");
    dim_ = static_cast<int>(gc.mean.size());
}

Component::Component(UniformComponent u) : value_(u), dim_(1) {
    if (!(u.lo < u.hi)) throw std::invalid_argument("UniformComponent: requires lo < hi");
}

Component::Component(FiniteMix m) : value_(std::move(m)), dim_(0) {
    const auto& mix = std::get<FiniteMix>(value_);
    check_weights(mix.weights, mix.parts.size(), "FiniteMix");
    dim_ = mix.parts.front().dim();
    for (const Component& part : mix.parts)
        if (part.dim() != dim_) throw std::invalid_argument("FiniteMix: mixed dimensions");
}

double Component::density(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw std::invalid_argument("Component::density: dimension mismatch");
    if (const auto* g = std::get_if<GaussianComponent>(&value_))
        return gaussian_pdf(x, g->mean, g->variance);
    if (const auto* u = std::get_if<UniformComponent>(&value_)) {
        const double v = x(0);
        return (v >= u->lo && v <= u->hi) ? 1.0 / (u->hi - u->lo) : 0.0;
    }
    const auto& mix = std::get<FiniteMix>(value_);
    double acc = 0.0;
    for (std::size_t i = 0; i < mix.parts.size(); ++i)
        acc += mix.weights[i] * mix.parts[i].density(x);
    return acc;
}

Eigen::VectorXd Component::sample(Rng& rng) const {
    if (const auto* g = std::get_if<GaussianComponent>(&value_)) {
        Eigen::VectorXd x(dim_);
        const double sd = std::sqrt(g->variance);
        for (int i = 0; i < dim_; ++i) x(i) = g->mean(i) + sd * rng.normal();
        return x;
    }
    if (const auto* u = std::get_if<UniformComponent>(&value_)) {
        Eigen::VectorXd x(1);
        x(0) = rng.uniform(u->lo, u->hi);
        return x;
    }
    const auto& mix = std::get<FiniteMix>(value_);
    const int part = rng.categorical(mix.weights);
    return mix.parts[part].sample(rng);
}

void Component::flatten(double scale, std::vector<WeightedAtom>& out) const {
    if (const auto* g = std::get_if<GaussianComponent>(&value_)) {
        out.push_back({scale, *g});
        return;
    }
    if (const auto* u = std::get_if<UniformComponent>(&value_)) {
        out.push_back({scale, *u});
        return;
    }
    const auto& mix = std::get<FiniteMix>(value_);
    for (std::size_t i = 0; i < mix.parts.size(); ++i)
        mix.parts[i].flatten(scale * mix.weights[i], out);
}

std::vector<WeightedAtom> Component::flatten() const {
    std::vector<WeightedAtom> out;
    flatten(1.0, out);
    return out;
}

MixingMeasure::MixingMeasure(std::vector<double> w, std::vector<Component> c)
    : weights(std::move(w)), components(std::move(c)) {
    check_weights(weights, components.size(), "MixingMeasure");
    const int d = components.front().dim();
    for (const Component& comp : components)
        if (comp.dim() != d) throw std::invalid_argument("MixingMeasure: mixed dimensions");
}

LabeledSample sample_labeled(const MixingMeasure& lam, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_labeled: n must be >= 1");
    Rng rng(seed);
    LabeledSample out;
    out.points.resize(n, lam.dim());
    out.planted.labels.resize(n);
    out.planted.k = lam.k();
    out.seed = seed;
    for (int i = 0; i < n; ++i) {
        const int label = rng.categorical(lam.weights);
        out.planted.labels[i] = label;
        out.points.row(i) = lam.components[label].sample(rng).transpose();
    }
    return out;
}

double density_eval(const MixingMeasure& lam, const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (int k = 0; k < lam.k(); ++k) acc += lam.weights[k] * lam.components[k].density(x);
    return acc;
}

int bayes_label(const MixingMeasure& lam, const Eigen::VectorXd& x, bool* tie) {
    int best = 0;
    double best_val = -1.0;
    bool tied = false;
    for (int k = 0; k < lam.k(); ++k) {
        const double val = lam.weights[k] * lam.components[k].density(x);
        if (val > best_val) {
            best_val = val;
            best = k;
            tied = false;
        } else if (val == best_val) {
            tied = true;
        }
    }
    if (best_val <= 0.0)
        throw std::domain_error("bayes_label: point unsupported by every component");
    if (tie != nullptr) *tie = tied;
    return best;
}

bool exceptional_member(const MixingMeasure& lam, const Eigen::VectorXd& x, double t) {
    if (t < 0.0) throw std::invalid_argument("exceptional_member: t must be >= 0");
    std::vector<double> vals(lam.k());
    for (int k = 0; k < lam.k(); ++k) vals[k] = lam.weights[k] * lam.components[k].density(x);
    for (int k = 0; k < lam.k(); ++k)
        for (int l = k + 1; l < lam.k(); ++l)
            if (std::abs(vals[k] - vals[l]) <= t) return true;
    return false;
}

namespace {

// <mu_P, mu_Q> for P = N(a, va I), Q = N(b, vb I):
// (zeta / (zeta + 2 s^2))^(d/2) exp(-||a-b||^2 / (zeta + 2 s^2)), s^2 = va + vb.
double inner_gauss_gauss(const GaussianComponent& p, const GaussianComponent& q, double zeta) {
    const int d = static_cast<int>(p.mean.size());
    const double denom = zeta + 2.0 * (p.variance + q.variance);
    return std::pow(zeta / denom, 0.5 * d) * std::exp(-(p.mean - q.mean).squaredNorm() / denom);
}

// <mu_P, mu_Q> for P = N(m, v), Q = U[lo, hi] (one-dimensional): the
// Gaussian variable integrates in closed form, leaving a single smooth
// integral over the interval.
double inner_gauss_uniform(const GaussianComponent& p, const UniformComponent& q, double zeta) {
    if (p.mean.size() != 1)
        throw std::invalid_argument("embedding_inner: uniform components are one-dimensional");
    const double m = p.mean(0);
    const double denom = zeta + 2.0 * p.variance;
    const double amp = std::sqrt(zeta / denom);
    const double integral = integrate_adaptive(
        [&](double y) { return std::exp(-(m - y) * (m - y) / denom); }, q.lo, q.hi);
    return amp * integral / (q.hi - q.lo);
}

double inner_uniform_uniform(const UniformComponent& p, const UniformComponent& q, double zeta) {
    const double integral = integrate2_adaptive(
        [&](double x, double y) { return std::exp(-(x - y) * (x - y) / zeta); }, p.lo, p.hi, q.lo,
        q.hi);
    return integral / ((p.hi - p.lo) * (q.hi - q.lo));
}

double inner_atoms(const WeightedAtom& a, const WeightedAtom& b, double zeta) {
    const auto* ga = std::get_if<GaussianComponent>(&a.atom);
    const auto* gb = std::get_if<GaussianComponent>(&b.atom);
    if (ga != nullptr && gb != nullptr) return inner_gauss_gauss(*ga, *gb, zeta);
    if (ga != nullptr) return inner_gauss_uniform(*ga, std::get<UniformComponent>(b.atom), zeta);
    if (gb != nullptr) return inner_gauss_uniform(*gb, std::get<UniformComponent>(a.atom), zeta);
    return inner_uniform_uniform(std::get<UniformComponent>(a.atom),
                                 std::get<UniformComponent>(b.atom), zeta);
}

}  // namespace

double embedding_inner(const Component& a, const Component& b, double zeta) {
    if (!(zeta > 0.0)) throw std::invalid_argument("embedding_inner: zeta must be positive");
    if (a.dim() != b.dim()) throw std::invalid_argument("embedding_inner: dimension mismatch");
    const std::vector<WeightedAtom> fa = a.flatten();
    const std::vector<WeightedAtom> fb = b.flatten();
    CompensatedSum acc;
    for (const WeightedAtom& pa : fa)
        for (const WeightedAtom& pb : fb)
            acc.add(pa.weight * pb.weight * inner_atoms(pa, pb, zeta));
    return acc.value();
}

double component_mmd(const Component& a, const Component& b, double zeta) {
    const double sq = embedding_inner(a, a, zeta) + embedding_inner(b, b, zeta) -
                      2.0 * embedding_inner(a, b, zeta);
    return std::sqrt(std::max(0.0, sq));
}

}  // namespace kclust
