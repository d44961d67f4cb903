#ifndef KCLUST_COMPONENTS_HPP
#define KCLUST_COMPONENTS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "kclust/partition.hpp"
#include "kclust/rng.hpp"

namespace kclust {

// Isotropic Gaussian N(mean, variance * I).
struct GaussianComponent {
    Eigen::VectorXd mean;
    double variance = 1.0;
};

// Uniform distribution on the interval [lo, hi]; one-dimensional only.
struct UniformComponent {
    double lo = 0.0;
    double hi = 1.0;
};

class Component;

// Finite mixture of sub-components with strictly positive weights.
struct FiniteMix {
    std::vector<double> weights;
    std::vector<Component> parts;
};

// Weighted primitive obtained by flattening nested mixtures.
struct WeightedAtom {
    double weight;
    std::variant<GaussianComponent, UniformComponent> atom;
};

// A mixture component: Gaussian, uniform interval, or finite mixture of
// further components.  Validated on construction (positive variance,
// lo < hi, mixture weights positive and summing to 1 within 1e-12, all
// parts of equal dimension).
class Component {
public:
    Component(GaussianComponent g);   // NOLINT(google-explicit-constructor)
    Component(UniformComponent u);    // NOLINT(google-explicit-constructor)
    Component(FiniteMix m);           // NOLINT(google-explicit-constructor)

    int dim() const { return dim_; }
    const std::variant<GaussianComponent, UniformComponent, FiniteMix>& value() const { return value_; }

    double density(const Eigen::VectorXd& x) const;
    Eigen::VectorXd sample(Rng& rng) const;

    // Appends the primitive atoms of this component, each carrying
    // `scale` times its within-component weight.
    void flatten(double scale, std::vector<WeightedAtom>& out) const;
    std::vector<WeightedAtom> flatten() const;

private:
    std::variant<GaussianComponent, UniformComponent, FiniteMix> value_;
    int dim_;
};

// Discrete mixing measure Lambda = sum_k weights[k] * delta_{components[k]}.
// Weights are strictly positive and sum to 1 within 1e-12; all components
// share one dimension.
struct MixingMeasure {
    std::vector<double> weights;
    std::vector<Component> components;

    MixingMeasure(std::vector<double> w, std::vector<Component> c);

    int k() const { return static_cast<int>(components.size()); }
    int dim() const { return components.front().dim(); }
};

// Sample of n points with the planted component labels and the seed that
// produced them.
struct LabeledSample {
    Eigen::MatrixXd points;  // n x d
    Partition planted;
    std::uint64_t seed = 0;
};

// Two-step sampler: draw the component index from `weights` first, then the
// point from that component.  Deterministic given the seed.
LabeledSample sample_labeled(const MixingMeasure& lam, int n, std::uint64_t seed);

// Mixture density sum_k weights[k] * f_k(x).
double density_eval(const MixingMeasure& lam, const Eigen::VectorXd& x);

// Bayes-optimal component label argmax_k weights[k] * f_k(x), 0-based.
// Ties resolve to the lowest index and set *tie when provided.  A point with
// zero density under every component is unsupported and raises
// std::domain_error.
int bayes_label(const MixingMeasure& lam, const Eigen::VectorXd& x, bool* tie = nullptr);

// Membership in the exceptional set E(t): true iff some pair k != k' has
// |weights[k] f_k(x) - weights[k'] f_k'(x)| <= t.
bool exceptional_member(const MixingMeasure& lam, const Eigen::VectorXd& x, double t);

// Inner product <mu_a, mu_b> of the kernel mean embeddings of two components
// under the Gaussian kernel g_zeta.  Gaussian-Gaussian pairs use the closed
// form (zeta / (zeta + 2 s^2))^(d/2) exp(-||mean gap||^2 / (zeta + 2 s^2))
// with s^2 the sum of the two variances; pairs involving uniform intervals
// integrate by adaptive Gauss-Legendre panels; mixtures expand bilinearly.
double embedding_inner(const Component& a, const Component& b, double zeta);

// MMD rho(a, b) = sqrt(<a,a> + <b,b> - 2<a,b>), radicand clamped at zero.
double component_mmd(const Component& a, const Component& b, double zeta);

}  // namespace kclust

#endif  // KCLUST_COMPONENTS_HPP
