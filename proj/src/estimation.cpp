#include "kclust/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kclust/csv.hpp"
#include "kclust/detail/assignment.hpp"
#include "kclust/errors.hpp"
#include "kclust/rng.hpp"

namespace kclust {

std::vector<double> EstimatedMixingMeasure::weights() const {
    std::vector<double> w(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        w[c] = static_cast<double>(clusters[c].size()) / n;
    return w;
}

EstimatedMixingMeasure estimate_mixing_measure(const Eigen::MatrixXd& points, const Partition& p,
                                               double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("estimate_mixing_measure: beta must be positive");
    if (p.n() != points.rows())
        throw std::invalid_argument("estimate_mixing_measure: partition size mismatch");
    p.validate();
    p.require_nonempty();
    EstimatedMixingMeasure est;
    est.clusters = p.clusters();
    est.beta = beta;
    est.n = p.n();
    return est;
}

MixingMeasure to_mixing_measure(const EstimatedMixingMeasure& est, const Eigen::MatrixXd& points) {
    if (points.rows() != est.n)
        throw std::invalid_argument("to_mixing_measure: point count mismatch");
    std::vector<Component> comps;
    comps.reserve(est.clusters.size());
    for (const std::vector<int>& cluster : est.clusters) {
        FiniteMix mix;
        const double w = 1.0 / static_cast<double>(cluster.size());
        for (int idx : cluster) {
            if (idx < 0 || idx >= est.n)
                throw std::invalid_argument("to_mixing_measure: member index out of range");
            mix.weights.push_back(w);
            mix.parts.emplace_back(
                GaussianComponent{points.row(idx).transpose(), est.beta * est.beta});
        }
        comps.emplace_back(std::move(mix));
    }
    return MixingMeasure(est.weights(), std::move(comps));
}

namespace {

struct BasisCell {
    int i;
    int j;
    double x;
};

constexpr double kReducedCostTol = 1e-12;

}  // namespace

double min_cost_transport(const Eigen::MatrixXd& cost, std::span<const double> a,
                          std::span<const double> b) {
    const int m = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    if (cost.rows() != m || cost.cols() != nb)
        throw std::invalid_argument("min_cost_transport: cost shape mismatch");
    if (m < 1 || nb < 1) throw std::invalid_argument("min_cost_transport: empty marginals");
    double sum_a = 0.0, sum_b = 0.0;
    for (double x : a) {
        if (!(x > 0.0)) throw std::invalid_argument("min_cost_transport: weights must be positive");
        sum_a += x;
    }
    for (double x : b) {
        if (!(x > 0.0)) throw std::invalid_argument("min_cost_transport: weights must be positive");
        sum_b += x;
    }
    if (std::abs(sum_a - sum_b) > 1e-9)
        throw std::invalid_argument("min_cost_transport: marginals must balance");

    // rescale b to balance exactly
    std::vector<double> bb(b.begin(), b.end());
    const double fix = sum_a / sum_b;
    for (double& x : bb) x *= fix;

    // northwest-corner initial basis: exactly m + nb - 1 cells
    std::vector<BasisCell> basis;
    basis.reserve(m + nb - 1);
    {
        int i = 0, j = 0;
        double ra = a[0], rb = bb[0];
        while (true) {
            const double x = std::min(ra, rb);
            basis.push_back({i, j, x});
            ra -= x;
            rb -= x;
            if (i == m - 1 && j == nb - 1) break;
            if (ra <= 0.0 && i < m - 1) {
                ++i;
                ra = a[i];
            } else {
                ++j;
                rb = bb[j];
            }
        }
    }

    const int nodes = m + nb;  // rows first, then columns
    std::vector<double> u(m), v(nb);
    std::vector<char> known_u(m), known_v(nb);

    for (long iter = 0; iter < 100000; ++iter) {
        // adjacency of the basis spanning tree
        std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // node -> (cell idx, other node)
        for (int c = 0; c < static_cast<int>(basis.size()); ++c) {
            adj[basis[c].i].push_back({c, m + basis[c].j});
            adj[m + basis[c].j].push_back({c, basis[c].i});
        }

        // duals from u_0 = 0 over the tree
        std::fill(known_u.begin(), known_u.end(), 0);
        std::fill(known_v.begin(), known_v.end(), 0);
        u[0] = 0.0;
        known_u[0] = 1;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (const auto& [cell, other] : adj[node]) {
                const bool other_is_col = other >= m;
                if (other_is_col ? known_v[other - m] : known_u[other]) continue;
                const double c = cost(basis[cell].i, basis[cell].j);
                if (other_is_col) {
                    v[other - m] = c - u[basis[cell].i];
                    known_v[other - m] = 1;
                } else {
                    u[other] = c - v[basis[cell].j];
                    known_u[other] = 1;
                }
                stack.push_back(other);
            }
        }
        for (int i = 0; i < m; ++i)
            if (!known_u[i]) throw numerical_error("min_cost_transport: basis lost connectivity");

        // entering cell: most negative reduced cost
        int ei = -1, ej = -1;
        double best_rc = -kReducedCostTol;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < nb; ++j) {
                const double rc = cost(i, j) - u[i] - v[j];
                if (rc < best_rc) {
                    best_rc = rc;
                    ei = i;
                    ej = j;
                }
            }
        }
        if (ei < 0) {
            CompensatedSum total;
            for (const BasisCell& cell : basis) total.add(cost(cell.i, cell.j) * cell.x);
            return total.value();
        }

        // unique tree path from row node ei to column node m + ej
        std::vector<int> parent_node(nodes, -2), parent_cell(nodes, -1);
        parent_node[ei] = -1;
        std::vector<int> queue{ei};
        for (std::size_t qh = 0; qh < queue.size(); ++qh) {
            const int node = queue[qh];
            for (const auto& [cell, other] : adj[node]) {
                if (parent_node[other] != -2) continue;
                parent_node[other] = node;
                parent_cell[other] = cell;
                queue.push_back(other);
            }
        }
        if (parent_node[m + ej] == -2)
            throw numerical_error("min_cost_transport: cycle search failed");
        std::vector<int> path_cells;  // from the column end back to ei
        for (int node = m + ej; parent_node[node] != -1; node = parent_node[node])
            path_cells.push_back(parent_cell[node]);

        // the closed cycle alternates signs starting with + on the entering
        // cell; path_cells[0] is adjacent to it and gets -
        double theta = std::numeric_limits<double>::infinity();
        int leave_pos = -1;
        for (std::size_t p = 0; p < path_cells.size(); p += 2) {
            const double x = basis[path_cells[p]].x;
            if (x < theta) {
                theta = x;
                leave_pos = static_cast<int>(p);
            }
        }
        if (leave_pos < 0) throw numerical_error("min_cost_transport: no leaving cell");
        for (std::size_t p = 0; p < path_cells.size(); ++p) {
            if (p % 2 == 0)
                basis[path_cells[p]].x -= theta;
            else
                basis[path_cells[p]].x += theta;
        }
        const int leaving = path_cells[leave_pos];
        basis[leaving] = {ei, ej, theta};
    }
    throw numerical_error("min_cost_transport: pivot limit exceeded");
}

double wasserstein(const MixingMeasure& a, const MixingMeasure& b, double zeta) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wasserstein: dimension mismatch");
    if (!(zeta > 0.0)) throw std::invalid_argument("wasserstein: zeta must be positive");
    const int ka = a.k(), kb = b.k();
    // rho_kl = sqrt(<k,k> + <l,l> - 2<k,l>) with the self terms hoisted
    std::vector<double> self_a(ka), self_b(kb);
    for (int i = 0; i < ka; ++i) self_a[i] = embedding_inner(a.components[i], a.components[i], zeta);
    for (int j = 0; j < kb; ++j) self_b[j] = embedding_inner(b.components[j], b.components[j], zeta);
    Eigen::MatrixXd cost(ka, kb);
    for (int i = 0; i < ka; ++i) {
        for (int j = 0; j < kb; ++j) {
            const double cross = embedding_inner(a.components[i], b.components[j], zeta);
            cost(i, j) = std::sqrt(std::max(0.0, self_a[i] + self_b[j] - 2.0 * cross));
        }
    }
    return min_cost_transport(cost, a.weights, b.weights);
}

int bayes_reassign(const EstimatedMixingMeasure& est, const Eigen::MatrixXd& points,
                   const Eigen::VectorXd& x, bool* tie) {
    if (points.rows() != est.n) throw std::invalid_argument("bayes_reassign: point count mismatch");
    if (x.size() != points.cols()) throw std::invalid_argument("bayes_reassign: dimension mismatch");
    // summed KDE kernel per cluster, max-shifted so that a healthy cluster
    // survives even when raw exponentials underflow
    const double denom = 2.0 * est.beta * est.beta;
    const int n = est.n;
    Eigen::VectorXd expo(n);
    for (int i = 0; i < n; ++i) expo(i) = -(x.transpose() - points.row(i)).squaredNorm() / denom;
    const double shift = expo.maxCoeff();
    int best = 0;
    double best_val = -1.0;
    bool tied = false;
    for (int c = 0; c < est.k(); ++c) {
        CompensatedSum acc;
        for (int idx : est.clusters[c]) acc.add(std::exp(expo(idx) - shift));
        const double val = acc.value();
        if (val > best_val) {
            best_val = val;
            best = c;
            tied = false;
        } else if (val == best_val) {
            tied = true;
        }
    }
    if (tie != nullptr) *tie = tied;
    return best;
}

BayesScan bayes_agreement_scan(const EstimatedMixingMeasure& est, const MixingMeasure& truth,
                               const LabeledSample& sample, const Eigen::VectorXd& grid, double t) {
    if (truth.dim() != 1 || sample.points.cols() != 1)
        throw std::invalid_argument("bayes_agreement_scan: grid scan is one-dimensional");
    if (sample.points.rows() != est.n)
        throw std::invalid_argument("bayes_agreement_scan: sample size mismatch");
    if (t < 0.0) throw std::invalid_argument("bayes_agreement_scan: t must be >= 0");

    // estimated labels -> planted labels by maximal agreement
    std::vector<int> est_labels(est.n, -1);
    for (int c = 0; c < est.k(); ++c)
        for (int idx : est.clusters[c]) est_labels[idx] = c;
    const int k = std::max(est.k(), sample.planted.k);
    const std::vector<int> to_planted = detail::best_label_map(est_labels, sample.planted.labels, k);

    BayesScan scan;
    int matched = 0;
    Eigen::VectorXd x(1);
    for (int gi = 0; gi < grid.size(); ++gi) {
        x(0) = grid(gi);
        if (exceptional_member(truth, x, t)) continue;
        ++scan.considered;
        const int truth_label = bayes_label(truth, x);
        const int est_label = to_planted[bayes_reassign(est, sample.points, x)];
        if (est_label == truth_label) ++matched;
    }
    scan.vacuous = scan.considered == 0;
    scan.fraction = scan.vacuous ? 0.0 : static_cast<double>(matched) / scan.considered;
    return scan;
}

void write_estimate(const EstimatedMixingMeasure& est, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("write_estimate: cannot open " + path);
    out << "# estimated mixing measure\n";
    out << "n = " << est.n << "\n";
    out << "k = " << est.k() << "\n";
    out << "beta = " << format_real(est.beta) << "\n";
    for (int c = 0; c < est.k(); ++c) {
        out << "cluster." << (c + 1) << " = ";
        for (std::size_t i = 0; i < est.clusters[c].size(); ++i) {
            if (i > 0) out << ",";
            out << est.clusters[c][i];
        }
        out << "\n";
    }
    if (!out) throw io_error("write_estimate: write failed for " + path);
}

EstimatedMixingMeasure read_estimate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("read_estimate: cannot open " + path);
    EstimatedMixingMeasure est;
    est.n = -1;
    int k = -1;
    std::string line;
    std::vector<std::pair<int, std::vector<int>>> clusters;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "n") {
                est.n = std::stoi(val);
            } else if (key == "k") {
                k = std::stoi(val);
            } else if (key == "beta") {
                est.beta = std::stod(val);
            } else if (key.rfind("cluster.", 0) == 0) {
                const int idx = std::stoi(key.substr(8));
                std::vector<int> members;
                std::stringstream ss(val);
                std::string tok;
                while (std::getline(ss, tok, ',')) members.push_back(std::stoi(trim(tok)));
                clusters.push_back({idx, std::move(members)});
            }
        } catch (const std::exception&) {
            throw io_error("read_estimate: malformed line '" + line + "' in " + path);
        }
    }
    if (est.n < 1 || k < 1 || !(est.beta > 0.0))
        throw io_error("read_estimate: missing n/k/beta in " + path);
    if (static_cast<int>(clusters.size()) != k)
        throw io_error("read_estimate: expected " + std::to_string(k) + " clusters in " + path);
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<char> seen(est.n, 0);
    for (int c = 0; c < k; ++c) {
        if (clusters[c].first != c + 1)
            throw io_error("read_estimate: cluster keys must be 1..k in " + path);
        for (int idx : clusters[c].second) {
            if (idx < 0 || idx >= est.n || seen[idx])
                throw io_error("read_estimate: bad or duplicate member index in " + path);
            seen[idx] = 1;
        }
        est.clusters.push_back(clusters[c].second);
    }
    for (int i = 0; i < est.n; ++i)
        if (!seen[i]) throw io_error("read_estimate: clusters do not cover every point in " + path);
    return est;
}

}  // namespace kclust
