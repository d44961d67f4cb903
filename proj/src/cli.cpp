#include "kclust/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "kclust/bandwidth.hpp"
#include "kclust/clustering.hpp"
#include "kclust/counterexamples.hpp"
#include "kclust/csv.hpp"
#include "kclust/diagnostics.hpp"
#include "kclust/errors.hpp"
#include "kclust/estimation.hpp"
#include "kclust/kde.hpp"
#include "kclust/kernel.hpp"

namespace kclust {

namespace {

// ---------------------------------------------------------------------------
// shared resolution helpers

std::uint64_t checked_seed(long s) {
    if (s < 0) throw config_error("config: seeds must be non-negative");
    return static_cast<std::uint64_t>(s);
}

std::uint64_t resolve_seed(const RunConfig& rc, long fallback) {
    if (rc.seed_override) return *rc.seed_override;
    return checked_seed(rc.cfg.get_int("seed", fallback));
}

std::vector<std::uint64_t> resolve_seeds(const RunConfig& rc) {
    if (rc.seed_override) return {*rc.seed_override};
    std::vector<std::uint64_t> seeds;
    for (long s : rc.cfg.get_int_list("seeds")) seeds.push_back(checked_seed(s));
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

std::string resolve_out(const RunConfig& rc, const std::string& fallback) {
    if (rc.out_override) return *rc.out_override;
    return rc.cfg.get_string("out", fallback);
}

long resolve_n(const ConfigMap& cfg, long fallback) {
    const long n = cfg.get_int("n", fallback);
    if (n < 2) throw config_error("config: n must be >= 2");
    return n;
}

double resolve_beta(const ConfigMap& cfg, long n, int dim) {
    const std::string raw = cfg.get_string("beta", "auto");
    if (raw == "auto") return default_bandwidth(static_cast<int>(n), dim);
    const double beta = cfg.get_real("beta");
    if (!(beta > 0.0)) throw config_error("config: beta must be positive or 'auto'");
    return beta;
}

double resolve_zeta(const ConfigMap& cfg) {
    const double zeta = cfg.get_real("zeta", 1.0);
    if (!(zeta > 0.0)) throw config_error("config: zeta must be positive");
    return zeta;
}

// Two Gaussian blobs at +/- separation/2, the standard well-separated
// control construction.
MixingMeasure two_blob_mixture(double separation, double variance) {
    if (!(separation > 0.0)) throw config_error("config: blob_separation must be positive");
    if (!(variance > 0.0)) throw config_error("config: blob_variance must be positive");
    Eigen::VectorXd lo(1), hi(1);
    lo << -0.5 * separation;
    hi << 0.5 * separation;
    std::vector<Component> comps;
    comps.emplace_back(GaussianComponent{lo, variance});
    comps.emplace_back(GaussianComponent{hi, variance});
    return MixingMeasure({0.5, 0.5}, std::move(comps));
}

// Custom mixture block when present, otherwise the two-blob control.
MixingMeasure resolve_mixture(const ConfigMap& cfg) {
    if (has_mixture(cfg)) return mixture_from_config(cfg);
    return two_blob_mixture(cfg.get_real("blob_separation", 20.0),
                            cfg.get_real("blob_variance", 0.01));
}

std::string canonical_algorithm(std::string name) {
    if (name.rfind("lnk-", 0) == 0) name = "linkage-" + name.substr(4);
    if (name == "kmn") name = "kmeans";
    if (name == "kmn-exact") name = "kmeans-exact";
    if (name == "ctr") name = "kcenter";
    if (name == "ctr-exact") name = "kcenter-exact";
    return name;
}

ClusteringResult run_named_algorithm(const std::string& raw_name, const KernelMatrix& G, int k,
                                     const BandwidthSplit& bw, const ConfigMap& cfg,
                                     std::uint64_t seed) {
    const std::string name = canonical_algorithm(raw_name);
    if (name == "kmeans") {
        const long restarts = cfg.get_int("restarts", 8);
        if (restarts < 1) throw config_error("config: restarts must be >= 1");
        return kernel_kmeans(G, k, bw, static_cast<int>(restarts), seed);
    }
    if (name == "kmeans-exact") return kernel_kmeans_exact(G, k, bw);
    if (name == "ffk" || name == "ffk-literal") {
        const long first = cfg.get_int("ffk.first", 0);
        if (first < 0 || first >= G.n())
            throw config_error("config: ffk.first must index a sample point");
        const FfkRule rule = name == "ffk" ? FfkRule::standard : FfkRule::literal_max;
        return ffk(G, k, bw, static_cast<int>(first), rule);
    }
    if (name == "kcenter") return kcenter(G, k, bw, KcenterMode::heuristic, seed);
    if (name == "kcenter-exact") return kcenter(G, k, bw, KcenterMode::exact);
    if (name == "linkage-single") return linkage(G, k, bw, LinkageMode::single);
    if (name == "linkage-complete") return linkage(G, k, bw, LinkageMode::complete);
    if (name == "linkage-average") return linkage(G, k, bw, LinkageMode::average);
    throw config_error("config: unknown algorithm '" + raw_name + "'");
}

int resolve_k(const ConfigMap& cfg, long fallback, long n) {
    const long k = cfg.get_int("k", fallback);
    if (k < 1) throw config_error("config: k must be >= 1");
    if (k > n) throw config_error("config: k exceeds the number of points");
    return static_cast<int>(k);
}

std::string fmt_bool(bool b) { return b ? "1" : "0"; }

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of an empty list");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// ---------------------------------------------------------------------------
// commands

void do_cluster(const RunConfig& rc, std::ostream& out) {
    const Dataset ds = read_dataset_csv(rc.cfg.get_string("input"));
    const long n = ds.points.rows();
    const int d = static_cast<int>(ds.points.cols());
    const int k = resolve_k(rc.cfg, 2, n);
    const double beta = resolve_beta(rc.cfg, n, d);
    const double zeta = resolve_zeta(rc.cfg);
    const BandwidthSplit bw(beta, zeta, d);
    const KernelMatrix G = kernel_matrix(ds.points, bw.eta(), rc.threads);
    const std::uint64_t seed = resolve_seed(rc, 1);
    const std::string algo = rc.cfg.get_string("algorithm", "kmeans");
    const ClusteringResult res = run_named_algorithm(algo, G, k, bw, rc.cfg, seed);

    std::ostringstream summary;
    summary << "algorithm=" << canonical_algorithm(algo) << ",k=" << k
            << ",objective=" << format_real(res.objective) << ",iterations=" << res.iterations
            << ",seed=" << res.seed;
    if (ds.labels) {
        const double agree = partition_agreement(res.partition, *ds.labels);
        summary << ",agreement=" << format_real(agree);
    }

    const std::string path = resolve_out(rc, "assignments.csv");
    std::ofstream f(path);
    if (!f) throw io_error("cluster: cannot open " + path);
    f << "point_id,label\n";
    for (long i = 0; i < n; ++i) f << i << "," << (res.partition.labels[i] + 1) << "\n";
    f << "# " << summary.str() << "\n";
    if (!f) throw io_error("cluster: write failed for " + path);

    out << "cluster: " << summary.str() << "\n";
}

void do_diagnose(const RunConfig& rc, std::ostream& out) {
    const MixingMeasure truth = resolve_mixture(rc.cfg);
    const double zeta = resolve_zeta(rc.cfg);
    const double eps = rc.cfg.get_real("epsilon", 0.0);
    if (eps < 0.0) throw config_error("config: epsilon must be >= 0");

    LabeledSample sample;
    if (rc.cfg.has("input")) {
        Dataset ds = read_dataset_csv(rc.cfg.get_string("input"));
        if (!ds.labels) throw config_error("diagnose: input dataset must carry planted labels");
        if (ds.points.cols() != truth.dim())
            throw config_error("diagnose: dataset dimension does not match the mixture");
        sample.points = std::move(ds.points);
        sample.planted = std::move(*ds.labels);
        sample.seed = 0;
    } else {
        const long n = resolve_n(rc.cfg, 400);
        sample = sample_labeled(truth, static_cast<int>(n), resolve_seed(rc, 1));
    }
    const long n = sample.points.rows();
    const double beta = resolve_beta(rc.cfg, n, truth.dim());
    const BandwidthSplit bw(beta, zeta, truth.dim());

    const SeparationReport report = separation_stats(sample, truth, bw);
    const bool sufficient = check_sufficient(report, eps);

    std::ostringstream row;
    row << "diagnose," << sample.seed << "," << n << "," << format_real(beta) << ","
        << format_real(zeta) << "," << format_real(eps) << "," << report.csv_row() << ","
        << fmt_bool(sufficient);
    append_result_rows(resolve_out(rc, "results_diagnose.csv"),
                       "experiment,seed,n,beta,zeta,epsilon," + SeparationReport::csv_header() +
                           ",sufficient",
                       {row.str()});

    out << "diagnose: n=" << n << " min_pair_mmd=" << format_real(report.min_pair_mmd)
        << " max_radius=" << format_real(report.max_radius)
        << " max_diameter=" << format_real(report.max_diameter)
        << " ratio=" << format_real(report.ratio)
        << " epsilon_margin=" << format_real(report.epsilon_margin)
        << " sufficient=" << (sufficient ? "yes" : "no") << "\n";
}

void do_estimate(const RunConfig& rc, std::ostream& out) {
    const MixingMeasure truth = resolve_mixture(rc.cfg);
    const double zeta = resolve_zeta(rc.cfg);
    const std::uint64_t seed = resolve_seed(rc, 1);

    Eigen::MatrixXd points;
    if (rc.cfg.has("input")) {
        Dataset ds = read_dataset_csv(rc.cfg.get_string("input"));
        if (ds.points.cols() != truth.dim())
            throw config_error("estimate: dataset dimension does not match the mixture");
        points = std::move(ds.points);
    } else {
        const long n = resolve_n(rc.cfg, 512);
        points = sample_labeled(truth, static_cast<int>(n), seed).points;
    }
    const long n = points.rows();
    const double beta = resolve_beta(rc.cfg, n, truth.dim());
    const BandwidthSplit bw(beta, zeta, truth.dim());
    const KernelMatrix G = kernel_matrix(points, bw.eta(), rc.threads);

    const int k = resolve_k(rc.cfg, truth.k(), n);
    const std::string algo = rc.cfg.get_string("algorithm", "linkage-single");
    const ClusteringResult res = run_named_algorithm(algo, G, k, bw, rc.cfg, seed);

    const EstimatedMixingMeasure est = estimate_mixing_measure(points, res.partition, beta);
    const std::string path = resolve_out(rc, "estimate.txt");
    write_estimate(est, path);
    const double w = wasserstein(to_mixing_measure(est, points), truth, zeta);

    out << "estimate: algorithm=" << canonical_algorithm(algo) << " k=" << k
        << " beta=" << format_real(beta) << " n=" << n << " wasserstein=" << format_real(w)
        << " out=" << path << "\n";
}

// ---------------------------------------------------------------------------
// experiment batteries

struct Battery {
    std::string header;
    std::vector<std::string> rows;  // aligned with the seed list
    std::string summary;
};

Battery battery_thm1(const ConfigMap& cfg, const std::vector<std::uint64_t>& seeds, int) {
    Thm1Params p;
    p.r = cfg.get_real("thm1.r", p.r);
    p.eps = cfg.get_real("thm1.eps", p.eps);
    p.D = cfg.get_real("thm1.D", p.D);
    p.lambda2 = cfg.get_real("thm1.lambda2", p.lambda2);
    p.zeta = cfg.get_real("zeta", p.zeta);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    const long n = resolve_n(cfg, 400);
    const double beta = resolve_beta(cfg, n, 1);

    Battery b;
    b.header =
        "experiment,seed,n,r,eps,D,lambda2,zeta,beta,"
        "planted_objective,alternative_objective,kmeans_failed,void_trial";
    int voids = 0, failed = 0;
    for (std::uint64_t seed : seeds) {
        const ImpossibilityTrial t = run_impossibility_trial(p, static_cast<int>(n), beta, seed);
        if (t.void_trial)
            ++voids;
        else if (t.kmeans_failed)
            ++failed;
        std::ostringstream row;
        row << "thm1," << seed << "," << n << "," << format_real(p.r) << "," << format_real(p.eps)
            << "," << format_real(p.D) << "," << format_real(p.lambda2) << ","
            << format_real(p.zeta) << "," << format_real(beta) << ","
            << format_real(t.planted_objective) << "," << format_real(t.alternative_objective)
            << "," << fmt_bool(t.kmeans_failed) << "," << fmt_bool(t.void_trial);
        b.rows.push_back(row.str());
    }
    const int live = static_cast<int>(seeds.size()) - voids;
    std::ostringstream s;
    s << "thm1: seeds=" << seeds.size() << " void=" << voids << " kmeans_failed_fraction="
      << format_real(live > 0 ? static_cast<double>(failed) / live : 0.0);
    b.summary = s.str();
    return b;
}

Battery battery_thm3(const ConfigMap& cfg, const std::vector<std::uint64_t>& seeds, int) {
    Thm3Params p;
    p.r = cfg.get_real("thm3.r", p.r);
    p.k_off = cfg.get_real("thm3.k_off", p.k_off);
    p.eps = cfg.get_real("thm3.eps", p.eps);
    p.zeta = cfg.get_real("zeta", p.zeta);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    const long n = resolve_n(cfg, 400);
    const double beta = resolve_beta(cfg, n, 1);

    Battery b;
    b.header = "experiment,seed,n,r,k_off,eps,zeta,beta,ffk_failed_fraction,lnk_failed,void_trial";
    int voids = 0, lnk_failed = 0;
    double ffk_sum = 0.0;
    for (std::uint64_t seed : seeds) {
        const NecessityTrial t = run_necessity_trial(p, static_cast<int>(n), beta, seed);
        if (t.void_trial) {
            ++voids;
        } else {
            ffk_sum += t.ffk_failed_fraction;
            if (t.lnk_failed) ++lnk_failed;
        }
        std::ostringstream row;
        row << "thm3," << seed << "," << n << "," << format_real(p.r) << ","
            << format_real(p.k_off) << "," << format_real(p.eps) << "," << format_real(p.zeta)
            << "," << format_real(beta) << "," << format_real(t.ffk_failed_fraction) << ","
            << fmt_bool(t.lnk_failed) << "," << fmt_bool(t.void_trial);
        b.rows.push_back(row.str());
    }
    const int live = static_cast<int>(seeds.size()) - voids;
    std::ostringstream s;
    s << "thm3: seeds=" << seeds.size() << " void=" << voids << " mean_ffk_failed_fraction="
      << format_real(live > 0 ? ffk_sum / live : 0.0) << " lnk_failed_rate="
      << format_real(live > 0 ? static_cast<double>(lnk_failed) / live : 0.0);
    b.summary = s.str();
    return b;
}

Battery battery_recovery(const ConfigMap& cfg, const std::vector<std::uint64_t>& seeds,
                         int threads) {
    const long n = resolve_n(cfg, 400);
    const double separation = cfg.get_real("blob_separation", 20.0);
    const double variance = cfg.get_real("blob_variance", 0.01);
    const double zeta = resolve_zeta(cfg);
    const double eps = cfg.get_real("epsilon", 0.01);
    if (eps < 0.0) throw config_error("config: epsilon must be >= 0");
    const double beta = resolve_beta(cfg, n, 1);
    const MixingMeasure lam = two_blob_mixture(separation, variance);
    const BandwidthSplit bw(beta, zeta, 1);

    Battery b;
    b.header = "experiment,seed,n,beta,zeta,separation,epsilon," + SeparationReport::csv_header() +
               ",sufficient,ctr_agreement,ffk_min_agreement,lnk_agreement,recovered";
    int sufficient_count = 0, recovered_on_sufficient = 0;
    for (std::uint64_t seed : seeds) {
        const LabeledSample sample = sample_labeled(lam, static_cast<int>(n), seed);
        const SeparationReport report = separation_stats(sample, lam, bw);
        const bool sufficient = check_sufficient(report, eps);
        const KernelMatrix G = kernel_matrix(sample.points, bw.eta(), threads);

        const ClusteringResult ctr = kcenter(G, 2, bw, KcenterMode::heuristic, seed);
        const double ctr_agree = partition_agreement(ctr.partition, sample.planted);
        double ffk_min = 1.0;
        for (int first = 0; first < n; ++first) {
            const ClusteringResult res = ffk(G, 2, bw, first);
            ffk_min = std::min(ffk_min, partition_agreement(res.partition, sample.planted));
        }
        const ClusteringResult lnk = linkage(G, 2, bw, LinkageMode::single);
        const double lnk_agree = partition_agreement(lnk.partition, sample.planted);
        const bool recovered = ctr_agree == 1.0 && ffk_min == 1.0 && lnk_agree == 1.0;
        if (sufficient) {
            ++sufficient_count;
            if (recovered) ++recovered_on_sufficient;
        }

        std::ostringstream row;
        row << "recovery," << seed << "," << n << "," << format_real(beta) << ","
            << format_real(zeta) << "," << format_real(separation) << "," << format_real(eps)
            << "," << report.csv_row() << "," << fmt_bool(sufficient) << ","
            << format_real(ctr_agree) << "," << format_real(ffk_min) << ","
            << format_real(lnk_agree) << "," << fmt_bool(recovered);
        b.rows.push_back(row.str());
    }
    std::ostringstream s;
    s << "recovery: seeds=" << seeds.size() << " sufficient=" << sufficient_count
      << " recovered_on_sufficient=" << recovered_on_sufficient;
    b.summary = s.str();
    return b;
}

Battery battery_bayes(const ConfigMap& cfg, const std::vector<std::uint64_t>& seeds, int threads) {
    const long n = resolve_n(cfg, 1000);
    const double separation = cfg.get_real("blob_separation", 20.0);
    const double variance = cfg.get_real("blob_variance", 0.01);
    const double zeta = resolve_zeta(cfg);
    const double t = cfg.get_real("t", 0.05);
    if (t < 0.0) throw config_error("config: t must be >= 0");
    const long grid_points = cfg.get_int("grid_points", 512);
    if (grid_points < 2) throw config_error("config: grid_points must be >= 2");
    const double beta = resolve_beta(cfg, n, 1);
    const std::string algo = cfg.get_string("algorithm", "linkage-single");
    const MixingMeasure lam = two_blob_mixture(separation, variance);
    const BandwidthSplit bw(beta, zeta, 1);

    Battery b;
    b.header = "experiment,seed,n,beta,zeta,separation,t,grid_points,fraction,considered,vacuous";
    std::vector<double> fractions;
    int vacuous_count = 0;
    for (std::uint64_t seed : seeds) {
        const LabeledSample sample = sample_labeled(lam, static_cast<int>(n), seed);
        const KernelMatrix G = kernel_matrix(sample.points, bw.eta(), threads);
        const int k = resolve_k(cfg, lam.k(), n);
        const ClusteringResult res = run_named_algorithm(algo, G, k, bw, cfg, seed);
        const EstimatedMixingMeasure est =
            estimate_mixing_measure(sample.points, res.partition, beta);
        const Eigen::VectorXd grid =
            kde_grid(sample.points, beta, static_cast<int>(grid_points));
        const BayesScan scan = bayes_agreement_scan(est, lam, sample, grid, t);
        if (scan.vacuous)
            ++vacuous_count;
        else
            fractions.push_back(scan.fraction);

        std::ostringstream row;
        row << "bayes," << seed << "," << n << "," << format_real(beta) << ","
            << format_real(zeta) << "," << format_real(separation) << "," << format_real(t) << ","
            << grid_points << "," << format_real(scan.fraction) << "," << scan.considered << ","
            << fmt_bool(scan.vacuous);
        b.rows.push_back(row.str());
    }
    std::ostringstream s;
    s << "bayes: seeds=" << seeds.size() << " vacuous=" << vacuous_count;
    if (!fractions.empty()) {
        s << " min_fraction=" << format_real(*std::min_element(fractions.begin(), fractions.end()))
          << " median_fraction=" << format_real(median(fractions));
    }
    b.summary = s.str();
    return b;
}

Battery battery_estimation(const ConfigMap& cfg, const std::vector<std::uint64_t>& seeds,
                           int threads) {
    const long n = resolve_n(cfg, 512);
    const double separation = cfg.get_real("blob_separation", 20.0);
    const double variance = cfg.get_real("blob_variance", 0.01);
    const double zeta = resolve_zeta(cfg);
    const double beta = resolve_beta(cfg, n, 1);
    const std::string algo = cfg.get_string("algorithm", "linkage-single");
    const MixingMeasure lam = two_blob_mixture(separation, variance);
    const BandwidthSplit bw(beta, zeta, 1);

    Battery b;
    b.header = "experiment,seed,n,beta,zeta,separation,algorithm,k,wasserstein";
    std::vector<double> dists;
    for (std::uint64_t seed : seeds) {
        const LabeledSample sample = sample_labeled(lam, static_cast<int>(n), seed);
        const KernelMatrix G = kernel_matrix(sample.points, bw.eta(), threads);
        const int k = resolve_k(cfg, lam.k(), n);
        const ClusteringResult res = run_named_algorithm(algo, G, k, bw, cfg, seed);
        const EstimatedMixingMeasure est =
            estimate_mixing_measure(sample.points, res.partition, beta);
        const double w = wasserstein(to_mixing_measure(est, sample.points), lam, zeta);
        dists.push_back(w);

        std::ostringstream row;
        row << "estimation," << seed << "," << n << "," << format_real(beta) << ","
            << format_real(zeta) << "," << format_real(separation) << ","
            << canonical_algorithm(algo) << "," << k << "," << format_real(w);
        b.rows.push_back(row.str());
    }
    std::ostringstream s;
    s << "estimation: seeds=" << seeds.size() << " median_wasserstein=" << format_real(median(dists));
    b.summary = s.str();
    return b;
}

Battery run_battery(const std::string& name, const ConfigMap& cfg,
                    const std::vector<std::uint64_t>& seeds, int threads) {
    if (seeds.empty()) throw config_error("config: experiment needs a non-empty seed list");
    if (name == "thm1") return battery_thm1(cfg, seeds, threads);
    if (name == "thm3") return battery_thm3(cfg, seeds, threads);
    if (name == "recovery") return battery_recovery(cfg, seeds, threads);
    if (name == "bayes") return battery_bayes(cfg, seeds, threads);
    if (name == "estimation") return battery_estimation(cfg, seeds, threads);
    throw config_error("config: unknown experiment '" + name + "'");
}

void do_experiment(const RunConfig& rc, std::ostream& out) {
    const std::string name = rc.cfg.get_string("experiment");
    const std::vector<std::uint64_t> seeds = resolve_seeds(rc);
    const Battery b = run_battery(name, rc.cfg, seeds, rc.threads);
    append_result_rows(resolve_out(rc, "results_" + name + ".csv"), b.header, b.rows);
    out << b.summary << "\n";
}

void do_sweep(const RunConfig& rc, std::ostream& out) {
    const std::string name = rc.cfg.get_string("experiment");
    const std::string axis = rc.cfg.get_string("sweep.axis");
    const std::vector<double> values = rc.cfg.get_real_list("sweep.values");
    const std::vector<std::uint64_t> seeds = resolve_seeds(rc);

    if (axis != "n" && axis != "beta" && axis != "zeta" && axis != "separation")
        throw config_error("config: sweep.axis must be one of n, beta, zeta, separation");
    if (axis == "separation" && (name == "thm1" || name == "thm3"))
        throw config_error("config: the separation axis applies to the two-blob experiments");

    struct Tagged {
        std::uint64_t seed;
        double value;
        std::string row;
    };
    std::vector<Tagged> tagged;
    std::string header;
    for (double v : values) {
        ConfigMap cfg = rc.cfg;
        if (axis == "n") {
            if (!(v >= 2.0) || v != std::floor(v))
                throw config_error("config: sweep values for n must be integers >= 2");
            cfg.set("n", std::to_string(static_cast<long>(v)));
        } else {
            if (!(v > 0.0))
                throw config_error("config: sweep values for " + axis + " must be positive");
            cfg.set(axis == "separation" ? "blob_separation" : axis, format_real(v));
        }
        const Battery b = run_battery(name, cfg, seeds, rc.threads);
        header = b.header;
        for (std::size_t i = 0; i < seeds.size(); ++i)
            tagged.push_back({seeds[i], v, b.rows[i]});
        out << "sweep " << axis << "=" << format_real(v) << " " << b.summary << "\n";
    }

    std::stable_sort(tagged.begin(), tagged.end(), [](const Tagged& a, const Tagged& b) {
        return std::tie(a.seed, a.value) < std::tie(b.seed, b.value);
    });
    std::vector<std::string> rows;
    rows.reserve(tagged.size());
    for (const Tagged& t : tagged) rows.push_back(t.row);
    append_result_rows(resolve_out(rc, "results_" + name + ".csv"), header, rows);
}

void run_command(const RunConfig& rc, std::ostream& out) {
    switch (rc.command) {
        case Command::cluster: do_cluster(rc, out); return;
        case Command::diagnose: do_diagnose(rc, out); return;
        case Command::estimate: do_estimate(rc, out); return;
        case Command::experiment: do_experiment(rc, out); return;
        case Command::sweep: do_sweep(rc, out); return;
    }
    throw config_error("config: unknown command");
}

int dispatch(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    try {
        run_command(rc, out);
        return kExitOk;
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

RunConfig with_command(RunConfig rc, Command c) {
    rc.command = c;
    return rc;
}

}  // namespace

int cmd_cluster(const RunConfig& rc, std::ostream& out) {
    return dispatch(with_command(rc, Command::cluster), out, out);
}
int cmd_diagnose(const RunConfig& rc, std::ostream& out) {
    return dispatch(with_command(rc, Command::diagnose), out, out);
}
int cmd_estimate(const RunConfig& rc, std::ostream& out) {
    return dispatch(with_command(rc, Command::estimate), out, out);
}
int cmd_experiment(const RunConfig& rc, std::ostream& out) {
    return dispatch(with_command(rc, Command::experiment), out, out);
}
int cmd_sweep(const RunConfig& rc, std::ostream& out) {
    return dispatch(with_command(rc, Command::sweep), out, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"kernel clustering of non-parametric mixtures"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_path;
    int threads = 1;
    CLI::Option* config_opt = app.add_option("--config", config_path, "configuration file");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "override the config seed(s)");
    CLI::Option* out_opt = app.add_option("--out", out_path, "override the output path");
    CLI::Option* threads_opt = app.add_option("--threads", threads, "worker threads");

    const std::pair<const char*, Command> commands[] = {
        {"cluster", Command::cluster},       {"diagnose", Command::diagnose},
        {"estimate", Command::estimate},     {"experiment", Command::experiment},
        {"sweep", Command::sweep},
    };
    for (const auto& [cname, cmd] : commands) {
        (void)cmd;
        app.add_subcommand(cname)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    RunConfig rc;
    const std::string sub = app.get_subcommands().front()->get_name();
    for (const auto& [cname, cmd] : commands)
        if (sub == cname) rc.command = cmd;

    try {
        if (config_opt->count() > 0) rc.cfg = ConfigMap::parse_file(config_path);
        if (seed_opt->count() > 0) rc.seed_override = seed;
        if (out_opt->count() > 0) rc.out_override = out_path;
        rc.threads = threads_opt->count() > 0 ? threads
                                              : static_cast<int>(rc.cfg.get_int("threads", 1));
        if (rc.threads < 1) throw config_error("config: threads must be >= 1");
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    return dispatch(rc, out, err);
}

}  // namespace kclust
