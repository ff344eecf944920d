#include "tdck/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "tdck/metrics.hpp"

namespace tdck {

AlgorithmConfig resolve_variant(const AlgorithmConfig& config) {
    AlgorithmConfig cfg = config;
    switch (config.variant) {
        case Variant::simple_kmeans:
            cfg.alpha = 1.0;
            cfg.penalty.kind = PenaltyKind::none;
            break;
        case Variant::temporal_driven:
            cfg.alpha = 0.0;
            cfg.penalty.kind = PenaltyKind::none;
            break;
        case Variant::constrained:
            cfg.alpha = 1.0;
            cfg.penalty.kind = PenaltyKind::gaussian;
            break;
        case Variant::tdck:
            cfg.penalty.kind = PenaltyKind::gaussian;
            break;
        case Variant::tck:
            cfg.alpha = 1.0;
            cfg.penalty.kind = PenaltyKind::threshold;
            break;
    }
    return cfg;
}

namespace {

std::vector<std::size_t> entity_positions(const Dataset& dataset) {
    std::vector<std::size_t> pos(dataset.size());
    for (std::size_t e = 0; e < dataset.entity_count(); ++e) {
        const auto& members = dataset.entity_observations(e);
        for (std::size_t k = 0; k < members.size(); ++k) {
            pos[members[k]] = k;
        }
    }
    return pos;
}

/// Contiguity cost of placing observation i into cluster j, for every j at
/// once: row_total minus the weight already inside each cluster under the
/// supplied assignment. Unassigned observations (-1) count as outside every
/// cluster.
void violation_by_cluster(std::size_t i, const std::vector<int>& assignment,
                          const Dataset& dataset, const PenaltyTable& table,
                          const std::vector<std::size_t>& pos,
                          std::vector<double>& out) {
    if (!table.active()) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const std::size_t e = dataset.entity_of(i);
    const auto& members = dataset.entity_observations(e);
    const std::size_t a = pos[i];
    const double total = table.row_total(e, a);
    std::fill(out.begin(), out.end(), total);
    for (std::size_t l = 0; l < members.size(); ++l) {
        const int j = assignment[members[l]];
        if (j >= 0) {
            out[static_cast<std::size_t>(j)] -= table.weight(e, a, l);
        }
    }
}

std::size_t best_cluster_impl(std::size_t i, const std::vector<Centroid>& centroids,
                              const std::vector<int>& prev_assignment,
                              const Dataset& dataset, const TuningWeights& weights,
                              const PenaltyTable& table,
                              const std::vector<std::size_t>& pos,
                              std::vector<double>& scratch) {
    violation_by_cluster(i, prev_assignment, dataset, table, pos, scratch);
    const Observation& xi = dataset.observation(i);
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.size(); ++j) {
        const double cost = ta_dissimilarity(xi, centroids[j], dataset, weights) + scratch[j];
        if (cost < best_cost) {
            best_cost = cost;
            best = j;
        }
    }
    return best;
}

double objective_impl(const Dataset& dataset, const std::vector<int>& assignment,
                      const std::vector<Centroid>& centroids, const TuningWeights& weights,
                      const PenaltyTable& table, const std::vector<std::size_t>& pos) {
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::size_t j = static_cast<std::size_t>(assignment[i]);
        total += ta_dissimilarity(dataset.observation(i), centroids[j], dataset, weights);
        if (table.active()) {
            const std::size_t e = dataset.entity_of(i);
            const auto& members = dataset.entity_observations(e);
            const std::size_t a = pos[i];
            double viol = table.row_total(e, a);
            for (std::size_t l = 0; l < members.size(); ++l) {
                if (assignment[members[l]] == assignment[i]) {
                    viol -= table.weight(e, a, l);
                }
            }
            total += viol;
        }
    }
    return total;
}

std::vector<std::vector<std::size_t>> build_members(const std::vector<int>& assignment,
                                                    std::size_t m) {
    std::vector<std::vector<std::size_t>> members(m);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        members[static_cast<std::size_t>(assignment[i])].push_back(i);
    }
    return members;
}

/// Keeps every cluster populated: an empty cluster is re-seeded at the
/// observation currently paying the largest cost, taken from a cluster
/// with at least two members.
void repair_empty_clusters(std::vector<int>& assignment, std::vector<Centroid>& centroids,
                           const Dataset& dataset, const TuningWeights& weights,
                           const PenaltyTable& table, const std::vector<std::size_t>& pos) {
    const std::size_t m = centroids.size();
    std::vector<std::size_t> counts(m, 0);
    for (int j : assignment) {
        ++counts[static_cast<std::size_t>(j)];
    }
    std::vector<double> scratch(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        if (counts[j] > 0) continue;
        std::size_t donor = dataset.size();
        double worst = -1.0;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            const std::size_t ji = static_cast<std::size_t>(assignment[i]);
            if (counts[ji] < 2) continue;
            violation_by_cluster(i, assignment, dataset, table, pos, scratch);
            const double cost =
                ta_dissimilarity(dataset.observation(i), centroids[ji], dataset, weights) +
                scratch[ji];
            if (cost > worst) {
                worst = cost;
                donor = i;
            }
        }
        if (donor == dataset.size()) {
            break;  // nothing left to take from
        }
        --counts[static_cast<std::size_t>(assignment[donor])];
        assignment[donor] = static_cast<int>(j);
        ++counts[j];
        const Observation& o = dataset.observation(donor);
        centroids[j] = Centroid{o.timestamp, o.description};
    }
}

MetricStats stats_of(const std::vector<double>& values) {
    MetricStats s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        var += d * d;
    }
    s.stddev = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

}  // namespace

double objective(const Dataset& dataset, const Partition& partition,
                 const AlgorithmConfig& config) {
    const AlgorithmConfig cfg = resolve_variant(config);
    validate_partition(dataset, partition);
    if (partition.cluster_count() != cfg.m) {
        throw std::invalid_argument("objective: partition cluster count differs from config");
    }
    const TuningWeights weights = weights_from_alpha(cfg.alpha);
    const PenaltyTable table(dataset, cfg.penalty);
    const auto pos = entity_positions(dataset);
    return objective_impl(dataset, partition.assignment, partition.centroids, weights, table,
                          pos);
}

std::size_t best_cluster(std::size_t i, const std::vector<Centroid>& centroids,
                         const Partition& previous_partition, const Dataset& dataset,
                         const AlgorithmConfig& config) {
    const AlgorithmConfig cfg = resolve_variant(config);
    const TuningWeights weights = weights_from_alpha(cfg.alpha);
    const PenaltyTable table(dataset, cfg.penalty);
    const auto pos = entity_positions(dataset);
    std::vector<double> scratch(centroids.size(), 0.0);
    return best_cluster_impl(i, centroids, previous_partition.assignment, dataset, weights,
                             table, pos, scratch);
}

Centroid update_centroid(const std::vector<std::size_t>& members, const Dataset& dataset,
                         const TuningWeights& weights, const Centroid& previous_centroid,
                         const CentroidFixedPoint& opts) {
    if (members.empty()) {
        throw std::invalid_argument("update_centroid: empty member list");
    }
    const std::size_t dim = dataset.dimension();
    if (previous_centroid.description.size() != dim) {
        throw std::invalid_argument("update_centroid: centroid dimension mismatch");
    }

    Centroid mu = previous_centroid;
    std::vector<double> acc(dim);
    std::vector<double> next_d(dim);
    for (int inner = 0; inner < opts.max_inner; ++inner) {
        // Description component, weighted by temporal closeness to mu.
        std::fill(acc.begin(), acc.end(), 0.0);
        double wsum = 0.0;
        for (std::size_t i : members) {
            const Observation& o = dataset.observation(i);
            double e_t = 0.0;
            if (dataset.dt_max_sq() > 0.0) {
                const double dt = o.timestamp - mu.timestamp;
                e_t = dt * dt / dataset.dt_max_sq();
            }
            const double w = std::max(0.0, 1.0 - weights.gamma_t * e_t);
            wsum += w;
            for (std::size_t k = 0; k < dim; ++k) {
                acc[k] += o.description[k] * w;
            }
        }
        if (wsum > 0.0) {
            for (std::size_t k = 0; k < dim; ++k) {
                next_d[k] = acc[k] / wsum;
            }
        } else {
            std::fill(next_d.begin(), next_d.end(), 0.0);
            for (std::size_t i : members) {
                const Observation& o = dataset.observation(i);
                for (std::size_t k = 0; k < dim; ++k) {
                    next_d[k] += o.description[k];
                }
            }
            for (std::size_t k = 0; k < dim; ++k) {
                next_d[k] /= static_cast<double>(members.size());
            }
        }

        // Temporal component, weighted by descriptive closeness to the
        // freshly updated description.
        double tsum = 0.0;
        double twsum = 0.0;
        for (std::size_t i : members) {
            const Observation& o = dataset.observation(i);
            double e_d = 0.0;
            if (dataset.dx_max_sq() > 0.0) {
                e_d = squared_distance(o.description, next_d) / dataset.dx_max_sq();
            }
            const double w = std::max(0.0, 1.0 - weights.gamma_d * e_d);
            twsum += w;
            tsum += o.timestamp * w;
        }
        double next_t;
        if (twsum > 0.0) {
            next_t = tsum / twsum;
        } else {
            next_t = 0.0;
            for (std::size_t i : members) {
                next_t += dataset.observation(i).timestamp;
            }
            next_t /= static_cast<double>(members.size());
        }

        double delta = std::abs(next_t - mu.timestamp);
        for (std::size_t k = 0; k < dim; ++k) {
            delta = std::max(delta, std::abs(next_d[k] - mu.description[k]));
        }
        mu.description = next_d;
        mu.timestamp = next_t;
        if (delta < opts.tolerance) {
            break;
        }
    }
    return mu;
}

std::vector<Centroid> initial_centroids(const Dataset& dataset, std::size_t m,
                                        std::uint64_t seed) {
    if (m < 1) {
        throw std::invalid_argument("initial_centroids: m must be >= 1");
    }
    if (m > dataset.size()) {
        throw std::invalid_argument("initial_centroids: m exceeds observation count");
    }
    std::vector<std::size_t> idx(dataset.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::vector<Centroid> centroids;
    centroids.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, idx.size() - 1);
        std::swap(idx[j], idx[pick(rng)]);
        const Observation& o = dataset.observation(idx[j]);
        centroids.push_back(Centroid{o.timestamp, o.description});
    }
    return centroids;
}

RunResult run(const Dataset& dataset, const AlgorithmConfig& config) {
    const AlgorithmConfig cfg = resolve_variant(config);
    if (cfg.m < 1 || cfg.m > dataset.size()) {
        throw std::invalid_argument("run: cluster count must be in [1, n]");
    }
    if (cfg.max_outer_iterations < 1) {
        throw std::invalid_argument("run: max_outer_iterations must be >= 1");
    }
    validate_penalty(cfg.penalty);
    const TuningWeights weights = weights_from_alpha(cfg.alpha);
    const PenaltyTable table(dataset, cfg.penalty);
    const auto pos = entity_positions(dataset);
    const std::size_t n = dataset.size();

    std::vector<Centroid> centroids = initial_centroids(dataset, cfg.m, cfg.seed);
    std::vector<int> prev_assignment(n, -1);
    double prev_objective = std::numeric_limits<double>::infinity();

    RunResult result;
    Partition accepted;
    std::vector<double> scratch(cfg.m, 0.0);

    for (int iter = 1; iter <= cfg.max_outer_iterations; ++iter) {
        std::vector<int> assignment(n);
        for (std::size_t i = 0; i < n; ++i) {
            assignment[i] = static_cast<int>(best_cluster_impl(
                i, centroids, prev_assignment, dataset, weights, table, pos, scratch));
        }
        repair_empty_clusters(assignment, centroids, dataset, weights, table, pos);

        auto members = build_members(assignment, cfg.m);
        for (std::size_t j = 0; j < cfg.m; ++j) {
            centroids[j] = update_centroid(members[j], dataset, weights, centroids[j],
                                           cfg.centroid_fixed_point);
        }

        const double J = objective_impl(dataset, assignment, centroids, weights, table, pos);
        const bool stable = assignment == prev_assignment;

        if (J > prev_objective + kObjectiveIncreaseSlack) {
            // Penalties are charged against the previous partition, so a
            // sweep can occasionally raise the true objective; keep the
            // previous state and stop.
            result.converged = true;
            break;
        }

        result.objective_trace.push_back(J);
        result.iterations = iter;
        accepted.assignment = assignment;
        accepted.clusters = std::move(members);
        accepted.centroids = centroids;

        if (stable) {
            result.converged = true;
            break;
        }
        prev_assignment = std::move(assignment);
        prev_objective = J;
    }

    result.partition = std::move(accepted);
    result.objective = result.objective_trace.back();
    return result;
}

RepeatedRunSummary run_repeated(const Dataset& dataset, const AlgorithmConfig& config,
                                int runs) {
    if (runs < 1) {
        throw std::invalid_argument("run_repeated: runs must be >= 1");
    }
    RepeatedRunSummary summary;
    summary.per_run.reserve(static_cast<std::size_t>(runs));
    double best_objective = std::numeric_limits<double>::infinity();
    std::vector<double> js, mds, tvs, shs;
    for (int r = 0; r < runs; ++r) {
        AlgorithmConfig cfg = config;
        cfg.seed = config.seed + static_cast<std::uint64_t>(r);
        RunResult res = run(dataset, cfg);
        const MetricReport report = compute_metrics(dataset, res.partition);
        RunMetrics rm;
        rm.objective = res.objective;
        rm.mdvar = report.mdvar;
        rm.tvar = report.tvar;
        rm.shap = report.shap;
        rm.iterations = res.iterations;
        rm.seed = cfg.seed;
        summary.per_run.push_back(rm);
        js.push_back(rm.objective);
        mds.push_back(rm.mdvar);
        tvs.push_back(rm.tvar);
        shs.push_back(rm.shap);
        if (res.objective < best_objective) {
            best_objective = res.objective;
            summary.best = std::move(res);
            summary.best_index = static_cast<std::size_t>(r);
        }
    }
    summary.objective = stats_of(js);
    summary.mdvar = stats_of(mds);
    summary.tvar = stats_of(tvs);
    summary.shap = stats_of(shs);
    return summary;
}

}  // namespace tdck
