#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdck/constraints.hpp"
#include "tdck/core.hpp"
#include "tdck/dissimilarity.hpp"

namespace tdck {

enum class Variant {
    simple_kmeans,    // description space only
    temporal_driven,  // temporal-aware measure, no constraints
    constrained,      // description space + gaussian contiguity penalty
    tdck,             // temporal-aware measure + gaussian penalty
    tck,              // description space + threshold penalty baseline
};

struct CentroidFixedPoint {
    double tolerance = 1e-9;
    int max_inner = 100;
};

struct AlgorithmConfig {
    std::size_t m = 2;
    Variant variant = Variant::tdck;
    /// Slider between the description and temporal components. Honored by
    /// the tdck variant only; every other variant pins it by definition.
    double alpha = 0.0;
    PenaltyConfig penalty;
    std::uint64_t seed = 0;
    int max_outer_iterations = 500;
    CentroidFixedPoint centroid_fixed_point;
};

/// Effective (alpha, penalty) after applying the variant presets:
///   simple_kmeans   -> alpha = 1, no penalty
///   temporal_driven -> alpha = 0, no penalty
///   constrained     -> alpha = 1, gaussian penalty
///   tdck            -> alpha = config.alpha, gaussian penalty
///   tck             -> alpha = 1, threshold penalty (beta = alpha*, delta = d*)
AlgorithmConfig resolve_variant(const AlgorithmConfig& config);

/// Iterations stop early if the objective rises by more than this slack,
/// which can happen because penalties are charged against the previous
/// iteration's partition.
inline constexpr double kObjectiveIncreaseSlack = 1e-9;

struct RunResult {
    Partition partition;
    double objective = 0.0;
    std::vector<double> objective_trace;  // one value per accepted outer iteration
    int iterations = 0;
    bool converged = false;  // partition stable or objective plateau; false only at the cap
};

struct RunMetrics {
    double objective = 0.0;
    double mdvar = 0.0;
    double tvar = 0.0;
    double shap = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;  // population convention
};

struct RepeatedRunSummary {
    MetricStats objective;
    MetricStats mdvar;
    MetricStats tvar;
    MetricStats shap;
    std::vector<RunMetrics> per_run;  // in seed order
    RunResult best;                   // lowest objective
    std::size_t best_index = 0;
};

/// Sum over all observations of the temporal-aware distance to the assigned
/// centroid plus the contiguity violations against this same partition.
double objective(const Dataset& dataset, const Partition& partition,
                 const AlgorithmConfig& config);

/// Cluster minimizing ta(x_i, mu_j) + violation_cost(i, j, previous
/// partition). Ties break to the lowest cluster index.
std::size_t best_cluster(std::size_t i, const std::vector<Centroid>& centroids,
                         const Partition& previous_partition, const Dataset& dataset,
                         const AlgorithmConfig& config);

/// Fixed point of the coupled weighted means: the description average is
/// weighted by temporal closeness to the centroid and vice versa. Resolved
/// by alternating the two formulas from previous_centroid. Negative weights
/// are clamped to zero; if every weight vanishes the unweighted mean is
/// used.
Centroid update_centroid(const std::vector<std::size_t>& members, const Dataset& dataset,
                         const TuningWeights& weights, const Centroid& previous_centroid,
                         const CentroidFixedPoint& opts = {});

/// m distinct observations drawn with the seeded generator, used as the
/// initial centroids.
std::vector<Centroid> initial_centroids(const Dataset& dataset, std::size_t m,
                                        std::uint64_t seed);

/// One full optimization: seeded initialization, then alternating
/// assignment and centroid update until the partition repeats, the
/// objective plateaus, or the iteration cap is reached. Deterministic for a
/// fixed seed.
RunResult run(const Dataset& dataset, const AlgorithmConfig& config);

/// `runs` independent executions with seeds config.seed, config.seed + 1,
/// ... aggregated in seed order; the lowest-objective run is kept as best.
RepeatedRunSummary run_repeated(const Dataset& dataset, const AlgorithmConfig& config,
                                int runs);

}  // namespace tdck
