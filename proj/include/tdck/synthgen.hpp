#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tdck/core.hpp"
#include "tdck/metrics.hpp"

namespace tdck {

struct PhaseSpec {
    std::vector<double> mean;
    double stddev = 0.0;
    double t_start = 0.0;  // temporal extent, inclusive
    double t_end = 0.0;
};

struct TrajectoryStep {
    std::size_t phase = 0;
    double switch_time = 0.0;  // phase active from here until the next step
};

/// Planted panel scenario: entities visit phases over a regular timestamp
/// grid; descriptions are Gaussian around the phase means.
struct ScenarioSpec {
    std::size_t entities = 0;
    std::size_t timestamps = 0;  // per entity
    std::size_t dimension = 0;
    double t_start = 0.0;
    double t_step = 1.0;
    std::uint64_t seed = 0;
    std::vector<PhaseSpec> phases;
    std::vector<std::vector<TrajectoryStep>> trajectories;  // one per entity
};

void validate_scenario(const ScenarioSpec& spec);

/// Deterministic for a fixed seed. The returned partition carries the
/// planted phase labels with equal-weights fixed-point centroids.
std::pair<Dataset, Partition> generate(const ScenarioSpec& spec);

struct RecoveryScore {
    double ari = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // truth x found counts
    MetricReport metrics;                             // of the found partition
};

/// 1 when the partitions agree up to relabeling, around 0 at chance level.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

RecoveryScore score(const Dataset& dataset, const Partition& truth,
                    const Partition& found);

/// Plain-text key-value scenario format (see README): scalar keys plus one
/// `phase = ...` line per phase and one `trajectory = ...` line per entity.
ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec load_scenario(const std::string& path);
std::string format_scenario(const ScenarioSpec& spec);

/// Panel benchmark with two eras of phases. A few later phases reuse the
/// description mean of an earlier phase, so purely descriptive clustering
/// mixes the eras while the temporal-aware measure can separate them.
/// Entity trajectories visit one phase per era with a jittered switch
/// time, so planted segmentations are contiguous.
ScenarioSpec benchmark_scenario(std::size_t entities, std::size_t timestamps,
                                std::size_t phases, std::size_t dimension,
                                double stddev, std::uint64_t seed);

}  // namespace tdck
