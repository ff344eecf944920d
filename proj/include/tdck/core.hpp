#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tdck {

/// One observation: an entity described by a vector at a moment in time.
struct Observation {
    std::string entity;
    double timestamp = 0.0;
    std::vector<double> description;
};

/// Cluster representative: an abstract timestamp plus a description vector.
/// The timestamp does not need to coincide with any observation timestamp.
struct Centroid {
    double timestamp = 0.0;
    std::vector<double> description;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Immutable collection of observations with cached diameters and a
/// per-entity, timestamp-sorted index. Safe to share across workers once
/// built.
class Dataset {
public:
    static Dataset build(std::vector<Observation> observations);

    std::size_t size() const { return observations_.size(); }
    std::size_t dimension() const { return dimension_; }

    const Observation& observation(std::size_t i) const { return observations_[i]; }
    const std::vector<Observation>& observations() const { return observations_; }

    std::size_t entity_count() const { return entity_labels_.size(); }
    const std::vector<std::string>& entity_labels() const { return entity_labels_; }
    /// Dense id in [0, entity_count) of the entity owning observation i.
    std::size_t entity_of(std::size_t i) const { return entity_of_obs_[i]; }
    /// Observation indices of one entity, sorted by timestamp.
    const std::vector<std::size_t>& entity_observations(std::size_t entity_id) const {
        return obs_by_entity_[entity_id];
    }

    /// Largest pairwise Euclidean distance between description vectors.
    double dx_max() const { return dx_max_; }
    /// Largest pairwise time difference (max timestamp - min timestamp).
    double dt_max() const { return dt_max_; }
    /// Squared diameters, kept exact so normalized terms hit 1.0 exactly
    /// for the diameter pair itself.
    double dx_max_sq() const { return dx_max_sq_; }
    double dt_max_sq() const { return dt_max_sq_; }

private:
    std::vector<Observation> observations_;
    std::size_t dimension_ = 0;
    std::vector<std::string> entity_labels_;
    std::vector<std::size_t> entity_of_obs_;
    std::vector<std::vector<std::size_t>> obs_by_entity_;
    double dx_max_ = 0.0;
    double dt_max_ = 0.0;
    double dx_max_sq_ = 0.0;
    double dt_max_sq_ = 0.0;
};

/// Convenience entry point mirroring Dataset::build.
Dataset build_dataset(std::vector<Observation> raw);

/// Exact maximum pairwise Euclidean distance between descriptions (O(n^2)).
double diameter_description(const Dataset& dataset);

/// Assignment of every observation to exactly one of m clusters, plus the
/// per-cluster member lists and centroids. Mutable, owned by a single run.
struct Partition {
    std::vector<int> assignment;                    // observation index -> cluster
    std::vector<std::vector<std::size_t>> clusters; // member lists, one per cluster
    std::vector<Centroid> centroids;

    std::size_t cluster_count() const { return clusters.size(); }

    /// Rebuilds member lists from the assignment vector.
    static Partition from_assignment(std::vector<int> assignment, std::size_t m,
                                     std::vector<Centroid> centroids);
};

/// Throws std::invalid_argument when the partition is inconsistent with the
/// dataset (size, cluster range, member lists, centroid dimensions). Empty
/// clusters are tolerated.
void validate_partition(const Dataset& dataset, const Partition& partition);

}  // namespace tdck
