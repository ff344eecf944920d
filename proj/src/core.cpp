#include "tdck/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace tdck {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

Dataset Dataset::build(std::vector<Observation> observations) {
    if (observations.empty()) {
        throw std::invalid_argument("dataset: empty input");
    }

    Dataset ds;
    ds.dimension_ = observations.front().description.size();
    if (ds.dimension_ == 0) {
        throw std::invalid_argument("dataset: description dimension must be >= 1");
    }
    for (const Observation& o : observations) {
        if (o.description.size() != ds.dimension_) {
            throw std::invalid_argument("dataset: description dimension mismatch");
        }
        if (o.entity.empty()) {
            throw std::invalid_argument("dataset: empty entity label");
        }
        if (!std::isfinite(o.timestamp)) {
            throw std::invalid_argument("dataset: non-finite timestamp");
        }
        for (double v : o.description) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("dataset: non-finite description value");
            }
        }
    }
    ds.observations_ = std::move(observations);

    // Dense entity ids, labels sorted for reproducible ordering.
    std::map<std::string, std::size_t> label_to_id;
    for (const Observation& o : ds.observations_) {
        label_to_id.emplace(o.entity, 0);
    }
    ds.entity_labels_.reserve(label_to_id.size());
    for (auto& [label, id] : label_to_id) {
        id = ds.entity_labels_.size();
        ds.entity_labels_.push_back(label);
    }

    ds.entity_of_obs_.resize(ds.observations_.size());
    ds.obs_by_entity_.resize(ds.entity_labels_.size());
    for (std::size_t i = 0; i < ds.observations_.size(); ++i) {
        const std::size_t e = label_to_id.at(ds.observations_[i].entity);
        ds.entity_of_obs_[i] = e;
        ds.obs_by_entity_[e].push_back(i);
    }
    for (auto& members : ds.obs_by_entity_) {
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return ds.observations_[a].timestamp < ds.observations_[b].timestamp;
        });
        for (std::size_t k = 1; k < members.size(); ++k) {
            if (ds.observations_[members[k - 1]].timestamp ==
                ds.observations_[members[k]].timestamp) {
                throw std::invalid_argument("dataset: duplicate (entity, timestamp) pair: " +
                                            ds.observations_[members[k]].entity);
            }
        }
    }

    double tmin = ds.observations_.front().timestamp;
    double tmax = tmin;
    for (const Observation& o : ds.observations_) {
        tmin = std::min(tmin, o.timestamp);
        tmax = std::max(tmax, o.timestamp);
    }
    ds.dt_max_ = tmax - tmin;
    ds.dt_max_sq_ = ds.dt_max_ * ds.dt_max_;

    double max_sq = 0.0;
    for (std::size_t i = 0; i < ds.observations_.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.observations_.size(); ++j) {
            max_sq = std::max(max_sq, squared_distance(ds.observations_[i].description,
                                                       ds.observations_[j].description));
        }
    }
    ds.dx_max_sq_ = max_sq;
    ds.dx_max_ = std::sqrt(max_sq);

    return ds;
}

Dataset build_dataset(std::vector<Observation> raw) {
    return Dataset::build(std::move(raw));
}

double diameter_description(const Dataset& dataset) {
    return dataset.dx_max();
}

Partition Partition::from_assignment(std::vector<int> assignment, std::size_t m,
                                     std::vector<Centroid> centroids) {
    Partition p;
    p.clusters.resize(m);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const int j = assignment[i];
        if (j < 0 || static_cast<std::size_t>(j) >= m) {
            throw std::invalid_argument("partition: cluster index out of range");
        }
        p.clusters[static_cast<std::size_t>(j)].push_back(i);
    }
    p.assignment = std::move(assignment);
    p.centroids = std::move(centroids);
    return p;
}

void validate_partition(const Dataset& dataset, const Partition& partition) {
    const std::size_t n = dataset.size();
    const std::size_t m = partition.cluster_count();
    if (partition.assignment.size() != n) {
        throw std::invalid_argument("partition: assignment size mismatch");
    }
    if (partition.centroids.size() != m) {
        throw std::invalid_argument("partition: centroid count mismatch");
    }
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i : partition.clusters[j]) {
            if (i >= n || seen[i]) {
                throw std::invalid_argument("partition: member lists inconsistent");
            }
            if (partition.assignment[i] != static_cast<int>(j)) {
                throw std::invalid_argument("partition: member list disagrees with assignment");
            }
            seen[i] = 1;
            ++total;
        }
    }
    if (total != n) {
        throw std::invalid_argument("partition: observations not all assigned");
    }
    for (const Centroid& c : partition.centroids) {
        if (c.description.size() != dataset.dimension()) {
            throw std::invalid_argument("partition: centroid dimension mismatch");
        }
    }
}

}  // namespace tdck
