#pragma once

#include <map>
#include <string>

#include "tdck/core.hpp"

namespace tdck {

/// Per-entity contiguity detail backing the ShaP measure.
struct EntityShapDetail {
    std::size_t n_obs = 0;     // observations of the entity
    std::size_t n_ch = 0;      // adjacent assignment changes, timestamp order
    std::size_t n_min = 0;     // distinct clusters used minus one
    double entropy = 0.0;      // Shannon entropy (base 2) of the cluster distribution
    double penalty_factor = 1.0;
};

struct MetricReport {
    double mdvar = 0.0;
    double tvar = 0.0;
    double shap = 0.0;
    std::map<std::string, EntityShapDetail> per_entity;
};

/// Mean squared deviation of member descriptions from their centroid, in
/// raw data units (no diameter normalization).
double mdvar(const Dataset& dataset, const Partition& partition);

/// Mean squared deviation of member timestamps from the centroid timestamp.
double tvar(const Dataset& dataset, const Partition& partition);

/// Penalized mean Shannon entropy of clusters over entities. Zero exactly
/// when every entity's observations sit in a single cluster. The penalty
/// factor 1 + (n_ch - n_min)/(n_obs - 1) punishes segmentations with more
/// changes than the minimum needed to visit the clusters they use.
double shap(const Dataset& dataset, const Partition& partition);

MetricReport compute_metrics(const Dataset& dataset, const Partition& partition);

enum class DispersionDim { description, temporal };

/// Mean over observations of (population stddev / mean) of the squared
/// distances to every other observation, on the selected component. Rows
/// with a zero mean distance are undefined and excluded; if every row is
/// excluded the ratio is reported as 0.
double dispersion_ratio(const Dataset& dataset, DispersionDim dim);

}  // namespace tdck
