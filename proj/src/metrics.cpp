#include "tdck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace tdck {

double mdvar(const Dataset& dataset, const Partition& partition) {
    validate_partition(dataset, partition);
    double total = 0.0;
    for (std::size_t j = 0; j < partition.cluster_count(); ++j) {
        const Centroid& mu = partition.centroids[j];
        for (std::size_t i : partition.clusters[j]) {
            total += squared_distance(dataset.observation(i).description, mu.description);
        }
    }
    return total / static_cast<double>(dataset.size());
}

double tvar(const Dataset& dataset, const Partition& partition) {
    validate_partition(dataset, partition);
    double total = 0.0;
    for (std::size_t j = 0; j < partition.cluster_count(); ++j) {
        const double mu_t = partition.centroids[j].timestamp;
        for (std::size_t i : partition.clusters[j]) {
            const double dt = dataset.observation(i).timestamp - mu_t;
            total += dt * dt;
        }
    }
    return total / static_cast<double>(dataset.size());
}

namespace {

EntityShapDetail entity_detail(const Dataset& dataset, const Partition& partition,
                               std::size_t entity_id) {
    const auto& members = dataset.entity_observations(entity_id);
    EntityShapDetail d;
    d.n_obs = members.size();

    std::vector<std::size_t> counts(partition.cluster_count(), 0);
    std::set<int> used;
    int prev = -1;
    for (std::size_t i : members) {
        const int j = partition.assignment[i];
        ++counts[static_cast<std::size_t>(j)];
        used.insert(j);
        if (prev >= 0 && j != prev) {
            ++d.n_ch;
        }
        prev = j;
    }
    d.n_min = used.size() - 1;

    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(d.n_obs);
        d.entropy -= p * std::log2(p);
    }
    if (d.n_obs >= 2) {
        d.penalty_factor = 1.0 + static_cast<double>(d.n_ch - d.n_min) /
                                     static_cast<double>(d.n_obs - 1);
    }
    return d;
}

}  // namespace

double shap(const Dataset& dataset, const Partition& partition) {
    validate_partition(dataset, partition);
    double total = 0.0;
    for (std::size_t e = 0; e < dataset.entity_count(); ++e) {
        const EntityShapDetail d = entity_detail(dataset, partition, e);
        total += static_cast<double>(d.n_obs) * d.entropy * d.penalty_factor;
    }
    return total / static_cast<double>(dataset.size());
}

MetricReport compute_metrics(const Dataset& dataset, const Partition& partition) {
    validate_partition(dataset, partition);
    MetricReport report;
    report.mdvar = mdvar(dataset, partition);
    report.tvar = tvar(dataset, partition);
    double shap_total = 0.0;
    for (std::size_t e = 0; e < dataset.entity_count(); ++e) {
        const EntityShapDetail d = entity_detail(dataset, partition, e);
        shap_total += static_cast<double>(d.n_obs) * d.entropy * d.penalty_factor;
        report.per_entity.emplace(dataset.entity_labels()[e], d);
    }
    report.shap = shap_total / static_cast<double>(dataset.size());
    return report;
}

double dispersion_ratio(const Dataset& dataset, DispersionDim dim) {
    const std::size_t n = dataset.size();
    if (n < 2) {
        throw std::invalid_argument("dispersion_ratio: need at least 2 observations");
    }
    double ratio_sum = 0.0;
    std::size_t valid_rows = 0;
    std::vector<double> row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (dim == DispersionDim::description) {
                row[k++] = squared_distance(dataset.observation(i).description,
                                            dataset.observation(j).description);
            } else {
                const double dt =
                    dataset.observation(i).timestamp - dataset.observation(j).timestamp;
                row[k++] = dt * dt;
            }
        }
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= static_cast<double>(row.size());
        if (mean <= 0.0) {
            continue;  // undefined row, excluded
        }
        double var = 0.0;
        for (double v : row) {
            const double d = v - mean;
            var += d * d;
        }
        var /= static_cast<double>(row.size());
        ratio_sum += std::sqrt(var) / mean;
        ++valid_rows;
    }
    return valid_rows > 0 ? ratio_sum / static_cast<double>(valid_rows) : 0.0;
}

}  // namespace tdck
