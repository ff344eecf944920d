#include "tdck/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace tdck {

void validate_penalty(const PenaltyConfig& config) {
    if (config.beta < 0.0 || !std::isfinite(config.beta)) {
        throw std::invalid_argument("penalty: beta must be finite and >= 0");
    }
    if (config.kind != PenaltyKind::none &&
        (!(config.delta > 0.0) || !std::isfinite(config.delta))) {
        throw std::invalid_argument("penalty: delta must be finite and > 0");
    }
}

double gaussian_weight(double dt, double beta, double delta) {
    if (!std::isfinite(dt)) {
        throw std::invalid_argument("gaussian_weight: non-finite time difference");
    }
    const double z = dt / delta;
    return beta * std::exp(-0.5 * z * z);
}

double threshold_weight(double dt, double alpha_star, double d_star) {
    if (!std::isfinite(dt)) {
        throw std::invalid_argument("threshold_weight: non-finite time difference");
    }
    return std::abs(dt) < d_star ? alpha_star : 0.0;
}

double gaussian_penalty(const Observation& a, const Observation& b, double beta,
                        double delta) {
    if (a.entity != b.entity) {
        return 0.0;
    }
    return gaussian_weight(a.timestamp - b.timestamp, beta, delta);
}

double threshold_penalty(const Observation& a, const Observation& b,
                         double alpha_star, double d_star) {
    if (a.entity != b.entity) {
        return 0.0;
    }
    return threshold_weight(a.timestamp - b.timestamp, alpha_star, d_star);
}

double pair_penalty(const PenaltyConfig& config, const Observation& a,
                    const Observation& b) {
    switch (config.kind) {
        case PenaltyKind::none:
            return 0.0;
        case PenaltyKind::gaussian:
            return gaussian_penalty(a, b, config.beta, config.delta);
        case PenaltyKind::threshold:
            return threshold_penalty(a, b, config.beta, config.delta);
    }
    return 0.0;
}

double violation_cost(std::size_t i, std::size_t j, const Partition& partition,
                      const Dataset& dataset, const PenaltyConfig& config) {
    if (j >= partition.cluster_count()) {
        throw std::invalid_argument("violation_cost: cluster index out of range");
    }
    if (config.kind == PenaltyKind::none || config.beta == 0.0) {
        return 0.0;
    }
    const Observation& xi = dataset.observation(i);
    double cost = 0.0;
    for (std::size_t k : dataset.entity_observations(dataset.entity_of(i))) {
        if (k == i) continue;
        if (partition.assignment[k] != static_cast<int>(j)) {
            cost += pair_penalty(config, xi, dataset.observation(k));
        }
    }
    return cost;
}

PenaltyTable::PenaltyTable(const Dataset& dataset, const PenaltyConfig& config) {
    validate_penalty(config);
    if (config.kind == PenaltyKind::none || config.beta == 0.0) {
        return;
    }
    active_ = true;
    const std::size_t p = dataset.entity_count();
    blocks_.resize(p);
    row_totals_.resize(p);
    for (std::size_t e = 0; e < p; ++e) {
        const auto& members = dataset.entity_observations(e);
        const std::size_t q = members.size();
        Block& block = blocks_[e];
        block.count = q;
        block.values.assign(q * q, 0.0);
        row_totals_[e].assign(q, 0.0);
        for (std::size_t a = 0; a < q; ++a) {
            const double ta = dataset.observation(members[a]).timestamp;
            for (std::size_t b = a + 1; b < q; ++b) {
                const double dt = ta - dataset.observation(members[b]).timestamp;
                const double w = config.kind == PenaltyKind::gaussian
                                     ? gaussian_weight(dt, config.beta, config.delta)
                                     : threshold_weight(dt, config.beta, config.delta);
                block.values[a * q + b] = w;
                block.values[b * q + a] = w;
                row_totals_[e][a] += w;
                row_totals_[e][b] += w;
            }
        }
    }
}

}  // namespace tdck
