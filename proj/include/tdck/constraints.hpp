#pragma once

#include "tdck/core.hpp"

namespace tdck {

enum class PenaltyKind {
    none,
    gaussian,   // beta * exp(-(dt/delta)^2 / 2) for same-entity pairs
    threshold,  // beta acts as alpha*, delta as d*: beta * 1[|dt| < delta]
};

struct PenaltyConfig {
    PenaltyKind kind = PenaltyKind::none;
    double beta = 0.0;   // scaling factor; maximum value of the penalty
    double delta = 1.0;  // width (gaussian) or window (threshold)
};

void validate_penalty(const PenaltyConfig& config);

/// Penalty weight as a function of the time difference alone (the
/// same-entity indicator is applied by the callers below).
double gaussian_weight(double dt, double beta, double delta);
double threshold_weight(double dt, double alpha_star, double d_star);

/// Soft must-link cost for splitting two observations of one entity across
/// clusters; zero for different entities. Symmetric, bounded by beta.
double gaussian_penalty(const Observation& a, const Observation& b, double beta,
                        double delta);
double threshold_penalty(const Observation& a, const Observation& b,
                         double alpha_star, double d_star);

/// Dispatch on the configured kind; zero when kind is none.
double pair_penalty(const PenaltyConfig& config, const Observation& a,
                    const Observation& b);

/// Sum of the configured penalty between observation i and every
/// same-entity observation NOT assigned to cluster j in the supplied
/// partition. The pair (i, i) never contributes.
double violation_cost(std::size_t i, std::size_t j, const Partition& partition,
                      const Dataset& dataset, const PenaltyConfig& config);

/// Precomputed penalty weights for every same-entity pair. Assignment
/// sweeps and objective evaluations reuse it so the per-pair weight is
/// evaluated once per run instead of once per sweep.
class PenaltyTable {
public:
    PenaltyTable() = default;
    PenaltyTable(const Dataset& dataset, const PenaltyConfig& config);

    bool active() const { return active_; }

    /// Weight between observations at positions a and b of one entity's
    /// timestamp-sorted index (positions, not observation indices).
    double weight(std::size_t entity_id, std::size_t a, std::size_t b) const {
        const auto& block = blocks_[entity_id];
        return block.values[a * block.count + b];
    }

    /// Sum of weights from position a to every other member of the entity.
    double row_total(std::size_t entity_id, std::size_t a) const {
        return row_totals_[entity_id][a];
    }

private:
    struct Block {
        std::size_t count = 0;
        std::vector<double> values;  // count x count, zero diagonal
    };
    bool active_ = false;
    std::vector<Block> blocks_;
    std::vector<std::vector<double>> row_totals_;
};

}  // namespace tdck
