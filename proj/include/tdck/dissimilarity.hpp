#pragma once

#include <span>

#include "tdck/core.hpp"

namespace tdck {

/// Component weights of the temporal-aware measure. Derived from a single
/// slider alpha in [-1, 1]; at least one weight always equals 1.
struct TuningWeights {
    double gamma_d = 1.0;
    double gamma_t = 1.0;
};

/// alpha <= 0 keeps the temporal weight at 1 and scales the description
/// weight to 1 + alpha; alpha > 0 does the opposite. Continuous in alpha.
/// Throws std::invalid_argument outside [-1, 1].
TuningWeights weights_from_alpha(double alpha);

/// Squared-distance term normalized by the squared diameter, clamped to
/// [0, 1]. A zero diameter means no dispersion on that axis and yields 0.
double description_term(std::span<const double> a, std::span<const double> b,
                        double dx_max_sq);
double time_term(double t_a, double t_b, double dt_max_sq);

/// 1 - (1 - gamma_d*e_d)(1 - gamma_t*e_t) for normalized terms in [0, 1].
/// Behaves like a MAX operator: the result dominates both weighted terms.
double combine_ta(double e_d, double e_t, const TuningWeights& weights);

/// Temporal-aware dissimilarity between two (timestamp, description)
/// couples. Symmetric, in [0, 1], zero only for identical couples, and
/// maximal as soon as one component reaches the dataset diameter.
double ta_dissimilarity(double t_a, std::span<const double> d_a,
                        double t_b, std::span<const double> d_b,
                        double dx_max_sq, double dt_max_sq,
                        const TuningWeights& weights);

double ta_dissimilarity(const Observation& a, const Observation& b,
                        const Dataset& dataset, const TuningWeights& weights);
double ta_dissimilarity(const Observation& a, const Centroid& b,
                        const Dataset& dataset, const TuningWeights& weights);

}  // namespace tdck
