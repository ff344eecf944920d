#include "tdck/dissimilarity.hpp"

#include <cmath>
#include <stdexcept>

namespace tdck {

TuningWeights weights_from_alpha(double alpha) {
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        throw std::invalid_argument("weights_from_alpha: alpha must be in [-1, 1]");
    }
    if (alpha <= 0.0) {
        return TuningWeights{1.0 + alpha, 1.0};
    }
    return TuningWeights{1.0, 1.0 - alpha};
}

namespace {

double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace

double description_term(std::span<const double> a, std::span<const double> b,
                        double dx_max_sq) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("description_term: dimension mismatch");
    }
    if (dx_max_sq <= 0.0) {
        return 0.0;
    }
    return clamp01(squared_distance(a, b) / dx_max_sq);
}

double time_term(double t_a, double t_b, double dt_max_sq) {
    if (!std::isfinite(t_a) || !std::isfinite(t_b)) {
        throw std::invalid_argument("time_term: non-finite timestamp");
    }
    if (dt_max_sq <= 0.0) {
        return 0.0;
    }
    const double dt = t_a - t_b;
    return clamp01(dt * dt / dt_max_sq);
}

double combine_ta(double e_d, double e_t, const TuningWeights& weights) {
    return 1.0 - (1.0 - weights.gamma_d * clamp01(e_d)) * (1.0 - weights.gamma_t * clamp01(e_t));
}

double ta_dissimilarity(double t_a, std::span<const double> d_a,
                        double t_b, std::span<const double> d_b,
                        double dx_max_sq, double dt_max_sq,
                        const TuningWeights& weights) {
    const double e_d = description_term(d_a, d_b, dx_max_sq);
    const double e_t = time_term(t_a, t_b, dt_max_sq);
    return combine_ta(e_d, e_t, weights);
}

double ta_dissimilarity(const Observation& a, const Observation& b,
                        const Dataset& dataset, const TuningWeights& weights) {
    return ta_dissimilarity(a.timestamp, a.description, b.timestamp, b.description,
                            dataset.dx_max_sq(), dataset.dt_max_sq(), weights);
}

double ta_dissimilarity(const Observation& a, const Centroid& b,
                        const Dataset& dataset, const TuningWeights& weights) {
    return ta_dissimilarity(a.timestamp, a.description, b.timestamp, b.description,
                            dataset.dx_max_sq(), dataset.dt_max_sq(), weights);
}

}  // namespace tdck
