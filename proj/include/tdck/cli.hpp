#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdck/core.hpp"
#include "tdck/engine.hpp"

namespace tdck {

enum class SweepParameter { beta, delta, alpha, clusters };
enum class MetricCurve { mdvar, tvar, shap, objective };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::beta;
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    int runs = 10;
    /// Curve pair for the intersection heuristic; defaults depend on the
    /// parameter (beta/delta/clusters pair MDvar with ShaP, alpha pairs
    /// MDvar with Tvar).
    std::optional<MetricCurve> first;
    std::optional<MetricCurve> second;
};

void validate_sweep(const SweepSpec& spec);
std::vector<double> sweep_grid(const SweepSpec& spec);
MetricCurve default_first_curve(SweepParameter parameter);
MetricCurve default_second_curve(SweepParameter parameter);

struct SweepPoint {
    double value = 0.0;
    MetricStats mdvar;
    MetricStats tvar;
    MetricStats shap;
    MetricStats objective;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<double> crossings;      // of the min-max rescaled curve pair
    std::optional<double> suggested;    // first crossing, when one exists
    bool degenerate = false;            // a curve was constant over the range
};

/// Crossings of two curves after min-max rescaling each to [0, 1] over the
/// grid, with linear interpolation between grid points. A constant curve
/// makes the heuristic degenerate and yields no crossings.
std::vector<double> find_crossings(const std::vector<double>& grid,
                                   std::vector<double> first, std::vector<double> second,
                                   bool& degenerate);

/// Runs the configured algorithm `spec.runs` times per grid point and
/// aggregates the evaluation measures, then applies the intersection
/// heuristic to the chosen curve pair.
SweepResult sweep(const Dataset& dataset, const AlgorithmConfig& base,
                  const SweepSpec& spec);

std::string sweep_csv(const SweepSpec& spec, const SweepResult& result);

/// Mean temporal-aware distance over all observation pairs, used to turn a
/// percentage into an absolute penalty scale.
double mean_pairwise_ta(const Dataset& dataset, const TuningWeights& weights);

/// Entry point behind the `tdck` binary. Exit codes: 0 success, 1 usage
/// error, 2 data/runtime error.
int run_cli(const std::vector<std::string>& args);

}  // namespace tdck
