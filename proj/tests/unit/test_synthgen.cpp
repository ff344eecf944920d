#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "support/oracles.hpp"
#include "tdck/engine.hpp"
#include "tdck/metrics.hpp"
#include "tdck/synthgen.hpp"

using namespace tdck;

namespace {

ScenarioSpec two_phase_spec(double stddev) {
    ScenarioSpec spec;
    spec.entities = 2;
    spec.timestamps = 5;
    spec.dimension = 2;
    spec.seed = 9;
    spec.phases = {
        PhaseSpec{{0.0, 0.0}, stddev, 0.0, 2.0},
        PhaseSpec{{5.0, 5.0}, stddev, 2.0, 4.0},
    };
    spec.trajectories = {
        {{0, 0.0}, {1, 2.0}},
        {{0, 0.0}, {1, 3.0}},
    };
    return spec;
}

}  // namespace

TEST_SUITE("synthgen") {

TEST_CASE("zero noise reproduces the phase means exactly") {
    const auto [ds, truth] = generate(two_phase_spec(0.0));
    REQUIRE(ds.size() == 10);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto p = static_cast<std::size_t>(truth.assignment[i]);
        CHECK(ds.observation(i).description[0] == (p == 0 ? 0.0 : 5.0));
        CHECK(ds.observation(i).description[1] == (p == 0 ? 0.0 : 5.0));
    }
}

TEST_CASE("benchmark structure: entities, observations and labels") {
    const ScenarioSpec spec = benchmark_scenario(3, 10, 5, 2, 0.3, 4);
    const auto [ds, truth] = generate(spec);
    CHECK(ds.size() == 30);
    CHECK(ds.entity_count() == 3);
    CHECK(truth.cluster_count() == 5);
    std::set<int> used(truth.assignment.begin(), truth.assignment.end());
    CHECK(used.size() == 5);
}

TEST_CASE("fixed seed reproduces the dataset bit for bit") {
    const ScenarioSpec spec = benchmark_scenario(4, 8, 3, 2, 0.5, 123);
    const auto [ds1, t1] = generate(spec);
    const auto [ds2, t2] = generate(spec);
    REQUIRE(ds1.size() == ds2.size());
    CHECK(t1.assignment == t2.assignment);
    for (std::size_t i = 0; i < ds1.size(); ++i) {
        CHECK(ds1.observation(i).timestamp == ds2.observation(i).timestamp);
        CHECK(ds1.observation(i).description == ds2.observation(i).description);
    }
}

TEST_CASE("planted segmentations are contiguous") {
    const ScenarioSpec spec = benchmark_scenario(23, 50, 8, 6, 1.0, 42);
    const auto [ds, truth] = generate(spec);
    const MetricReport report = compute_metrics(ds, truth);
    for (const auto& [entity, detail] : report.per_entity) {
        CHECK(detail.penalty_factor == 1.0);
        CHECK(detail.n_ch == detail.n_min);
    }
}

TEST_CASE("scenario validation errors") {
    ScenarioSpec spec = two_phase_spec(0.1);
    spec.trajectories[0] = {{0, 0.0}, {1, 1.0}};  // phase 1 does not cover t in [1, 2)
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    spec = two_phase_spec(0.1);
    spec.trajectories[0] = {{0, 0.0}, {1, 3.0}, {0, 3.0}};  // not strictly increasing
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    spec = two_phase_spec(0.1);
    spec.trajectories.pop_back();
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    spec = two_phase_spec(0.1);
    spec.phases[0].mean = {0.0};  // dimension mismatch
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);

    spec = two_phase_spec(0.1);
    spec.phases[1].t_end = 1.0;  // extent ends before its use
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("scenario files round-trip") {
    const ScenarioSpec spec = benchmark_scenario(3, 8, 4, 2, 0.4, 17);
    const std::string text = format_scenario(spec);
    const ScenarioSpec parsed = parse_scenario(text);
    CHECK(parsed.entities == spec.entities);
    CHECK(parsed.timestamps == spec.timestamps);
    CHECK(parsed.dimension == spec.dimension);
    CHECK(parsed.seed == spec.seed);
    REQUIRE(parsed.phases.size() == spec.phases.size());
    for (std::size_t p = 0; p < spec.phases.size(); ++p) {
        CHECK(parsed.phases[p].mean == spec.phases[p].mean);
        CHECK(parsed.phases[p].stddev == spec.phases[p].stddev);
        CHECK(parsed.phases[p].t_start == spec.phases[p].t_start);
        CHECK(parsed.phases[p].t_end == spec.phases[p].t_end);
    }
    REQUIRE(parsed.trajectories.size() == spec.trajectories.size());
    for (std::size_t e = 0; e < spec.trajectories.size(); ++e) {
        REQUIRE(parsed.trajectories[e].size() == spec.trajectories[e].size());
        for (std::size_t s = 0; s < spec.trajectories[e].size(); ++s) {
            CHECK(parsed.trajectories[e][s].phase == spec.trajectories[e][s].phase);
            CHECK(parsed.trajectories[e][s].switch_time == spec.trajectories[e][s].switch_time);
        }
    }

    // The generated data is identical either way.
    const auto [ds1, t1] = generate(spec);
    const auto [ds2, t2] = generate(parsed);
    CHECK(t1.assignment == t2.assignment);
    for (std::size_t i = 0; i < ds1.size(); ++i) {
        CHECK(ds1.observation(i).description == ds2.observation(i).description);
    }
}

TEST_CASE("scenario parser rejects malformed input") {
    CHECK_THROWS(parse_scenario("entities = 2\n"));  // nothing else
    CHECK_THROWS(parse_scenario("nonsense\n"));
    CHECK_THROWS(parse_scenario("unknown_key = 3\n"));
    CHECK_THROWS(parse_scenario(
        "entities = 1\ntimestamps = 2\ndimension = 1\n"
        "phase = extent 0 1 ; mean 0\ntrajectory = 0:0\n"));  // bad step syntax
}

TEST_CASE("adjusted rand index worked values") {
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {0, 0, 1, 1}) == 1.0);
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);  // label invariance
    CHECK(adjusted_rand_index({0, 0, 1, 1}, {0, 0, 0, 0}) == 0.0);  // single cluster
    CHECK(adjusted_rand_index({0, 1, 0, 1}, {0, 0, 1, 1}) < 0.5);
    CHECK_THROWS(adjusted_rand_index({0, 1}, {0, 1, 0}));
}

TEST_CASE("score reports ari, confusion counts and metrics") {
    const auto [ds, truth] = generate(two_phase_spec(0.05));
    const RecoveryScore self = score(ds, truth, truth);
    CHECK(self.ari == 1.0);
    std::size_t diagonal = 0, total = 0;
    for (std::size_t a = 0; a < self.confusion.size(); ++a) {
        for (std::size_t b = 0; b < self.confusion[a].size(); ++b) {
            total += self.confusion[a][b];
            if (a == b) diagonal += self.confusion[a][b];
        }
    }
    CHECK(total == ds.size());
    CHECK(diagonal == ds.size());
    CHECK(self.metrics.shap == shap(ds, truth));

    // A relabeled copy still scores 1.
    Partition relabeled = truth;
    for (int& a : relabeled.assignment) a = 1 - a;
    std::swap(relabeled.clusters[0], relabeled.clusters[1]);
    std::swap(relabeled.centroids[0], relabeled.centroids[1]);
    CHECK(score(ds, truth, relabeled).ari == 1.0);
}

TEST_CASE("well-separated truth is the global optimum of the objective") {
    // 10 observations, 2 phases at 50 sigma separation, m = 2.
    const auto [ds, truth] = generate(two_phase_spec(0.1));
    AlgorithmConfig cfg;
    cfg.variant = Variant::tdck;
    cfg.m = 2;
    cfg.alpha = 0.0;
    cfg.penalty = PenaltyConfig{PenaltyKind::gaussian, 0.0, 1.0};

    const auto enumerated = test::enumerate_two_clusters(ds, cfg);
    const double truth_objective = objective(ds, truth, cfg);
    CHECK(truth_objective <= enumerated.min_objective + 1e-9);
    CHECK(adjusted_rand_index(enumerated.best_assignment, truth.assignment) == 1.0);
}

}  // TEST_SUITE
