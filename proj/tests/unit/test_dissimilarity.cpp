#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "support/oracles.hpp"
#include "tdck/dissimilarity.hpp"

using namespace tdck;

TEST_SUITE("dissimilarity") {

TEST_CASE("alpha slider endpoints and midpoints") {
    CHECK(weights_from_alpha(0.0).gamma_d == 1.0);
    CHECK(weights_from_alpha(0.0).gamma_t == 1.0);
    CHECK(weights_from_alpha(-1.0).gamma_d == 0.0);
    CHECK(weights_from_alpha(-1.0).gamma_t == 1.0);
    CHECK(weights_from_alpha(0.5).gamma_d == 1.0);
    CHECK(weights_from_alpha(0.5).gamma_t == 0.5);
    CHECK(weights_from_alpha(1.0).gamma_t == 0.0);
    CHECK(weights_from_alpha(-0.25).gamma_d == doctest::Approx(0.75).epsilon(1e-15));

    CHECK_THROWS_AS(weights_from_alpha(1.5), std::invalid_argument);
    CHECK_THROWS_AS(weights_from_alpha(-1.0001), std::invalid_argument);
    CHECK_THROWS_AS(weights_from_alpha(std::nan("")), std::invalid_argument);
}

TEST_CASE("alpha slider is continuous around zero") {
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        const TuningWeights below = weights_from_alpha(-eps);
        const TuningWeights above = weights_from_alpha(eps);
        CHECK(std::abs(below.gamma_d - 1.0) <= eps + 1e-15);
        CHECK(below.gamma_t == 1.0);
        CHECK(above.gamma_d == 1.0);
        CHECK(std::abs(above.gamma_t - 1.0) <= eps + 1e-15);
    }
}

TEST_CASE("worked values of the temporal-aware measure") {
    // Three points so the (0,1) pair sits at a quarter of both squared
    // diameters: dx_max = 2, dt_max = 2.
    const Dataset ds = build_dataset({
        Observation{"A", 0.0, {0.0}},
        Observation{"A", 1.0, {1.0}},
        Observation{"A", 2.0, {2.0}},
    });
    const TuningWeights equal{1.0, 1.0};

    CHECK(ta_dissimilarity(ds.observation(0), ds.observation(0), ds, equal) == 0.0);

    // e_d = e_t = 0.25 -> 1 - 0.75 * 0.75
    CHECK(ta_dissimilarity(ds.observation(0), ds.observation(1), ds, equal) == 0.4375);

    // The diameter pair reaches the maximum exactly.
    CHECK(ta_dissimilarity(ds.observation(0), ds.observation(2), ds, equal) == 1.0);

    // Description-only weights reduce the measure to e_d.
    const TuningWeights desc_only{1.0, 0.0};
    CHECK(ta_dissimilarity(ds.observation(0), ds.observation(1), ds, desc_only) == 0.25);
}

TEST_CASE("maximum reached when only one component is at its diameter") {
    const Dataset ds = build_dataset({
        Observation{"A", 0.0, {0.0}},
        Observation{"A", 5.0, {1.0}},
        Observation{"A", 10.0, {4.0}},
    });
    const TuningWeights equal{1.0, 1.0};
    // (0, 2): both components at diameter; (0, 1) description far from it.
    CHECK(ta_dissimilarity(ds.observation(0), ds.observation(2), ds, equal) == 1.0);
    // Same description as observation 2 but at mid-time: e_d = 1 alone is enough.
    const Observation probe{"A", 5.0, {4.0}};
    CHECK(ta_dissimilarity(probe, ds.observation(0), ds, equal) == 1.0);
}

TEST_CASE("zero-diameter axes contribute nothing") {
    const Dataset same_time = build_dataset({
        Observation{"A", 2000.0, {0.0}},
        Observation{"B", 2000.0, {3.0}},
    });
    const TuningWeights equal{1.0, 1.0};
    // dt_max = 0: the measure reduces to the normalized description term.
    CHECK(ta_dissimilarity(same_time.observation(0), same_time.observation(1), same_time,
                           equal) == 1.0);
    const Observation mid{"C", 2000.0, {1.5}};
    CHECK(ta_dissimilarity(same_time.observation(0), mid, same_time, equal) == 0.25);

    const Dataset same_desc = build_dataset({
        Observation{"A", 0.0, {1.0}},
        Observation{"A", 4.0, {1.0}},
    });
    CHECK(ta_dissimilarity(same_desc.observation(0), same_desc.observation(1), same_desc,
                           equal) == 1.0);
}

TEST_CASE("measure properties on random pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> alpha_dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Dataset ds = test::random_dataset(rng, 3, 12, 4, 2.0, 1.5);
        const double alpha = alpha_dist(rng);
        const TuningWeights w = weights_from_alpha(alpha);
        const TuningWeights equal{1.0, 1.0};
        std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
        for (int pair = 0; pair < 50; ++pair) {
            const Observation& a = ds.observation(pick(rng));
            const Observation& b = ds.observation(pick(rng));
            const double e_d = description_term(a.description, b.description, ds.dx_max_sq());
            const double e_t = time_term(a.timestamp, b.timestamp, ds.dt_max_sq());
            const double v = ta_dissimilarity(a, b, ds, w);

            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v == ta_dissimilarity(b, a, ds, w));  // exact symmetry
            CHECK(v >= std::max(w.gamma_d * e_d, w.gamma_t * e_t) - 1e-12);

            const double at_equal = ta_dissimilarity(a, b, ds, equal);
            if (at_equal <= 1e-12) {
                CHECK(e_d <= 1e-12);
                CHECK(e_t <= 1e-12);
            }
            if (e_d >= 1.0 || e_t >= 1.0) {
                CHECK(at_equal == doctest::Approx(1.0).epsilon(1e-12));
            }

            // Reductions: alpha = 1 keeps only the description term,
            // alpha = -1 only the temporal term.
            CHECK(std::abs(ta_dissimilarity(a, b, ds, weights_from_alpha(1.0)) - e_d) <=
                  1e-12);
            CHECK(std::abs(ta_dissimilarity(a, b, ds, weights_from_alpha(-1.0)) - e_t) <=
                  1e-12);
        }
    }
}

TEST_CASE("combiner is monotone in each term") {
    const TuningWeights w{0.8, 1.0};
    for (double e_t : {0.0, 0.3, 0.9}) {
        double prev = -1.0;
        for (double e_d = 0.0; e_d <= 1.0; e_d += 0.05) {
            const double v = combine_ta(e_d, e_t, w);
            CHECK(v >= prev);
            prev = v;
        }
    }
    for (double e_d : {0.0, 0.5, 1.0}) {
        double prev = -1.0;
        for (double e_t = 0.0; e_t <= 1.0; e_t += 0.05) {
            const double v = combine_ta(e_d, e_t, w);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("terms clamp out-of-hull probes") {
    const Dataset ds = build_dataset({
        Observation{"A", 0.0, {0.0}},
        Observation{"A", 1.0, {1.0}},
    });
    // A probe beyond the hull would push the raw term over 1.
    const Observation far{"B", 9.0, {9.0}};
    CHECK(description_term(far.description, ds.observation(0).description, ds.dx_max_sq()) ==
          1.0);
    CHECK(time_term(far.timestamp, 0.0, ds.dt_max_sq()) == 1.0);
    CHECK(ta_dissimilarity(far, ds.observation(0), ds, TuningWeights{1.0, 1.0}) == 1.0);
}

TEST_CASE("dimension mismatch and non-finite input are rejected") {
    const std::vector<double> a{1.0, 2.0};
    const std::vector<double> b{1.0};
    CHECK_THROWS_AS(description_term(a, b, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(time_term(std::nan(""), 0.0, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
