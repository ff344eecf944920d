#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "tdck/dataio.hpp"
#include "tdck/engine.hpp"

using namespace tdck;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("tdck_dataio_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_SUITE("dataio") {

TEST_CASE("csv parsing basics") {
    const RawTable t = parse_csv("entity,time,gdp,pop\nFR,1960,1.5,2.5\nFR,1961,1.6,2.6\n");
    CHECK(t.attribute_names == std::vector<std::string>{"gdp", "pop"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].entity == "FR");
    CHECK(t.rows[0].timestamp == 1960.0);
    CHECK(*t.rows[1].values[1] == 2.6);
}

TEST_CASE("NA and empty cells are missing, not zero") {
    const RawTable t = parse_csv("entity,time,a,b\nFR,1960,NA,1\nDE,1960,,2\nIT,1960,3,4\n");
    CHECK_FALSE(t.rows[0].values[0].has_value());
    CHECK_FALSE(t.rows[1].values[0].has_value());
    CHECK(*t.rows[2].values[0] == 3.0);
}

TEST_CASE("schema selects and reorders columns") {
    CsvSchema schema;
    schema.entity_col = "country";
    schema.time_col = "year";
    schema.feature_cols = {"b", "a"};
    const RawTable t = parse_csv("country,a,year,b\nFR,1,1960,2\n", schema);
    CHECK(t.attribute_names == std::vector<std::string>{"b", "a"});
    CHECK(*t.rows[0].values[0] == 2.0);
    CHECK(*t.rows[0].values[1] == 1.0);
}

TEST_CASE("csv parse errors") {
    CHECK_THROWS(parse_csv(""));
    CHECK_THROWS(parse_csv("entity,time,a\nFR,xyz,1\n"));           // bad timestamp
    CHECK_THROWS(parse_csv("entity,time,a\nFR,1960\n"));            // ragged
    CHECK_THROWS(parse_csv("country,time,a\nFR,1960,1\n"));         // missing entity col
    CHECK_THROWS(load_csv("/nonexistent/file.csv"));
}

TEST_CASE("duplicate rows load but are rejected downstream") {
    const RawTable t = parse_csv("entity,time,a\nFR,1960,1\nFR,1960,2\n");
    CHECK(t.rows.size() == 2);
    CHECK_THROWS(preprocess(t));
}

TEST_CASE("preprocess centers per entity then scales globally") {
    const RawTable t = parse_csv(
        "entity,time,a\n"
        "FR,1960,10\nFR,1961,20\nFR,1962,30\n");
    const auto [ds, report] = preprocess(t);
    // Centered to {-10, 0, 10}, then divided by the population stddev.
    const double scale = std::sqrt(200.0 / 3.0);
    CHECK(report.attribute_scales[0] == doctest::Approx(scale).epsilon(1e-12));
    CHECK(ds.observation(0).description[0] == doctest::Approx(-10.0 / scale).epsilon(1e-12));
    CHECK(ds.observation(1).description[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ds.observation(2).description[0] == doctest::Approx(10.0 / scale).epsilon(1e-12));
    CHECK(report.entity_means.at("FR")[0] == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("identical profiles at different levels collapse to the same data") {
    const RawTable t = parse_csv(
        "entity,time,a,b\n"
        "FR,1960,10,1\nFR,1961,20,2\nFR,1962,30,3\n"
        "DE,1960,1010,41\nDE,1961,1020,42\nDE,1962,1030,43\n");
    const auto [ds, report] = preprocess(t);
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t a = 0; a < 2; ++a) {
            CHECK(ds.observation(k).description[a] ==
                  doctest::Approx(ds.observation(k + 3).description[a]).epsilon(1e-12));
        }
    }
}

TEST_CASE("per-entity attribute means vanish after preprocessing") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    std::ostringstream csv;
    csv << "entity,time,a,b,c\n";
    for (int e = 0; e < 4; ++e) {
        for (int t = 0; t < 7; ++t) {
            csv << "E" << e << "," << (1960 + t) << "," << value(rng) << "," << value(rng)
                << "," << value(rng) << "\n";
        }
    }
    const auto [ds, report] = preprocess(parse_csv(csv.str()));
    for (std::size_t e = 0; e < ds.entity_count(); ++e) {
        for (std::size_t a = 0; a < ds.dimension(); ++a) {
            double mean = 0.0;
            for (std::size_t i : ds.entity_observations(e)) {
                mean += ds.observation(i).description[a];
            }
            mean /= static_cast<double>(ds.entity_observations(e).size());
            CHECK(std::abs(mean) < 1e-12);
        }
    }
}

TEST_CASE("preprocessing is idempotent") {
    const RawTable t = parse_csv(
        "entity,time,a,b\n"
        "FR,1960,10,5\nFR,1961,20,3\nFR,1962,30,8\n"
        "DE,1960,5,1\nDE,1961,15,9\nDE,1962,40,2\n");
    const auto [first, r1] = preprocess(t);

    // Feed the preprocessed dataset back through as a raw table.
    RawTable again;
    again.attribute_names = r1.attribute_names;
    for (std::size_t i = 0; i < first.size(); ++i) {
        RawRow row;
        row.entity = first.observation(i).entity;
        row.timestamp = first.observation(i).timestamp;
        for (double v : first.observation(i).description) row.values.push_back(v);
        again.rows.push_back(std::move(row));
    }
    const auto [second, r2] = preprocess(again);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        for (std::size_t a = 0; a < first.dimension(); ++a) {
            CHECK(std::abs(second.observation(i).description[a] -
                           first.observation(i).description[a]) < 1e-12);
        }
    }
}

TEST_CASE("raw attribute rescaling does not change the preprocessed dataset") {
    const std::string base =
        "entity,time,a,b\n"
        "FR,1960,10,5\nFR,1961,20,3\nFR,1962,30,8\n"
        "DE,1960,5,1\nDE,1961,15,9\nDE,1962,40,2\n";
    const auto [ds1, rep1] = preprocess(parse_csv(base));

    RawTable scaled = parse_csv(base);
    for (RawRow& row : scaled.rows) {
        row.values[0] = *row.values[0] * 3.7;  // rescale one attribute
    }
    const auto [ds2, rep2] = preprocess(scaled);
    for (std::size_t i = 0; i < ds1.size(); ++i) {
        for (std::size_t a = 0; a < ds1.dimension(); ++a) {
            CHECK(std::abs(ds1.observation(i).description[a] -
                           ds2.observation(i).description[a]) < 1e-12);
        }
    }
}

TEST_CASE("missing rows are dropped and counted") {
    const RawTable t = parse_csv(
        "entity,time,a\nFR,1960,1\nFR,1961,NA\nFR,1962,3\nFR,1963,4\n");
    const auto [ds, report] = preprocess(t);
    CHECK(report.dropped_rows == 1);
    CHECK(ds.size() == 3);
}

TEST_CASE("constant attributes are dropped or rejected by policy") {
    const std::string csv =
        "entity,time,a,b\nFR,1960,7,1\nFR,1961,7,2\nFR,1962,7,4\n";
    const auto [ds, report] = preprocess(parse_csv(csv));
    CHECK(report.dimension == 1);
    CHECK(report.dropped_attributes == std::vector<std::string>{"a"});

    PreprocessPolicy strict;
    strict.drop_constant_attrs = false;
    CHECK_THROWS(preprocess(parse_csv(csv), strict));

    // All constant: nothing left to cluster on.
    CHECK_THROWS(preprocess(parse_csv("entity,time,a\nFR,1960,7\nFR,1961,7\n")));
}

TEST_CASE("assignment files round-trip exactly") {
    std::mt19937_64 rng(11);
    const Dataset ds = test::random_dataset(rng, 3, 5, 2, 1.0, 1.0);
    std::vector<int> assignment(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) assignment[i] = static_cast<int>(i % 3);
    Partition p = Partition::from_assignment(assignment, 3, {});
    p.centroids.assign(3, Centroid{0.0, {0.0, 0.0}});

    TempDir dir;
    write_assignments(p, ds, dir.file("assignments.csv"));

    const std::string text = slurp(dir.file("assignments.csv"));
    CHECK(text.substr(0, text.find('\n')) == "entity,timestamp,cluster");
    CHECK(text.find("0based") == std::string::npos);

    const auto rows = read_assignments(dir.file("assignments.csv"));
    REQUIRE(rows.size() == ds.size());
    // Sorted by (entity, timestamp).
    for (std::size_t r = 1; r < rows.size(); ++r) {
        CHECK(std::make_pair(rows[r - 1].entity, std::stod(rows[r - 1].timestamp)) <=
              std::make_pair(rows[r].entity, std::stod(rows[r].timestamp)));
    }
    const Partition back = partition_from_assignments(ds, rows);
    CHECK(back.assignment == p.assignment);

    // Byte determinism across repeated writes.
    write_assignments(p, ds, dir.file("again.csv"));
    CHECK(slurp(dir.file("again.csv")) == text);
}

TEST_CASE("partition reconstruction rejects mismatched files") {
    std::mt19937_64 rng(12);
    const Dataset ds = test::random_dataset(rng, 2, 3, 2, 1.0, 1.0);
    std::vector<AssignmentRow> rows;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        rows.push_back(AssignmentRow{ds.observation(i).entity,
                                     format_real(ds.observation(i).timestamp), 0});
    }
    CHECK_NOTHROW(partition_from_assignments(ds, rows));

    auto missing = rows;
    missing.pop_back();
    CHECK_THROWS(partition_from_assignments(ds, missing));

    auto wrong = rows;
    wrong[0].entity = "nobody";
    CHECK_THROWS(partition_from_assignments(ds, wrong));

    auto overflow = rows;
    overflow[0].cluster = 5;
    CHECK_THROWS(partition_from_assignments(ds, overflow, 2));
}

TEST_CASE("centroid and metric writers produce the documented shapes") {
    TempDir dir;
    Partition p;
    p.assignment = {0};
    p.clusters = {{0}};
    p.centroids = {Centroid{1965.5, {0.25, -1.0}}};
    write_centroids(p, dir.file("centroids.csv"));
    const std::string centroids = slurp(dir.file("centroids.csv"));
    CHECK(centroids == "cluster,mu_t,f_0,f_1\n0,1965.5,0.25,-1\n");

    std::vector<RunMetrics> runs(10);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        runs[r].seed = r;
        runs[r].objective = 1.0 + static_cast<double>(r);
        runs[r].iterations = static_cast<int>(r + 2);
    }
    write_metrics(runs, dir.file("metrics.csv"));
    const std::string metrics = slurp(dir.file("metrics.csv"));
    std::istringstream in(metrics);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 11);
    CHECK(metrics.rfind("run,seed,J,MDvar,Tvar,ShaP,iterations\n", 0) == 0);
}

TEST_CASE("re-serializing parsed numeric output is byte identical") {
    // Formatting, parsing and re-formatting reals must be stable.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> value(-1e3, 1e3);
    for (int k = 0; k < 200; ++k) {
        const double v = value(rng);
        const std::string once = format_real(v);
        const std::string twice = format_real(std::stod(once));
        CHECK(once == twice);
    }
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(1965.0) == "1965");
}

TEST_CASE("dataset writer feeds back into the loader") {
    std::mt19937_64 rng(13);
    const Dataset ds = test::random_dataset(rng, 2, 4, 3, 1.0, 1.0);
    TempDir dir;
    write_dataset(ds, dir.file("data.csv"));
    const RawTable t = load_csv(dir.file("data.csv"));
    REQUIRE(t.rows.size() == ds.size());
    CHECK(t.attribute_names == std::vector<std::string>{"f_0", "f_1", "f_2"});
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(t.rows[i].entity == ds.observation(i).entity);
        CHECK(t.rows[i].timestamp == ds.observation(i).timestamp);
    }
}

}  // TEST_SUITE
