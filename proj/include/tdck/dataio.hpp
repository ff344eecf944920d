#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdck/core.hpp"
#include "tdck/engine.hpp"

namespace tdck {

/// %.12g rendering shared by every writer, so identical inputs always give
/// identical bytes.
std::string format_real(double value);

/// Shortest-faithful rendering (%.17g) for files that must reproduce the
/// exact double on reload, like scenario specs.
std::string format_real_exact(double value);

struct RawRow {
    std::string entity;
    double timestamp = 0.0;
    std::vector<std::optional<double>> values;  // nullopt = missing cell
};

struct RawTable {
    std::string entity_col;
    std::string time_col;
    std::vector<std::string> attribute_names;
    std::vector<RawRow> rows;  // input order preserved
};

struct CsvSchema {
    std::string entity_col = "entity";
    std::string time_col = "time";
    std::vector<std::string> feature_cols;  // empty = every remaining column
};

/// Comma-separated, UTF-8, header row required. "NA" or an empty cell marks
/// a missing value.
RawTable load_csv(const std::string& path, const CsvSchema& schema = {});
RawTable parse_csv(const std::string& text, const CsvSchema& schema = {});

struct PreprocessPolicy {
    bool drop_constant_attrs = true;
    // Rows with any missing retained attribute are dropped.
};

struct PreprocessReport {
    /// Per-entity attribute means removed in the centering step, keyed by
    /// entity label, one value per retained attribute.
    std::map<std::string, std::vector<double>> entity_means;
    std::vector<std::string> attribute_names;  // retained attributes
    std::vector<double> attribute_scales;      // population stddev divisors
    std::vector<std::string> dropped_attributes;
    std::size_t dropped_rows = 0;
    std::size_t dimension = 0;
};

/// Panel preprocessing: remove each entity's per-attribute mean (the
/// time-invariant level), then divide each attribute by its global
/// population standard deviation. Constant attributes are dropped when the
/// policy allows, otherwise reported as an error.
std::pair<Dataset, PreprocessReport> preprocess(const RawTable& raw,
                                                const PreprocessPolicy& policy = {});

/// `entity,timestamp,cluster` rows sorted by (entity, timestamp);
/// clusters are 0-based.
void write_assignments(const Partition& partition, const Dataset& dataset,
                       const std::string& path);

struct AssignmentRow {
    std::string entity;
    std::string timestamp;  // as formatted in the file
    int cluster = 0;
};

std::vector<AssignmentRow> read_assignments(const std::string& path);

/// Rebuilds a partition from assignment rows by matching (entity,
/// timestamp) against the dataset. Centroids are the equal-weights fixed
/// point of each cluster. Throws when rows and dataset do not match one to
/// one. cluster_count of 0 means "use max cluster id + 1".
Partition partition_from_assignments(const Dataset& dataset,
                                     const std::vector<AssignmentRow>& rows,
                                     std::size_t cluster_count = 0);

/// `cluster,mu_t,f_0..f_{D-1}`, one row per cluster.
void write_centroids(const Partition& partition, const std::string& path);

/// `run,seed,J,MDvar,Tvar,ShaP,iterations`, one row per run.
void write_metrics(const std::vector<RunMetrics>& runs, const std::string& path);

/// Input-format CSV (`entity,time,f_0..f_{D-1}`) for a dataset, so
/// generated data can feed straight back into load_csv.
void write_dataset(const Dataset& dataset, const std::string& path);

}  // namespace tdck
