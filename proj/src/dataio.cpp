#include "tdck/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tdck/engine.hpp"

namespace tdck {

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string format_real_exact(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    return cells;
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA"; }

double parse_number(const std::string& cell, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("csv: unparseable ") + what + ": '" + cell + "'");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace

RawTable parse_csv(const std::string& text, const CsvSchema& schema) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("csv: missing header row");
    }
    const std::vector<std::string> header = split_line(line);

    auto column_of = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("csv: missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };

    RawTable table;
    table.entity_col = schema.entity_col;
    table.time_col = schema.time_col;
    const std::size_t entity_idx = column_of(schema.entity_col);
    const std::size_t time_idx = column_of(schema.time_col);

    std::vector<std::size_t> feature_idx;
    if (schema.feature_cols.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c != entity_idx && c != time_idx) {
                feature_idx.push_back(c);
                table.attribute_names.push_back(header[c]);
            }
        }
    } else {
        for (const std::string& name : schema.feature_cols) {
            feature_idx.push_back(column_of(name));
            table.attribute_names.push_back(name);
        }
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("csv: ragged row at line " + std::to_string(line_no));
        }
        RawRow row;
        row.entity = cells[entity_idx];
        row.timestamp = parse_number(cells[time_idx], "timestamp");
        row.values.reserve(feature_idx.size());
        for (std::size_t c : feature_idx) {
            if (is_missing(cells[c])) {
                row.values.push_back(std::nullopt);
            } else {
                row.values.push_back(parse_number(cells[c], "value"));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

RawTable load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), schema);
}

std::pair<Dataset, PreprocessReport> preprocess(const RawTable& raw,
                                                const PreprocessPolicy& policy) {
    const std::size_t raw_dim = raw.attribute_names.size();
    PreprocessReport report;

    // Missing-value policy: drop the whole row.
    std::vector<const RawRow*> kept;
    for (const RawRow& row : raw.rows) {
        const bool complete =
            std::all_of(row.values.begin(), row.values.end(),
                        [](const std::optional<double>& v) { return v.has_value(); });
        if (complete) {
            kept.push_back(&row);
        } else {
            ++report.dropped_rows;
        }
    }
    if (kept.size() < 2) {
        throw std::runtime_error("preprocess: fewer than 2 complete observations");
    }

    // Entity fixed effects: subtract each entity's attribute mean.
    std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
    for (const RawRow* row : kept) {
        auto& [sum, count] = sums[row->entity];
        sum.resize(raw_dim, 0.0);
        for (std::size_t a = 0; a < raw_dim; ++a) {
            sum[a] += *row->values[a];
        }
        ++count;
    }
    std::map<std::string, std::vector<double>> entity_means;
    for (auto& [entity, acc] : sums) {
        std::vector<double> means(raw_dim);
        for (std::size_t a = 0; a < raw_dim; ++a) {
            means[a] = acc.first[a] / static_cast<double>(acc.second);
        }
        entity_means.emplace(entity, std::move(means));
    }

    std::vector<std::vector<double>> centered(kept.size(), std::vector<double>(raw_dim));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& means = entity_means.at(kept[r]->entity);
        for (std::size_t a = 0; a < raw_dim; ++a) {
            centered[r][a] = *kept[r]->values[a] - means[a];
        }
    }

    // Global scale per attribute over the centered values.
    std::vector<double> scales(raw_dim, 0.0);
    std::vector<char> retained(raw_dim, 1);
    for (std::size_t a = 0; a < raw_dim; ++a) {
        double mean = 0.0;
        double magnitude = 0.0;
        for (std::size_t r = 0; r < kept.size(); ++r) {
            mean += centered[r][a];
            magnitude = std::max(magnitude, std::abs(*kept[r]->values[a]));
        }
        mean /= static_cast<double>(kept.size());
        double var = 0.0;
        for (std::size_t r = 0; r < kept.size(); ++r) {
            const double d = centered[r][a] - mean;
            var += d * d;
        }
        const double stddev = std::sqrt(var / static_cast<double>(kept.size()));
        // Constant up to rounding noise counts as constant.
        if (stddev <= 1e-12 * (1.0 + magnitude)) {
            if (!policy.drop_constant_attrs) {
                throw std::runtime_error("preprocess: constant attribute '" +
                                         raw.attribute_names[a] + "'");
            }
            retained[a] = 0;
            report.dropped_attributes.push_back(raw.attribute_names[a]);
        } else {
            scales[a] = stddev;
        }
    }

    std::vector<std::size_t> keep_idx;
    for (std::size_t a = 0; a < raw_dim; ++a) {
        if (retained[a]) {
            keep_idx.push_back(a);
            report.attribute_names.push_back(raw.attribute_names[a]);
            report.attribute_scales.push_back(scales[a]);
        }
    }
    if (keep_idx.empty()) {
        throw std::runtime_error("preprocess: all attributes constant");
    }
    report.dimension = keep_idx.size();
    for (const auto& [entity, means] : entity_means) {
        std::vector<double> kept_means;
        kept_means.reserve(keep_idx.size());
        for (std::size_t a : keep_idx) {
            kept_means.push_back(means[a]);
        }
        report.entity_means.emplace(entity, std::move(kept_means));
    }

    std::vector<Observation> observations;
    observations.reserve(kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
        Observation o;
        o.entity = kept[r]->entity;
        o.timestamp = kept[r]->timestamp;
        o.description.reserve(keep_idx.size());
        for (std::size_t a : keep_idx) {
            o.description.push_back(centered[r][a] / scales[a]);
        }
        observations.push_back(std::move(o));
    }
    return {Dataset::build(std::move(observations)), std::move(report)};
}

void write_assignments(const Partition& partition, const Dataset& dataset,
                       const std::string& path) {
    std::vector<std::size_t> order(dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Observation& oa = dataset.observation(a);
        const Observation& ob = dataset.observation(b);
        if (oa.entity != ob.entity) return oa.entity < ob.entity;
        return oa.timestamp < ob.timestamp;
    });
    std::ostringstream out;
    out << "entity,timestamp,cluster\n";
    for (std::size_t i : order) {
        const Observation& o = dataset.observation(i);
        out << o.entity << "," << format_real(o.timestamp) << "," << partition.assignment[i]
            << "\n";
    }
    write_text(path, out.str());
}

std::vector<AssignmentRow> read_assignments(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("assignments: missing header");
    }
    std::vector<AssignmentRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != 3) {
            throw std::runtime_error("assignments: ragged row at line " +
                                     std::to_string(line_no));
        }
        AssignmentRow row;
        row.entity = cells[0];
        row.timestamp = cells[1];
        row.cluster = static_cast<int>(parse_number(cells[2], "cluster"));
        if (row.cluster < 0) {
            throw std::runtime_error("assignments: negative cluster at line " +
                                     std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Partition partition_from_assignments(const Dataset& dataset,
                                     const std::vector<AssignmentRow>& rows,
                                     std::size_t cluster_count) {
    if (rows.size() != dataset.size()) {
        throw std::runtime_error("assignments: row count differs from dataset");
    }
    std::map<std::pair<std::string, std::string>, int> by_key;
    for (const AssignmentRow& row : rows) {
        if (!by_key.emplace(std::make_pair(row.entity, row.timestamp), row.cluster).second) {
            throw std::runtime_error("assignments: duplicate (entity, timestamp)");
        }
    }
    std::vector<int> assignment(dataset.size());
    int max_cluster = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const Observation& o = dataset.observation(i);
        const auto it = by_key.find({o.entity, format_real(o.timestamp)});
        if (it == by_key.end()) {
            throw std::runtime_error("assignments: no row for observation of '" + o.entity +
                                     "'");
        }
        assignment[i] = it->second;
        max_cluster = std::max(max_cluster, it->second);
    }
    std::size_t m = cluster_count;
    if (m == 0) {
        m = static_cast<std::size_t>(max_cluster) + 1;
    } else if (static_cast<std::size_t>(max_cluster) >= m) {
        throw std::runtime_error("assignments: cluster id exceeds requested cluster count");
    }

    Partition partition = Partition::from_assignment(std::move(assignment), m, {});
    partition.centroids.resize(m);
    const TuningWeights weights{1.0, 1.0};
    for (std::size_t j = 0; j < m; ++j) {
        if (partition.clusters[j].empty()) {
            partition.centroids[j].description.assign(dataset.dimension(), 0.0);
            continue;
        }
        Centroid start;
        start.description.assign(dataset.dimension(), 0.0);
        for (std::size_t i : partition.clusters[j]) {
            const Observation& o = dataset.observation(i);
            start.timestamp += o.timestamp;
            for (std::size_t k = 0; k < dataset.dimension(); ++k) {
                start.description[k] += o.description[k];
            }
        }
        start.timestamp /= static_cast<double>(partition.clusters[j].size());
        for (double& v : start.description) {
            v /= static_cast<double>(partition.clusters[j].size());
        }
        partition.centroids[j] = update_centroid(partition.clusters[j], dataset, weights, start);
    }
    return partition;
}

void write_centroids(const Partition& partition, const std::string& path) {
    std::ostringstream out;
    out << "cluster,mu_t";
    const std::size_t dim =
        partition.centroids.empty() ? 0 : partition.centroids.front().description.size();
    for (std::size_t k = 0; k < dim; ++k) {
        out << ",f_" << k;
    }
    out << "\n";
    for (std::size_t j = 0; j < partition.centroids.size(); ++j) {
        const Centroid& c = partition.centroids[j];
        out << j << "," << format_real(c.timestamp);
        for (double v : c.description) {
            out << "," << format_real(v);
        }
        out << "\n";
    }
    write_text(path, out.str());
}

void write_metrics(const std::vector<RunMetrics>& runs, const std::string& path) {
    std::ostringstream out;
    out << "run,seed,J,MDvar,Tvar,ShaP,iterations\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const RunMetrics& m = runs[r];
        out << r << "," << m.seed << "," << format_real(m.objective) << ","
            << format_real(m.mdvar) << "," << format_real(m.tvar) << ","
            << format_real(m.shap) << "," << m.iterations << "\n";
    }
    write_text(path, out.str());
}

void write_dataset(const Dataset& dataset, const std::string& path) {
    std::ostringstream out;
    out << "entity,time";
    for (std::size_t k = 0; k < dataset.dimension(); ++k) {
        out << ",f_" << k;
    }
    out << "\n";
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const Observation& o = dataset.observation(i);
        out << o.entity << "," << format_real(o.timestamp);
        for (double v : o.description) {
            out << "," << format_real(v);
        }
        out << "\n";
    }
    write_text(path, out.str());
}

}  // namespace tdck
