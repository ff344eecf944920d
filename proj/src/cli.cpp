#include "tdck/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "tdck/dataio.hpp"
#include "tdck/dissimilarity.hpp"
#include "tdck/evolution_graph.hpp"
#include "tdck/metrics.hpp"
#include "tdck/synthgen.hpp"

namespace tdck {

void validate_sweep(const SweepSpec& spec) {
    if (!(spec.lo <= spec.hi)) {
        throw std::invalid_argument("sweep: lo must be <= hi");
    }
    if (!(spec.step > 0.0)) {
        throw std::invalid_argument("sweep: step must be > 0");
    }
    if (spec.runs < 1) {
        throw std::invalid_argument("sweep: runs must be >= 1");
    }
    switch (spec.parameter) {
        case SweepParameter::beta:
            if (spec.lo < 0.0) throw std::invalid_argument("sweep: beta must be >= 0");
            break;
        case SweepParameter::delta:
            if (!(spec.lo > 0.0)) throw std::invalid_argument("sweep: delta must be > 0");
            break;
        case SweepParameter::alpha:
            if (spec.lo < -1.0 || spec.hi > 1.0) {
                throw std::invalid_argument("sweep: alpha must stay in [-1, 1]");
            }
            break;
        case SweepParameter::clusters:
            if (spec.lo < 2.0) throw std::invalid_argument("sweep: clusters must be >= 2");
            break;
    }
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    validate_sweep(spec);
    const auto count =
        static_cast<std::size_t>(std::floor((spec.hi - spec.lo) / spec.step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = spec.lo + static_cast<double>(k) * spec.step;
    }
    return grid;
}

MetricCurve default_first_curve(SweepParameter) { return MetricCurve::mdvar; }

MetricCurve default_second_curve(SweepParameter parameter) {
    return parameter == SweepParameter::alpha ? MetricCurve::tvar : MetricCurve::shap;
}

std::vector<double> find_crossings(const std::vector<double>& grid,
                                   std::vector<double> first, std::vector<double> second,
                                   bool& degenerate) {
    degenerate = false;
    if (grid.size() != first.size() || grid.size() != second.size() || grid.size() < 2) {
        degenerate = true;
        return {};
    }
    auto rescale = [&](std::vector<double>& y) {
        const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        if (*hi == *lo) {
            return false;
        }
        const double span = *hi - *lo;
        const double base = *lo;
        for (double& v : y) {
            v = (v - base) / span;
        }
        return true;
    };
    if (!rescale(first) || !rescale(second)) {
        degenerate = true;
        return {};
    }
    std::vector<double> crossings;
    std::vector<double> diff(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        diff[k] = first[k] - second[k];
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (diff[k] == 0.0) {
            crossings.push_back(grid[k]);
        } else if (k + 1 < grid.size() && diff[k + 1] != 0.0 &&
                   std::signbit(diff[k]) != std::signbit(diff[k + 1])) {
            const double t = diff[k] / (diff[k] - diff[k + 1]);
            crossings.push_back(grid[k] + t * (grid[k + 1] - grid[k]));
        }
    }
    return crossings;
}

namespace {

double curve_value(const SweepPoint& point, MetricCurve curve) {
    switch (curve) {
        case MetricCurve::mdvar: return point.mdvar.mean;
        case MetricCurve::tvar: return point.tvar.mean;
        case MetricCurve::shap: return point.shap.mean;
        case MetricCurve::objective: return point.objective.mean;
    }
    return 0.0;
}

const char* parameter_name(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::beta: return "beta";
        case SweepParameter::delta: return "delta";
        case SweepParameter::alpha: return "alpha";
        case SweepParameter::clusters: return "clusters";
    }
    return "?";
}

void apply_parameter(AlgorithmConfig& cfg, SweepParameter parameter, double value) {
    switch (parameter) {
        case SweepParameter::beta:
            cfg.penalty.beta = value;
            break;
        case SweepParameter::delta:
            cfg.penalty.delta = value;
            break;
        case SweepParameter::alpha:
            cfg.alpha = value;
            break;
        case SweepParameter::clusters:
            cfg.m = static_cast<std::size_t>(std::llround(value));
            break;
    }
}

}  // namespace

SweepResult sweep(const Dataset& dataset, const AlgorithmConfig& base,
                  const SweepSpec& spec) {
    const std::vector<double> grid = sweep_grid(spec);
    SweepResult result;
    result.points.reserve(grid.size());
    for (const double value : grid) {
        AlgorithmConfig cfg = base;
        apply_parameter(cfg, spec.parameter, value);
        const RepeatedRunSummary summary = run_repeated(dataset, cfg, spec.runs);
        SweepPoint point;
        point.value = value;
        point.mdvar = summary.mdvar;
        point.tvar = summary.tvar;
        point.shap = summary.shap;
        point.objective = summary.objective;
        result.points.push_back(point);
    }

    const MetricCurve first = spec.first.value_or(default_first_curve(spec.parameter));
    const MetricCurve second = spec.second.value_or(default_second_curve(spec.parameter));
    std::vector<double> y1, y2;
    for (const SweepPoint& p : result.points) {
        y1.push_back(curve_value(p, first));
        y2.push_back(curve_value(p, second));
    }
    result.crossings = find_crossings(grid, y1, y2, result.degenerate);
    if (!result.crossings.empty()) {
        result.suggested = result.crossings.front();
    }
    return result;
}

std::string sweep_csv(const SweepSpec& spec, const SweepResult& result) {
    std::ostringstream out;
    out << parameter_name(spec.parameter)
        << ",mdvar_mean,mdvar_std,tvar_mean,tvar_std,shap_mean,shap_std,j_mean,j_std\n";
    for (const SweepPoint& p : result.points) {
        out << format_real(p.value) << "," << format_real(p.mdvar.mean) << ","
            << format_real(p.mdvar.stddev) << "," << format_real(p.tvar.mean) << ","
            << format_real(p.tvar.stddev) << "," << format_real(p.shap.mean) << ","
            << format_real(p.shap.stddev) << "," << format_real(p.objective.mean) << ","
            << format_real(p.objective.stddev) << "\n";
    }
    return out.str();
}

double mean_pairwise_ta(const Dataset& dataset, const TuningWeights& weights) {
    const std::size_t n = dataset.size();
    if (n < 2) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            total += ta_dissimilarity(dataset.observation(i), dataset.observation(j), dataset,
                                      weights);
        }
    }
    return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

namespace fs = std::filesystem;

struct DataOptions {
    std::string input;
    bool preprocess = false;
};

struct ModelOptions {
    std::string algorithm = "tdck";
    std::size_t clusters = 2;
    double alpha = 0.0;
    double beta = 0.0;
    double beta_pct = -1.0;  // <0 = unset
    double delta = 3.0;
    double alpha_star = 2.0;
    double d_star = 4.0;
    std::uint64_t seed = 0;
    int runs = 10;
};

Variant parse_variant(const std::string& name) {
    if (name == "simple" || name == "simple_kmeans") return Variant::simple_kmeans;
    if (name == "temporal" || name == "temporal_driven") return Variant::temporal_driven;
    if (name == "constrained") return Variant::constrained;
    if (name == "tdck") return Variant::tdck;
    if (name == "tck") return Variant::tck;
    throw std::runtime_error("unknown algorithm '" + name + "'");
}

Dataset dataset_from_table(const RawTable& table) {
    std::vector<Observation> observations;
    observations.reserve(table.rows.size());
    for (const RawRow& row : table.rows) {
        Observation o;
        o.entity = row.entity;
        o.timestamp = row.timestamp;
        o.description.reserve(row.values.size());
        for (const auto& value : row.values) {
            if (!value) {
                throw std::runtime_error(
                    "input has missing cells; pass --preprocess to apply the missing-row policy");
            }
            o.description.push_back(*value);
        }
        observations.push_back(std::move(o));
    }
    return Dataset::build(std::move(observations));
}

Dataset load_input(const DataOptions& data) {
    const RawTable table = load_csv(data.input);
    if (data.preprocess) {
        return preprocess(table).first;
    }
    return dataset_from_table(table);
}

AlgorithmConfig make_config(const ModelOptions& model, const Dataset* dataset) {
    AlgorithmConfig cfg;
    cfg.variant = parse_variant(model.algorithm);
    cfg.m = model.clusters;
    cfg.alpha = model.alpha;
    cfg.seed = model.seed;
    if (cfg.variant == Variant::tck) {
        cfg.penalty.beta = model.alpha_star;
        cfg.penalty.delta = model.d_star;
    } else {
        cfg.penalty.beta = model.beta;
        cfg.penalty.delta = model.delta;
        if (model.beta_pct >= 0.0) {
            if (dataset == nullptr) {
                throw std::runtime_error("--beta-pct requires input data");
            }
            const AlgorithmConfig resolved = resolve_variant(cfg);
            cfg.penalty.beta = model.beta_pct / 100.0 *
                               mean_pairwise_ta(*dataset, weights_from_alpha(resolved.alpha));
        }
    }
    return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << text;
}

void add_config_stub(CLI::App* cmd) {
    // Handled by merge_config_args before parsing; present for --help only.
    static std::string ignored;
    cmd->add_option("--config", ignored, "Read key=value defaults from a file");
}

void add_data_options(CLI::App* cmd, DataOptions& data) {
    cmd->add_option("--input", data.input, "Input CSV (entity,time,attributes...)")
        ->required();
    cmd->add_flag("--preprocess", data.preprocess,
                  "Remove entity fixed effects and z-scale attributes before clustering");
}

void add_model_options(CLI::App* cmd, ModelOptions& model, bool clusters_required) {
    cmd->add_option("--algorithm", model.algorithm,
                    "simple | temporal | constrained | tdck | tck");
    auto* clusters = cmd->add_option("--clusters", model.clusters, "Number of clusters m");
    if (clusters_required) {
        clusters->required();
    }
    cmd->add_option("--alpha", model.alpha,
                    "Component slider in [-1,1]; honored by the tdck algorithm");
    auto* beta = cmd->add_option("--beta", model.beta, "Penalty scale (gaussian kinds)");
    cmd->add_option("--beta-pct", model.beta_pct,
                    "Penalty scale as a percentage of the mean pairwise distance")
        ->excludes(beta);
    cmd->add_option("--delta", model.delta, "Penalty width (gaussian kinds)");
    cmd->add_option("--alpha-star", model.alpha_star, "Threshold penalty scale (tck)");
    cmd->add_option("--d-star", model.d_star, "Threshold penalty window (tck)");
    cmd->add_option("--seed", model.seed, "Base RNG seed")->envname("TDCK_SEED");
    cmd->add_option("--runs", model.runs, "Runs per configuration");
}

struct ClusterCommand {
    DataOptions data;
    ModelOptions model;
    std::string output_dir = ".";
    std::string truth;

    int execute() const {
        const Dataset dataset = load_input(data);
        const AlgorithmConfig cfg = make_config(model, &dataset);
        const RepeatedRunSummary summary = run_repeated(dataset, cfg, model.runs);

        fs::create_directories(output_dir);
        write_assignments(summary.best.partition, dataset,
                          (fs::path(output_dir) / "assignments.csv").string());
        write_centroids(summary.best.partition,
                        (fs::path(output_dir) / "centroids.csv").string());
        write_metrics(summary.per_run, (fs::path(output_dir) / "metrics.csv").string());

        std::ostringstream line;
        line << "J=" << format_real(summary.objective.mean)
             << " MDvar=" << format_real(summary.mdvar.mean)
             << " Tvar=" << format_real(summary.tvar.mean)
             << " ShaP=" << format_real(summary.shap.mean);
        if (!truth.empty()) {
            const Partition truth_partition =
                partition_from_assignments(dataset, read_assignments(truth));
            line << " ARI="
                 << format_real(adjusted_rand_index(truth_partition.assignment,
                                                    summary.best.partition.assignment));
        }
        std::cout << line.str() << "\n";
        return 0;
    }
};

struct SweepCommand {
    DataOptions data;
    ModelOptions model;
    std::string output_dir = ".";
    std::string parameter;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    std::string curves;

    int execute() const {
        const Dataset dataset = load_input(data);
        const AlgorithmConfig cfg = make_config(model, &dataset);

        SweepSpec spec;
        if (parameter == "beta") spec.parameter = SweepParameter::beta;
        else if (parameter == "delta") spec.parameter = SweepParameter::delta;
        else if (parameter == "alpha") spec.parameter = SweepParameter::alpha;
        else if (parameter == "clusters") spec.parameter = SweepParameter::clusters;
        else throw std::runtime_error("unknown sweep parameter '" + parameter + "'");
        spec.lo = from;
        spec.hi = to;
        spec.step = step;
        spec.runs = model.runs;
        if (!curves.empty()) {
            const std::size_t comma = curves.find(',');
            if (comma == std::string::npos) {
                throw std::runtime_error("--curves expects two comma-separated names");
            }
            auto parse_curve = [](const std::string& name) {
                if (name == "mdvar") return MetricCurve::mdvar;
                if (name == "tvar") return MetricCurve::tvar;
                if (name == "shap") return MetricCurve::shap;
                if (name == "j") return MetricCurve::objective;
                throw std::runtime_error("unknown curve '" + name + "'");
            };
            spec.first = parse_curve(curves.substr(0, comma));
            spec.second = parse_curve(curves.substr(comma + 1));
        }

        const SweepResult result = sweep(dataset, cfg, spec);
        fs::create_directories(output_dir);
        write_file(fs::path(output_dir) / "sweep.csv", sweep_csv(spec, result));

        if (result.suggested) {
            std::cout << "suggested " << parameter_name(spec.parameter) << " = "
                      << format_real(*result.suggested) << "\n";
        } else {
            std::cout << "no intersection\n";
            std::cerr << "warning: curves do not cross over the sweep range\n";
        }
        return 0;
    }
};

struct GraphCommand {
    DataOptions data;
    std::string assignments;
    std::string output_dir = ".";
    double gamma = 0.0;
    std::size_t clusters = 0;
    std::uint64_t seed = 0;  // accepted for interface uniformity; unused
    bool drop_self_loops = true;
    bool edge_labels = true;

    int execute() const {
        const Dataset dataset = load_input(data);
        const Partition partition =
            partition_from_assignments(dataset, read_assignments(assignments), clusters);
        const EvolutionGraph graph = build_graph(dataset, partition, gamma);

        fs::create_directories(output_dir);
        write_file(fs::path(output_dir) / "adjacency.csv", adjacency_csv(graph));
        DotOptions options;
        options.drop_self_loops = drop_self_loops;
        options.edge_labels = edge_labels;
        write_file(fs::path(output_dir) / "graph.dot", export_dot(graph, options));

        std::size_t edges = 0;
        for (unsigned char b : graph.binary) edges += b;
        std::cout << "graph: " << graph.m << " clusters, " << edges << " transitions\n";
        return 0;
    }
};

struct SynthCommand {
    std::string spec_path;
    std::string output_dir = ".";
    std::size_t entities = 23;
    std::size_t timestamps = 50;
    std::size_t phases = 8;
    std::size_t dim = 14;
    double stddev = 1.0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    int execute() const {
        ScenarioSpec scenario;
        if (!spec_path.empty()) {
            scenario = load_scenario(spec_path);
            if (seed_given) {
                scenario.seed = seed;
            }
        } else {
            scenario = benchmark_scenario(entities, timestamps, phases, dim, stddev, seed);
        }
        auto [dataset, truth] = generate(scenario);

        fs::create_directories(output_dir);
        write_dataset(dataset, (fs::path(output_dir) / "data.csv").string());
        write_assignments(truth, dataset, (fs::path(output_dir) / "truth.csv").string());
        write_file(fs::path(output_dir) / "scenario.txt", format_scenario(scenario));
        std::cout << "synth: " << dataset.size() << " observations, "
                  << scenario.phases.size() << " phases\n";
        return 0;
    }
};

struct MetricsCommand {
    DataOptions data;
    std::string assignments;
    std::size_t clusters = 0;
    std::string per_entity;

    int execute() const {
        const Dataset dataset = load_input(data);
        const Partition partition =
            partition_from_assignments(dataset, read_assignments(assignments), clusters);
        const MetricReport report = compute_metrics(dataset, partition);

        std::cout << "MDvar=" << format_real(report.mdvar)
                  << " Tvar=" << format_real(report.tvar)
                  << " ShaP=" << format_real(report.shap) << "\n";
        std::cout << "r_d=" << format_real(dispersion_ratio(dataset, DispersionDim::description))
                  << " r_t=" << format_real(dispersion_ratio(dataset, DispersionDim::temporal))
                  << "\n";

        if (!per_entity.empty()) {
            std::ostringstream out;
            out << "entity,n_obs,n_ch,n_min,entropy,penalty_factor\n";
            for (const auto& [entity, d] : report.per_entity) {
                out << entity << "," << d.n_obs << "," << d.n_ch << "," << d.n_min << ","
                    << format_real(d.entropy) << "," << format_real(d.penalty_factor) << "\n";
            }
            write_file(per_entity, out.str());
        }
        return 0;
    }
};

/// `key=value` config support with explicit precedence: every key becomes
/// a long flag unless the command line already carries it.
std::vector<std::string> merge_config_args(std::vector<std::string> args) {
    std::string config_path;
    std::vector<std::string> merged;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) {
                throw std::runtime_error("--config expects a file path");
            }
            config_path = args[++k];
        } else if (args[k].rfind("--config=", 0) == 0) {
            config_path = args[k].substr(9);
        } else {
            merged.push_back(args[k]);
        }
    }
    if (config_path.empty()) {
        return merged;
    }

    std::ifstream in(config_path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + config_path);
    }
    auto already_given = [&](const std::string& flag) {
        for (const std::string& arg : merged) {
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
                return true;
            }
        }
        return false;
    };
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto strip = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t\r");
            const std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || already_given("--" + key)) {
            continue;
        }
        if (key == "preprocess") {  // bare flag
            if (value == "true" || value == "1") {
                merged.push_back("--preprocess");
            }
            continue;
        }
        merged.push_back("--" + key);
        merged.push_back(value);
    }
    return merged;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in) {
    std::vector<std::string> args;
    try {
        args = merge_config_args(args_in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"Temporal-driven constrained clustering of entity panel data"};
    app.require_subcommand(1);

    ClusterCommand cluster_cmd;
    auto* cluster = app.add_subcommand(
        "cluster", "Cluster an input CSV and write assignments, centroids and metrics");
    add_config_stub(cluster);
    add_data_options(cluster, cluster_cmd.data);
    add_model_options(cluster, cluster_cmd.model, true);
    cluster->add_option("--output-dir", cluster_cmd.output_dir, "Output directory");
    cluster->add_option("--truth", cluster_cmd.truth,
                        "Ground-truth assignments CSV; reports the adjusted Rand index");

    SweepCommand sweep_cmd;
    auto* sweep_sub = app.add_subcommand(
        "sweep", "Scan one parameter and report the curve-intersection suggestion");
    add_config_stub(sweep_sub);
    add_data_options(sweep_sub, sweep_cmd.data);
    add_model_options(sweep_sub, sweep_cmd.model, false);
    sweep_sub->add_option("--output-dir", sweep_cmd.output_dir, "Output directory");
    sweep_sub->add_option("--param", sweep_cmd.parameter, "beta | delta | alpha | clusters")
        ->required();
    sweep_sub->add_option("--from", sweep_cmd.from, "Range start")->required();
    sweep_sub->add_option("--to", sweep_cmd.to, "Range end")->required();
    sweep_sub->add_option("--step", sweep_cmd.step, "Grid step")->required();
    sweep_sub->add_option("--curves", sweep_cmd.curves,
                          "Curve pair for the heuristic, e.g. mdvar,shap");

    GraphCommand graph_cmd;
    auto* graph = app.add_subcommand(
        "graph", "Induce the evolution graph from an assignments file");
    add_config_stub(graph);
    add_data_options(graph, graph_cmd.data);
    graph->add_option("--assignments", graph_cmd.assignments, "Assignments CSV")->required();
    graph->add_option("--output-dir", graph_cmd.output_dir, "Output directory");
    graph->add_option("--gamma", graph_cmd.gamma, "Edge filter threshold in [0,1]");
    graph->add_option("--clusters", graph_cmd.clusters, "Cluster count (default: from file)");
    graph->add_option("--drop-self-loops", graph_cmd.drop_self_loops,
                      "Exclude self-transitions from the DOT output (default true)");
    graph->add_option("--edge-labels", graph_cmd.edge_labels,
                      "Label DOT edges with transition weights (default true)");
    graph->add_option("--seed", graph_cmd.seed, "Unused; accepted for uniformity")
        ->envname("TDCK_SEED");

    SynthCommand synth_cmd;
    auto* synth = app.add_subcommand(
        "synth", "Generate a planted panel dataset with ground-truth labels");
    add_config_stub(synth);
    auto* spec_opt = synth->add_option("--spec", synth_cmd.spec_path, "Scenario file");
    synth->add_option("--output-dir", synth_cmd.output_dir, "Output directory");
    synth->add_option("--entities", synth_cmd.entities, "Entity count")->excludes(spec_opt);
    synth->add_option("--timestamps", synth_cmd.timestamps, "Timestamps per entity")
        ->excludes(spec_opt);
    synth->add_option("--phases", synth_cmd.phases, "Planted phase count")->excludes(spec_opt);
    synth->add_option("--dim", synth_cmd.dim, "Description dimension")->excludes(spec_opt);
    synth->add_option("--stddev", synth_cmd.stddev, "Phase noise level")->excludes(spec_opt);
    auto* synth_seed = synth->add_option("--seed", synth_cmd.seed, "Scenario seed")
                           ->envname("TDCK_SEED");

    MetricsCommand metrics_cmd;
    auto* metrics = app.add_subcommand(
        "metrics", "Recompute evaluation measures from an assignments file");
    add_config_stub(metrics);
    add_data_options(metrics, metrics_cmd.data);
    metrics->add_option("--assignments", metrics_cmd.assignments, "Assignments CSV")
        ->required();
    metrics->add_option("--clusters", metrics_cmd.clusters,
                        "Cluster count (default: from file)");
    metrics->add_option("--per-entity", metrics_cmd.per_entity,
                        "Write per-entity contiguity details to this CSV");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("tdck");
    for (const std::string& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    synth_cmd.seed_given = synth_seed->count() > 0;
    try {
        if (cluster->parsed()) return cluster_cmd.execute();
        if (sweep_sub->parsed()) return sweep_cmd.execute();
        if (graph->parsed()) return graph_cmd.execute();
        if (synth->parsed()) return synth_cmd.execute();
        if (metrics->parsed()) return metrics_cmd.execute();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace tdck
