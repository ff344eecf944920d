#include "tdck/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tdck/dataio.hpp"
#include "tdck/engine.hpp"

namespace tdck {

void validate_scenario(const ScenarioSpec& spec) {
    if (spec.entities == 0 || spec.timestamps == 0 || spec.dimension == 0) {
        throw std::invalid_argument("scenario: entities, timestamps and dimension must be >= 1");
    }
    if (spec.phases.empty()) {
        throw std::invalid_argument("scenario: at least one phase required");
    }
    if (spec.entities * spec.timestamps < spec.phases.size()) {
        throw std::invalid_argument("scenario: more phases than observations");
    }
    if (!(spec.t_step > 0.0)) {
        throw std::invalid_argument("scenario: t_step must be > 0");
    }
    for (const PhaseSpec& phase : spec.phases) {
        if (phase.mean.size() != spec.dimension) {
            throw std::invalid_argument("scenario: phase mean dimension mismatch");
        }
        if (phase.stddev < 0.0) {
            throw std::invalid_argument("scenario: negative stddev");
        }
        if (phase.t_end < phase.t_start) {
            throw std::invalid_argument("scenario: inconsistent extents");
        }
    }
    if (spec.trajectories.size() != spec.entities) {
        throw std::invalid_argument("scenario: one trajectory per entity required");
    }
    for (const auto& traj : spec.trajectories) {
        if (traj.empty()) {
            throw std::invalid_argument("scenario: empty trajectory");
        }
        if (traj.front().switch_time > spec.t_start) {
            throw std::invalid_argument("scenario: trajectory starts after the grid");
        }
        for (std::size_t k = 0; k < traj.size(); ++k) {
            if (traj[k].phase >= spec.phases.size()) {
                throw std::invalid_argument("scenario: trajectory references unknown phase");
            }
            if (k > 0 && !(traj[k].switch_time > traj[k - 1].switch_time)) {
                throw std::invalid_argument("scenario: switch times must be strictly increasing");
            }
        }
    }
}

namespace {

std::string entity_label(std::size_t index, std::size_t total) {
    std::size_t width = 1;
    for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) {
        ++width;
    }
    std::string digits = std::to_string(index);
    return "e" + std::string(width - digits.size(), '0') + digits;
}

std::size_t active_phase(const std::vector<TrajectoryStep>& traj, double t) {
    std::size_t phase = traj.front().phase;
    for (const TrajectoryStep& step : traj) {
        if (step.switch_time <= t) {
            phase = step.phase;
        } else {
            break;
        }
    }
    return phase;
}

}  // namespace

std::pair<Dataset, Partition> generate(const ScenarioSpec& spec) {
    validate_scenario(spec);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Observation> observations;
    std::vector<int> labels;
    observations.reserve(spec.entities * spec.timestamps);
    labels.reserve(spec.entities * spec.timestamps);

    for (std::size_t e = 0; e < spec.entities; ++e) {
        const auto& traj = spec.trajectories[e];
        for (std::size_t k = 0; k < spec.timestamps; ++k) {
            const double t = spec.t_start + static_cast<double>(k) * spec.t_step;
            const std::size_t p = active_phase(traj, t);
            const PhaseSpec& phase = spec.phases[p];
            if (t < phase.t_start || t > phase.t_end) {
                throw std::invalid_argument("scenario: inconsistent extents: phase does not cover t");
            }
            Observation o;
            o.entity = entity_label(e, spec.entities);
            o.timestamp = t;
            o.description.resize(spec.dimension);
            for (std::size_t c = 0; c < spec.dimension; ++c) {
                o.description[c] = phase.mean[c] + phase.stddev * gauss(rng);
            }
            observations.push_back(std::move(o));
            labels.push_back(static_cast<int>(p));
        }
    }

    Dataset dataset = Dataset::build(std::move(observations));
    Partition truth = Partition::from_assignment(std::move(labels), spec.phases.size(), {});
    truth.centroids.resize(spec.phases.size());
    const TuningWeights weights{1.0, 1.0};
    for (std::size_t j = 0; j < spec.phases.size(); ++j) {
        if (truth.clusters[j].empty()) {
            truth.centroids[j].description.assign(dataset.dimension(), 0.0);
            continue;
        }
        Centroid start;
        start.timestamp = dataset.observation(truth.clusters[j].front()).timestamp;
        start.description = dataset.observation(truth.clusters[j].front()).description;
        truth.centroids[j] = update_centroid(truth.clusters[j], dataset, weights, start);
    }
    return {std::move(dataset), std::move(truth)};
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("adjusted_rand_index: size mismatch");
    }
    const std::size_t n = a.size();
    if (n < 2) {
        return 1.0;
    }
    const int ka = *std::max_element(a.begin(), a.end()) + 1;
    const int kb = *std::max_element(b.begin(), b.end()) + 1;
    std::vector<std::size_t> table(static_cast<std::size_t>(ka) * kb, 0);
    std::vector<std::size_t> rows(ka, 0), cols(kb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++table[static_cast<std::size_t>(a[i]) * kb + b[i]];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    auto comb2 = [](std::size_t x) {
        return 0.5 * static_cast<double>(x) * static_cast<double>(x > 0 ? x - 1 : 0);
    };
    double index = 0.0;
    for (std::size_t v : table) index += comb2(v);
    double sum_a = 0.0, sum_b = 0.0;
    for (std::size_t v : rows) sum_a += comb2(v);
    for (std::size_t v : cols) sum_b += comb2(v);
    const double expected = sum_a * sum_b / comb2(n);
    const double maximum = 0.5 * (sum_a + sum_b);
    if (maximum == expected) {
        return 1.0;  // both partitions trivial
    }
    return (index - expected) / (maximum - expected);
}

RecoveryScore score(const Dataset& dataset, const Partition& truth,
                    const Partition& found) {
    if (truth.assignment.size() != found.assignment.size() ||
        truth.assignment.size() != dataset.size()) {
        throw std::invalid_argument("score: partitions cover different observation sets");
    }
    RecoveryScore s;
    s.ari = adjusted_rand_index(truth.assignment, found.assignment);
    s.confusion.assign(truth.cluster_count(),
                       std::vector<std::size_t>(found.cluster_count(), 0));
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        ++s.confusion[static_cast<std::size_t>(truth.assignment[i])]
                     [static_cast<std::size_t>(found.assignment[i])];
    }
    s.metrics = compute_metrics(dataset, found);
    return s;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> tokens;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

double to_number(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("scenario: bad ") + what + ": '" + s + "'");
    }
}

PhaseSpec parse_phase(const std::string& value) {
    PhaseSpec phase;
    bool has_extent = false, has_mean = false;
    std::stringstream fields(value);
    std::string field;
    while (std::getline(fields, field, ';')) {
        const std::vector<std::string> tokens = tokenize(field);
        if (tokens.empty()) continue;
        if (tokens[0] == "extent" && tokens.size() == 3) {
            phase.t_start = to_number(tokens[1], "extent");
            phase.t_end = to_number(tokens[2], "extent");
            has_extent = true;
        } else if (tokens[0] == "stddev" && tokens.size() == 2) {
            phase.stddev = to_number(tokens[1], "stddev");
        } else if (tokens[0] == "mean" && tokens.size() >= 2) {
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                phase.mean.push_back(to_number(tokens[k], "mean"));
            }
            has_mean = true;
        } else {
            throw std::runtime_error("scenario: unknown phase field '" + field + "'");
        }
    }
    if (!has_extent || !has_mean) {
        throw std::runtime_error("scenario: phase needs extent and mean");
    }
    return phase;
}

std::vector<TrajectoryStep> parse_trajectory(const std::string& value) {
    std::vector<TrajectoryStep> traj;
    for (const std::string& tok : tokenize(value)) {
        const std::size_t at = tok.find('@');
        if (at == std::string::npos) {
            throw std::runtime_error("scenario: trajectory step must be phase@time: '" + tok +
                                     "'");
        }
        TrajectoryStep step;
        step.phase = static_cast<std::size_t>(to_number(tok.substr(0, at), "phase"));
        step.switch_time = to_number(tok.substr(at + 1), "switch time");
        traj.push_back(step);
    }
    return traj;
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
    ScenarioSpec spec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("scenario: expected key = value: '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "entities") {
            spec.entities = static_cast<std::size_t>(to_number(value, key.c_str()));
        } else if (key == "timestamps") {
            spec.timestamps = static_cast<std::size_t>(to_number(value, key.c_str()));
        } else if (key == "dimension") {
            spec.dimension = static_cast<std::size_t>(to_number(value, key.c_str()));
        } else if (key == "t_start") {
            spec.t_start = to_number(value, key.c_str());
        } else if (key == "t_step") {
            spec.t_step = to_number(value, key.c_str());
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(to_number(value, key.c_str()));
        } else if (key == "phase") {
            spec.phases.push_back(parse_phase(value));
        } else if (key == "trajectory") {
            spec.trajectories.push_back(parse_trajectory(value));
        } else {
            throw std::runtime_error("scenario: unknown key '" + key + "'");
        }
    }
    validate_scenario(spec);
    return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string format_scenario(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "entities = " << spec.entities << "\n";
    out << "timestamps = " << spec.timestamps << "\n";
    out << "dimension = " << spec.dimension << "\n";
    out << "t_start = " << format_real_exact(spec.t_start) << "\n";
    out << "t_step = " << format_real_exact(spec.t_step) << "\n";
    out << "seed = " << spec.seed << "\n";
    for (const PhaseSpec& phase : spec.phases) {
        out << "phase = extent " << format_real_exact(phase.t_start) << " "
            << format_real_exact(phase.t_end) << " ; stddev " << format_real_exact(phase.stddev)
            << " ; mean";
        for (double v : phase.mean) {
            out << " " << format_real_exact(v);
        }
        out << "\n";
    }
    for (const auto& traj : spec.trajectories) {
        out << "trajectory =";
        for (const TrajectoryStep& step : traj) {
            out << " " << step.phase << "@" << format_real_exact(step.switch_time);
        }
        out << "\n";
    }
    return out.str();
}

ScenarioSpec benchmark_scenario(std::size_t entities, std::size_t timestamps,
                                std::size_t phases, std::size_t dimension,
                                double stddev, std::uint64_t seed) {
    if (entities == 0 || timestamps == 0 || phases == 0 || dimension == 0) {
        throw std::invalid_argument("benchmark_scenario: all sizes must be >= 1");
    }
    ScenarioSpec spec;
    spec.entities = entities;
    spec.timestamps = timestamps;
    spec.dimension = dimension;
    spec.t_start = 0.0;
    spec.t_step = 1.0;
    spec.seed = seed;

    const double t_end = static_cast<double>(timestamps - 1);
    const double mid = std::floor(static_cast<double>(timestamps) / 2.0);
    const double overlap = std::min(3.0, mid);

    // Two eras of phases; later follow-up phases reuse earlier description
    // means so eras are only separable through time.
    std::size_t group_a = std::max<std::size_t>(1, phases * 5 / 8);
    if (group_a > phases) group_a = phases;
    const std::size_t group_b = phases - group_a;

    const double separation = 3.5 * (stddev > 0.0 ? stddev : 1.0);
    auto axis_mean = [&](std::size_t k) {
        std::vector<double> mean(dimension, 0.0);
        mean[k % dimension] = separation * static_cast<double>(1 + k / dimension);
        return mean;
    };

    std::size_t next_axis = 0;
    for (std::size_t i = 0; i < group_a; ++i) {
        PhaseSpec phase;
        phase.mean = axis_mean(next_axis++);
        phase.stddev = stddev;
        phase.t_start = 0.0;
        phase.t_end = group_b == 0 ? t_end : std::min(t_end, mid + overlap);
        spec.phases.push_back(std::move(phase));
    }
    for (std::size_t i = 0; i < group_b; ++i) {
        PhaseSpec phase;
        // Echo every other era-A mean, keeping at least the last follow-up
        // phase on a fresh mean.
        const std::size_t echo = 2 * i + 1;
        if (i + 1 < group_b && echo < group_a) {
            phase.mean = spec.phases[echo].mean;
        } else {
            phase.mean = axis_mean(next_axis++);
        }
        phase.stddev = stddev;
        phase.t_start = std::max(0.0, mid - overlap);
        phase.t_end = t_end;
        spec.phases.push_back(std::move(phase));
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> jitter(-2, 2);
    for (std::size_t e = 0; e < entities; ++e) {
        std::vector<TrajectoryStep> traj;
        traj.push_back(TrajectoryStep{e % group_a, 0.0});
        if (group_b > 0 && timestamps >= 4) {
            double switch_t = mid + static_cast<double>(jitter(rng));
            switch_t = std::min(std::max(switch_t, std::max(1.0, mid - overlap)), t_end);
            traj.push_back(TrajectoryStep{group_a + (e % group_b), switch_t});
        }
        spec.trajectories.push_back(std::move(traj));
    }
    validate_scenario(spec);
    return spec;
}

}  // namespace tdck
