#include "tdck/evolution_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tdck/dataio.hpp"

namespace tdck {

std::vector<Transition> transitions(const Dataset& dataset, const Partition& partition) {
    validate_partition(dataset, partition);
    std::set<Transition> found;
    for (std::size_t e = 0; e < dataset.entity_count(); ++e) {
        const auto& members = dataset.entity_observations(e);
        for (std::size_t k = 1; k < members.size(); ++k) {
            const auto from = static_cast<std::size_t>(partition.assignment[members[k - 1]]);
            const auto to = static_cast<std::size_t>(partition.assignment[members[k]]);
            found.insert(Transition{e, from, to});
        }
    }
    return {found.begin(), found.end()};
}

double intersection_similarity(std::size_t p, std::size_t q,
                               const std::vector<Transition>& transitions,
                               std::size_t entity_count) {
    if (entity_count == 0) {
        throw std::invalid_argument("intersection_similarity: no entities");
    }
    std::set<std::size_t> entities;
    for (const Transition& t : transitions) {
        if (t.from == p && t.to == q) {
            entities.insert(t.entity);
        }
    }
    return static_cast<double>(entities.size()) / static_cast<double>(entity_count);
}

EvolutionGraph build_graph(const Dataset& dataset, const Partition& partition,
                           double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("build_graph: gamma must be in [0, 1]");
    }
    validate_partition(dataset, partition);

    EvolutionGraph g;
    g.m = partition.cluster_count();
    g.gamma = gamma;
    g.adjacency.assign(g.m * g.m, 0.0);
    g.binary.assign(g.m * g.m, 0);

    std::vector<std::size_t> counts(g.m * g.m, 0);
    for (const Transition& t : transitions(dataset, partition)) {
        ++counts[t.from * g.m + t.to];
    }
    const double entities = static_cast<double>(dataset.entity_count());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        g.adjacency[k] = static_cast<double>(counts[k]) / entities;
    }
    for (std::size_t k = 0; k < g.adjacency.size(); ++k) {
        const double a = g.adjacency[k];
        g.binary[k] = (gamma > 0.0 ? a >= gamma : a > 0.0) ? 1 : 0;
    }

    g.cluster_meta.resize(g.m);
    for (std::size_t j = 0; j < g.m; ++j) {
        ClusterMeta& meta = g.cluster_meta[j];
        meta.mu_t = partition.centroids[j].timestamp;
        meta.size = partition.clusters[j].size();
        if (meta.size == 0) {
            continue;
        }
        meta.t_min = std::numeric_limits<double>::infinity();
        meta.t_max = -std::numeric_limits<double>::infinity();
        for (std::size_t i : partition.clusters[j]) {
            const double t = dataset.observation(i).timestamp;
            meta.t_min = std::min(meta.t_min, t);
            meta.t_max = std::max(meta.t_max, t);
        }
    }
    return g;
}

std::string export_dot(const EvolutionGraph& graph, const DotOptions& options) {
    std::vector<std::size_t> order(graph.m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return graph.cluster_meta[a].mu_t < graph.cluster_meta[b].mu_t;
    });

    std::ostringstream out;
    out << "digraph evolution {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=ellipse];\n";
    for (std::size_t j : order) {
        const ClusterMeta& meta = graph.cluster_meta[j];
        out << "  c" << j << " [label=\"c" << j;
        if (meta.size > 0) {
            out << "\\n[" << format_real(meta.t_min) << "," << format_real(meta.t_max) << "]";
        } else {
            out << "\\n(empty)";
        }
        out << "\"];\n";
    }
    for (std::size_t p : order) {
        for (std::size_t q : order) {
            if (!graph.edge(p, q)) continue;
            if (options.drop_self_loops && p == q) continue;
            out << "  c" << p << " -> c" << q;
            if (options.edge_labels) {
                char label[32];
                std::snprintf(label, sizeof(label), "%.2f", graph.weight(p, q));
                out << " [label=\"" << label << "\"]";
            }
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string adjacency_csv(const EvolutionGraph& graph) {
    std::ostringstream out;
    for (std::size_t q = 0; q < graph.m; ++q) {
        out << (q == 0 ? "" : ",") << q;
    }
    out << "\n";
    for (std::size_t p = 0; p < graph.m; ++p) {
        for (std::size_t q = 0; q < graph.m; ++q) {
            out << (q == 0 ? "" : ",") << format_real(graph.weight(p, q));
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace tdck
