#pragma once

#include <string>
#include <vector>

#include "tdck/core.hpp"

namespace tdck {

/// One entity exhibiting a phase change between consecutive observations.
struct Transition {
    std::size_t entity = 0;  // dense entity id
    std::size_t from = 0;
    std::size_t to = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct ClusterMeta {
    double mu_t = 0.0;
    double t_min = 0.0;  // temporal extent: minimal interval containing all
    double t_max = 0.0;  // member timestamps; [0, 0] for an empty cluster
    std::size_t size = 0;
};

/// Weighted adjacency over the temporal clusters plus its gamma-filtered
/// binary form. Entry (p, q) is the fraction of entities with a consecutive
/// observation pair moving from cluster p to cluster q.
struct EvolutionGraph {
    std::size_t m = 0;
    double gamma = 0.0;
    std::vector<double> adjacency;     // m x m, row-major, values in [0, 1]
    std::vector<unsigned char> binary; // m x m, filtered by gamma
    std::vector<ClusterMeta> cluster_meta;

    double weight(std::size_t p, std::size_t q) const { return adjacency[p * m + q]; }
    bool edge(std::size_t p, std::size_t q) const { return binary[p * m + q] != 0; }
};

/// Every (entity, from, to) pair realized by adjacent observations in the
/// entities' timestamp-sorted sequences, duplicates collapsed. Includes
/// self-transitions. Sorted ascending.
std::vector<Transition> transitions(const Dataset& dataset, const Partition& partition);

/// Fraction of entities presenting the transition p -> q.
double intersection_similarity(std::size_t p, std::size_t q,
                               const std::vector<Transition>& transitions,
                               std::size_t entity_count);

/// gamma > 0 keeps edges with weight >= gamma; gamma = 0 keeps exactly the
/// strictly positive edges (the unfiltered graph).
EvolutionGraph build_graph(const Dataset& dataset, const Partition& partition,
                           double gamma);

struct DotOptions {
    bool drop_self_loops = true;
    bool edge_labels = true;
};

/// Deterministic DOT digraph: nodes ordered by centroid timestamp, edges
/// from the binary matrix, labels to two decimals.
std::string export_dot(const EvolutionGraph& graph, const DotOptions& options = {});

/// m data rows of m comma-separated weights under a header of cluster ids.
std::string adjacency_csv(const EvolutionGraph& graph);

}  // namespace tdck
