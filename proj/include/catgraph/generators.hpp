#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catgraph/graph.hpp"
#include "catgraph/random.hpp"

namespace catgraph {

// Synthetic benchmark model: k-regular random graph inside each category,
// plus random inter-category edges, plus a label permutation on a fraction
// alpha of the nodes that loosens the community/category alignment.
struct SyntheticParams {
    std::vector<std::size_t> category_sizes;
    std::size_t k = 5;
    std::optional<std::size_t> inter_edge_count;  // default N*k/10
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::size_t max_attempts = 100;

    std::size_t node_count() const;
    std::size_t resolved_inter_edge_count() const;
};

struct LabeledGraph {
    Graph graph;
    CategoryPartition partition;
};

struct SyntheticGraph {
    Graph graph;
    CategoryPartition partition;
    bool connected = false;
};

// Categories are laid out contiguously (category 0 owns nodes 0..sizes[0]-1)
// and named "c0", "c1", ...
LabeledGraph gen_intra_regular(const std::vector<std::size_t>& sizes, std::size_t k, Rng& rng,
                               std::size_t max_attempts = 100);

// Adds m distinct edges between nodes of different categories.
Graph add_inter_edges(const Graph& g, const CategoryPartition& part, std::size_t m, Rng& rng);

// floor(alpha*n); throws InvalidParameter unless alpha is in [0,1].
std::size_t permuted_node_count(std::size_t n, double alpha);

// Picks floor(alpha*N) nodes uniformly without replacement and shuffles their
// labels among themselves. Category sizes are preserved exactly.
CategoryPartition permute_labels(const CategoryPartition& part, double alpha, Rng& rng);

SyntheticGraph synthetic_graph(const SyntheticParams& params);

// A random k-regular simple graph on n nodes (ids 0..n-1), as an edge list.
std::vector<Edge> random_regular_edges(std::size_t n, std::size_t k, Rng& rng, std::size_t max_attempts = 100);

}  // namespace catgraph
