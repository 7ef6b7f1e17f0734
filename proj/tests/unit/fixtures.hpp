#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catgraph/error.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/samplers.hpp"

namespace fixtures {

using namespace catgraph;

inline Graph make_graph(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

inline CategoryPartition make_partition(std::vector<CategoryId> labels, std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < k; ++c) names.push_back("c" + std::to_string(c));
    return CategoryPartition(std::move(labels), std::move(names));
}

inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }
inline Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph star_k13() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

inline Graph cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
    return make_graph(n, edges);
}

// white = {0,1,2}, gray = {3,4}, black = {5,6,7}; cuts white-black 3,
// gray-black 1, gray-white 4, plus a few intra edges.
struct Figure1 {
    Graph graph;
    CategoryPartition partition;
};

inline Figure1 figure1() {
    std::vector<Edge> edges{
        {0, 5}, {1, 6}, {2, 7},          // white-black
        {3, 5},                          // gray-black
        {0, 3}, {1, 3}, {1, 4}, {2, 4},  // gray-white
        {0, 1}, {5, 6}, {6, 7}, {3, 4},  // intra
    };
    return {make_graph(8, edges), CategoryPartition({0, 0, 0, 1, 1, 2, 2, 2}, {"white", "gray", "black"})};
}

// Connected, irregular, non-bipartite 8-node graph.
inline Graph small_irregular() {
    return make_graph(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {2, 5}, {1, 6}});
}

// Erdos-Renyi style graph with uniformly random labels, for oracle tests.
struct RandomLabeled {
    Graph graph;
    CategoryPartition partition;
};

inline RandomLabeled random_labeled(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.emplace_back(u, v);
        }
    }
    std::vector<CategoryId> labels(n);
    for (NodeId v = 0; v < n; ++v) labels[v] = static_cast<CategoryId>(v < k ? v : rng() % k);
    return {make_graph(n, edges), make_partition(std::move(labels), k)};
}

// A trace drawing each node once with unit weight.
inline SampleTrace full_trace(const Graph& g) {
    SampleTrace t;
    for (NodeId v = 0; v < g.node_count(); ++v) t.draws.push_back({v, v, 1.0});
    return t;
}

inline SampleTrace trace_of(std::vector<NodeId> nodes, std::vector<double> weights = {}) {
    SampleTrace t;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        t.draws.push_back({i, nodes[i], weights.empty() ? 1.0 : weights[i]});
    }
    return t;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fixtures

// Runs the expression and checks that it throws catgraph::Error of the given kind.
#define CHECK_THROWS_KIND(expected_kind, ...)                        \
    do {                                                             \
        bool thrown_ = false;                                        \
        try {                                                        \
            (void)(__VA_ARGS__);                                     \
        } catch (const catgraph::Error& e_) {                        \
            thrown_ = true;                                          \
            CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());  \
        }                                                            \
        CHECK_MESSAGE(thrown_, "expected an exception: " #__VA_ARGS__); \
    } while (0)
