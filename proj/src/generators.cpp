#include "catgraph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "catgraph/diagnostics.hpp"
#include "catgraph/error.hpp"

namespace catgraph {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// One pairing attempt. Stubs are shuffled and paired; a pair that would form
// a self-loop or a duplicate is put back and re-paired in the next round.
// Fails when the leftover stubs admit no legal pair at all.
bool try_pair_stubs(std::size_t n, std::size_t k, Rng& rng, std::vector<Edge>& out) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * k);
    out.clear();
    std::vector<NodeId> stubs;
    stubs.reserve(n * k);
    for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), k, v);

    std::vector<std::size_t> leftover(n, 0);
    while (!stubs.empty()) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<NodeId> touched;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            NodeId a = stubs[i];
            NodeId b = stubs[i + 1];
            if (a != b && !present.contains(edge_key(a, b))) {
                present.insert(edge_key(a, b));
                out.emplace_back(std::min(a, b), std::max(a, b));
            } else {
                for (NodeId s : {a, b}) {
                    if (leftover[s]++ == 0) touched.push_back(s);
                }
            }
        }
        if (touched.empty()) return true;
        std::sort(touched.begin(), touched.end());

        bool progress_possible = false;
        for (std::size_t i = 0; i < touched.size() && !progress_possible; ++i) {
            for (std::size_t j = i + 1; j < touched.size(); ++j) {
                if (!present.contains(edge_key(touched[i], touched[j]))) {
                    progress_possible = true;
                    break;
                }
            }
        }
        if (!progress_possible) return false;

        stubs.clear();
        for (NodeId s : touched) {
            stubs.insert(stubs.end(), leftover[s], s);
            leftover[s] = 0;
        }
    }
    return true;
}

}  // namespace

std::size_t SyntheticParams::node_count() const {
    return std::accumulate(category_sizes.begin(), category_sizes.end(), std::size_t{0});
}

std::size_t SyntheticParams::resolved_inter_edge_count() const {
    return inter_edge_count.value_or(node_count() * k / 10);
}

std::vector<Edge> random_regular_edges(std::size_t n, std::size_t k, Rng& rng, std::size_t max_attempts) {
    if (k > 0 && (n <= k || (n * k) % 2 != 0)) {
        throw Error(ErrorKind::InfeasibleRegularGraph,
                    "no simple " + std::to_string(k) + "-regular graph on " + std::to_string(n) + " nodes");
    }
    std::vector<Edge> edges;
    if (k == 0) return edges;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        if (try_pair_stubs(n, k, rng, edges)) {
            std::sort(edges.begin(), edges.end());
            return edges;
        }
    }
    throw Error(ErrorKind::GenerationFailed, "no simple " + std::to_string(k) + "-regular graph on " +
                                                 std::to_string(n) + " nodes after " +
                                                 std::to_string(max_attempts) + " attempts");
}

LabeledGraph gen_intra_regular(const std::vector<std::size_t>& sizes, std::size_t k, Rng& rng,
                               std::size_t max_attempts) {
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] <= k || (sizes[c] * k) % 2 != 0) {
            throw Error(ErrorKind::InfeasibleRegularGraph, "category " + std::to_string(c) + " of size " +
                                                               std::to_string(sizes[c]) + " cannot be " +
                                                               std::to_string(k) + "-regular");
        }
    }
    std::vector<Edge> edges;
    std::vector<CategoryId> labels;
    std::vector<std::string> names;
    NodeId offset = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (auto [u, v] : random_regular_edges(sizes[c], k, rng, max_attempts)) {
            edges.emplace_back(u + offset, v + offset);
        }
        labels.insert(labels.end(), sizes[c], static_cast<CategoryId>(c));
        names.push_back("c" + std::to_string(c));
        offset += static_cast<NodeId>(sizes[c]);
    }
    return {Graph::from_edges(labels.size(), edges), CategoryPartition(std::move(labels), std::move(names))};
}

Graph add_inter_edges(const Graph& g, const CategoryPartition& part, std::size_t m, Rng& rng) {
    part.check_compatible(g);
    if (m == 0) return g;

    const std::size_t n = g.node_count();
    std::size_t same_category_pairs = 0;
    for (auto s : part.sizes()) same_category_pairs += s * (s - (s > 0 ? 1 : 0)) / 2;
    const std::size_t all_pairs = n * (n - 1) / 2;
    std::size_t existing_cross = 0;
    auto edges = g.edges();
    for (auto [u, v] : edges) {
        if (part.label(u) != part.label(v)) ++existing_cross;
    }
    const std::size_t available = all_pairs - same_category_pairs - existing_cross;
    if (m > available) {
        throw Error(ErrorKind::TooManyEdgesRequested, "requested " + std::to_string(m) +
                                                          " inter-category edges but only " +
                                                          std::to_string(available) + " absent cross pairs exist");
    }

    if (2 * m <= available) {
        std::unordered_set<std::uint64_t> added;
        added.reserve(2 * m);
        std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
        while (added.size() < m) {
            const NodeId u = pick(rng);
            const NodeId v = pick(rng);
            if (part.label(u) == part.label(v) || g.has_edge(u, v)) continue;
            if (added.insert(edge_key(u, v)).second) edges.emplace_back(std::min(u, v), std::max(u, v));
        }
    } else {
        // Dense request: enumerate the candidates and take a random subset.
        std::vector<Edge> candidates;
        candidates.reserve(available);
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                if (part.label(u) != part.label(v) && !g.has_edge(u, v)) candidates.emplace_back(u, v);
            }
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        edges.insert(edges.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(m));
    }
    return Graph::from_edges(n, edges);
}

std::size_t permuted_node_count(std::size_t n, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "alpha must lie in [0,1], got " + std::to_string(alpha));
    }
    // The epsilon absorbs representation error such as 0.29*100 = 28.999...
    return std::min(n, static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n) + 1e-9)));
}

CategoryPartition permute_labels(const CategoryPartition& part, double alpha, Rng& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "alpha must lie in [0,1], got " + std::to_string(alpha));
    }
    const std::size_t n = part.node_count();
    const auto count = permuted_node_count(n, alpha);

    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    std::vector<NodeId> chosen;
    chosen.reserve(count);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), count, rng);

    std::vector<CategoryId> labels(part.labels().begin(), part.labels().end());
    std::vector<CategoryId> moved;
    moved.reserve(count);
    for (NodeId v : chosen) moved.push_back(labels[v]);
    std::shuffle(moved.begin(), moved.end(), rng);
    for (std::size_t i = 0; i < count; ++i) labels[chosen[i]] = moved[i];

    return CategoryPartition(std::move(labels), std::vector<std::string>(part.names().begin(), part.names().end()));
}

SyntheticGraph synthetic_graph(const SyntheticParams& params) {
    if (params.category_sizes.empty()) {
        throw Error(ErrorKind::InvalidParameter, "at least one category is required");
    }
    Rng rng(params.seed);
    auto base = gen_intra_regular(params.category_sizes, params.k, rng, params.max_attempts);
    auto graph = add_inter_edges(base.graph, base.partition, params.resolved_inter_edge_count(), rng);
    auto partition = permute_labels(base.partition, params.alpha, rng);
    const bool connected = is_connected(graph);
    if (!connected) {
        warn("synthetic graph is disconnected; walks will be confined to the start node's component");
    }
    return {std::move(graph), std::move(partition), connected};
}

}  // namespace catgraph
