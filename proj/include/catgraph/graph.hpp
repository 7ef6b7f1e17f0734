#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace catgraph {

using NodeId = std::uint32_t;
using CategoryId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable simple undirected graph in compressed adjacency form. Neighbor
// lists are sorted, so edge membership is a binary search.
class Graph {
public:
    Graph() = default;

    // Builds from an undirected edge list. Throws SelfLoop / DuplicateEdge /
    // InvalidNode; {u,v} and {v,u} count as the same edge.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const;
    bool has_edge(NodeId u, NodeId v) const;

    // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

    void check_node(NodeId v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
};

// Total assignment of nodes to categories. Category ids are dense indices
// into names(); a category may be empty.
class CategoryPartition {
public:
    CategoryPartition() = default;
    CategoryPartition(std::vector<CategoryId> labels, std::vector<std::string> names);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t category_count() const noexcept { return names_.size(); }

    CategoryId label(NodeId v) const;
    const std::string& name(CategoryId c) const;
    std::span<const CategoryId> labels() const noexcept { return labels_; }
    std::span<const std::string> names() const noexcept { return names_; }
    std::size_t size(CategoryId c) const;
    std::span<const std::size_t> sizes() const noexcept { return sizes_; }
    std::vector<NodeId> members(CategoryId c) const;

    void check_category(CategoryId c) const;
    // Throws InvalidPartition unless the partition labels exactly g's nodes.
    void check_compatible(const Graph& g) const;

    friend bool operator==(const CategoryPartition&, const CategoryPartition&) = default;

private:
    std::vector<CategoryId> labels_;
    std::vector<std::string> names_;
    std::vector<std::size_t> sizes_;
};

// Unordered category pair, normalized so that first < second.
struct CategoryPair {
    CategoryId first = 0;
    CategoryId second = 0;

    CategoryPair() = default;
    CategoryPair(CategoryId a, CategoryId b);

    auto operator<=>(const CategoryPair&) const = default;
};

struct CutEntry {
    std::size_t edges = 0;
    double weight = 0.0;
};

// Ground-truth category graph. Only pairs with at least one cut edge are
// stored, and intra-category pairs never are.
struct CategoryGraph {
    std::vector<std::string> names;
    std::vector<std::size_t> sizes;
    std::map<CategoryPair, CutEntry> cuts;

    double weight(CategoryId a, CategoryId b) const;
};

std::size_t volume(const Graph& g, std::span<const NodeId> nodes);
std::size_t volume(const Graph& g);

struct RelativeFractions {
    double nodes = 0.0;   // |A| / N
    double volume = 0.0;  // vol(A) / vol(V)
};

RelativeFractions relative_fractions(const Graph& g, const CategoryPartition& part, CategoryId c);

std::size_t edge_cut(const Graph& g, const CategoryPartition& part, CategoryId a, CategoryId b);

CategoryGraph exact_category_graph(const Graph& g, const CategoryPartition& part);

// k_A = vol(A)/|A|; throws EmptyCategory for an empty category.
double mean_degree(const Graph& g, const CategoryPartition& part, CategoryId c);
// k_V = vol(V)/N.
double mean_degree(const Graph& g);

// Nodes reachable from start, in BFS order.
std::vector<NodeId> component_of(const Graph& g, NodeId start);
bool is_connected(const Graph& g);

}  // namespace catgraph
