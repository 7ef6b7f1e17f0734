#include "catgraph/graph.hpp"

#include <algorithm>

#include "catgraph/error.hpp"

namespace catgraph {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Graph g;
    g.offsets_.assign(node_count + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count) {
            throw Error(ErrorKind::InvalidNode, "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                                    "} references a node >= " + std::to_string(node_count));
        }
        if (u == v) {
            throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(u));
        }
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i <= node_count; ++i) {
        g.offsets_[i] += g.offsets_[i - 1];
    }
    g.targets_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.targets_[cursor[u]++] = v;
        g.targets_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            throw Error(ErrorKind::DuplicateEdge,
                        "edge {" + std::to_string(v) + "," + std::to_string(*dup) + "} listed more than once");
        }
    }
    return g;
}

void Graph::check_node(NodeId v) const {
    if (v >= node_count()) {
        throw Error(ErrorKind::InvalidNode,
                    "node " + std::to_string(v) + " out of range (N=" + std::to_string(node_count()) + ")");
    }
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    check_node(v);
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::degree(NodeId v) const {
    check_node(v);
    return offsets_[v + 1] - offsets_[v];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nbrs = neighbors(u);
    check_node(v);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

CategoryPartition::CategoryPartition(std::vector<CategoryId> labels, std::vector<std::string> names)
    : labels_(std::move(labels)), names_(std::move(names)), sizes_(names_.size(), 0) {
    for (std::size_t v = 0; v < labels_.size(); ++v) {
        if (labels_[v] >= names_.size()) {
            throw Error(ErrorKind::InvalidPartition, "node " + std::to_string(v) + " has category id " +
                                                         std::to_string(labels_[v]) + " but only " +
                                                         std::to_string(names_.size()) + " categories exist");
        }
        ++sizes_[labels_[v]];
    }
}

CategoryId CategoryPartition::label(NodeId v) const {
    if (v >= labels_.size()) {
        throw Error(ErrorKind::InvalidNode, "node " + std::to_string(v) + " is not labeled by the partition");
    }
    return labels_[v];
}

const std::string& CategoryPartition::name(CategoryId c) const {
    check_category(c);
    return names_[c];
}

std::size_t CategoryPartition::size(CategoryId c) const {
    check_category(c);
    return sizes_[c];
}

std::vector<NodeId> CategoryPartition::members(CategoryId c) const {
    check_category(c);
    std::vector<NodeId> out;
    out.reserve(sizes_[c]);
    for (NodeId v = 0; v < labels_.size(); ++v) {
        if (labels_[v] == c) out.push_back(v);
    }
    return out;
}

void CategoryPartition::check_category(CategoryId c) const {
    if (c >= names_.size()) {
        throw Error(ErrorKind::UnknownCategory, "category id " + std::to_string(c) + " out of range");
    }
}

void CategoryPartition::check_compatible(const Graph& g) const {
    if (labels_.size() != g.node_count()) {
        throw Error(ErrorKind::InvalidPartition, "partition labels " + std::to_string(labels_.size()) +
                                                     " nodes but the graph has " + std::to_string(g.node_count()));
    }
}

CategoryPair::CategoryPair(CategoryId a, CategoryId b) : first(std::min(a, b)), second(std::max(a, b)) {}

double CategoryGraph::weight(CategoryId a, CategoryId b) const {
    if (a == b) {
        throw Error(ErrorKind::SelfPairNotSupported, "intra-category weight is not defined");
    }
    auto it = cuts.find(CategoryPair(a, b));
    return it == cuts.end() ? 0.0 : it->second.weight;
}

std::size_t volume(const Graph& g, std::span<const NodeId> nodes) {
    std::size_t total = 0;
    for (NodeId v : nodes) total += g.degree(v);
    return total;
}

std::size_t volume(const Graph& g) { return 2 * g.edge_count(); }

RelativeFractions relative_fractions(const Graph& g, const CategoryPartition& part, CategoryId c) {
    part.check_category(c);
    part.check_compatible(g);
    if (g.node_count() == 0) {
        throw Error(ErrorKind::EmptyGraph, "relative fractions of an empty graph");
    }
    std::size_t vol_c = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (part.label(v) == c) vol_c += g.degree(v);
    }
    RelativeFractions out;
    out.nodes = static_cast<double>(part.size(c)) / static_cast<double>(g.node_count());
    const auto vol_all = volume(g);
    // With no edges every category has zero volume; report the node share.
    out.volume = vol_all == 0 ? out.nodes : static_cast<double>(vol_c) / static_cast<double>(vol_all);
    return out;
}

std::size_t edge_cut(const Graph& g, const CategoryPartition& part, CategoryId a, CategoryId b) {
    part.check_category(a);
    part.check_category(b);
    part.check_compatible(g);
    if (a == b) {
        throw Error(ErrorKind::SelfPairNotSupported, "edge cut needs two distinct categories");
    }
    std::size_t count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (part.label(u) != a) continue;
        for (NodeId v : g.neighbors(u)) {
            if (part.label(v) == b) ++count;
        }
    }
    return count;
}

CategoryGraph exact_category_graph(const Graph& g, const CategoryPartition& part) {
    part.check_compatible(g);
    CategoryGraph out;
    out.names.assign(part.names().begin(), part.names().end());
    out.sizes.assign(part.sizes().begin(), part.sizes().end());
    for (const auto& [u, v] : g.edges()) {
        const auto cu = part.label(u);
        const auto cv = part.label(v);
        if (cu != cv) ++out.cuts[CategoryPair(cu, cv)].edges;
    }
    for (auto& [pair, entry] : out.cuts) {
        entry.weight = static_cast<double>(entry.edges) /
                       (static_cast<double>(out.sizes[pair.first]) * static_cast<double>(out.sizes[pair.second]));
    }
    return out;
}

double mean_degree(const Graph& g, const CategoryPartition& part, CategoryId c) {
    part.check_category(c);
    part.check_compatible(g);
    if (part.size(c) == 0) {
        throw Error(ErrorKind::EmptyCategory, "category '" + part.name(c) + "' has no nodes");
    }
    const auto members = part.members(c);
    return static_cast<double>(volume(g, members)) / static_cast<double>(members.size());
}

double mean_degree(const Graph& g) {
    if (g.node_count() == 0) {
        throw Error(ErrorKind::EmptyGraph, "mean degree of an empty graph");
    }
    return static_cast<double>(volume(g)) / static_cast<double>(g.node_count());
}

std::vector<NodeId> component_of(const Graph& g, NodeId start) {
    g.check_node(start);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> order{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (NodeId w : g.neighbors(order[head])) {
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    }
    return order;
}

bool is_connected(const Graph& g) {
    return g.node_count() <= 1 || component_of(g, 0).size() == g.node_count();
}

}  // namespace catgraph
