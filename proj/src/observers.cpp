#include "catgraph/observers.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "catgraph/error.hpp"

namespace catgraph {

std::string_view to_string(ObservationMode mode) noexcept {
    return mode == ObservationMode::induced ? "induced" : "star";
}

ObservationMode parse_mode(std::string_view name) {
    if (name == "induced") return ObservationMode::induced;
    if (name == "star") return ObservationMode::star;
    throw Error(ErrorKind::InvalidParameter, "unknown observation mode '" + std::string(name) + "'");
}

namespace {

ObservationLog base_log(const Graph& g, const CategoryPartition& part, const SampleTrace& trace,
                        ObservationMode mode) {
    part.check_compatible(g);
    ObservationLog log;
    log.mode = mode;
    log.population_hint = g.node_count();
    log.category_names.assign(part.names().begin(), part.names().end());
    log.records.reserve(trace.draws.size());
    for (const auto& d : trace.draws) {
        g.check_node(d.node);
        log.records.push_back({d.node, part.label(d.node), g.degree(d.node), d.weight, {}});
    }
    return log;
}

}  // namespace

void ObservationLog::validate() const {
    std::unordered_set<NodeKey> drawn;
    for (const auto& r : records) {
        if (r.category >= category_names.size()) {
            throw Error(ErrorKind::InvalidObservationLog, "record for node " + std::to_string(r.node) +
                                                              " has unknown category " + std::to_string(r.category));
        }
        if (!(r.weight > 0.0)) {
            throw Error(ErrorKind::InvalidWeight, "record for node " + std::to_string(r.node) +
                                                      " has non-positive weight");
        }
        if (mode == ObservationMode::star) {
            std::size_t total = 0;
            for (const auto& nc : r.neighbor_categories) {
                if (nc.category >= category_names.size()) {
                    throw Error(ErrorKind::InvalidObservationLog, "neighbor histogram names unknown category " +
                                                                      std::to_string(nc.category));
                }
                total += nc.count;
            }
            if (total != r.degree) {
                throw Error(ErrorKind::InvalidObservationLog, "neighbor histogram of node " + std::to_string(r.node) +
                                                                  " sums to " + std::to_string(total) +
                                                                  " but degree is " + std::to_string(r.degree));
            }
        }
        drawn.insert(r.node);
    }
    if (mode == ObservationMode::star && !induced_edges.empty()) {
        throw Error(ErrorKind::InvalidObservationLog, "star logs carry no induced edges");
    }
    for (const auto& [u, v] : induced_edges) {
        if (!drawn.contains(u) || !drawn.contains(v)) {
            throw Error(ErrorKind::InvalidObservationLog, "induced edge {" + std::to_string(u) + "," +
                                                              std::to_string(v) + "} has an undrawn endpoint");
        }
    }
}

ObservationLog observe_induced(const Graph& g, const CategoryPartition& part, const SampleTrace& trace) {
    auto log = base_log(g, part, trace, ObservationMode::induced);
    std::vector<char> drawn(g.node_count(), 0);
    std::vector<NodeId> distinct;
    for (const auto& d : trace.draws) {
        if (!drawn[d.node]) {
            drawn[d.node] = 1;
            distinct.push_back(d.node);
        }
    }
    std::sort(distinct.begin(), distinct.end());
    for (NodeId u : distinct) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v && drawn[v]) log.induced_edges.emplace_back(u, v);
        }
    }
    return log;
}

ObservationLog observe_star(const Graph& g, const CategoryPartition& part, const SampleTrace& trace) {
    auto log = base_log(g, part, trace, ObservationMode::star);
    // Histograms are per node; repeated draws reuse the cached one.
    std::unordered_map<NodeId, std::vector<NeighborCount>> cache;
    std::vector<std::size_t> counts(part.category_count(), 0);
    for (auto& rec : log.records) {
        const auto node = static_cast<NodeId>(rec.node);
        auto [it, inserted] = cache.try_emplace(node);
        if (inserted) {
            for (NodeId v : g.neighbors(node)) ++counts[part.label(v)];
            for (CategoryId c = 0; c < counts.size(); ++c) {
                if (counts[c] > 0) {
                    it->second.push_back({c, counts[c]});
                    counts[c] = 0;
                }
            }
        }
        rec.neighbor_categories = it->second;
    }
    return log;
}

ObservationLog observe(const Graph& g, const CategoryPartition& part, const SampleTrace& trace, ObservationMode mode) {
    return mode == ObservationMode::induced ? observe_induced(g, part, trace) : observe_star(g, part, trace);
}

ObservationLog relabel_nodes(ObservationLog log, std::span<const std::uint64_t> external_ids) {
    auto map = [&](NodeKey k) {
        if (k >= external_ids.size()) {
            throw Error(ErrorKind::InvalidNode, "node " + std::to_string(k) + " has no external id");
        }
        return external_ids[k];
    };
    for (auto& r : log.records) r.node = map(r.node);
    for (auto& [u, v] : log.induced_edges) {
        u = map(u);
        v = map(v);
        if (u > v) std::swap(u, v);
    }
    std::sort(log.induced_edges.begin(), log.induced_edges.end());
    return log;
}

}  // namespace catgraph
