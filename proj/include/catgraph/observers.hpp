#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catgraph/graph.hpp"
#include "catgraph/samplers.hpp"

namespace catgraph {

enum class ObservationMode { induced, star };

std::string_view to_string(ObservationMode mode) noexcept;
ObservationMode parse_mode(std::string_view name);

// Node identifiers inside a log are opaque keys: estimators only use them to
// match induced edges to records, so they may be internal ids or the
// external ids of a loaded file.
using NodeKey = std::uint64_t;

struct NeighborCount {
    CategoryId category = 0;
    std::size_t count = 0;

    friend bool operator==(const NeighborCount&, const NeighborCount&) = default;
};

struct ObservationRecord {
    NodeKey node = 0;
    CategoryId category = 0;
    std::size_t degree = 0;
    double weight = 1.0;
    // Star mode only: neighbor-category histogram, sorted by category, no zero counts.
    std::vector<NeighborCount> neighbor_categories;

    friend bool operator==(const ObservationRecord&, const ObservationRecord&) = default;
};

// Everything the measurement reveals about a sample; the only input the
// estimators read.
struct ObservationLog {
    ObservationMode mode = ObservationMode::induced;
    std::optional<std::size_t> population_hint;
    std::vector<std::string> category_names;
    std::vector<ObservationRecord> records;  // one per draw, duplicates kept
    // Induced mode only: distinct edges among drawn nodes, (u, v) with u < v, sorted.
    std::vector<std::pair<NodeKey, NodeKey>> induced_edges;

    std::size_t category_count() const noexcept { return category_names.size(); }

    // Throws InvalidObservationLog when a structural invariant is violated.
    void validate() const;

    friend bool operator==(const ObservationLog&, const ObservationLog&) = default;
};

ObservationLog observe_induced(const Graph& g, const CategoryPartition& part, const SampleTrace& trace);
ObservationLog observe_star(const Graph& g, const CategoryPartition& part, const SampleTrace& trace);
ObservationLog observe(const Graph& g, const CategoryPartition& part, const SampleTrace& trace, ObservationMode mode);

// Rewrites node keys through `external_ids` (indexed by internal id).
ObservationLog relabel_nodes(ObservationLog log, std::span<const std::uint64_t> external_ids);

}  // namespace catgraph
