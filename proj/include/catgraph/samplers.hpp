#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "catgraph/graph.hpp"

namespace catgraph {

enum class SamplerKind { uis, wis, rw, mhrw, wrw };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler(std::string_view name);

// One draw of a with-replacement sample. `weight` is the unnormalized
// sampling weight w(v) ~ pi(v) used for Hansen-Hurwitz correction.
struct Draw {
    std::size_t step = 0;
    NodeId node = 0;
    double weight = 1.0;

    friend bool operator==(const Draw&, const Draw&) = default;
};

struct TraceMeta {
    SamplerKind sampler = SamplerKind::uis;
    std::uint64_t seed = 0;
    std::vector<NodeId> starts;  // one per walk; empty for independence samplers
    std::size_t burn_in = 0;
    std::size_t thin = 1;

    friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

struct SampleTrace {
    TraceMeta meta;
    std::vector<Draw> draws;

    friend bool operator==(const SampleTrace&, const SampleTrace&) = default;
};

struct WalkOptions {
    std::size_t n = 1;
    std::optional<NodeId> start;  // uniform over non-isolated nodes when absent
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
};

SampleTrace sample_uis(const Graph& g, std::size_t n, std::uint64_t seed);

// `weights` has one strictly positive finite entry per node.
SampleTrace sample_wis(const Graph& g, std::span<const double> weights, std::size_t n, std::uint64_t seed);

SampleTrace sample_rw(const Graph& g, const WalkOptions& opts);

// Proposes a uniform neighbor v of u and accepts with min(1, deg(u)/deg(v));
// a rejection repeats u as the next draw.
SampleTrace sample_mhrw(const Graph& g, const WalkOptions& opts);

// Random walk on edge weights w({u,v}) = cw(label u) + cw(label v). Draws are
// annotated with the node strength (sum of incident edge weights).
SampleTrace sample_wrw(const Graph& g, const CategoryPartition& part, std::span<const double> category_weights,
                       const WalkOptions& opts);

// Keeps draws at positions 0, T, 2T, ...
SampleTrace thin(const SampleTrace& trace, std::size_t every);

// Concatenates independent traces (e.g. several walks) into one sample.
SampleTrace concat_traces(std::span<const SampleTrace> traces);

}  // namespace catgraph
