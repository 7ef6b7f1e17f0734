#include "catgraph/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "catgraph/diagnostics.hpp"
#include "catgraph/error.hpp"
#include "catgraph/random.hpp"

namespace catgraph {

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
        case SamplerKind::uis: return "uis";
        case SamplerKind::wis: return "wis";
        case SamplerKind::rw: return "rw";
        case SamplerKind::mhrw: return "mhrw";
        case SamplerKind::wrw: return "wrw";
    }
    return "?";
}

SamplerKind parse_sampler(std::string_view name) {
    for (auto kind : {SamplerKind::uis, SamplerKind::wis, SamplerKind::rw, SamplerKind::mhrw, SamplerKind::wrw}) {
        if (to_string(kind) == name) return kind;
    }
    throw Error(ErrorKind::InvalidParameter, "unknown sampler '" + std::string(name) + "'");
}

namespace {

void require_draws(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidParameter, "sample size n must be at least 1");
}

void require_nonempty(const Graph& g) {
    if (g.node_count() == 0) throw Error(ErrorKind::EmptyGraph, "cannot sample from an empty graph");
}

NodeId resolve_start(const Graph& g, const WalkOptions& opts, Rng& rng) {
    require_nonempty(g);
    if (opts.start) {
        if (g.degree(*opts.start) == 0) {
            throw Error(ErrorKind::IsolatedStartNode, "start node " + std::to_string(*opts.start) + " has no neighbors");
        }
        return *opts.start;
    }
    if (g.edge_count() == 0) {
        throw Error(ErrorKind::IsolatedStartNode, "graph has no edges, every start node is isolated");
    }
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count() - 1));
    NodeId v = pick(rng);
    while (g.degree(v) == 0) v = pick(rng);
    return v;
}

void check_coverage(const Graph& g, NodeId start) {
    const auto reach = component_of(g, start).size();
    if (reach < g.node_count()) {
        warn("walk from node " + std::to_string(start) + " can reach only " + std::to_string(reach) + " of " +
             std::to_string(g.node_count()) + " nodes");
    }
}

TraceMeta walk_meta(SamplerKind kind, const WalkOptions& opts, NodeId start) {
    TraceMeta meta;
    meta.sampler = kind;
    meta.seed = opts.seed;
    meta.starts = {start};
    meta.burn_in = opts.burn_in;
    return meta;
}

NodeId uniform_neighbor(const Graph& g, NodeId u, Rng& rng) {
    auto nbrs = g.neighbors(u);
    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
    return nbrs[pick(rng)];
}

}  // namespace

SampleTrace sample_uis(const Graph& g, std::size_t n, std::uint64_t seed) {
    require_nonempty(g);
    require_draws(n);
    Rng rng(seed);
    SampleTrace trace;
    trace.meta.sampler = SamplerKind::uis;
    trace.meta.seed = seed;
    trace.draws.reserve(n);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count() - 1));
    for (std::size_t i = 0; i < n; ++i) trace.draws.push_back({i, pick(rng), 1.0});
    return trace;
}

SampleTrace sample_wis(const Graph& g, std::span<const double> weights, std::size_t n, std::uint64_t seed) {
    require_nonempty(g);
    require_draws(n);
    if (weights.size() != g.node_count()) {
        throw Error(ErrorKind::InvalidWeight, "expected " + std::to_string(g.node_count()) + " node weights, got " +
                                                  std::to_string(weights.size()));
    }
    for (std::size_t v = 0; v < weights.size(); ++v) {
        if (!(weights[v] > 0.0) || !std::isfinite(weights[v])) {
            throw Error(ErrorKind::InvalidWeight,
                        "weight of node " + std::to_string(v) + " must be positive and finite");
        }
    }
    Rng rng(seed);
    std::discrete_distribution<NodeId> pick(weights.begin(), weights.end());
    SampleTrace trace;
    trace.meta.sampler = SamplerKind::wis;
    trace.meta.seed = seed;
    trace.draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId v = pick(rng);
        trace.draws.push_back({i, v, weights[v]});
    }
    return trace;
}

SampleTrace sample_rw(const Graph& g, const WalkOptions& opts) {
    require_draws(opts.n);
    Rng rng(opts.seed);
    NodeId current = resolve_start(g, opts, rng);
    check_coverage(g, current);
    SampleTrace trace{walk_meta(SamplerKind::rw, opts, current), {}};
    trace.draws.reserve(opts.n);
    for (std::size_t step = 0; step < opts.burn_in + opts.n; ++step) {
        current = uniform_neighbor(g, current, rng);
        if (step >= opts.burn_in) {
            trace.draws.push_back({step - opts.burn_in, current, static_cast<double>(g.degree(current))});
        }
    }
    return trace;
}

SampleTrace sample_mhrw(const Graph& g, const WalkOptions& opts) {
    require_draws(opts.n);
    Rng rng(opts.seed);
    NodeId current = resolve_start(g, opts, rng);
    check_coverage(g, current);
    SampleTrace trace{walk_meta(SamplerKind::mhrw, opts, current), {}};
    trace.draws.reserve(opts.n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t step = 0; step < opts.burn_in + opts.n; ++step) {
        const NodeId proposal = uniform_neighbor(g, current, rng);
        const double ratio = static_cast<double>(g.degree(current)) / static_cast<double>(g.degree(proposal));
        // Always consume a uniform so the stream layout does not depend on the ratio.
        const double u = coin(rng);
        if (ratio >= 1.0 || u < ratio) current = proposal;
        if (step >= opts.burn_in) trace.draws.push_back({step - opts.burn_in, current, 1.0});
    }
    return trace;
}

SampleTrace sample_wrw(const Graph& g, const CategoryPartition& part, std::span<const double> category_weights,
                       const WalkOptions& opts) {
    require_draws(opts.n);
    part.check_compatible(g);
    if (category_weights.size() != part.category_count()) {
        throw Error(ErrorKind::InvalidWeight, "expected " + std::to_string(part.category_count()) +
                                                  " category weights, got " + std::to_string(category_weights.size()));
    }
    for (double w : category_weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorKind::InvalidWeight, "category weights must be positive and finite");
        }
    }

    // Cumulative incident edge weights, laid out like the adjacency.
    std::vector<std::size_t> offsets(g.node_count() + 1, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) offsets[v + 1] = offsets[v] + g.degree(v);
    std::vector<double> cumulative(offsets.back());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double running = 0.0;
        auto nbrs = g.neighbors(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            running += category_weights[part.label(u)] + category_weights[part.label(nbrs[j])];
            cumulative[offsets[u] + j] = running;
        }
    }
    auto strength = [&](NodeId v) { return offsets[v + 1] > offsets[v] ? cumulative[offsets[v + 1] - 1] : 0.0; };

    Rng rng(opts.seed);
    NodeId current = resolve_start(g, opts, rng);
    check_coverage(g, current);
    SampleTrace trace{walk_meta(SamplerKind::wrw, opts, current), {}};
    trace.draws.reserve(opts.n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t step = 0; step < opts.burn_in + opts.n; ++step) {
        const auto first = cumulative.begin() + static_cast<std::ptrdiff_t>(offsets[current]);
        const auto last = cumulative.begin() + static_cast<std::ptrdiff_t>(offsets[current + 1]);
        const double target = unit(rng) * strength(current);
        auto it = std::upper_bound(first, last, target);
        if (it == last) --it;
        current = g.neighbors(current)[static_cast<std::size_t>(it - first)];
        if (step >= opts.burn_in) trace.draws.push_back({step - opts.burn_in, current, strength(current)});
    }
    return trace;
}

SampleTrace thin(const SampleTrace& trace, std::size_t every) {
    if (every == 0) throw Error(ErrorKind::InvalidThinning, "thinning interval must be at least 1");
    SampleTrace out;
    out.meta = trace.meta;
    out.meta.thin = trace.meta.thin * every;
    for (std::size_t i = 0; i < trace.draws.size(); i += every) out.draws.push_back(trace.draws[i]);
    return out;
}

SampleTrace concat_traces(std::span<const SampleTrace> traces) {
    SampleTrace out;
    if (traces.empty()) return out;
    out.meta = traces.front().meta;
    out.meta.starts.clear();
    for (const auto& t : traces) {
        out.meta.starts.insert(out.meta.starts.end(), t.meta.starts.begin(), t.meta.starts.end());
        for (auto d : t.draws) {
            d.step = out.draws.size();
            out.draws.push_back(d);
        }
    }
    return out;
}

}  // namespace catgraph
