#include "catgraph/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "catgraph/diagnostics.hpp"
#include "catgraph/error.hpp"
#include "catgraph/random.hpp"

namespace catgraph {

double nrmse(std::span<const double> estimates, double truth) {
    if (truth == 0.0) throw Error(ErrorKind::UndefinedNRMSE, "NRMSE is undefined for a true value of 0");
    if (estimates.empty()) throw Error(ErrorKind::EmptySample, "NRMSE needs at least one estimate");
    double sq = 0.0;
    for (double x : estimates) sq += (x - truth) * (x - truth);
    return std::sqrt(sq / static_cast<double>(estimates.size())) / truth;
}

std::string_view to_string(QuantityKind kind) noexcept {
    switch (kind) {
        case QuantityKind::size: return "size";
        case QuantityKind::weight: return "weight";
        case QuantityKind::weight_low: return "weight_low";
        case QuantityKind::weight_high: return "weight_high";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (replicates < 2) throw Error(ErrorKind::InvalidParameter, "replicates must be at least 2");
    if (sample_sizes.empty()) throw Error(ErrorKind::InvalidParameter, "sample_sizes is empty");
    for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
        if (sample_sizes[i] == 0 || (i > 0 && sample_sizes[i] <= sample_sizes[i - 1])) {
            throw Error(ErrorKind::InvalidParameter, "sample_sizes must be positive and strictly increasing");
        }
    }
    if (thin == 0) throw Error(ErrorKind::InvalidThinning, "thin must be at least 1");
    for (double p : probe_percentiles) {
        if (!(p >= 0.0 && p <= 100.0)) throw Error(ErrorKind::InvalidParameter, "probe percentile outside [0,100]");
    }
    if (samplers.empty() || modes.empty() || size_estimators.empty() || weight_estimators.empty()) {
        throw Error(ErrorKind::InvalidParameter, "samplers, modes and estimator lists must be nonempty");
    }
}

std::string CellResult::estimator_label() const {
    if (!weight_estimator) return std::string(to_string(size_estimator));
    if (*weight_estimator == WeightEstimator::induced) return "induced";
    return "star(size=" + std::string(to_string(size_estimator)) + ")";
}

const CellResult* ExperimentReport::find(QuantityKind quantity, SamplerKind sampler, ObservationMode mode,
                                         std::string_view estimator, std::size_t n) const {
    for (const auto& c : cells) {
        if (c.quantity == quantity && c.sampler == sampler && c.mode == mode && c.n == n &&
            c.estimator_label() == estimator) {
            return &c;
        }
    }
    return nullptr;
}

double percentile_sorted(std::span<const double> sorted, double pct) {
    if (sorted.empty()) throw Error(ErrorKind::EmptySample, "percentile of an empty sample");
    const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

namespace {

struct Combo {
    ObservationMode mode;
    SizeEstimator size;
    WeightEstimator weight;
};

bool compatible(const Combo& c) {
    const bool star = c.mode == ObservationMode::star;
    if (c.size == SizeEstimator::star && !star) return false;
    return star == (c.weight == WeightEstimator::star);
}

struct Probe {
    QuantityKind kind;
    CategoryPair pair;
};

std::vector<Probe> choose_probes(const CategoryGraph& truth, std::span<const double> percentiles) {
    std::vector<std::pair<double, CategoryPair>> ranked;
    for (const auto& [pair, cut] : truth.cuts) ranked.emplace_back(cut.weight, pair);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Probe> probes;
    if (ranked.empty()) return probes;
    for (double p : percentiles) {
        const auto idx = static_cast<std::size_t>(std::lround(p / 100.0 * static_cast<double>(ranked.size() - 1)));
        probes.push_back({p <= 50.0 ? QuantityKind::weight_low : QuantityKind::weight_high, ranked[idx].second});
    }
    return probes;
}

SampleTrace draw_sample(const ExperimentConfig& cfg, SamplerKind sampler, const Graph& g,
                        const CategoryPartition& part, std::span<const double> category_weights,
                        std::span<const double> degree_weights, std::size_t n, std::uint64_t seed) {
    const std::size_t raw = n * cfg.thin;
    WalkOptions walk{raw, std::nullopt, cfg.burn_in, seed};
    SampleTrace trace;
    switch (sampler) {
        case SamplerKind::uis: trace = sample_uis(g, raw, seed); break;
        case SamplerKind::wis: trace = sample_wis(g, degree_weights, raw, seed); break;
        case SamplerKind::rw: trace = sample_rw(g, walk); break;
        case SamplerKind::mhrw: trace = sample_mhrw(g, walk); break;
        case SamplerKind::wrw: trace = sample_wrw(g, part, category_weights, walk); break;
    }
    return cfg.thin > 1 ? thin(trace, cfg.thin) : trace;
}

std::string pair_label(const CategoryGraph& truth, const CategoryPair& p) {
    return truth.names[p.first] + "|" + truth.names[p.second];
}

void summarize(CellResult& cell) {
    cell.cdf.clear();
    for (const auto& e : cell.errors) cell.cdf.push_back(e.nrmse);
    std::sort(cell.cdf.begin(), cell.cdf.end());
    if (cell.cdf.empty()) return;
    cell.median = percentile_sorted(cell.cdf, 50.0);
    cell.p25 = percentile_sorted(cell.cdf, 25.0);
    cell.p75 = percentile_sorted(cell.cdf, 75.0);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Graph& g, const CategoryPartition& part) {
    cfg.validate();
    part.check_compatible(g);
    const auto truth = exact_category_graph(g, part);
    const auto probes = choose_probes(truth, cfg.probe_percentiles);

    std::vector<double> category_weights = cfg.category_weights;
    if (category_weights.empty()) category_weights.assign(part.category_count(), 1.0);
    std::vector<double> degree_weights;
    if (std::find(cfg.samplers.begin(), cfg.samplers.end(), SamplerKind::wis) != cfg.samplers.end()) {
        for (NodeId v = 0; v < g.node_count(); ++v) degree_weights.push_back(static_cast<double>(g.degree(v)));
    }

    std::vector<Combo> combos;
    for (auto mode : cfg.modes) {
        for (auto se : cfg.size_estimators) {
            for (auto we : cfg.weight_estimators) {
                Combo c{mode, se, we};
                if (compatible(c)) {
                    combos.push_back(c);
                } else {
                    warn("skipping cell mode=" + std::string(to_string(mode)) + " size=" +
                         std::string(to_string(se)) + " weight=" + std::string(to_string(we)) +
                         ": estimator needs a different observation mode");
                }
            }
        }
    }

    // estimates[((s*|n| + j)*R + r)*|combos| + c]
    const std::size_t n_count = cfg.sample_sizes.size();
    const std::size_t reps = cfg.replicates;
    std::vector<CategoryGraphEstimate> estimates(cfg.samplers.size() * n_count * reps * combos.size());
    const std::size_t tasks = cfg.samplers.size() * n_count * reps;

    auto run_task = [&](std::size_t task) {
        const std::size_t r = task % reps;
        const std::size_t j = (task / reps) % n_count;
        const std::size_t s = task / (reps * n_count);
        const auto sampler = cfg.samplers[s];
        const std::uint64_t seed =
            derive_seed(derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(sampler)), cfg.sample_sizes[j]), r);
        const auto trace = draw_sample(cfg, sampler, g, part, category_weights, degree_weights, cfg.sample_sizes[j], seed);
        std::optional<ObservationLog> induced;
        std::optional<ObservationLog> star;
        for (std::size_t c = 0; c < combos.size(); ++c) {
            auto& log = combos[c].mode == ObservationMode::induced ? induced : star;
            if (!log) log = observe(g, part, trace, combos[c].mode);
            estimates[task * combos.size() + c] = estimate_category_graph(
                *log, Population::of(g.node_count()), {combos[c].size, combos[c].weight, false});
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, tasks));
    if (workers == 1) {
        for (std::size_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks; t = next++) {
                    try {
                        run_task(t);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    ExperimentReport report;
    for (std::size_t s = 0; s < cfg.samplers.size(); ++s) {
        for (std::size_t j = 0; j < n_count; ++j) {
            auto replicate = [&](std::size_t r, std::size_t c) -> const CategoryGraphEstimate& {
                return estimates[((s * n_count + j) * reps + r) * combos.size() + c];
            };
            std::vector<std::pair<ObservationMode, SizeEstimator>> size_rows_done;
            for (std::size_t c = 0; c < combos.size(); ++c) {
                const auto& combo = combos[c];
                CellResult base;
                base.sampler = cfg.samplers[s];
                base.mode = combo.mode;
                base.size_estimator = combo.size;
                base.n = cfg.sample_sizes[j];

                const auto size_key = std::make_pair(combo.mode, combo.size);
                if (std::find(size_rows_done.begin(), size_rows_done.end(), size_key) == size_rows_done.end()) {
                    size_rows_done.push_back(size_key);
                    CellResult cell = base;
                    cell.quantity = QuantityKind::size;
                    for (CategoryId a = 0; a < truth.sizes.size(); ++a) {
                        if (truth.sizes[a] == 0) continue;
                        std::vector<double> xs;
                        for (std::size_t r = 0; r < reps; ++r) {
                            if (const auto& v = replicate(r, c).sizes[a]) xs.push_back(*v);
                        }
                        if (xs.size() < reps) {
                            ++cell.excluded;
                            continue;
                        }
                        cell.errors.push_back({truth.names[a], nrmse(xs, static_cast<double>(truth.sizes[a]))});
                    }
                    summarize(cell);
                    report.cells.push_back(std::move(cell));
                }

                auto weight_error = [&](const CategoryPair& pair, double true_weight) -> std::optional<double> {
                    std::vector<double> xs;
                    for (std::size_t r = 0; r < reps; ++r) {
                        const auto& w = replicate(r, c).weights;
                        if (auto it = w.find(pair); it != w.end()) xs.push_back(it->second);
                    }
                    if (xs.size() < reps) return std::nullopt;
                    return nrmse(xs, true_weight);
                };

                CellResult cell = base;
                cell.quantity = QuantityKind::weight;
                cell.weight_estimator = combo.weight;
                for (const auto& [pair, cut] : truth.cuts) {
                    if (auto e = weight_error(pair, cut.weight)) {
                        cell.errors.push_back({pair_label(truth, pair), *e});
                    } else {
                        ++cell.excluded;
                    }
                }
                summarize(cell);
                report.cells.push_back(std::move(cell));

                for (const auto& probe : probes) {
                    CellResult pc = base;
                    pc.quantity = probe.kind;
                    pc.weight_estimator = combo.weight;
                    if (auto e = weight_error(probe.pair, truth.cuts.at(probe.pair).weight)) {
                        pc.errors.push_back({pair_label(truth, probe.pair), *e});
                    } else {
                        pc.excluded = 1;
                    }
                    summarize(pc);
                    report.cells.push_back(std::move(pc));
                }
            }
        }
    }
    return report;
}

}  // namespace catgraph
