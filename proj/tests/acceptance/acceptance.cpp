// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "catgraph/diagnostics.hpp"
#include "catgraph/estimators.hpp"
#include "catgraph/evaluation.hpp"
#include "catgraph/generators.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/io.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/samplers.hpp"

using namespace catgraph;
namespace fs = std::filesystem;

namespace {

constexpr double kFullSampleTol = 1e-9;
constexpr double kConsistencyTargetNrmse = 0.05;
constexpr double kStationaryTol = 0.02;
constexpr double kHansenHurwitzTol = 0.01;
constexpr double kScaleTol = 1e-12;  // relative; see README "Numerical notes"
constexpr double kGeneratorSeconds = 1.0;
constexpr double kConsistencySeconds = 300.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int precision = 4) {
    std::ostringstream ss;
    ss.precision(precision);
    ss << x;
    return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SampleTrace full_trace(const Graph& g) {
    SampleTrace t;
    for (NodeId v = 0; v < g.node_count(); ++v) t.draws.push_back({v, v, 1.0});
    return t;
}

// --- 1 -------------------------------------------------------------------

Outcome generator_exactness() {
    SyntheticParams p;
    p.category_sizes = {20, 30, 40, 60, 80, 100, 120, 150, 180, 220};
    p.k = 10;
    p.seed = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const auto sg = synthetic_graph(p);
    const double secs = seconds_since(t0);
    const bool ok = sg.graph.node_count() == 1000 && sg.graph.edge_count() == 6000 && secs < kGeneratorSeconds;
    return {ok, "|V|=" + std::to_string(sg.graph.node_count()) + " |E|=" + std::to_string(sg.graph.edge_count()) +
                    " in " + fmt(secs, 3) + "s"};
}

// --- 2 -------------------------------------------------------------------

Outcome figure_one_oracle() {
    // white {0,1,2}, gray {3,4}, black {5,6,7}; cuts white-black 3, gray-black 1, white-gray 4.
    const std::vector<Edge> edges{{0, 5}, {1, 6}, {2, 7}, {3, 5}, {0, 3}, {1, 3},
                                  {1, 4}, {2, 4}, {0, 1}, {5, 6}, {6, 7}, {3, 4}};
    const auto g = Graph::from_edges(8, edges);
    const CategoryPartition part({0, 0, 0, 1, 1, 2, 2, 2}, {"white", "gray", "black"});
    const auto cg = exact_category_graph(g, part);
    const double wb = cg.weight(0, 2), gb = cg.weight(1, 2), wg = cg.weight(0, 1);
    const bool ok = wb == 3.0 / 9.0 && gb == 1.0 / 6.0 && wg == 4.0 / 6.0 && cg.cuts.size() == 3;
    return {ok, "w(white,black)=" + fmt(wb, 17) + " w(gray,black)=" + fmt(gb, 17) + " w(white,gray)=" + fmt(wg, 17)};
}

// --- 3 -------------------------------------------------------------------

double worst_error(const CategoryGraph& truth, const std::vector<std::optional<double>>& sizes,
                   const std::map<CategoryPair, double>& weights) {
    double worst = 0.0;
    for (CategoryId a = 0; a < truth.sizes.size(); ++a) {
        if (!sizes[a]) return INFINITY;
        worst = std::max(worst, rel_err(*sizes[a], static_cast<double>(truth.sizes[a])));
    }
    for (const auto& [pair, cut] : truth.cuts) {
        auto it = weights.find(pair);
        if (it == weights.end()) return INFINITY;
        worst = std::max(worst, rel_err(it->second, cut.weight));
    }
    for (const auto& [pair, w] : weights) {
        if (!truth.cuts.count(pair) && w != 0.0) return INFINITY;
    }
    return worst;
}

Outcome full_sample_exactness() {
    SyntheticParams p;
    p.category_sizes = {40, 60, 100, 150, 250};
    p.k = 6;
    p.alpha = 0.5;
    p.seed = 8;
    const auto sg = synthetic_graph(p);
    const auto truth = exact_category_graph(sg.graph, sg.partition);
    const auto trace = full_trace(sg.graph);
    const auto induced = observe_induced(sg.graph, sg.partition, trace);
    const auto star = observe_star(sg.graph, sg.partition, trace);
    const auto pop = Population::of(sg.graph.node_count());

    const auto ii = estimate_category_graph(induced, pop, {SizeEstimator::induced, WeightEstimator::induced, false});
    const auto si = estimate_category_graph(star, pop, {SizeEstimator::induced, WeightEstimator::star, false});
    const auto ss = estimate_category_graph(star, pop, {SizeEstimator::star, WeightEstimator::star, false});
    // Star-log sizes paired with induced-log weights from the same full trace.
    const auto star_sizes = estimate_category_graph(star, pop, {SizeEstimator::star, WeightEstimator::star, false});

    const std::vector<std::pair<std::string, double>> errs{
        {"size=induced/weight=induced", worst_error(truth, ii.sizes, ii.weights)},
        {"size=induced/weight=star", worst_error(truth, si.sizes, si.weights)},
        {"size=star/weight=star", worst_error(truth, ss.sizes, ss.weights)},
        {"size=star/weight=induced", worst_error(truth, star_sizes.sizes, ii.weights)},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [name, e] : errs) {
        ok = ok && e < kFullSampleTol;
        detail += name + " max_rel_err=" + fmt(e, 3) + "; ";
    }
    return {ok, detail};
}

// --- 4, 5, 9 ---------------------------------------------------------------

struct ConsistencyRun {
    ExperimentReport report;
    double seconds = 0.0;
};

const ConsistencyRun& consistency_run() {
    static const ConsistencyRun run = [] {
        SyntheticParams p;
        p.category_sizes = {50, 100, 150, 200, 300, 400, 500, 800, 1000, 1500};
        p.k = 10;
        p.alpha = 0.5;
        p.seed = 2024;
        ExperimentConfig cfg;
        cfg.samplers = {SamplerKind::uis, SamplerKind::wis, SamplerKind::rw, SamplerKind::mhrw, SamplerKind::wrw};
        cfg.sample_sizes = {500, 5000, 50000};
        cfg.replicates = 30;
        cfg.seed = 99;
        cfg.threads = std::max<long>(1, sysconf(_SC_NPROCESSORS_ONLN));
        const auto t0 = std::chrono::steady_clock::now();
        auto previous = set_warning_handler([](std::string_view) {});
        const auto sg = synthetic_graph(p);
        ConsistencyRun out{run_experiment(cfg, sg.graph, sg.partition), 0.0};
        set_warning_handler(previous);
        out.seconds = seconds_since(t0);
        return out;
    }();
    return run;
}

std::string cell_name(const CellResult& c) {
    return std::string(to_string(c.quantity)) + "/" + std::string(to_string(c.sampler)) + "/" +
           std::string(to_string(c.mode)) + "/" + c.estimator_label();
}

Outcome consistency_suite() {
    const auto& run = consistency_run();
    const std::vector<std::size_t> ns{500, 5000, 50000};
    std::map<std::string, std::map<std::size_t, double>> medians;
    std::map<std::string, bool> is_probe;
    for (const auto& c : run.report.cells) {
        medians[cell_name(c)][c.n] = c.median.value_or(NAN);
        is_probe[cell_name(c)] = c.quantity == QuantityKind::weight_low || c.quantity == QuantityKind::weight_high;
    }
    bool ok = run.seconds < kConsistencySeconds;
    std::string bad;
    std::size_t probes_undefined = 0;
    for (const auto& [name, by_n] : medians) {
        bool mono = by_n.size() == ns.size();
        // A probe edge missing from some replicate at small n has no median there;
        // compare it from the first n where it is defined.
        std::size_t first = 0;
        while (mono && is_probe[name] && first < ns.size() && std::isnan(by_n.at(ns[first]))) ++first;
        probes_undefined += first > 0;
        for (std::size_t i = first; mono && i < ns.size(); ++i) {
            mono = !std::isnan(by_n.at(ns[i])) && (i == first || by_n.at(ns[i]) <= by_n.at(ns[i - 1]));
        }
        if (!mono) {
            ok = false;
            bad += " " + name + "[" + fmt(by_n.at(500)) + "," + fmt(by_n.at(5000)) + "," + fmt(by_n.at(50000)) + "]";
        }
    }
    const auto* uis = run.report.find(QuantityKind::size, SamplerKind::uis, ObservationMode::induced, "induced", 50000);
    const double uis_median = uis && uis->median ? *uis->median : INFINITY;
    ok = ok && uis_median < kConsistencyTargetNrmse;
    std::string detail = std::to_string(medians.size()) + " cells non-increasing" +
                         " (" + std::to_string(probes_undefined) + " probe cells undefined at n=500)" + (bad.empty() ? "" : " except" + bad) +
                         "; UIS induced size median NRMSE at n=50000: " + fmt(uis_median) + "; runtime " +
                         fmt(run.seconds, 3) + "s";
    return {ok, detail};
}

Outcome star_beats_induced() {
    const auto& r = consistency_run().report;
    bool ok = true;
    std::string detail;
    for (auto s : {SamplerKind::uis, SamplerKind::rw, SamplerKind::wrw}) {
        const auto* ind = r.find(QuantityKind::weight, s, ObservationMode::induced, "induced", 5000);
        const double mi = ind && ind->median ? *ind->median : INFINITY;
        detail += std::string(to_string(s)) + ": induced=" + fmt(mi);
        for (const char* label : {"star(size=induced)", "star(size=star)"}) {
            const auto* st = r.find(QuantityKind::weight, s, ObservationMode::star, label, 5000);
            const double ms = st && st->median ? *st->median : INFINITY;
            ok = ok && ms < mi;
            detail += std::string(" ") + label + "=" + fmt(ms);
        }
        detail += "; ";
    }
    return {ok, detail};
}

Outcome sampler_ordering() {
    const auto& r = consistency_run().report;
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<ObservationMode, const char*>> rows{
        {ObservationMode::induced, "induced"}, {ObservationMode::star, "induced"}, {ObservationMode::star, "star"}};
    for (const auto& [mode, est] : rows) {
        double m[3];
        const SamplerKind order[3] = {SamplerKind::uis, SamplerKind::rw, SamplerKind::mhrw};
        for (int i = 0; i < 3; ++i) {
            const auto* c = r.find(QuantityKind::size, order[i], mode, est, 5000);
            m[i] = c && c->median ? *c->median : INFINITY;
        }
        ok = ok && m[0] <= m[1] && m[1] <= m[2];
        detail += std::string(to_string(mode)) + "/" + est + ": uis=" + fmt(m[0]) + " rw=" + fmt(m[1]) +
                  " mhrw=" + fmt(m[2]) + "; ";
    }
    return {ok, detail};
}

// --- 6 -------------------------------------------------------------------

Outcome stationary_distributions() {
    const auto g = Graph::from_edges(
        8, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {2, 5}, {1, 6}});
    const CategoryPartition part({0, 0, 0, 1, 1, 1, 2, 2}, {"a", "b", "c"});
    constexpr std::size_t steps = 1'000'000;
    auto freq = [&](const SampleTrace& t) {
        std::vector<double> f(g.node_count(), 0.0);
        for (const auto& d : t.draws) f[d.node] += 1.0;
        for (auto& x : f) x /= static_cast<double>(t.draws.size());
        return f;
    };
    WalkOptions opts;
    opts.n = steps;
    opts.burn_in = 1000;
    opts.seed = 11;
    const auto rw = freq(sample_rw(g, opts));
    opts.seed = 12;
    const auto mh = freq(sample_mhrw(g, opts));
    opts.seed = 13;
    const std::vector<double> equal(3, 1.0);
    const auto wrw = freq(sample_wrw(g, part, equal, opts));

    const double vol = 2.0 * static_cast<double>(g.edge_count());
    double e_rw = 0.0, e_mh = 0.0, e_wrw = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double pi = static_cast<double>(g.degree(v)) / vol;
        e_rw = std::max(e_rw, rel_err(rw[v], pi));
        e_mh = std::max(e_mh, rel_err(mh[v], 1.0 / 8.0));
        e_wrw = std::max(e_wrw, rel_err(wrw[v], pi));
    }
    const bool ok = e_rw < kStationaryTol && e_mh < kStationaryTol && e_wrw < kStationaryTol;
    return {ok, "max per-node relative error: RW " + fmt(e_rw, 3) + ", MHRW " + fmt(e_mh, 3) + ", WRW " + fmt(e_wrw, 3)};
}

// --- 7 -------------------------------------------------------------------

Outcome hansen_hurwitz() {
    // Category A = {0, 1, 2} with degrees 1, 2 and 5.
    const auto g = Graph::from_edges(10, std::vector<Edge>{{0, 3},
                                                           {1, 2},
                                                           {1, 4},
                                                           {2, 3},
                                                           {2, 5},
                                                           {2, 6},
                                                           {2, 7},
                                                           {3, 4},
                                                           {4, 5},
                                                           {5, 6},
                                                           {6, 7},
                                                           {7, 8},
                                                           {8, 9},
                                                           {3, 9}});
    const CategoryPartition part({0, 0, 0, 1, 1, 1, 1, 2, 2, 2}, {"A", "B", "C"});
    std::vector<double> deg;
    for (NodeId v = 0; v < g.node_count(); ++v) deg.push_back(static_cast<double>(g.degree(v)));
    constexpr std::size_t runs = 100'000;
    constexpr std::size_t n = 1000;
    double total = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
        const auto log = observe_induced(g, part, sample_wis(g, deg, n, derive_seed(7, r)));
        const auto est = estimate_category_graph(log, Population::of(10), {SizeEstimator::induced, WeightEstimator::induced, false});
        total += *est.sizes[0];
    }
    const double mean = total / static_cast<double>(runs);
    const double e = rel_err(mean, 3.0);
    return {e < kHansenHurwitzTol,
            "mean |A| estimate over " + std::to_string(runs) + " runs of n=" + std::to_string(n) + ": " + fmt(mean, 6) +
                " (true 3, rel err " + fmt(e, 3) + ")"};
}

// --- 8 -------------------------------------------------------------------

bool bit_equal(const CategoryGraphEstimate& a, const CategoryGraphEstimate& b) {
    return a.sizes == b.sizes && a.weights == b.weights;
}

double max_rel_diff(const CategoryGraphEstimate& a, const CategoryGraphEstimate& b) {
    if (a.weights.size() != b.weights.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.sizes.size(); ++i) {
        if (a.sizes[i].has_value() != b.sizes[i].has_value()) return INFINITY;
        if (a.sizes[i]) worst = std::max(worst, rel_err(*b.sizes[i], *a.sizes[i]));
    }
    for (const auto& [pair, w] : a.weights) {
        auto it = b.weights.find(pair);
        if (it == b.weights.end()) return INFINITY;
        worst = std::max(worst, w == 0.0 ? std::abs(it->second) : rel_err(it->second, w));
    }
    return worst;
}

Outcome uniform_reduction_and_scale() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> wdist(0.5, 8.0);
    std::size_t bit_exact = 0;
    double worst_scale = 0.0;
    constexpr std::size_t logs = 100;
    const std::vector<EstimateOptions> combos{{SizeEstimator::induced, WeightEstimator::induced, false},
                                              {SizeEstimator::induced, WeightEstimator::star, false},
                                              {SizeEstimator::star, WeightEstimator::star, false}};
    for (std::size_t i = 0; i < logs; ++i) {
        SyntheticParams p;
        p.category_sizes = {10, 20, 30};
        p.k = 4;
        p.alpha = 0.5;
        p.seed = 100 + i;
        const auto sg = synthetic_graph(p);
        const auto uniform = sample_uis(sg.graph, 80, i);
        auto constant = uniform;
        const double c = wdist(rng);
        for (auto& d : constant.draws) d.weight = c;
        auto varied = uniform;
        for (auto& d : varied.draws) d.weight = wdist(rng);
        auto scaled = varied;
        for (auto& d : scaled.draws) d.weight *= 7.3;

        bool all_equal = true;
        for (const auto& opts : combos) {
            const auto mode = opts.weight_estimator == WeightEstimator::induced ? ObservationMode::induced
                                                                                : ObservationMode::star;
            for (auto pop : {Population::of(60), Population::proportional()}) {
                const auto eu = estimate_category_graph(observe(sg.graph, sg.partition, uniform, mode), pop, opts);
                const auto ec = estimate_category_graph(observe(sg.graph, sg.partition, constant, mode), pop, opts);
                all_equal = all_equal && bit_equal(eu, ec);
                const auto ev = estimate_category_graph(observe(sg.graph, sg.partition, varied, mode), pop, opts);
                const auto es = estimate_category_graph(observe(sg.graph, sg.partition, scaled, mode), pop, opts);
                worst_scale = std::max(worst_scale, max_rel_diff(ev, es));
            }
        }
        bit_exact += all_equal;
    }
    const bool ok = bit_exact == logs && worst_scale <= kScaleTol;
    return {ok, std::to_string(bit_exact) + "/" + std::to_string(logs) +
                    " logs bit-identical under constant weights; max relative change under x7.3 scaling " +
                    fmt(worst_scale, 3) + " (tolerance " + fmt(kScaleTol, 3) + ")"};
}

// --- 10 ------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_chain(const fs::path& dir) {
    fs::create_directories(dir);
    const std::string cli = std::string("\"") + CATGRAPH_CLI_PATH + "\"";
    auto path = [&](const char* name) { return "\"" + (dir / name).string() + "\""; };
    {
        std::ofstream(dir / "exp.json") << R"({
            "graph": {"edges": "edges.tsv", "categories": "cats.tsv"},
            "samplers": ["uis", "rw", "wrw"], "sample_sizes": [100, 400], "replicates": 5, "seed": 3, "threads": 2
        })";
    }
    const std::string graph = " --edges " + path("edges.tsv") + " --categories " + path("cats.tsv");
    const std::vector<std::string> cmds{
        cli + " generate --sizes 40,80,120 --k 6 --alpha 0.4 --seed 12" + graph,
        cli + " sample" + graph + " --sampler rw --n 500 --walks 2 --thin 2 --burn-in 10 --seed 77 -o " + path("trace.jsonl"),
        cli + " observe" + graph + " --trace " + path("trace.jsonl") + " --mode star -o " + path("log.jsonl"),
        cli + " estimate --log " + path("log.jsonl") + " --size-est star --weight-est star --bootstrap 20 --seed 5 -o " +
            path("estimate.json"),
        cli + " evaluate --config " + path("exp.json") + " --csv " + path("report.csv") + " --json " + path("report.json"),
    };
    for (const auto& c : cmds) {
        if (std::system((c + " 2>/dev/null").c_str()) != 0) return false;
    }
    return true;
}

Outcome pipeline_determinism() {
    const auto base = fs::temp_directory_path() / ("catgraph_acceptance_" + std::to_string(::getpid()));
    const bool ran = run_chain(base / "a") && run_chain(base / "b");
    bool same = ran;
    std::size_t compared = 0;
    for (const char* f : {"edges.tsv", "cats.tsv", "trace.jsonl", "log.jsonl", "estimate.json", "report.csv", "report.json"}) {
        const auto a = slurp(base / "a" / f);
        same = same && !a.empty() && a == slurp(base / "b" / f);
        ++compared;
    }
    fs::remove_all(base);
    return {same, ran ? std::to_string(compared) + " output files compared" : "CLI chain failed"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 generator edge count", generator_exactness},
        {"2 three-category oracle", figure_one_oracle},
        {"3 full-sample exactness", full_sample_exactness},
        {"4 consistency suite", consistency_suite},
        {"5 star vs induced edge weights", star_beats_induced},
        {"6 stationary distributions", stationary_distributions},
        {"7 Hansen-Hurwitz unbiasedness", hansen_hurwitz},
        {"8 uniform reduction and scale invariance", uniform_reduction_and_scale},
        {"9 sampler ordering", sampler_ordering},
        {"10 pipeline determinism", pipeline_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
