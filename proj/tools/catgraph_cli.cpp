// catgraph: command-line pipeline.
//
//   generate -> edge + category files
//   exact    -> true category graph (JSON or DOT)
//   sample   -> trace JSONL
//   observe  -> observation log JSONL
//   estimate -> estimate JSON (or DOT)
//   evaluate -> NRMSE report (CSV and/or JSON)
//
// Failures print a single "error: <Kind>: <message>" line to stderr.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "catgraph/error.hpp"
#include "catgraph/estimators.hpp"
#include "catgraph/evaluation.hpp"
#include "catgraph/generators.hpp"
#include "catgraph/io.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/random.hpp"
#include "catgraph/samplers.hpp"

using namespace catgraph;

namespace {

// Writes to `path`, or stdout when the path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    fn(out);
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
    return in;
}

Population parse_population(const std::string& text, const ObservationLog& log) {
    if (text.empty()) {
        return log.population_hint ? Population::of(*log.population_hint) : Population::proportional();
    }
    if (text == "proportional") return Population::proportional();
    if (text == "exact") {
        if (!log.population_hint) throw Error(ErrorKind::InvalidParameter, "log carries no N; use exact:<N>");
        return Population::of(*log.population_hint);
    }
    if (text.rfind("exact:", 0) == 0) {
        const auto digits = text.substr(6);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) {
            throw Error(ErrorKind::InvalidParameter, "bad population '" + text + "'");
        }
        return Population::of(value);
    }
    throw Error(ErrorKind::InvalidParameter, "population must be exact:<N> or proportional, got '" + text + "'");
}

std::vector<double> category_weights_for(const std::vector<std::string>& items, const CategoryPartition& part) {
    if (items.empty()) return std::vector<double>(part.category_count(), 1.0);
    std::vector<double> weights(part.category_count(), 1.0);
    for (const auto& item : items) {
        const auto eq = item.rfind('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidParameter, "category weight must look like name=value, got '" + item + "'");
        }
        const auto name = item.substr(0, eq);
        const auto names = part.names();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw Error(ErrorKind::UnknownCategory, "unknown category '" + name + "'");
        try {
            weights[static_cast<std::size_t>(it - names.begin())] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParameter, "bad weight in '" + item + "'");
        }
    }
    return weights;
}

struct GenerateArgs {
    std::vector<std::size_t> sizes;
    std::size_t k = 5;
    std::optional<std::size_t> inter_edges;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::string edges_out, categories_out;
};

void run_generate(const GenerateArgs& a) {
    SyntheticParams p;
    p.category_sizes = a.sizes;
    p.k = a.k;
    p.inter_edge_count = a.inter_edges;
    p.alpha = a.alpha;
    p.seed = a.seed;
    auto sg = synthetic_graph(p);
    const auto loaded = io::LoadedGraph::from_dense(std::move(sg.graph), std::move(sg.partition));
    io::save_graph(a.edges_out, a.categories_out, loaded);
}

struct GraphArgs {
    std::string edges, categories;
};

struct ExactArgs {
    GraphArgs graph;
    std::string format = "json";
    std::string out;
};

void write_estimate(const CategoryGraphEstimate& est, const std::string& format, const std::string& out) {
    with_output(out, [&](std::ostream& os) {
        os << (format == "dot" ? io::estimate_to_dot(est) : io::estimate_to_json(est));
    });
}

void run_exact(const ExactArgs& a) {
    const auto g = io::load_graph(a.graph.edges, a.graph.categories);
    auto est = to_estimate(exact_category_graph(g.graph, g.partition));
    write_estimate(est, a.format, a.out);
}

struct SampleArgs {
    GraphArgs graph;
    std::string sampler = "uis";
    std::size_t n = 1000;
    std::size_t walks = 1;
    std::size_t burn_in = 0;
    std::size_t thin = 1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> start;
    std::vector<std::string> category_weights;
    std::string out;
};

SampleTrace sample_one(const io::LoadedGraph& g, SamplerKind kind, const SampleArgs& a,
                       const std::vector<double>& cat_weights, std::uint64_t seed) {
    WalkOptions opts;
    opts.n = a.n * a.thin;
    opts.burn_in = a.burn_in;
    opts.seed = seed;
    if (a.start) opts.start = g.internal_id(*a.start);
    SampleTrace trace;
    switch (kind) {
        case SamplerKind::uis: trace = sample_uis(g.graph, opts.n, seed); break;
        case SamplerKind::wis: {
            std::vector<double> w(g.graph.node_count());
            for (NodeId v = 0; v < w.size(); ++v) w[v] = static_cast<double>(g.graph.degree(v));
            trace = sample_wis(g.graph, w, opts.n, seed);
            break;
        }
        case SamplerKind::rw: trace = sample_rw(g.graph, opts); break;
        case SamplerKind::mhrw: trace = sample_mhrw(g.graph, opts); break;
        case SamplerKind::wrw: trace = sample_wrw(g.graph, g.partition, cat_weights, opts); break;
    }
    return a.thin > 1 ? thin(trace, a.thin) : trace;
}

void run_sample(const SampleArgs& a) {
    if (a.walks == 0) throw Error(ErrorKind::InvalidParameter, "--walks must be >= 1");
    if (a.thin == 0) throw Error(ErrorKind::InvalidThinning, "--thin must be >= 1");
    const auto g = io::load_graph(a.graph.edges, a.graph.categories);
    const auto kind = parse_sampler(a.sampler);
    const auto cat_weights = category_weights_for(a.category_weights, g.partition);

    std::vector<SampleTrace> traces(a.walks);
    if (a.walks == 1) {
        traces[0] = sample_one(g, kind, a, cat_weights, a.seed);
    } else {
        std::vector<std::exception_ptr> failures(a.walks);
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < a.walks; ++w) {
            workers.emplace_back([&, w] {
                try {
                    traces[w] = sample_one(g, kind, a, cat_weights, derive_seed(a.seed, w));
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& f : failures) {
            if (f) std::rethrow_exception(f);
        }
    }
    auto trace = a.walks == 1 ? std::move(traces[0]) : concat_traces(traces);
    trace.meta.seed = a.seed;
    with_output(a.out, [&](std::ostream& os) { io::write_trace(os, trace, g); });
}

struct ObserveArgs {
    GraphArgs graph;
    std::string trace;
    std::string mode = "induced";
    std::string out;
};

void run_observe(const ObserveArgs& a) {
    const auto g = io::load_graph(a.graph.edges, a.graph.categories);
    auto in = open_input(a.trace);
    const auto trace = io::read_trace(in, g);
    auto log = relabel_nodes(observe(g.graph, g.partition, trace, parse_mode(a.mode)), g.external_ids);
    with_output(a.out, [&](std::ostream& os) { io::write_log(os, log); });
}

struct EstimateArgs {
    std::string log;
    std::string size_est = "induced";
    std::string weight_est = "induced";
    std::string population;
    bool homogeneous = false;
    std::size_t bootstrap = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
};

void run_estimate(const EstimateArgs& a) {
    auto in = open_input(a.log);
    const auto log = io::read_log(in);
    EstimateOptions opts;
    opts.size_estimator = parse_size_estimator(a.size_est);
    opts.weight_estimator = parse_weight_estimator(a.weight_est);
    opts.assume_homogeneous_degree = a.homogeneous;
    const auto pop = parse_population(a.population, log);
    auto est = estimate_category_graph(log, pop, opts);
    if (a.bootstrap > 0) est = with_variances(std::move(est), bootstrap_variance(log, pop, opts, a.bootstrap, a.seed));
    write_estimate(est, a.format, a.out);
}

struct EvaluateArgs {
    std::string config;
    std::string csv_out;
    std::string json_out;
    std::optional<std::size_t> threads;
};

void run_evaluate(const EvaluateArgs& a) {
    const auto file = io::load_experiment(a.config);
    const auto g = io::resolve_graph(file.graph);
    auto cfg = io::resolve_config(file, g.partition);
    if (a.threads) cfg.threads = *a.threads;
    const auto report = run_experiment(cfg, g.graph, g.partition);
    if (!a.json_out.empty()) with_output(a.json_out, [&](std::ostream& os) { os << io::report_to_json(report); });
    if (!a.csv_out.empty() || a.json_out.empty()) {
        with_output(a.csv_out, [&](std::ostream& os) { io::write_report_csv(os, report); });
    }
}

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
    cmd->add_option("--edges", g.edges, "Edge list file (u<TAB>v per line)")->required();
    cmd->add_option("--categories", g.categories, "Category file (node<TAB>name per line)")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Category graph estimation from graph samples"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic labeled graph");
    generate->add_option("--sizes", gen.sizes, "Category sizes")->required()->delimiter(',');
    generate->add_option("--k", gen.k, "Intra-category degree");
    generate->add_option("--inter-edges", gen.inter_edges, "Inter-category edge count (default N*k/10)");
    generate->add_option("--alpha", gen.alpha, "Fraction of nodes whose labels are permuted");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--edges", gen.edges_out, "Output edge list")->required();
    generate->add_option("--categories", gen.categories_out, "Output category file")->required();

    ExactArgs ex;
    auto* exact = app.add_subcommand("exact", "Compute the true category graph");
    add_graph_options(exact, ex.graph);
    exact->add_option("--format", ex.format)->check(CLI::IsMember({"json", "dot"}));
    exact->add_option("-o,--out", ex.out, "Output file (default stdout)");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Draw a sample trace");
    add_graph_options(sample, sa.graph);
    sample->add_option("--sampler", sa.sampler)->check(CLI::IsMember({"uis", "wis", "rw", "mhrw", "wrw"}));
    sample->add_option("--n", sa.n, "Draws per walk (after thinning)");
    sample->add_option("--walks", sa.walks, "Independent traces, run in parallel and concatenated");
    sample->add_option("--burn-in", sa.burn_in);
    sample->add_option("--thin", sa.thin, "Keep every T-th draw");
    sample->add_option("--seed", sa.seed);
    sample->add_option("--start", sa.start, "Start node for walks (default uniform)");
    sample->add_option("--category-weight", sa.category_weights, "WRW weight as name=value (repeatable)");
    sample->add_option("-o,--out", sa.out);

    ObserveArgs ob;
    auto* observe_cmd = app.add_subcommand("observe", "Turn a trace into an observation log");
    add_graph_options(observe_cmd, ob.graph);
    observe_cmd->add_option("--trace", ob.trace)->required();
    observe_cmd->add_option("--mode", ob.mode)->check(CLI::IsMember({"induced", "star"}));
    observe_cmd->add_option("-o,--out", ob.out);

    EstimateArgs es;
    auto* estimate = app.add_subcommand("estimate", "Estimate the category graph from a log");
    estimate->add_option("--log", es.log)->required();
    estimate->add_option("--size-est", es.size_est)->check(CLI::IsMember({"induced", "star"}));
    estimate->add_option("--weight-est", es.weight_est)->check(CLI::IsMember({"induced", "star"}));
    estimate->add_option("--population", es.population, "exact:<N> or proportional (default: N from the log)");
    estimate->add_flag("--homogeneous-degree", es.homogeneous, "Star size estimator with k_A := k_V");
    estimate->add_option("--bootstrap", es.bootstrap, "Bootstrap resamples for variances (0 = off)");
    estimate->add_option("--seed", es.seed, "Bootstrap seed");
    estimate->add_option("--format", es.format)->check(CLI::IsMember({"json", "dot"}));
    estimate->add_option("-o,--out", es.out);

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Run an NRMSE experiment grid");
    evaluate->add_option("--config", ev.config, "Experiment JSON file")->required();
    evaluate->add_option("--csv", ev.csv_out, "CSV report path (default stdout)");
    evaluate->add_option("--json", ev.json_out, "JSON report path");
    evaluate->add_option("--threads", ev.threads, "Override the config's thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*generate) run_generate(gen);
        else if (*exact) run_exact(ex);
        else if (*sample) run_sample(sa);
        else if (*observe_cmd) run_observe(ob);
        else if (*estimate) run_estimate(es);
        else if (*evaluate) run_evaluate(ev);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
