// Python bindings for the catgraph core.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "catgraph/error.hpp"
#include "catgraph/estimators.hpp"
#include "catgraph/evaluation.hpp"
#include "catgraph/generators.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/io.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/samplers.hpp"

namespace py = pybind11;
using namespace catgraph;

namespace {

py::dict pair_map_to_dict(const std::map<CategoryPair, double>& m) {
    py::dict out;
    for (const auto& [pair, w] : m) out[py::make_tuple(pair.first, pair.second)] = w;
    return out;
}

std::map<CategoryPair, double> dict_to_pair_map(const py::dict& d) {
    std::map<CategoryPair, double> out;
    for (const auto& [key, value] : d) {
        auto t = key.cast<std::pair<CategoryId, CategoryId>>();
        out[CategoryPair(t.first, t.second)] = value.cast<double>();
    }
    return out;
}

Population to_population(const py::object& population) {
    if (population.is_none()) return Population::proportional();
    if (py::isinstance<py::str>(population)) {
        const auto s = population.cast<std::string>();
        if (s == "proportional") return Population::proportional();
        throw Error(ErrorKind::InvalidParameter, "population must be an int, None or 'proportional'");
    }
    return Population{true, population.cast<double>()};
}

py::object from_population(const Population& p) {
    if (!p.exact) return py::str("proportional");
    return py::float_(p.value);
}

}  // namespace

PYBIND11_MODULE(_catgraph, m) {
    m.doc() = "Category graph estimation from graph samples";

    static py::handle error_type = py::exception<Error>(m, "CatgraphError", PyExc_RuntimeError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = error_type(e.what());
            inst.attr("kind") = py::str(std::string(to_string(e.kind())));
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    py::class_<Graph>(m, "Graph")
        .def_static("from_edges",
                    [](std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); },
                    py::arg("node_count"), py::arg("edges"))
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("neighbors",
             [](const Graph& g, NodeId v) {
                 auto span = g.neighbors(v);
                 return std::vector<NodeId>(span.begin(), span.end());
             })
        .def("degree", &Graph::degree)
        .def("has_edge", &Graph::has_edge)
        .def("edges", &Graph::edges)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph N=" + std::to_string(g.node_count()) + " |E|=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<CategoryPartition>(m, "CategoryPartition")
        .def(py::init<std::vector<CategoryId>, std::vector<std::string>>(), py::arg("labels"), py::arg("names"))
        .def_property_readonly("node_count", &CategoryPartition::node_count)
        .def_property_readonly("category_count", &CategoryPartition::category_count)
        .def_property_readonly("labels",
                               [](const CategoryPartition& p) {
                                   auto s = p.labels();
                                   return std::vector<CategoryId>(s.begin(), s.end());
                               })
        .def_property_readonly("names",
                               [](const CategoryPartition& p) {
                                   auto s = p.names();
                                   return std::vector<std::string>(s.begin(), s.end());
                               })
        .def_property_readonly("sizes",
                               [](const CategoryPartition& p) {
                                   auto s = p.sizes();
                                   return std::vector<std::size_t>(s.begin(), s.end());
                               })
        .def("label", &CategoryPartition::label)
        .def("name", &CategoryPartition::name)
        .def("members", &CategoryPartition::members)
        .def("__eq__", [](const CategoryPartition& a, const CategoryPartition& b) { return a == b; });

    py::class_<CategoryGraph>(m, "CategoryGraph")
        .def_readonly("names", &CategoryGraph::names)
        .def_readonly("sizes", &CategoryGraph::sizes)
        .def_property_readonly("cuts",
                               [](const CategoryGraph& cg) {
                                   py::dict out;
                                   for (const auto& [pair, cut] : cg.cuts) {
                                       out[py::make_tuple(pair.first, pair.second)] = cut.edges;
                                   }
                                   return out;
                               })
        .def_property_readonly("weights",
                               [](const CategoryGraph& cg) {
                                   py::dict out;
                                   for (const auto& [pair, cut] : cg.cuts) {
                                       out[py::make_tuple(pair.first, pair.second)] = cut.weight;
                                   }
                                   return out;
                               })
        .def("weight", &CategoryGraph::weight);

    m.def("exact_category_graph", &exact_category_graph, py::arg("graph"), py::arg("partition"));
    m.def("edge_cut", &edge_cut);
    m.def("mean_degree", py::overload_cast<const Graph&, const CategoryPartition&, CategoryId>(&mean_degree));
    m.def("is_connected", &is_connected);

    m.def(
        "synthetic_graph",
        [](std::vector<std::size_t> sizes, std::size_t k, std::optional<std::size_t> inter_edges, double alpha,
           std::uint64_t seed) {
            SyntheticParams p;
            p.category_sizes = std::move(sizes);
            p.k = k;
            p.inter_edge_count = inter_edges;
            p.alpha = alpha;
            p.seed = seed;
            auto sg = synthetic_graph(p);
            return py::make_tuple(std::move(sg.graph), std::move(sg.partition));
        },
        py::arg("category_sizes"), py::arg("k") = 5, py::arg("inter_edges") = py::none(), py::arg("alpha") = 0.0,
        py::arg("seed") = 0);

    py::enum_<SamplerKind>(m, "SamplerKind")
        .value("uis", SamplerKind::uis)
        .value("wis", SamplerKind::wis)
        .value("rw", SamplerKind::rw)
        .value("mhrw", SamplerKind::mhrw)
        .value("wrw", SamplerKind::wrw);

    py::class_<SampleTrace>(m, "SampleTrace")
        .def_property_readonly("sampler", [](const SampleTrace& t) { return std::string(to_string(t.meta.sampler)); })
        .def_property_readonly("seed", [](const SampleTrace& t) { return t.meta.seed; })
        .def_property_readonly("starts", [](const SampleTrace& t) { return t.meta.starts; })
        .def_property_readonly("thin", [](const SampleTrace& t) { return t.meta.thin; })
        .def_property_readonly("nodes",
                               [](const SampleTrace& t) {
                                   std::vector<NodeId> out;
                                   for (const auto& d : t.draws) out.push_back(d.node);
                                   return out;
                               })
        .def_property_readonly("weights",
                               [](const SampleTrace& t) {
                                   std::vector<double> out;
                                   for (const auto& d : t.draws) out.push_back(d.weight);
                                   return out;
                               })
        .def("__len__", [](const SampleTrace& t) { return t.draws.size(); });

    m.def(
        "sample",
        [](const Graph& g, const CategoryPartition& part, const std::string& sampler, std::size_t n,
           std::uint64_t seed, std::size_t burn_in, std::optional<NodeId> start,
           std::optional<std::vector<double>> weights) {
            WalkOptions opts{n, start, burn_in, seed};
            switch (parse_sampler(sampler)) {
                case SamplerKind::uis: return sample_uis(g, n, seed);
                case SamplerKind::wis: {
                    std::vector<double> w;
                    if (weights) {
                        w = *weights;
                    } else {
                        for (NodeId v = 0; v < g.node_count(); ++v) w.push_back(static_cast<double>(g.degree(v)));
                    }
                    return sample_wis(g, w, n, seed);
                }
                case SamplerKind::rw: return sample_rw(g, opts);
                case SamplerKind::mhrw: return sample_mhrw(g, opts);
                case SamplerKind::wrw: {
                    auto w = weights.value_or(std::vector<double>(part.category_count(), 1.0));
                    return sample_wrw(g, part, w, opts);
                }
            }
            throw Error(ErrorKind::InvalidParameter, "unknown sampler");
        },
        py::arg("graph"), py::arg("partition"), py::arg("sampler"), py::arg("n"), py::arg("seed") = 0,
        py::arg("burn_in") = 0, py::arg("start") = py::none(), py::arg("weights") = py::none(),
        "Draw n nodes. `weights` are node weights for wis and category weights for wrw "
        "(defaults: degree, all-equal).");
    m.def("thin", &thin, py::arg("trace"), py::arg("every"));

    py::class_<ObservationLog>(m, "ObservationLog")
        .def_property_readonly("mode", [](const ObservationLog& l) { return std::string(to_string(l.mode)); })
        .def_readonly("population_hint", &ObservationLog::population_hint)
        .def_readonly("category_names", &ObservationLog::category_names)
        .def_readonly("induced_edges", &ObservationLog::induced_edges)
        .def_property_readonly("nodes",
                               [](const ObservationLog& l) {
                                   std::vector<NodeKey> out;
                                   for (const auto& r : l.records) out.push_back(r.node);
                                   return out;
                               })
        .def_property_readonly("categories",
                               [](const ObservationLog& l) {
                                   std::vector<CategoryId> out;
                                   for (const auto& r : l.records) out.push_back(r.category);
                                   return out;
                               })
        .def_property_readonly("neighbor_categories",
                               [](const ObservationLog& l) {
                                   py::list out;
                                   for (const auto& r : l.records) {
                                       py::dict hist;
                                       for (const auto& nc : r.neighbor_categories) hist[py::int_(nc.category)] = nc.count;
                                       out.append(hist);
                                   }
                                   return out;
                               })
        .def("__len__", [](const ObservationLog& l) { return l.records.size(); })
        .def("__eq__", [](const ObservationLog& a, const ObservationLog& b) { return a == b; })
        .def("to_jsonl",
             [](const ObservationLog& l) {
                 std::ostringstream out;
                 io::write_log(out, l);
                 return out.str();
             })
        .def_static("from_jsonl", [](const std::string& text) {
            std::istringstream in(text);
            return io::read_log(in);
        });

    m.def(
        "observe",
        [](const Graph& g, const CategoryPartition& part, const SampleTrace& trace, const std::string& mode) {
            return observe(g, part, trace, parse_mode(mode));
        },
        py::arg("graph"), py::arg("partition"), py::arg("trace"), py::arg("mode") = "induced");

    py::class_<CategoryGraphEstimate>(m, "CategoryGraphEstimate")
        .def_readonly("names", &CategoryGraphEstimate::names)
        .def_readonly("sizes", &CategoryGraphEstimate::sizes)
        .def_property_readonly("weights",
                               [](const CategoryGraphEstimate& e) { return pair_map_to_dict(e.weights); })
        .def_readonly("size_variances", &CategoryGraphEstimate::size_variances)
        .def_property_readonly("weight_variances",
                               [](const CategoryGraphEstimate& e) -> py::object {
                                   if (!e.weight_variances) return py::none();
                                   return pair_map_to_dict(*e.weight_variances);
                               })
        .def_property_readonly("population", [](const CategoryGraphEstimate& e) { return from_population(e.population); })
        .def_property_readonly("size_estimator",
                               [](const CategoryGraphEstimate& e) {
                                   return e.size_estimator ? std::string(to_string(*e.size_estimator)) : "exact";
                               })
        .def_property_readonly("weight_estimator",
                               [](const CategoryGraphEstimate& e) {
                                   return e.weight_estimator ? std::string(to_string(*e.weight_estimator)) : "exact";
                               })
        .def("weight",
             [](const CategoryGraphEstimate& e, CategoryId a, CategoryId b) -> std::optional<double> {
                 auto it = e.weights.find(CategoryPair(a, b));
                 if (it == e.weights.end()) return std::nullopt;
                 return it->second;
             })
        .def("to_json", [](const CategoryGraphEstimate& e) { return io::estimate_to_json(e); })
        .def("to_dot", [](const CategoryGraphEstimate& e) { return io::estimate_to_dot(e); })
        .def_static("from_json", [](const std::string& text) { return io::estimate_from_json(text); })
        .def("__eq__", [](const CategoryGraphEstimate& a, const CategoryGraphEstimate& b) { return a == b; });

    m.def(
        "estimate_category_graph",
        [](const ObservationLog& log, py::object population, const std::string& size_est,
           const std::string& weight_est, bool homogeneous, std::size_t bootstrap, std::uint64_t seed) {
            EstimateOptions opts{parse_size_estimator(size_est), parse_weight_estimator(weight_est), homogeneous};
            const auto pop = to_population(population);
            auto est = estimate_category_graph(log, pop, opts);
            if (bootstrap > 0) est = with_variances(std::move(est), bootstrap_variance(log, pop, opts, bootstrap, seed));
            return est;
        },
        py::arg("log"), py::arg("population") = py::none(), py::arg("size_est") = "induced",
        py::arg("weight_est") = "induced", py::arg("assume_homogeneous_degree") = false, py::arg("bootstrap") = 0,
        py::arg("seed") = 0,
        "population: node count N, or None / 'proportional' for relative sizes.");
    m.def("to_estimate", &to_estimate, py::arg("truth"));

    m.def("nrmse", [](const std::vector<double>& xs, double truth) { return nrmse(xs, truth); },
          py::arg("estimates"), py::arg("truth"));

    m.def(
        "run_experiment",
        [](const std::string& config_json, const Graph& g, const CategoryPartition& part) {
            const auto file = io::parse_experiment(config_json);
            auto cfg = io::resolve_config(file, part);
            return io::report_to_json(run_experiment(cfg, g, part));
        },
        py::arg("config_json"), py::arg("graph"), py::arg("partition"),
        "Run an experiment grid; the config uses the evaluate file schema (its graph entry is ignored). "
        "Returns the JSON report.");

    m.def(
        "load_graph",
        [](const std::filesystem::path& edges, const std::filesystem::path& categories) {
            auto g = io::load_graph(edges, categories);
            return py::make_tuple(std::move(g.graph), std::move(g.partition), std::move(g.external_ids));
        },
        py::arg("edges"), py::arg("categories"),
        "Returns (graph, partition, external_ids); internal id i is external id external_ids[i].");
    m.def(
        "save_graph",
        [](const std::filesystem::path& edges, const std::filesystem::path& categories, const Graph& g,
           const CategoryPartition& part) {
            io::save_graph(edges, categories, io::LoadedGraph::from_dense(g, part));
        },
        py::arg("edges"), py::arg("categories"), py::arg("graph"), py::arg("partition"));
}
