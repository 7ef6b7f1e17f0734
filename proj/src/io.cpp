#include "catgraph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "catgraph/error.hpp"

namespace catgraph::io {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool skip_line(std::string_view line) { return line.empty() || line.front() == '#'; }

std::uint64_t parse_id(std::string_view token, std::string_view what, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::ParseError, std::string(what) + " line " + std::to_string(line_no) +
                                               ": expected a non-negative integer node id, got '" +
                                               std::string(token) + "'");
    }
    return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    return out;
}

json parse_json_line(const std::string& line, std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
}

template <typename T>
T field(const json& obj, const char* key, std::size_t line_no) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ": field '" + key + "': " + e.what());
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

NodeId LoadedGraph::internal_id(std::uint64_t external) const {
    auto it = std::lower_bound(external_ids.begin(), external_ids.end(), external);
    if (it == external_ids.end() || *it != external) {
        throw Error(ErrorKind::InvalidNode, "node " + std::to_string(external) + " is not in the graph");
    }
    return static_cast<NodeId>(it - external_ids.begin());
}

LoadedGraph LoadedGraph::from_dense(Graph g, CategoryPartition part) {
    LoadedGraph out;
    out.external_ids.resize(g.node_count());
    for (std::size_t i = 0; i < out.external_ids.size(); ++i) out.external_ids[i] = i;
    out.graph = std::move(g);
    out.partition = std::move(part);
    return out;
}

LoadedGraph read_graph(std::istream& edges_in, std::istream& categories_in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::string line;
    for (std::size_t line_no = 1; std::getline(edges_in, line); ++line_no) {
        const auto text = trim(line);
        if (skip_line(text)) continue;
        std::istringstream tokens{std::string(text)};
        std::string a, b, extra;
        if (!(tokens >> a >> b) || (tokens >> extra)) {
            throw Error(ErrorKind::ParseError,
                        "edges line " + std::to_string(line_no) + ": expected exactly two node ids");
        }
        auto u = parse_id(a, "edges", line_no);
        auto v = parse_id(b, "edges", line_no);
        if (u == v) {
            throw Error(ErrorKind::SelfLoop,
                        "edges line " + std::to_string(line_no) + ": self-loop at node " + std::to_string(u));
        }
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
            throw Error(ErrorKind::DuplicateEdge, "edges line " + std::to_string(line_no) + ": edge {" +
                                                      std::to_string(u) + "," + std::to_string(v) +
                                                      "} already listed");
        }
        raw_edges.emplace_back(u, v);
    }

    std::vector<std::pair<std::uint64_t, std::string>> labels;
    std::unordered_set<std::uint64_t> labeled;
    for (std::size_t line_no = 1; std::getline(categories_in, line); ++line_no) {
        const auto text = trim(line);
        if (skip_line(text)) continue;
        auto split = text.find('\t');
        if (split == std::string_view::npos) split = text.find(' ');
        if (split == std::string_view::npos) {
            throw Error(ErrorKind::ParseError,
                        "categories line " + std::to_string(line_no) + ": expected 'node<TAB>category'");
        }
        const auto node = parse_id(trim(text.substr(0, split)), "categories", line_no);
        const auto name = trim(text.substr(split + 1));
        if (name.empty()) {
            throw Error(ErrorKind::ParseError, "categories line " + std::to_string(line_no) + ": empty category name");
        }
        if (!labeled.insert(node).second) {
            throw Error(ErrorKind::ParseError, "categories line " + std::to_string(line_no) + ": node " +
                                                   std::to_string(node) + " labeled twice");
        }
        labels.emplace_back(node, std::string(name));
    }

    LoadedGraph out;
    for (const auto& [u, v] : raw_edges) {
        for (auto x : {u, v}) {
            if (!labeled.contains(x)) {
                throw Error(ErrorKind::UnlabeledNode, "node " + std::to_string(x) + " has no category");
            }
        }
    }
    out.external_ids.reserve(labels.size());
    for (const auto& [node, name] : labels) out.external_ids.push_back(node);
    std::sort(out.external_ids.begin(), out.external_ids.end());

    std::vector<std::string> names;
    std::unordered_map<std::string, CategoryId> name_ids;
    std::vector<CategoryId> label_of(out.external_ids.size());
    for (const auto& [node, name] : labels) {
        auto [it, inserted] = name_ids.try_emplace(name, static_cast<CategoryId>(names.size()));
        if (inserted) names.push_back(name);
        label_of[out.internal_id(node)] = it->second;
    }

    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (const auto& [u, v] : raw_edges) edges.emplace_back(out.internal_id(u), out.internal_id(v));
    out.graph = Graph::from_edges(out.external_ids.size(), edges);
    out.partition = CategoryPartition(std::move(label_of), std::move(names));
    return out;
}

LoadedGraph load_graph(const std::filesystem::path& edge_path, const std::filesystem::path& category_path) {
    auto edges = open_in(edge_path);
    auto categories = open_in(category_path);
    return read_graph(edges, categories);
}

void write_graph(std::ostream& edges, std::ostream& categories, const LoadedGraph& g) {
    for (const auto& [u, v] : g.graph.edges()) {
        edges << g.external_ids[u] << '\t' << g.external_ids[v] << '\n';
    }
    // Grouped by category so that first-appearance interning restores the ids.
    for (CategoryId c = 0; c < g.partition.category_count(); ++c) {
        for (NodeId v : g.partition.members(c)) {
            categories << g.external_ids[v] << '\t' << g.partition.name(c) << '\n';
        }
    }
}

void save_graph(const std::filesystem::path& edge_path, const std::filesystem::path& category_path,
                const LoadedGraph& g) {
    auto edges = open_out(edge_path);
    auto categories = open_out(category_path);
    write_graph(edges, categories, g);
    if (!edges || !categories) throw Error(ErrorKind::IoError, "failed writing graph files");
}

void write_trace(std::ostream& out, const SampleTrace& trace, const LoadedGraph& g) {
    ordered_json meta;
    meta["sampler"] = to_string(trace.meta.sampler);
    meta["seed"] = trace.meta.seed;
    meta["burn_in"] = trace.meta.burn_in;
    meta["thin"] = trace.meta.thin;
    auto starts = ordered_json::array();
    for (NodeId s : trace.meta.starts) starts.push_back(g.external_ids.at(s));
    meta["starts"] = std::move(starts);
    out << meta.dump() << '\n';
    for (const auto& d : trace.draws) {
        ordered_json line;
        line["i"] = d.step;
        line["v"] = g.external_ids.at(d.node);
        line["w"] = d.weight;
        out << line.dump() << '\n';
    }
}

SampleTrace read_trace(std::istream& in, const LoadedGraph& g) {
    SampleTrace trace;
    std::string line;
    std::size_t line_no = 0;
    bool have_meta = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto obj = parse_json_line(line, line_no);
        if (!have_meta) {
            trace.meta.sampler = parse_sampler(field<std::string>(obj, "sampler", line_no));
            trace.meta.seed = field<std::uint64_t>(obj, "seed", line_no);
            trace.meta.burn_in = field<std::size_t>(obj, "burn_in", line_no);
            trace.meta.thin = field<std::size_t>(obj, "thin", line_no);
            if (obj.contains("starts")) {
                for (const auto& s : obj["starts"]) trace.meta.starts.push_back(g.internal_id(s.get<std::uint64_t>()));
            }
            have_meta = true;
            continue;
        }
        Draw d;
        d.step = field<std::size_t>(obj, "i", line_no);
        d.node = g.internal_id(field<std::uint64_t>(obj, "v", line_no));
        d.weight = field<double>(obj, "w", line_no);
        trace.draws.push_back(d);
    }
    if (!have_meta) throw Error(ErrorKind::ParseError, "trace file has no meta line");
    return trace;
}

void write_log(std::ostream& out, const ObservationLog& log) {
    ordered_json meta;
    meta["mode"] = to_string(log.mode);
    meta["N"] = log.population_hint ? ordered_json(*log.population_hint) : ordered_json(nullptr);
    meta["categories"] = log.category_names;
    out << meta.dump() << '\n';
    for (const auto& r : log.records) {
        ordered_json rec;
        rec["v"] = r.node;
        rec["c"] = r.category;
        rec["deg"] = r.degree;
        rec["w"] = r.weight;
        if (log.mode == ObservationMode::star) {
            auto hist = ordered_json::object();
            for (const auto& nc : r.neighbor_categories) hist[std::to_string(nc.category)] = nc.count;
            rec["nbr_cats"] = std::move(hist);
        }
        out << rec.dump() << '\n';
    }
    if (log.mode == ObservationMode::induced) {
        auto edges = ordered_json::array();
        for (const auto& [u, v] : log.induced_edges) edges.push_back({u, v});
        ordered_json tail;
        tail["induced_edges"] = std::move(edges);
        out << tail.dump() << '\n';
    }
}

ObservationLog read_log(std::istream& in) {
    ObservationLog log;
    std::string line;
    std::size_t line_no = 0;
    bool have_meta = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto obj = parse_json_line(line, line_no);
        if (!have_meta) {
            log.mode = parse_mode(field<std::string>(obj, "mode", line_no));
            if (obj.contains("N") && !obj["N"].is_null()) log.population_hint = obj["N"].get<std::size_t>();
            log.category_names = field<std::vector<std::string>>(obj, "categories", line_no);
            have_meta = true;
            continue;
        }
        if (obj.contains("induced_edges")) {
            for (const auto& e : obj["induced_edges"]) {
                auto u = e.at(0).get<NodeKey>();
                auto v = e.at(1).get<NodeKey>();
                log.induced_edges.emplace_back(std::min(u, v), std::max(u, v));
            }
            continue;
        }
        ObservationRecord r;
        r.node = field<NodeKey>(obj, "v", line_no);
        r.category = field<CategoryId>(obj, "c", line_no);
        r.degree = field<std::size_t>(obj, "deg", line_no);
        r.weight = field<double>(obj, "w", line_no);
        if (obj.contains("nbr_cats")) {
            for (const auto& [key, count] : obj["nbr_cats"].items()) {
                r.neighbor_categories.push_back(
                    {static_cast<CategoryId>(parse_id(key, "log", line_no)), count.get<std::size_t>()});
            }
            std::sort(r.neighbor_categories.begin(), r.neighbor_categories.end(),
                      [](const auto& a, const auto& b) { return a.category < b.category; });
        }
        log.records.push_back(std::move(r));
    }
    if (!have_meta) throw Error(ErrorKind::ParseError, "observation log has no meta line");
    std::sort(log.induced_edges.begin(), log.induced_edges.end());
    log.validate();
    return log;
}

std::string estimate_to_json(const CategoryGraphEstimate& est) {
    ordered_json doc;
    doc["N_mode"] = est.population.exact ? "exact" : "proportional";
    if (est.population.exact) {
        const double n = est.population.value;
        doc["N"] = n == std::floor(n) && n < 9e15 ? ordered_json(static_cast<std::uint64_t>(n)) : ordered_json(n);
    }
    doc["size_estimator"] = est.size_estimator ? std::string(to_string(*est.size_estimator)) : "exact";
    doc["weight_estimator"] = est.weight_estimator ? std::string(to_string(*est.weight_estimator)) : "exact";
    if (est.size_variances || est.weight_variances) doc["variances"] = true;
    auto cats = ordered_json::array();
    for (std::size_t c = 0; c < est.names.size(); ++c) {
        ordered_json entry;
        entry["id"] = c;
        entry["name"] = est.names[c];
        const auto& size = c < est.sizes.size() ? est.sizes[c] : std::nullopt;
        entry["size"] = size ? ordered_json(*size) : ordered_json(nullptr);
        if (est.size_variances) {
            const auto& var = c < est.size_variances->size() ? (*est.size_variances)[c] : std::nullopt;
            entry["size_var"] = var ? ordered_json(*var) : ordered_json(nullptr);
        }
        cats.push_back(std::move(entry));
    }
    doc["categories"] = std::move(cats);
    auto edges = ordered_json::array();
    for (const auto& [pair, w] : est.weights) {
        ordered_json entry;
        entry["a"] = pair.first;
        entry["b"] = pair.second;
        entry["weight"] = w;
        if (est.weight_variances) {
            if (auto it = est.weight_variances->find(pair); it != est.weight_variances->end()) {
                entry["weight_var"] = it->second;
            }
        }
        edges.push_back(std::move(entry));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

CategoryGraphEstimate estimate_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("estimate JSON: ") + e.what());
    }
    CategoryGraphEstimate est;
    try {
        const auto mode = doc.at("N_mode").get<std::string>();
        est.population = mode == "exact" ? Population{true, doc.at("N").get<double>()} : Population::proportional();
        const auto se = doc.at("size_estimator").get<std::string>();
        const auto we = doc.at("weight_estimator").get<std::string>();
        if (se != "exact") est.size_estimator = parse_size_estimator(se);
        if (we != "exact") est.weight_estimator = parse_weight_estimator(we);
        const bool variances = doc.value("variances", false);
        if (variances) {
            est.size_variances.emplace();
            est.weight_variances.emplace();
        }
        for (const auto& c : doc.at("categories")) {
            est.names.push_back(c.at("name").get<std::string>());
            est.sizes.push_back(c.at("size").is_null() ? std::nullopt : std::optional(c["size"].get<double>()));
            if (variances) {
                const bool has = c.contains("size_var") && !c["size_var"].is_null();
                est.size_variances->push_back(has ? std::optional(c["size_var"].get<double>()) : std::nullopt);
            }
        }
        for (const auto& e : doc.at("edges")) {
            const CategoryPair pair(e.at("a").get<CategoryId>(), e.at("b").get<CategoryId>());
            est.weights.emplace(pair, e.at("weight").get<double>());
            if (variances && e.contains("weight_var")) est.weight_variances->emplace(pair, e["weight_var"].get<double>());
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("estimate JSON: ") + e.what());
    }
    return est;
}

std::string estimate_to_dot(const CategoryGraphEstimate& est) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream out;
    out << "graph category_graph {\n";
    for (std::size_t c = 0; c < est.names.size(); ++c) {
        out << "  " << c << " [label=" << quote(est.names[c]);
        if (c < est.sizes.size() && est.sizes[c]) out << ", size=" << format_double(*est.sizes[c]);
        out << "];\n";
    }
    for (const auto& [pair, w] : est.weights) {
        if (w == 0.0) continue;
        out << "  " << pair.first << " -- " << pair.second << " [weight=" << format_double(w) << "];\n";
    }
    out << "}\n";
    return out.str();
}

void export_category_graph(const CategoryGraphEstimate& est, ExportFormat format, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << (format == ExportFormat::json ? estimate_to_json(est) : estimate_to_dot(est));
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
    out << "quantity_kind,sampler,mode,estimator,n,median_nrmse,p25,p75,excluded_count\n";
    for (const auto& c : report.cells) {
        out << to_string(c.quantity) << ',' << to_string(c.sampler) << ',' << to_string(c.mode) << ','
            << c.estimator_label() << ',' << c.n << ',' << opt(c.median) << ',' << opt(c.p25) << ',' << opt(c.p75)
            << ',' << c.excluded << '\n';
    }
}

std::string report_to_json(const ExperimentReport& report) {
    auto opt = [](const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
    auto cells = ordered_json::array();
    for (const auto& c : report.cells) {
        ordered_json cell;
        cell["quantity_kind"] = to_string(c.quantity);
        cell["sampler"] = to_string(c.sampler);
        cell["mode"] = to_string(c.mode);
        cell["estimator"] = c.estimator_label();
        cell["n"] = c.n;
        cell["median_nrmse"] = opt(c.median);
        cell["p25"] = opt(c.p25);
        cell["p75"] = opt(c.p75);
        cell["excluded_count"] = c.excluded;
        auto errors = ordered_json::array();
        for (const auto& e : c.errors) errors.push_back({{"quantity", e.label}, {"nrmse", e.nrmse}});
        cell["nrmse"] = std::move(errors);
        cell["cdf"] = c.cdf;
        cells.push_back(std::move(cell));
    }
    ordered_json doc;
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

ExperimentFile parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("experiment config: ") + e.what());
    }
    ExperimentFile file;
    auto& cfg = file.config;
    try {
        const auto graph = doc.value("graph", json::object());
        if (graph.empty()) {
            // No graph: the caller supplies one.
        } else if (graph.contains("synthetic")) {
            const auto& s = graph["synthetic"];
            SyntheticParams p;
            p.category_sizes = s.at("category_sizes").get<std::vector<std::size_t>>();
            p.k = s.at("k").get<std::size_t>();
            if (s.contains("inter_edges") && !s["inter_edges"].is_null()) {
                p.inter_edge_count = s["inter_edges"].get<std::size_t>();
            }
            p.alpha = s.value("alpha", 0.0);
            p.seed = s.value("seed", std::uint64_t{0});
            p.max_attempts = s.value("max_attempts", std::size_t{100});
            file.graph.synthetic = p;
        } else {
            auto resolve = [&](const std::string& p) {
                std::filesystem::path path(p);
                return path.is_relative() ? base_dir / path : path;
            };
            file.graph.edge_path = resolve(graph.at("edges").get<std::string>());
            file.graph.category_path = resolve(graph.at("categories").get<std::string>());
        }
        auto list = [&](const char* key, auto parse, auto& target) {
            if (!doc.contains(key)) return;
            target.clear();
            for (const auto& item : doc[key]) target.push_back(parse(item.template get<std::string>()));
        };
        list("samplers", parse_sampler, cfg.samplers);
        list("modes", parse_mode, cfg.modes);
        list("size_estimators", parse_size_estimator, cfg.size_estimators);
        list("weight_estimators", parse_weight_estimator, cfg.weight_estimators);
        if (doc.contains("sample_sizes")) cfg.sample_sizes = doc["sample_sizes"].get<std::vector<std::size_t>>();
        cfg.replicates = doc.value("replicates", cfg.replicates);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.burn_in = doc.value("burn_in", cfg.burn_in);
        cfg.thin = doc.value("thin", cfg.thin);
        cfg.threads = doc.value("threads", cfg.threads);
        if (doc.contains("probe_percentiles")) {
            cfg.probe_percentiles = doc["probe_percentiles"].get<std::vector<double>>();
        }
        if (doc.contains("category_weights")) {
            const auto& cw = doc["category_weights"];
            if (cw.is_array()) {
                cfg.category_weights = cw.get<std::vector<double>>();
            } else {
                for (const auto& [name, w] : cw.items()) file.category_weights_by_name[name] = w.get<double>();
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("experiment config: ") + e.what());
    }
    cfg.validate();
    return file;
}

ExperimentFile load_experiment(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment(buffer.str(), path.parent_path());
}

LoadedGraph resolve_graph(const GraphSource& source) {
    if (source.synthetic) {
        auto sg = synthetic_graph(*source.synthetic);
        return LoadedGraph::from_dense(std::move(sg.graph), std::move(sg.partition));
    }
    if (source.edge_path.empty() || source.category_path.empty()) {
        throw Error(ErrorKind::InvalidParameter, "experiment config names no graph");
    }
    return load_graph(source.edge_path, source.category_path);
}

ExperimentConfig resolve_config(const ExperimentFile& file, const CategoryPartition& part) {
    ExperimentConfig cfg = file.config;
    if (!file.category_weights_by_name.empty()) {
        cfg.category_weights.assign(part.category_count(), 1.0);
        for (const auto& [name, w] : file.category_weights_by_name) {
            auto names = part.names();
            auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) {
                throw Error(ErrorKind::UnknownCategory, "category_weights names unknown category '" + name + "'");
            }
            cfg.category_weights[static_cast<std::size_t>(it - names.begin())] = w;
        }
    }
    if (!cfg.category_weights.empty() && cfg.category_weights.size() != part.category_count()) {
        throw Error(ErrorKind::InvalidParameter, "category_weights must list one weight per category");
    }
    return cfg;
}

}  // namespace catgraph::io
