#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "catgraph/estimators.hpp"
#include "catgraph/evaluation.hpp"
#include "catgraph/generators.hpp"
#include "catgraph/graph.hpp"
#include "catgraph/observers.hpp"
#include "catgraph/samplers.hpp"

namespace catgraph::io {

// A graph read from files. External node ids are mapped to dense internal
// ids in ascending external order, so files that already use 0..N-1 keep
// their ids.
struct LoadedGraph {
    Graph graph;
    CategoryPartition partition;
    std::vector<std::uint64_t> external_ids;  // internal id -> external id, ascending

    // Throws InvalidNode for an id that is not in the graph.
    NodeId internal_id(std::uint64_t external) const;

    static LoadedGraph from_dense(Graph g, CategoryPartition part);
};

// Edge list: "u<TAB>v" per line, '#' comments and blank lines ignored.
// Category file: "node<TAB>category name" per line. Names are interned in
// order of first appearance.
LoadedGraph read_graph(std::istream& edges, std::istream& categories);
LoadedGraph load_graph(const std::filesystem::path& edge_path, const std::filesystem::path& category_path);

void write_graph(std::ostream& edges, std::ostream& categories, const LoadedGraph& g);
void save_graph(const std::filesystem::path& edge_path, const std::filesystem::path& category_path,
                const LoadedGraph& g);

// JSONL: meta line {"sampler","seed","burn_in","thin","starts"} then {"i","v","w"} per draw.
void write_trace(std::ostream& out, const SampleTrace& trace, const LoadedGraph& g);
SampleTrace read_trace(std::istream& in, const LoadedGraph& g);

// JSONL: meta line {"mode","N","categories"}, one line per record, and for
// induced logs a trailing {"induced_edges":[[u,v],...]} line.
void write_log(std::ostream& out, const ObservationLog& log);
ObservationLog read_log(std::istream& in);

std::string estimate_to_json(const CategoryGraphEstimate& est);
CategoryGraphEstimate estimate_from_json(std::string_view text);
std::string estimate_to_dot(const CategoryGraphEstimate& est);

enum class ExportFormat { json, dot };
void export_category_graph(const CategoryGraphEstimate& est, ExportFormat format, const std::filesystem::path& path);

void write_report_csv(std::ostream& out, const ExperimentReport& report);
std::string report_to_json(const ExperimentReport& report);

struct GraphSource {
    std::optional<SyntheticParams> synthetic;
    std::filesystem::path edge_path;
    std::filesystem::path category_path;
};

struct ExperimentFile {
    GraphSource graph;
    ExperimentConfig config;
    // WRW weights by category name; resolved against the loaded partition.
    std::unordered_map<std::string, double> category_weights_by_name;
};

// Declarative JSON experiment description; relative paths resolve against `base_dir`.
ExperimentFile parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentFile load_experiment(const std::filesystem::path& path);

// Materializes the graph source and resolves named category weights into cfg.
LoadedGraph resolve_graph(const GraphSource& source);
ExperimentConfig resolve_config(const ExperimentFile& file, const CategoryPartition& part);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace catgraph::io
