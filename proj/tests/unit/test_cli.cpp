#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "catgraph/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = 0;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Workdir {
public:
    Workdir() : dir_(fs::temp_directory_path() / ("catgraph_cli_" + std::to_string(::getpid()) + "_" + std::to_string(std::rand()))) {
        fs::create_directories(dir_);
    }
    ~Workdir() { fs::remove_all(dir_); }
    fs::path operator/(const std::string& name) const { return dir_ / name; }

    Run run(const std::string& args) const {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = std::string("\"") + CATGRAPH_CLI_PATH + "\" " + args + " >\"" + out.string() +
                                "\" 2>\"" + err.string() + "\"";
        const int raw = std::system(cmd.c_str());
        return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
    }

private:
    fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate, sample, observe and estimate chain") {
    Workdir w;
    const auto e = (w / "edges.tsv").string();
    const auto c = (w / "cats.tsv").string();
    auto r = w.run("generate --sizes 30,60,90 --k 4 --alpha 0.5 --seed 5 --edges " + e + " --categories " + c);
    REQUIRE_MESSAGE(r.status == 0, r.err);
    const auto lg = catgraph::io::load_graph(e, c);
    CHECK(lg.graph.node_count() == 180);

    r = w.run("exact --edges " + e + " --categories " + c + " --format dot");
    REQUIRE_MESSAGE(r.status == 0, r.err);
    CHECK(r.out.rfind("graph category_graph {", 0) == 0);

    const auto trace = (w / "trace.jsonl").string();
    r = w.run("sample --edges " + e + " --categories " + c + " --sampler wrw --n 400 --seed 2 --category-weight c0=3 -o " +
              trace);
    REQUIRE_MESSAGE(r.status == 0, r.err);

    const auto log = (w / "log.jsonl").string();
    r = w.run("observe --edges " + e + " --categories " + c + " --trace " + trace + " --mode star -o " + log);
    REQUIRE_MESSAGE(r.status == 0, r.err);

    r = w.run("estimate --log " + log + " --size-est star --weight-est star --bootstrap 10 --seed 1");
    REQUIRE_MESSAGE(r.status == 0, r.err);
    const auto est = catgraph::io::estimate_from_json(r.out);
    CHECK(est.names.size() == 3);
    CHECK(est.size_variances.has_value());
    CHECK_FALSE(est.weights.empty());
}

TEST_CASE("errors exit nonzero with a typed message") {
    Workdir w;
    {
        std::ofstream(w / "e.tsv") << "0\t1\n1\t1\n";
        std::ofstream(w / "c.tsv") << "0\ta\n1\tb\n";
    }
    auto r = w.run("exact --edges " + (w / "e.tsv").string() + " --categories " + (w / "c.tsv").string());
    CHECK(r.status != 0);
    CHECK(r.err.rfind("error: SelfLoop:", 0) == 0);

    r = w.run("exact --edges " + (w / "missing.tsv").string() + " --categories " + (w / "c.tsv").string());
    CHECK(r.status != 0);
    CHECK(r.err.rfind("error: IoError:", 0) == 0);

    {
        std::ofstream(w / "e.tsv") << "0\t1\n";
    }
    const auto base = "--edges " + (w / "e.tsv").string() + " --categories " + (w / "c.tsv").string();
    r = w.run("sample " + base + " --sampler rw --n 5 -o " + (w / "t.jsonl").string());
    REQUIRE(r.status == 0);
    r = w.run("observe " + base + " --trace " + (w / "t.jsonl").string() + " --mode induced -o " +
              (w / "l.jsonl").string());
    REQUIRE(r.status == 0);
    r = w.run("estimate --log " + (w / "l.jsonl").string() + " --size-est star --weight-est star");
    CHECK(r.status != 0);
    CHECK(r.err.rfind("error: WrongObservationMode:", 0) == 0);

    r = w.run("sample " + base + " --sampler bogus --n 5");
    CHECK(r.status != 0);

    r = w.run("frobnicate");
    CHECK(r.status != 0);
}

TEST_CASE("evaluate writes a CSV report") {
    Workdir w;
    {
        std::ofstream(w / "exp.json") << R"({
            "graph": {"synthetic": {"category_sizes": [20, 40], "k": 4, "seed": 1}},
            "samplers": ["uis"], "sample_sizes": [20, 40], "replicates": 3, "seed": 4
        })";
    }
    const auto r = w.run("evaluate --config " + (w / "exp.json").string());
    REQUIRE_MESSAGE(r.status == 0, r.err);
    CHECK(r.out.rfind("quantity_kind,sampler,mode,estimator,n,", 0) == 0);
    CHECK(r.out.find("\nsize,uis,induced,induced,20,") != std::string::npos);
}

}
