#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "gprank/experiments.hpp"
#include "gprank/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::current_path() / "cli_work";

struct Outcome {
    int status;
    std::string output;
};

Outcome run(const std::string& args) {
    fs::create_directories(kWork);
    const fs::path log = kWork / "last.log";
    const std::string cmd = "cd '" + kWork.string() + "' && '" GPRANK_CLI_PATH "' " + args + " > '" + log.string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, buf.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(kWork / p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
    const auto help = run("--help");
    CHECK(help.status == 0);
    CHECK(help.output.find("graphgen") != std::string::npos);
    CHECK(run("graphgen --help").status == 0);

    const auto missing = run("graphgen --model ird --out g");
    CHECK(missing.status == 1);
    CHECK(missing.output.find("--n") != std::string::npos);

    CHECK(run("graphgen --model ird --n 10 --out g --bogus 3").status == 1);
    CHECK(run("graphgen --model foo --n 10 --out g").status == 1);
    CHECK(run("").status == 1);

    const auto bad_alpha = run("graphgen --model ird --n 10 --alpha 0.5 --out g");
    CHECK(bad_alpha.status == 1);
    CHECK(bad_alpha.output.find("alpha") != std::string::npos);
}

TEST_CASE("malformed config names the field; runtime failures exit 2") {
    {
        std::ofstream(kWork / "bad.json") << R"({"replications": 2, "seeed": 4})";
    }
    const auto bad = run("experiment venn --config bad.json --out r.json");
    CHECK(bad.status == 1);
    CHECK(bad.output.find("seeed") != std::string::npos);
    {
        std::ofstream(kWork / "broken.json") << "{ not json";
    }
    CHECK(run("experiment venn --config broken.json --out r.json").status == 1);
    CHECK(run("pagerank --graph does_not_exist --out r.csv").status == 2);
    CHECK(run("graphgen --model dcm --mode repeated --n 3000 --dependence power --out rep").status == 2);
}

TEST_CASE("graphgen then pagerank is byte-reproducible and carries the digest") {
    REQUIRE(run("graphgen --model ird --n 3000 --seed 9 --out a/g").status == 0);
    REQUIRE(run("pagerank --graph a/g --out a/ranks.csv").status == 0);
    REQUIRE(run("graphgen --model ird --n 3000 --seed 9 --out b/g").status == 0);
    REQUIRE(run("pagerank --graph b/g --out b/ranks.csv").status == 0);
    CHECK(slurp("a/g.edges.csv") == slurp("b/g.edges.csv"));
    CHECK(slurp("a/ranks.csv") == slurp("b/ranks.csv"));
    CHECK(slurp("a/ranks.json") == slurp("b/ranks.json"));

    const json header = json::parse(slurp("a/g.json"));
    const json manifest = json::parse(slurp("a/g.manifest.json"));
    CHECK(header["manifest_digest"] == manifest["config_digest"]);
    CHECK(manifest["outputs"].size() == 3);
    CHECK(manifest.contains("started_utc"));
    const json sidecar = json::parse(slurp("a/ranks.json"));
    CHECK(sidecar["iterations"] == 30);
    CHECK(sidecar["residual_bound"].get<double>() == doctest::Approx(std::pow(0.85, 31)));
}

TEST_CASE("the CLI pipeline matches the first Venn replication") {
    REQUIRE(run("graphgen --model ird --n 4000 --seed 5 --dependence power --out p/g").status == 0);
    REQUIRE(run("pagerank --graph p/g --out p/ranks.csv").status == 0);
    {
        std::ofstream(kWork / "venn.json") << R"({"n": 4000, "dependence": "power", "replications": 1, "seed": 5})";
    }
    REQUIRE(run("experiment venn --config venn.json --out p/venn.json --csv p/venn.csv").status == 0);
    const gprank::DiGraph g = gprank::io::read_graph(kWork / "p/g");
    gprank::RankVector ranks;
    ranks.values = gprank::io::read_samples(kWork / "p/ranks.csv", 1);
    const gprank::VennCounts c = gprank::venn_counts(g, ranks, 0.05);
    const json report = json::parse(slurp("p/venn.json"));
    const json rep0 = report["result"]["per_replication"][0];
    CHECK(rep0["regions"] == json(c.regions));
    CHECK(rep0["h_overlap"] == json(c.h_overlap));
    CHECK(slurp("p/venn.csv").rfind("replication,n,", 0) == 0);
}

TEST_CASE("wbp and stats subcommands") {
    REQUIRE(run("graphgen --model dcm --n 2000 --seed 3 --out w/g").status == 0);
    REQUIRE(run("wbp --law dcm --source w/g.attrs.csv --pool 5000 --gens 10 --rstar 4000 --seed 2 --out w/s.csv").status == 0);
    const json meta = json::parse(slurp("w/s.json"));
    CHECK(meta["r_star"]["count"] == 4000);
    CHECK(meta["rho1_estimate"].get<double>() < 1.0);
    REQUIRE(run("wbp --law ird --pool 3000 --gens 10 --rstar 3000 --tree-draws 50 --depth 3 --out w/t.csv").status == 0);
    CHECK(json::parse(slurp("w/t.json"))["tree"]["depth"] == 3);
    const auto dcm_floor = run("wbp --law dcm --pool 100 --out w/x.csv");
    CHECK(dcm_floor.status == 1);
    CHECK(dcm_floor.output.find("degree_mode") != std::string::npos);

    REQUIRE(run("stats w1 --a w/s.csv --b w/s.csv --out w/w1.json").status == 0);
    CHECK(json::parse(slurp("w/w1.json"))["w1"] == 0.0);
    REQUIRE(run("stats hill --in w/s.csv --k-frac 0.05 --reference w/s.csv --out w/h.json").status == 0);
    const json hill = json::parse(slurp("w/h.json"));
    CHECK(hill["k_used"] == 200);
    CHECK(hill["tail_ratio"].size() == 3);
}
