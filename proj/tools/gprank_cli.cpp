// gprank: command-line front end for graph generation, PageRank, the
// branching-process limit, distribution statistics and the experiments.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gprank/branching.hpp"
#include "gprank/experiments.hpp"
#include "gprank/graphgen.hpp"
#include "gprank/io.hpp"
#include "gprank/kernels.hpp"
#include "gprank/pagerank.hpp"
#include "gprank/random.hpp"
#include "gprank/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gprank;

namespace {

constexpr const char* kVersion = "1.0.0";

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << x;
    return s.str();
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a(buf.str()));
}

// `out.csv` -> `out`, `prefix` -> `prefix`; used to name sidecars.
fs::path strip_known_extension(const fs::path& out) {
    const auto ext = out.extension();
    if (ext == ".csv" || ext == ".json") return fs::path(out).replace_extension();
    return out;
}

/// One run: the digest is computed from the effective parameters only, so it
/// is identical across reruns; the manifest lists every output with its own
/// content hash.
class Run {
public:
    Run(std::string command, json params, std::uint64_t seed, std::string argv)
        : command_(std::move(command)), params_(std::move(params)), seed_(seed), argv_(std::move(argv)),
          started_(utc_now()) {
        json keyed = {{"command", command_}, {"params", params_}, {"seed", seed_}};
        digest_ = hex64(fnv1a(keyed.dump()));
    }

    [[nodiscard]] const std::string& digest() const { return digest_; }

    /// Stamp for JSON outputs.
    [[nodiscard]] json stamp() const { return {{"manifest_digest", digest_}, {"command", command_}, {"seed", seed_}}; }

    void produced(const fs::path& path) { outputs_.push_back(path); }

    void finish(const fs::path& manifest_path) const {
        json outputs = json::array();
        for (const auto& p : outputs_) outputs.push_back({{"path", p.string()}, {"fnv1a", file_digest(p)}});
        json manifest = {{"command_line", argv_},
                         {"command", command_},
                         {"seed", seed_},
                         {"config", params_},
                         {"config_digest", digest_},
                         {"started_utc", started_},
                         {"finished_utc", utc_now()},
                         {"versions",
                          {{"gprank", kVersion},
                           {"kernels", std::string(kernels::isa_name(kernels::active_isa()))},
                           {"compiler", __VERSION__},
                           {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR)}}},
                         {"outputs", outputs}};
        io::write_json(manifest_path, manifest);
    }

private:
    std::string command_;
    json params_;
    std::uint64_t seed_;
    std::string argv_;
    std::string started_;
    std::string digest_;
    std::vector<fs::path> outputs_;
};

std::string joined_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// ---------------------------------------------------------------- graphgen

struct GraphgenArgs {
    std::string model;
    std::string mode = "multigraph";
    std::size_t n = 0;
    double alpha = 1.5, b = 8.0, beta = 2.5, cscale = 12.0, damping = 0.85;
    std::string dependence = "independent";
    std::string degree_mode;
    std::string theta = "empirical";
    std::uint64_t seed = 1;
    std::string out;
};

void add_attribute_flags(CLI::App* cmd, GraphgenArgs& a) {
    cmd->add_option("--alpha", a.alpha, "In-parameter tail index")->capture_default_str();
    cmd->add_option("--b", a.b, "In-parameter scale")->capture_default_str();
    cmd->add_option("--beta", a.beta, "Out-parameter tail index")->capture_default_str();
    cmd->add_option("--cscale", a.cscale, "Out-parameter scale")->capture_default_str();
    cmd->add_option("--dependence", a.dependence, "independent|power")->capture_default_str();
    cmd->add_option("--degree-mode", a.degree_mode, "weights|floor|mixed_poisson (default: weights for ird, floor for dcm)");
    cmd->add_option("--damping", a.damping, "Damping factor c; sets zeta = c and q = 1 - c")->capture_default_str();
}

ExperimentConfig graph_config(const GraphgenArgs& a) {
    ExperimentConfig cfg;
    cfg.model = graph_model_from_string(a.model);
    cfg.dcm_mode = dcm_mode_from_string(a.mode);
    auto& at = cfg.attributes;
    at.n = a.n;
    at.alpha = a.alpha;
    at.b = a.b;
    at.beta = a.beta;
    at.c_scale = a.cscale;
    at.damping = a.damping;
    at.dependence = dependence_from_string(a.dependence);
    at.degree_mode = a.degree_mode.empty()
                         ? (cfg.model == GraphModel::dcm ? DegreeMode::floor : DegreeMode::weights)
                         : degree_mode_from_string(a.degree_mode);
    if (a.theta == "empirical") cfg.theta = ThetaMode::empirical;
    else if (a.theta == "analytic") cfg.theta = ThetaMode::analytic;
    else throw std::invalid_argument("theta: expected empirical|analytic");
    cfg.seed = a.seed;
    cfg.validate();
    return cfg;
}

void run_graphgen(const GraphgenArgs& a, const std::string& argv) {
    const ExperimentConfig cfg = graph_config(a);
    json params = to_json(cfg);
    for (const char* key : {"convergence", "tail", "replications", "top_fraction", "iterations"}) params.erase(key);
    Run run("graphgen", params, a.seed, argv);
    // Stream 0 of the seed, the same one experiment venn uses for its first replication.
    RandomStream rng(a.seed, 0);
    const DiGraph graph = generate_graph(cfg, rng);
    json header = run.stamp();
    header["config"] = params;
    header["simple"] = graph.is_simple();
    const fs::path prefix = a.out;
    io::write_graph(prefix, graph, header);
    run.produced(io::with_suffix(prefix, ".edges.csv"));
    run.produced(io::with_suffix(prefix, ".attrs.csv"));
    run.produced(io::with_suffix(prefix, ".json"));
    run.finish(io::with_suffix(prefix, ".manifest.json"));
    std::cout << "wrote " << graph.size() << " vertices, " << graph.edge_count() << " edges to " << prefix.string()
              << ".*\n";
}

// ---------------------------------------------------------------- pagerank

struct PagerankArgs {
    std::string graph;
    double damping = 0.85;
    int iters = kDefaultPagerankIterations;
    std::optional<double> tol;
    std::string out;
};

void run_pagerank(const PagerankArgs& a, const std::string& argv) {
    json params = {{"damping", a.damping}, {"iters", a.iters}};
    if (a.tol) params["tol"] = *a.tol;
    const json header = io::read_graph_header(a.graph);
    params["graph_fnv1a"] = file_digest(io::with_suffix(a.graph, ".edges.csv")) + "-" +
                            file_digest(io::with_suffix(a.graph, ".attrs.csv"));
    if (header.contains("manifest_digest")) params["graph_digest"] = header["manifest_digest"];
    Run run("pagerank", params, header.value("seed", std::uint64_t{0}), argv);
    const DiGraph graph = io::read_graph(a.graph);
    const RankVector ranks =
        a.tol ? compute_pagerank_to_tolerance(graph, a.damping, *a.tol) : compute_pagerank(graph, a.damping, a.iters);
    const fs::path out = a.out;
    const fs::path base = strip_known_extension(out);
    io::write_ranks(out, ranks.values);
    run.produced(out);
    json sidecar = run.stamp();
    sidecar["ranks"] = out.filename().string();
    sidecar["iterations"] = ranks.iterations;
    sidecar["residual_bound"] = ranks.residual_bound;
    sidecar["damping"] = ranks.damping;
    sidecar["n"] = graph.size();
    io::write_json(io::with_suffix(base, ".json"), sidecar);
    run.produced(io::with_suffix(base, ".json"));
    run.finish(io::with_suffix(base, ".manifest.json"));
}

// ---------------------------------------------------------------- wbp

struct WbpArgs {
    std::string law;
    std::string source = "analytic";
    GraphgenArgs attrs;
    std::optional<double> theta;
    std::size_t pool = 100'000;
    int gens = 20;
    std::size_t rstar = 100'000;
    int depth = 30;
    std::size_t tree_draws = 0;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out;
};

std::vector<VertexAttributes> read_attribute_table(const fs::path& path) {
    const auto in = io::read_samples(path, 1);
    const auto out = io::read_samples(path, 2);
    const auto q = io::read_samples(path, 3);
    const auto zeta = io::read_samples(path, 4);
    std::vector<VertexAttributes> attrs(in.size());
    for (std::size_t v = 0; v < in.size(); ++v) attrs[v] = {in[v], out[v], q[v], zeta[v]};
    if (attrs.empty()) throw std::invalid_argument("source: attribute table is empty");
    return attrs;
}

void run_wbp(WbpArgs a, const std::string& argv) {
    json params = {{"law", a.law},  {"source", a.source == "analytic" ? "analytic" : "table"}, {"pool", a.pool},   {"gens", a.gens},
                   {"rstar", a.rstar}, {"depth", a.depth}, {"tree_draws", a.tree_draws}};
    std::optional<BranchingLaw> law;
    if (a.law != "dcm" && a.law != "ird") throw std::invalid_argument("law: expected dcm|ird");
    if (a.source == "analytic") {
        a.attrs.model = a.law;
        a.attrs.n = 2;
        const ExperimentConfig cfg = graph_config(a.attrs);
        json att = to_json(cfg);
        for (const char* key : {"convergence", "tail", "replications", "top_fraction", "iterations", "n", "dcm_mode"})
            att.erase(key);
        params["attributes"] = att;
        if (a.theta) params["theta"] = *a.theta;
        law = a.law == "dcm" ? law_from_dcm(cfg.attributes) : law_from_ird(cfg.attributes, a.theta);
    } else {
        const auto attrs = read_attribute_table(a.source);
        params["source_fnv1a"] = file_digest(a.source);
        if (a.law == "dcm") {
            law = law_from_dcm(attrs);
        } else {
            const double theta = a.theta.value_or(empirical_theta(attrs));
            params["theta"] = theta;
            law = law_from_ird(attrs, theta);
        }
    }
    Run run("wbp", params, a.seed, argv);
    RandomStream rng(a.seed, 0);
    PopulationOptions options;
    options.pool_size = a.pool;
    options.generations = a.gens;
    options.workers = a.workers;
    const FixedPointPool pool = population_dynamics(*law, options, rng);
    const EmpiricalDistribution r_star = sample_r_star(*law, pool, a.rstar, rng, a.workers);
    if (pool.rho1_warning) {
        std::cerr << "warning: estimated rho1 = " << pool.rho1_estimate << " is close to 1; the pool may converge slowly\n";
    }
    const fs::path out = a.out;
    const fs::path base = strip_known_extension(out);
    const std::vector<double> samples(r_star.sorted_samples().begin(), r_star.sorted_samples().end());
    io::write_samples(out, samples);
    run.produced(out);

    const EmpiricalDistribution pool_dist(pool.samples);
    double second = 0.0;
    for (double x : pool.samples) second += x * x;
    json meta = run.stamp();
    meta["samples"] = out.filename().string();
    meta["rho1_estimate"] = pool.rho1_estimate;
    meta["rho1_warning"] = pool.rho1_warning;
    meta["generations"] = pool.generation;
    meta["pool"] = {{"size", pool.samples.size()},
                    {"mean", pool_dist.mean()},
                    {"second_moment", second / static_cast<double>(pool.samples.size())},
                    {"median", pool_dist.quantile(0.5)},
                    {"q99", pool_dist.quantile(0.99)}};
    meta["r_star"] = {{"count", r_star.count()}, {"mean", r_star.mean()}, {"standard_error", r_star.standard_error()}};

    if (a.tree_draws > 0) {
        RandomStream tree_rng = rng.split(1);
        std::vector<double> tree;
        std::size_t exceeded = 0;
        for (std::size_t i = 0; i < a.tree_draws; ++i) {
            const TreeRank t = simulate_tree_rank(*law, a.depth, tree_rng);
            if (t.status == TreeStatus::ok) tree.push_back(t.value);
            else ++exceeded;
        }
        const fs::path tree_path = io::with_suffix(base, ".tree.csv");
        io::write_samples(tree_path, tree);
        run.produced(tree_path);
        meta["tree"] = {{"depth", a.depth}, {"draws", tree.size()}, {"budget_exceeded", exceeded}};
        if (!tree.empty()) meta["tree"]["w1_to_r_star"] = wasserstein1(EmpiricalDistribution(tree), r_star);
    }
    io::write_json(io::with_suffix(base, ".json"), meta);
    run.produced(io::with_suffix(base, ".json"));
    run.finish(io::with_suffix(base, ".manifest.json"));
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    std::string a, b, in;
    std::size_t column = 0;
    double k_frac = kDefaultHillFraction;
    std::vector<double> grid;
    std::string out;
};

void emit(const json& doc, const std::string& out, Run& run) {
    if (out.empty()) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    const fs::path path = out;
    io::write_json(path, doc);
    run.produced(path);
    run.finish(io::with_suffix(strip_known_extension(path), ".manifest.json"));
}

void run_w1(const StatsArgs& s, const std::string& argv) {
    Run run("stats w1", {{"a_fnv1a", file_digest(s.a)}, {"b_fnv1a", file_digest(s.b)}, {"column", s.column}}, 0, argv);
    const EmpiricalDistribution a(io::read_samples(s.a, s.column));
    const EmpiricalDistribution b(io::read_samples(s.b, s.column));
    json doc = run.stamp();
    doc["w1"] = wasserstein1(a, b);
    doc["count_a"] = a.count();
    doc["count_b"] = b.count();
    emit(doc, s.out, run);
}

void run_hill(const StatsArgs& s, const std::string& argv) {
    json params = {{"in_fnv1a", file_digest(s.in)}, {"column", s.column}, {"k_frac", s.k_frac}, {"grid", s.grid}};
    if (!s.b.empty()) params["reference_fnv1a"] = file_digest(s.b);
    Run run("stats hill", params, 0, argv);
    const EmpiricalDistribution d(io::read_samples(s.in, s.column));
    const std::size_t k = hill_k_for_fraction(d.count(), s.k_frac);
    const TailReport report = hill_index(d, k);
    json doc = run.stamp();
    doc["hill_index"] = report.hill_index;
    doc["k_used"] = report.k_used;
    doc["count"] = d.count();
    if (!s.b.empty()) {
        const EmpiricalDistribution ref(io::read_samples(s.b, s.column));
        const std::vector<double> grid = s.grid.empty() ? std::vector<double>{0.1, 0.01, 0.001} : s.grid;
        json curve = json::array();
        for (const auto& [x, r] : tail_ratio(d, ref, grid)) curve.push_back({{"x", x}, {"ratio", r}});
        doc["tail_ratio"] = curve;
    }
    emit(doc, s.out, run);
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
    std::string config;
    std::string out;
    std::string csv;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

void write_csv(const fs::path& path, const std::string& text, Run& run) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << text;
    f.close();
    run.produced(path);
}

void run_experiment(const std::string& kind, const ExperimentArgs& a, const std::string& argv) {
    ExperimentConfig cfg;
    try {
        cfg = experiment_config_from_json(io::read_json(a.config));
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (a.seed) cfg.seed = *a.seed;
    if (a.workers) cfg.workers = *a.workers;
    json params = to_json(cfg);
    Run run("experiment " + kind, params, cfg.seed, argv);

    json report = run.stamp();
    report["config"] = params;
    std::ostringstream csv;
    if (kind == "venn") {
        const VennResult result = run_venn(cfg);
        report["result"] = to_json(result);
        csv << "replication,n";
        for (auto label : kVennRegions) csv << ',' << label;
        for (auto label : kHOverlaps) csv << ',' << label;
        csv << ",size_c\n";
        for (std::size_t r = 0; r < result.per_replication.size(); ++r) {
            const auto& c = result.per_replication[r];
            csv << r << ',' << c.n;
            for (auto x : c.regions) csv << ',' << x;
            for (auto x : c.h_overlap) csv << ',' << x;
            csv << ',' << c.size_c << '\n';
        }
    } else if (kind == "convergence") {
        const auto rows = run_convergence(cfg);
        report["result"] = to_json(rows);
        csv << "n,seed,d1\n";
        for (const auto& row : rows) {
            for (std::size_t s = 0; s < row.distances.size(); ++s) {
                csv << row.n << ',' << s << ',' << io::format_double(row.distances[s]) << '\n';
            }
        }
    } else {
        const TailStudy study = run_tail(cfg);
        report["result"] = to_json(study);
        csv << "curve,p_index,x,ratio\n";
        for (std::size_t i = 0; i < study.degeneracy_ratio.size(); ++i) {
            csv << "degeneracy," << i << ',' << io::format_double(study.degeneracy_ratio[i].first) << ','
                << io::format_double(study.degeneracy_ratio[i].second) << '\n';
        }
        for (std::size_t i = 0; i < study.size_bias_ratio.size(); ++i) {
            csv << "size_bias," << i << ',' << io::format_double(study.size_bias_ratio[i].first) << ','
                << io::format_double(study.size_bias_ratio[i].second) << '\n';
        }
    }
    const fs::path out = a.out;
    io::write_json(out, report);
    run.produced(out);
    if (!a.csv.empty()) write_csv(a.csv, csv.str(), run);
    run.finish(io::with_suffix(strip_known_extension(out), ".manifest.json"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized PageRank on directed random graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    const std::string command_line = joined_argv(argc, argv);
    std::function<void()> action;

    unsigned workers = 1;
    auto add_workers = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::Range(1U, 1024U));
    };

    GraphgenArgs gg;
    auto* graphgen = app.add_subcommand("graphgen", "Sample an attribute sequence and build a DCM or IRD graph");
    graphgen->add_option("--model", gg.model, "dcm|ird")->required()->check(CLI::IsMember({"dcm", "ird"}));
    graphgen->add_option("--mode", gg.mode, "DCM mode: multigraph|repeated|erased")
        ->capture_default_str()
        ->check(CLI::IsMember({"multigraph", "repeated", "erased"}));
    graphgen->add_option("--n", gg.n, "Number of vertices")->required();
    add_attribute_flags(graphgen, gg);
    graphgen->add_option("--theta", gg.theta, "IRD edge scale: empirical|analytic")->capture_default_str();
    graphgen->add_option("--seed", gg.seed, "Master seed")->capture_default_str();
    graphgen->add_option("--out", gg.out, "Output path prefix")->required();
    add_workers(graphgen);
    graphgen->callback([&] { action = [&] { run_graphgen(gg, command_line); }; });

    PagerankArgs pr;
    auto* pagerank = app.add_subcommand("pagerank", "Truncated generalized PageRank of a stored graph");
    pagerank->add_option("--graph", pr.graph, "Graph path prefix")->required();
    pagerank->add_option("--damping", pr.damping, "Damping factor c")->capture_default_str();
    pagerank->add_option("--iters", pr.iters, "Power iterations k")->capture_default_str();
    pagerank->add_option("--tol", pr.tol, "Pick k from the a-priori error bound instead");
    pagerank->add_option("--out", pr.out, "Rank CSV path")->required();
    add_workers(pagerank);
    pagerank->callback([&] { action = [&] { run_pagerank(pr, command_line); }; });

    WbpArgs wb;
    auto* wbp = app.add_subcommand("wbp", "Population dynamics for the rank limit R*");
    wbp->add_option("--law", wb.law, "dcm|ird")->required()->check(CLI::IsMember({"dcm", "ird"}));
    wbp->add_option("--source", wb.source, "Attribute CSV or `analytic`")->capture_default_str();
    add_attribute_flags(wbp, wb.attrs);
    wbp->add_option("--theta", wb.theta, "IRD edge scale (default: mean of W- + W+)");
    wbp->add_option("--pool", wb.pool, "Pool size")->capture_default_str();
    wbp->add_option("--gens", wb.gens, "Pool generations")->capture_default_str();
    wbp->add_option("--rstar", wb.rstar, "R* draws")->capture_default_str();
    wbp->add_option("--depth", wb.depth, "Depth for explicit tree draws")->capture_default_str();
    wbp->add_option("--tree-draws", wb.tree_draws, "Explicit tree draws of R^(depth); 0 disables")->capture_default_str();
    wbp->add_option("--seed", wb.seed, "Master seed")->capture_default_str();
    wbp->add_option("--out", wb.out, "Sample CSV path")->required();
    add_workers(wbp);
    wbp->callback([&] {
        action = [&] {
            wb.workers = workers;
            run_wbp(wb, command_line);
        };
    });

    StatsArgs st;
    auto* stats = app.add_subcommand("stats", "Distribution statistics");
    stats->require_subcommand(1);
    auto* w1 = stats->add_subcommand("w1", "Wasserstein-1 distance between two samples");
    w1->add_option("--a", st.a, "First sample file")->required();
    w1->add_option("--b", st.b, "Second sample file")->required();
    w1->add_option("--column", st.column, "CSV column holding the values")->capture_default_str();
    w1->add_option("--out", st.out, "JSON output (default: stdout)");
    w1->callback([&] { action = [&] { run_w1(st, command_line); }; });
    auto* hill = stats->add_subcommand("hill", "Hill tail index, optionally with a tail ratio against a reference");
    hill->add_option("--in", st.in, "Sample file")->required();
    hill->add_option("--k-frac", st.k_frac, "Fraction of upper order statistics")->capture_default_str();
    hill->add_option("--column", st.column, "CSV column holding the values")->capture_default_str();
    hill->add_option("--reference", st.b, "Reference sample for tail ratios");
    hill->add_option("--grid", st.grid, "Tail probabilities for the ratio curve");
    hill->add_option("--out", st.out, "JSON output (default: stdout)");
    hill->callback([&] { action = [&] { run_hill(st, command_line); }; });

    ExperimentArgs ex;
    auto* experiment = app.add_subcommand("experiment", "Run an experiment from a JSON config");
    experiment->require_subcommand(1);
    for (const char* kind : {"venn", "convergence", "tail"}) {
        auto* sub = experiment->add_subcommand(kind, std::string("Experiment: ") + kind);
        sub->add_option("--config", ex.config, "Config JSON")->required();
        sub->add_option("--out", ex.out, "Report JSON")->required();
        sub->add_option("--csv", ex.csv, "Also write a flat CSV for plotting");
        sub->add_option("--seed", ex.seed, "Override the config seed");
        sub->add_option("--workers", ex.workers, "Override the config worker count");
        const std::string name = kind;
        sub->callback([&, name] { action = [&, name] { run_experiment(name, ex, command_line); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    try {
        if (action) action();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
}
