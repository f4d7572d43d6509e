// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gprank/branching.hpp"
#include "gprank/experiments.hpp"
#include "gprank/graphgen.hpp"
#include "gprank/pagerank.hpp"
#include "gprank/stats.hpp"
#include "oracles.hpp"

using namespace gprank;
namespace fs = std::filesystem;

namespace {

// Reference values from the published Venn table and text.
constexpr double kDepOnlyC = 54.39;       // Aᶜ∩Bᶜ∩C, dependent
constexpr double kDepAllThree = 4.59;     // A∩B∩C, dependent
constexpr double kIndepOnlyC = 16.7;      // Aᶜ∩Bᶜ∩C, independent
constexpr double kIndepNone = 76.5;       // (A∪B∪C)ᶜ, independent
constexpr double kIndepAH = 3.43;         // A∩H, independent
constexpr double kMeanDegree = 10.91;

// Pinned tolerances.
constexpr double kCellTolerance = 1.5;    // percentage points
constexpr double kEmptyCellLimit = 0.1;   // A∩Bᶜ∩Cᶜ, percentage points
constexpr double kCRatio = 2.5;
constexpr double kAHRatio = 3.0;
constexpr double kDegreeTolerance = 0.2;
constexpr double kOtTolerance = 1e-10;
constexpr double kTriangleSlack = 1e-12;
constexpr double kHillGap = 0.3;
constexpr double kSigmas = 3.0;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double x, int digits = 3) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

ExperimentConfig reference_config(Dependence dep) {
    ExperimentConfig cfg;
    cfg.model = GraphModel::ird;
    cfg.attributes.dependence = dep;
    cfg.seed = 20240501;
    return cfg;
}

struct VennPair {
    VennResult independent;
    VennResult dependent;
};

const VennPair& venn_runs() {
    static const VennPair runs{run_venn(reference_config(Dependence::independent)),
                               run_venn(reference_config(Dependence::power_coupled))};
    return runs;
}

Verdict venn_dependent() {
    const auto& r = venn_runs().dependent;
    const double only_c = r.cell("Aᶜ∩Bᶜ∩C");
    const double all = r.cell("A∩B∩C");
    const bool pass = std::fabs(only_c - kDepOnlyC) <= kCellTolerance && std::fabs(all - kDepAllThree) <= kCellTolerance;
    return {pass, "Aᶜ∩Bᶜ∩C=" + fmt(only_c, 2) + " (target " + fmt(kDepOnlyC, 2) + "), A∩B∩C=" + fmt(all, 2) +
                      " (target " + fmt(kDepAllThree, 2) + "), tolerance ±" + fmt(kCellTolerance, 1) + " pp"};
}

Verdict venn_independent() {
    const auto& r = venn_runs();
    const double only_c = r.independent.cell("Aᶜ∩Bᶜ∩C");
    const double none = r.independent.cell("(A∪B∪C)ᶜ");
    const double ah = r.independent.overlap("A∩H");
    const double empty_indep = r.independent.cell("A∩Bᶜ∩Cᶜ");
    const double empty_dep = r.dependent.cell("A∩Bᶜ∩Cᶜ");
    const bool pass = std::fabs(only_c - kIndepOnlyC) <= kCellTolerance && std::fabs(none - kIndepNone) <= kCellTolerance &&
                      std::fabs(ah - kIndepAH) <= kCellTolerance && empty_indep <= kEmptyCellLimit &&
                      empty_dep <= kEmptyCellLimit;
    return {pass, "Aᶜ∩Bᶜ∩C=" + fmt(only_c, 2) + ", (A∪B∪C)ᶜ=" + fmt(none, 2) + ", A∩H=" + fmt(ah, 2) +
                      ", A∩Bᶜ∩Cᶜ indep/dep=" + fmt(empty_indep, 2) + "/" + fmt(empty_dep, 2)};
}

Verdict contrasts() {
    const auto& r = venn_runs();
    const double c_ratio = r.dependent.c_percentage() / r.independent.c_percentage();
    const double ah_ratio = r.independent.overlap("A∩H") / r.dependent.overlap("A∩H");
    return {c_ratio >= kCRatio && ah_ratio >= kAHRatio,
            "|C| dep/indep=" + fmt(r.dependent.c_percentage(), 2) + "/" + fmt(r.independent.c_percentage(), 2) + "=" +
                fmt(c_ratio, 2) + " (need ≥" + fmt(kCRatio, 1) + "), A∩H indep/dep=" + fmt(ah_ratio, 2) + " (need ≥" +
                fmt(kAHRatio, 1) + ")"};
}

Verdict mean_degree() {
    double worst = 0.0;
    std::string values;
    for (auto dep : {Dependence::independent, Dependence::power_coupled}) {
        double total = 0.0;
        const int graphs = 10;
        for (int g = 0; g < graphs; ++g) {
            RandomStream rng(777, static_cast<std::uint64_t>(g));
            const DiGraph graph = generate_graph(reference_config(dep), rng);
            total += static_cast<double>(graph.edge_count()) / static_cast<double>(graph.size());
        }
        const double mean = total / graphs;
        worst = std::max(worst, std::fabs(mean - kMeanDegree));
        values += (values.empty() ? "" : ", ") + std::string(to_string(dep)) + "=" + fmt(mean, 3);
    }
    return {worst <= kDegreeTolerance, "mean in-degree " + values + " (target " + fmt(kMeanDegree, 2) + " ±" +
                                           fmt(kDegreeTolerance, 1) + ")"};
}

Verdict truncation_bound() {
    int violations = 0;
    int checks = 0;
    double worst_ratio = 0.0;
    for (int g = 0; g < 50; ++g) {
        ExperimentConfig cfg = reference_config(g % 2 ? Dependence::power_coupled : Dependence::independent);
        cfg.attributes.n = g % 3 == 0 ? 1000 : 100;
        if (g % 4 >= 2) {
            cfg.model = GraphModel::dcm;
            cfg.attributes.degree_mode = DegreeMode::floor;
        }
        RandomStream rng(555, static_cast<std::uint64_t>(g));
        const DiGraph graph = generate_graph(cfg, rng);
        double mean_q = 0.0;
        for (const auto& a : graph.attributes()) mean_q += std::fabs(a.q);
        mean_q /= static_cast<double>(graph.size());
        for (int k : {5, 10, 30}) {
            const auto rk = compute_pagerank(graph, 0.85, k).values;
            const auto r2k = compute_pagerank(graph, 0.85, 2 * k).values;
            double l1 = 0.0;
            for (std::size_t i = 0; i < rk.size(); ++i) l1 += std::fabs(rk[i] - r2k[i]);
            const double lhs = l1 / static_cast<double>(graph.size());
            const double bound = iteration_error_bound(0.85, k, mean_q);
            worst_ratio = std::max(worst_ratio, lhs / bound);
            violations += lhs > bound;
            ++checks;
        }
    }
    return {violations == 0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                                 " violations, largest lhs/bound=" + fmt(worst_ratio, 3)};
}

Verdict convergence_trend() {
    bool pass = true;
    std::string detail;
    for (auto model : {GraphModel::ird, GraphModel::dcm}) {
        for (auto dep : {Dependence::independent, Dependence::power_coupled}) {
            ExperimentConfig cfg = reference_config(dep);
            cfg.model = model;
            cfg.attributes.degree_mode = model == GraphModel::dcm ? DegreeMode::floor : DegreeMode::weights;
            const auto rows = run_convergence(cfg);
            bool decreasing = true;
            for (std::size_t i = 1; i < rows.size(); ++i) decreasing &= rows[i].mean_distance < rows[i - 1].mean_distance;
            pass &= decreasing;
            detail += (detail.empty() ? "" : "; ") + std::string(to_string(model)) + "/" + std::string(to_string(dep)) + ":";
            for (const auto& row : rows) detail += " " + fmt(row.mean_distance, 4);
        }
    }
    return {pass, "mean d1 over n=100,1000,10000 -> " + detail};
}

Verdict fixed_point_identities() {
    RandomStream pick(31337);
    int failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        // Randomized law: mixed Poisson offspring, signed weights, shifted personalization.
        const double mean_n = 0.5 + 4.0 * pick.uniform();
        const double c_max = (0.3 + 0.55 * pick.uniform()) / mean_n * 1.6;
        const double q_shift = pick.uniform() - 0.3;
        const double neg = 0.3 * pick.uniform();
        auto generic = [=](RandomStream& rng) {
            const auto n = rng.poisson(mean_n * rng.exponential());
            double c = c_max * rng.uniform();
            if (rng.uniform() < neg) c = -c;
            return GenericDraw{n, q_shift + rng.uniform(), c};
        };
        auto root = [=](RandomStream& rng) { return RootDraw{rng.poisson(mean_n), q_shift + 2.0 * rng.uniform()}; };
        const BranchingLaw law(root, generic);

        RandomStream rng(4242, static_cast<std::uint64_t>(trial));
        const std::size_t draws = 1'000'000;
        std::vector<double> cq(draws), nc(draws), nabs(draws);
        for (std::size_t i = 0; i < draws; ++i) {
            const GenericDraw g = law.sample_generic(rng);
            cq[i] = g.c * g.q;
            nc[i] = static_cast<double>(g.n) * g.c;
            nabs[i] = static_cast<double>(g.n) * std::fabs(g.c);
        }
        const auto mcq = oracle::moments(cq);
        const auto mnc = oracle::moments(nc);
        const double rho1 = oracle::moments(nabs).mean;
        if (rho1 >= 0.9) {
            --trial;
            continue;
        }
        const double expected_x = mcq.mean / (1 - mnc.mean);
        const double oracle_se = std::hypot(mcq.standard_error, expected_x * mnc.standard_error) / (1 - mnc.mean);

        const FixedPointPool pool = population_dynamics(law, {100'000, 60, 1}, rng);
        const auto pm = oracle::moments(pool.samples);
        const double z_pool = std::fabs(pm.mean - expected_x) / std::hypot(pm.standard_error, oracle_se);

        std::vector<double> roots(draws);
        std::vector<double> root_n(draws);
        for (std::size_t i = 0; i < draws; ++i) {
            const RootDraw r = law.sample_root(rng);
            roots[i] = r.q0;
            root_n[i] = static_cast<double>(r.n0);
        }
        const auto mq0 = oracle::moments(roots);
        const auto mn0 = oracle::moments(root_n);
        const double expected_r = mq0.mean + mn0.mean * pm.mean;
        const EmpiricalDistribution rs = sample_r_star(law, pool, 100'000, rng);
        const double se_r = std::hypot(rs.standard_error(), mq0.standard_error, mn0.mean * pm.standard_error);
        const double z_r = std::fabs(rs.mean() - expected_r) / se_r;
        worst = std::max({worst, z_pool, z_r});
        failures += z_pool > kSigmas || z_r > kSigmas;
    }
    return {failures == 0, "10 laws with rho1<0.9, " + std::to_string(failures) + " outside 3 s.e., largest |z|=" +
                               fmt(worst, 2)};
}

Verdict wasserstein_oracle() {
    RandomStream rng(8080);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        std::vector<double> a(1 + rng.below(6)), b(1 + rng.below(6));
        for (auto& x : a) x = rng.uniform() * 10 - 5;
        for (auto& x : b) x = rng.uniform() * 10 - 5;
        const double got = wasserstein1(EmpiricalDistribution(a), EmpiricalDistribution(b));
        worst = std::max(worst, std::fabs(got - oracle::transport_cost(a, b)));
    }
    int axiom_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng.below(50);
        std::vector<double> a(n), b(n), c(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = rng.pareto(1.5, 1.0);
            b[j] = rng.uniform() * 4;
            c[j] = rng.exponential();
        }
        const EmpiricalDistribution da(a), db(b), dc(c);
        const double ab = wasserstein1(da, db), ba = wasserstein1(db, da);
        const double bc = wasserstein1(db, dc), ac = wasserstein1(da, dc);
        axiom_failures += !(ab == ba && wasserstein1(da, da) == 0.0 && ab >= 0.0 && ac <= ab + bc + kTriangleSlack);
    }
    return {worst <= kOtTolerance && axiom_failures == 0,
            "max |w1 - transport LP| over 200 instances=" + [&] {
                std::ostringstream s;
                s << worst;
                return s.str();
            }() + ", metric-axiom failures on 1000 triples=" + std::to_string(axiom_failures)};
}

Verdict tail_behaviour() {
    ExperimentConfig cfg = reference_config(Dependence::independent);
    cfg.tail.graphs = 5;
    cfg.tail.draws = 1'000'000;
    const TailStudy s = run_tail(cfg);
    bool decreasing = true;
    for (std::size_t i = 1; i < s.degeneracy_ratio.size(); ++i) {
        decreasing &= s.degeneracy_ratio[i].second < s.degeneracy_ratio[i - 1].second;
    }
    std::string curve;
    for (const auto& [x, r] : s.degeneracy_ratio) curve += " " + fmt(r, 4);
    return {s.mean_abs_difference <= kHillGap && decreasing,
            "mean |hill(R)-hill(D-)|=" + fmt(s.mean_abs_difference, 3) + " (limit " + fmt(kHillGap, 1) +
                "); P(CN>x)/P(N0>x) at p=0.1,0.01,0.001:" + curve};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Verdict determinism() {
    const fs::path work = fs::current_path() / "acceptance_determinism";
    fs::remove_all(work);
    fs::create_directories(work);
    {
        std::ofstream(work / "venn.json") << R"({"model": "ird", "dependence": "independent", "seed": 99})";
    }
    auto pipeline = [&](const std::string& tag) {
        const std::string cli = GPRANK_CLI_PATH;
        const std::string dir = (work / tag).string();
        const std::string cmd = "cd '" + work.string() + "' && '" + cli + "' graphgen --model ird --n 10000 --seed 99 --out '" +
                                dir + "/g' > /dev/null && '" + cli + "' pagerank --graph '" + dir + "/g' --out '" + dir +
                                "/ranks.csv' && '" + cli + "' experiment venn --config venn.json --out '" + dir +
                                "/venn.json'";
        return std::system(cmd.c_str());
    };
    if (pipeline("first") != 0 || pipeline("second") != 0) return {false, "pipeline command failed"};
    bool same = true;
    for (const char* f : {"g.edges.csv", "g.attrs.csv", "g.json", "ranks.csv", "ranks.json", "venn.json"}) {
        same &= slurp(work / "first" / f) == slurp(work / "second" / f);
    }
    // In-process rerun with a different worker count must also agree.
    ExperimentConfig cfg = reference_config(Dependence::independent);
    cfg.replications = 4;
    cfg.attributes.n = 3000;
    const std::string one = to_json(run_venn(cfg)).dump();
    cfg.workers = 3;
    same &= one == to_json(run_venn(cfg)).dump();
    return {same, same ? "graph, rank CSV and Venn report byte-identical across reruns and worker counts"
                       : "outputs differ between identical runs"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 Venn table, dependent case", venn_dependent},
        {"2 Venn table, independent case", venn_independent},
        {"3 dependent/independent contrasts", contrasts},
        {"4 mean degree", mean_degree},
        {"5 truncation error bound", truncation_bound},
        {"6 d1 convergence trend", convergence_trend},
        {"7 fixed-point mean identities", fixed_point_identities},
        {"8 Wasserstein oracle and metric axioms", wasserstein_oracle},
        {"9 tail indexes and neighbor degeneracy", tail_behaviour},
        {"10 determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << v.detail << " [" << fmt(secs, 1)
                  << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
