#include "gprank/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gprank {

std::string_view to_string(Dependence d) { return d == Dependence::independent ? "independent" : "power"; }

Dependence dependence_from_string(std::string_view s) {
    if (s == "independent") return Dependence::independent;
    if (s == "power" || s == "power_coupled") return Dependence::power_coupled;
    throw std::invalid_argument("dependence: expected independent|power, got '" + std::string(s) + "'");
}

std::string_view to_string(DegreeMode m) {
    switch (m) {
        case DegreeMode::weights: return "weights";
        case DegreeMode::floor: return "floor";
        case DegreeMode::mixed_poisson: return "mixed_poisson";
    }
    return "unknown";
}

DegreeMode degree_mode_from_string(std::string_view s) {
    if (s == "weights") return DegreeMode::weights;
    if (s == "floor") return DegreeMode::floor;
    if (s == "mixed_poisson") return DegreeMode::mixed_poisson;
    throw std::invalid_argument("degree_mode: expected weights|floor|mixed_poisson, got '" + std::string(s) + "'");
}

std::string_view to_string(DcmMode m) {
    switch (m) {
        case DcmMode::multigraph: return "multigraph";
        case DcmMode::repeated: return "repeated";
        case DcmMode::erased: return "erased";
    }
    return "unknown";
}

DcmMode dcm_mode_from_string(std::string_view s) {
    if (s == "multigraph") return DcmMode::multigraph;
    if (s == "repeated") return DcmMode::repeated;
    if (s == "erased") return DcmMode::erased;
    throw std::invalid_argument("mode: expected multigraph|repeated|erased, got '" + std::string(s) + "'");
}

void AttributeSequenceConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument(field + ": " + why);
    };
    if (n == 0) fail("n", "vertex count must be positive");
    if (!(alpha > 1.0)) fail("alpha", "in-side Pareto index must exceed 1 (finite mean)");
    if (!(b > 0.0)) fail("b", "in-side Pareto scale must be positive");
    if (!(beta > 1.0)) fail("beta", "out-side Pareto index must exceed 1 (finite mean)");
    if (!(c_scale > 0.0)) fail("c_scale", "out-side Pareto scale must be positive");
    if (!(damping > 0.0 && damping < 1.0)) fail("damping", "must lie in (0, 1)");
    if (!std::isfinite(q())) fail("q_value", "must be finite");
    if (!(std::fabs(zeta()) <= damping * (1.0 + 1e-12))) fail("zeta_value", "|zeta| must not exceed damping");
}

double AttributeSequenceConfig::coupled_out(double in_weight) const {
    return c_scale * std::pow(in_weight / b, alpha / beta);
}

void balance_half_edges(std::vector<VertexAttributes>& attrs, RandomStream& rng) {
    if (attrs.empty()) return;
    double in_total = 0.0;
    double out_total = 0.0;
    for (const auto& a : attrs) {
        in_total += a.in_param;
        out_total += a.out_param;
    }
    const auto delta = static_cast<long long>(in_total - out_total);
    if (delta == 0) return;
    const bool raise_out = delta > 0;
    const auto units = static_cast<std::uint64_t>(delta > 0 ? delta : -delta);
    const std::uint64_t n = attrs.size();
    const auto every = static_cast<double>(units / n);
    const std::uint64_t rest = units % n;
    auto bump = [&](VertexAttributes& a, double by) { (raise_out ? a.out_param : a.in_param) += by; };
    if (every > 0) {
        for (auto& a : attrs) bump(a, every);
    }
    // Partial Fisher-Yates: first `rest` slots are a uniform sample without replacement.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    for (std::uint64_t i = 0; i < rest; ++i) {
        const std::uint64_t j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
        bump(attrs[order[i]], 1.0);
    }
}

std::vector<VertexAttributes> sample_attributes(const AttributeSequenceConfig& config, RandomStream& rng) {
    config.validate();
    std::vector<VertexAttributes> attrs(config.n);
    for (auto& a : attrs) {
        a.in_param = rng.pareto(config.alpha, config.b);
        a.out_param = config.dependence == Dependence::independent ? rng.pareto(config.beta, config.c_scale)
                                                                   : config.coupled_out(a.in_param);
        a.q = config.q();
        a.zeta = config.zeta();
    }
    switch (config.degree_mode) {
        case DegreeMode::weights:
            return attrs;
        case DegreeMode::floor:
            for (auto& a : attrs) {
                a.in_param = std::max(0.0, std::floor(a.in_param));
                a.out_param = std::max(0.0, std::floor(a.out_param));
            }
            break;
        case DegreeMode::mixed_poisson: {
            double in_sum = 0.0;
            double out_sum = 0.0;
            for (const auto& a : attrs) {
                in_sum += a.in_param;
                out_sum += a.out_param;
            }
            const double n = static_cast<double>(attrs.size());
            const double theta = (in_sum + out_sum) / n;
            const double in_mean = in_sum / n;
            const double out_mean = out_sum / n;
            for (auto& a : attrs) {
                const double in_rate = out_mean * a.in_param / theta;
                const double out_rate = in_mean * a.out_param / theta;
                a.in_param = static_cast<double>(rng.poisson(in_rate));
                a.out_param = static_cast<double>(rng.poisson(out_rate));
            }
            break;
        }
    }
    balance_half_edges(attrs, rng);
    return attrs;
}

namespace {

std::uint64_t checked_degree(double value, const char* side, std::size_t vertex) {
    if (!(value >= 0.0) || value != std::floor(value) || value > 4e9) {
        throw std::invalid_argument(std::string("build_dcm: ") + side + " of vertex " + std::to_string(vertex) +
                                    " is not a non-negative integer");
    }
    return static_cast<std::uint64_t>(value);
}

template <class T>
void shuffle(std::vector<T>& v, RandomStream& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

DcmResult build_dcm(std::vector<VertexAttributes> attrs, DcmMode mode, RandomStream& rng, int max_attempts) {
    if (mode == DcmMode::repeated && max_attempts < 1) {
        throw std::invalid_argument("max_attempts: must be at least 1 for repeated DCM");
    }
    const std::size_t n = attrs.size();
    std::vector<VertexId> inbound;
    std::vector<VertexId> outbound;
    std::uint64_t in_total = 0;
    std::uint64_t out_total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        in_total += checked_degree(attrs[v].in_param, "in_param", v);
        out_total += checked_degree(attrs[v].out_param, "out_param", v);
    }
    if (in_total != out_total) {
        throw std::invalid_argument("build_dcm: total in-degree " + std::to_string(in_total) +
                                    " differs from total out-degree " + std::to_string(out_total));
    }
    inbound.reserve(in_total);
    outbound.reserve(out_total);
    for (std::size_t v = 0; v < n; ++v) {
        inbound.insert(inbound.end(), static_cast<std::size_t>(attrs[v].in_param), static_cast<VertexId>(v));
        outbound.insert(outbound.end(), static_cast<std::size_t>(attrs[v].out_param), static_cast<VertexId>(v));
    }

    std::vector<Edge> edges(in_total);
    auto pair_once = [&] {
        shuffle(outbound, rng);
        for (std::size_t k = 0; k < edges.size(); ++k) edges[k] = {outbound[k], inbound[k]};
    };

    switch (mode) {
        case DcmMode::multigraph:
            pair_once();
            return {DiGraph(n, edges, std::move(attrs), ModelTag::dcm_multigraph), DcmStatus::ok, 1};
        case DcmMode::erased: {
            pair_once();
            std::erase_if(edges, [](const Edge& e) { return e.src == e.dst; });
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            return {DiGraph(n, edges, std::move(attrs), ModelTag::dcm_erased), DcmStatus::ok, 1};
        }
        case DcmMode::repeated: {
            for (int attempt = 1;; ++attempt) {
                pair_once();
                std::vector<Edge> sorted = edges;
                std::sort(sorted.begin(), sorted.end());
                const bool simple =
                    std::none_of(sorted.begin(), sorted.end(), [](const Edge& e) { return e.src == e.dst; }) &&
                    std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
                if (simple) return {DiGraph(n, sorted, std::move(attrs), ModelTag::dcm_repeated), DcmStatus::ok, attempt};
                if (attempt == max_attempts) {
                    return {DiGraph(n, sorted, std::move(attrs), ModelTag::dcm_repeated), DcmStatus::attempts_exhausted,
                            attempt};
                }
            }
        }
    }
    throw std::logic_error("build_dcm: unreachable");
}

double empirical_theta(const std::vector<VertexAttributes>& attrs) {
    if (attrs.empty()) throw std::invalid_argument("empirical_theta: empty attribute sequence");
    double total = 0.0;
    for (const auto& a : attrs) total += a.in_param + a.out_param;
    return total / static_cast<double>(attrs.size());
}

double expected_ird_edges(const std::vector<VertexAttributes>& attrs, double theta) {
    const std::size_t n = attrs.size();
    const double scale = 1.0 / (theta * static_cast<double>(n));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double row = attrs[i].out_param * scale;
        double row_total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) row_total += std::min(1.0, row * attrs[j].in_param);
        }
        total += row_total;
    }
    return total;
}

namespace {

void check_ird_inputs(const std::vector<VertexAttributes>& attrs, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("theta: must be positive and finite");
    for (std::size_t v = 0; v < attrs.size(); ++v) {
        const auto& a = attrs[v];
        if (!(a.in_param >= 0.0) || !(a.out_param >= 0.0) || !std::isfinite(a.in_param) || !std::isfinite(a.out_param)) {
            throw std::invalid_argument("build_ird: weights of vertex " + std::to_string(v) +
                                        " must be finite and non-negative");
        }
    }
}

void ird_quadratic(const std::vector<VertexAttributes>& attrs, double scale, RandomStream& rng,
                   std::vector<Edge>& edges) {
    const std::size_t n = attrs.size();
    std::vector<double> in_w(n);
    for (std::size_t j = 0; j < n; ++j) in_w[j] = attrs[j].in_param;
    for (std::size_t i = 0; i < n; ++i) {
        const double row = attrs[i].out_param * scale;
        if (row == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double p = row * in_w[j];
            if (p >= 1.0 || rng.uniform() < p) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
        }
    }
}

// Geometric skips over targets sorted by decreasing in-weight; the current
// probability bounds all later ones, and a thinning step corrects to the
// exact per-pair probability.
void ird_skip(const std::vector<VertexAttributes>& attrs, double scale, RandomStream& rng, std::vector<Edge>& edges) {
    const std::size_t n = attrs.size();
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId x, VertexId y) { return attrs[x].in_param > attrs[y].in_param; });
    for (std::size_t i = 0; i < n; ++i) {
        const double row = attrs[i].out_param * scale;
        if (row == 0.0) continue;
        std::size_t pos = 0;
        double p = std::min(1.0, row * attrs[order[0]].in_param);
        while (pos < n && p > 0.0) {
            if (p < 1.0) {
                const double jump = std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
                if (jump >= static_cast<double>(n - pos)) break;
                pos += static_cast<std::size_t>(jump);
            }
            const double q = std::min(1.0, row * attrs[order[pos]].in_param);
            if (q >= p || rng.uniform() * p < q) {
                if (order[pos] != i) edges.push_back({static_cast<VertexId>(i), order[pos]});
            }
            p = q;
            ++pos;
        }
    }
}

}  // namespace

DiGraph build_ird(std::vector<VertexAttributes> attrs, double theta, RandomStream& rng, IrdSampling sampling) {
    check_ird_inputs(attrs, theta);
    const std::size_t n = attrs.size();
    const double scale = n == 0 ? 0.0 : 1.0 / (theta * static_cast<double>(n));
    if (sampling == IrdSampling::automatic) {
        sampling = n > kIrdQuadraticLimit ? IrdSampling::skip : IrdSampling::quadratic;
    }
    std::vector<Edge> edges;
    if (n > 0) {
        if (sampling == IrdSampling::quadratic) ird_quadratic(attrs, scale, rng, edges);
        else ird_skip(attrs, scale, rng, edges);
    }
    return DiGraph(n, edges, std::move(attrs), ModelTag::ird);
}

}  // namespace gprank
