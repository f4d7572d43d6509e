#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace gprank {

/// SplitMix64 finalizer; used to derive well-separated seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Seeded random stream. All randomness in the toolkit flows through this
 * type; nothing reads ambient entropy.
 *
 * Streams are split by counter: stream k of master seed s is the
 * mt19937_64 engine seeded (through std::seed_seq) with the words
 * {splitmix64(s), splitmix64(s ^ splitmix64(k + 1))}. Distinct k give
 * independent streams, and the mapping is stable across runs.
 */
class RandomStream {
public:
    using engine_type = std::mt19937_64;
    using result_type = engine_type::result_type;

    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}
    RandomStream(std::uint64_t master, std::uint64_t stream_id);

    /// Independent child stream `id` of this stream's master seed.
    [[nodiscard]] RandomStream split(std::uint64_t id) const { return {master_, splitmix64(stream_id_) ^ id}; }

    static constexpr result_type min() { return engine_type::min(); }
    static constexpr result_type max() { return engine_type::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1]; safe to take the logarithm of.
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
    /// Uniform integer in [0, bound) without modulo bias (Lemire).
    std::uint64_t below(std::uint64_t bound);

    double exponential() { return -std::log(uniform_pos()); }
    /// Pareto with survival (x/scale)^(-index) on x >= scale.
    double pareto(double index, double scale) { return scale * std::pow(uniform_pos(), -1.0 / index); }
    /// Poisson(mean): inversion below mean 10, transformed rejection (PTRS) above.
    std::uint64_t poisson(double mean);

    [[nodiscard]] std::uint64_t master_seed() const { return master_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t master_;
    std::uint64_t stream_id_;
    engine_type engine_;
};

}  // namespace gprank
