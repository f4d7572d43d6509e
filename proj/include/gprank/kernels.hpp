#pragma once

// Data-parallel inner loops shared by the power iteration, the population
// dynamics pool update and the distance computations. Each kernel has a
// scalar reference implementation and an AVX2 variant; the variant is picked
// once at startup from CPUID and can be overridden for testing or through
// the GPRANK_ISA environment variable ("scalar" or "avx2").

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gprank::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best instruction set the running CPU supports (and this build carries).
Isa detected_isa();
bool isa_supported(Isa isa);

/// Currently dispatched instruction set.
Isa active_isa();
/// Switch dispatch; throws std::invalid_argument if `isa` is unsupported.
void set_active_isa(Isa isa);

/// RAII override of the active instruction set.
class ScopedIsa {
public:
    explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
    ~ScopedIsa() { set_active_isa(previous_); }
    ScopedIsa(const ScopedIsa&) = delete;
    ScopedIsa& operator=(const ScopedIsa&) = delete;

private:
    Isa previous_;
};

// Index arrays hold 32-bit vertex/pool indices; callers keep
// values.size() below 2^31 so the AVX2 gathers can use signed offsets.

/// Sum of values[index[e]] over all e.
double gather_sum(std::span<const double> values, std::span<const std::uint32_t> index);

/// out[i] = sum of values[index[e]] for e in [offsets[i], offsets[i+1]).
/// offsets has out.size() + 1 entries.
void gather_row_sums(std::span<const double> values, std::span<const std::uint64_t> offsets,
                     std::span<const std::uint32_t> index, std::span<double> out);

/// out[i] = a[i] * b[i].
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

/// acc[i] += x[i].
void add_to(std::span<double> acc, std::span<const double> x);

/// Sum of |a[i] - b[i]|.
double l1_distance(std::span<const double> a, std::span<const double> b);

/// Sum of x[i].
double sum(std::span<const double> x);

namespace detail {

struct KernelTable {
    double (*gather_sum)(const double*, const std::uint32_t*, std::size_t);
    void (*gather_row_sums)(const double*, const std::uint64_t*, const std::uint32_t*, double*, std::size_t);
    void (*multiply)(const double*, const double*, double*, std::size_t);
    void (*add_to)(double*, const double*, std::size_t);
    double (*l1_distance)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
};

const KernelTable& scalar_table();
// Null when the build has no AVX2 variant.
const KernelTable* avx2_table();

}  // namespace detail

}  // namespace gprank::kernels
