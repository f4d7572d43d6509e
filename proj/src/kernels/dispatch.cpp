#include "gprank/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gprank::kernels {

namespace detail {
#ifndef GPRANK_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(GPRANK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const detail::KernelTable& table_for(Isa isa) {
    if (isa == Isa::avx2) return *detail::avx2_table();
    return detail::scalar_table();
}

Isa initial_isa() {
    Isa isa = detected_isa();
    if (const char* env = std::getenv("GPRANK_ISA")) {
        const std::string want(env);
        if (want == "scalar") isa = Isa::scalar;
        else if (want == "avx2" && isa_supported(Isa::avx2)) isa = Isa::avx2;
    }
    return isa;
}

std::atomic<const detail::KernelTable*>& active_table() {
    static std::atomic<const detail::KernelTable*> table{&table_for(initial_isa())};
    return table;
}

const detail::KernelTable& current() { return *active_table().load(std::memory_order_relaxed); }

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
    if (isa == Isa::scalar) return true;
    static const bool avx2 = detail::avx2_table() != nullptr && cpu_has_avx2();
    return avx2;
}

Isa detected_isa() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return &current() == &detail::scalar_table() ? Isa::scalar : Isa::avx2; }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) throw std::invalid_argument("instruction set not supported: " + std::string(isa_name(isa)));
    active_table().store(&table_for(isa), std::memory_order_relaxed);
}

double gather_sum(std::span<const double> values, std::span<const std::uint32_t> index) {
    assert(values.size() < (std::size_t{1} << 31));
    return current().gather_sum(values.data(), index.data(), index.size());
}

void gather_row_sums(std::span<const double> values, std::span<const std::uint64_t> offsets,
                     std::span<const std::uint32_t> index, std::span<double> out) {
    assert(offsets.size() == out.size() + 1);
    assert(values.size() < (std::size_t{1} << 31));
    if (out.empty()) return;
    current().gather_row_sums(values.data(), offsets.data(), index.data(), out.data(), out.size());
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    current().multiply(a.data(), b.data(), out.data(), out.size());
}

void add_to(std::span<double> acc, std::span<const double> x) {
    assert(acc.size() == x.size());
    current().add_to(acc.data(), x.data(), acc.size());
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return current().l1_distance(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) { return current().sum(x.data(), x.size()); }

}  // namespace gprank::kernels
