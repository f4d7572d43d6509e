// Compiled with -mavx2 only on x86-64; callers reach these through the
// dispatch table after a CPUID check.

#include "gprank/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace gprank::kernels::detail {
namespace {

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double gather_span(const double* values, const std::uint32_t* index, std::size_t count) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t e = 0;
    for (; e + 8 <= count; e += 8) {
        const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + e));
        const __m128i i1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + e + 4));
        acc0 = _mm256_add_pd(acc0, _mm256_i32gather_pd(values, i0, 8));
        acc1 = _mm256_add_pd(acc1, _mm256_i32gather_pd(values, i1, 8));
    }
    if (e + 4 <= count) {
        const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + e));
        acc0 = _mm256_add_pd(acc0, _mm256_i32gather_pd(values, i0, 8));
        e += 4;
    }
    double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; e < count; ++e) acc += values[index[e]];
    return acc;
}

double gather_sum_avx2(const double* values, const std::uint32_t* index, std::size_t count) {
    return gather_span(values, index, count);
}

void gather_row_sums_avx2(const double* values, const std::uint64_t* offsets, const std::uint32_t* index,
                          double* out, std::size_t rows) {
    for (std::size_t i = 0; i < rows; ++i) {
        const std::uint64_t begin = offsets[i];
        const std::uint64_t len = offsets[i + 1] - begin;
        if (len < 4) {
            double acc = 0.0;
            for (std::uint64_t e = begin; e < begin + len; ++e) acc += values[index[e]];
            out[i] = acc;
        } else {
            out[i] = gather_span(values, index + begin, len);
        }
    }
}

void multiply_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void add_to_avx2(double* acc, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) acc[i] += x[i];
}

double l1_distance_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
    }
    double total = horizontal_sum(acc);
    for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
    return total;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    double total = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) total += x[i];
    return total;
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{gather_sum_avx2, gather_row_sums_avx2, multiply_avx2,
                                   add_to_avx2,     l1_distance_avx2,     sum_avx2};
    return &table;
}

}  // namespace gprank::kernels::detail
