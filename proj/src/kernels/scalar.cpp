#include "gprank/kernels.hpp"

#include <cmath>

namespace gprank::kernels::detail {
namespace {

double gather_sum_scalar(const double* values, const std::uint32_t* index, std::size_t count) {
    double acc = 0.0;
    for (std::size_t e = 0; e < count; ++e) acc += values[index[e]];
    return acc;
}

void gather_row_sums_scalar(const double* values, const std::uint64_t* offsets, const std::uint32_t* index,
                            double* out, std::size_t rows) {
    for (std::size_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) acc += values[index[e]];
        out[i] = acc;
    }
}

void multiply_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void add_to_scalar(double* acc, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

double l1_distance_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{gather_sum_scalar,      gather_row_sums_scalar, multiply_scalar,
                                   add_to_scalar,          l1_distance_scalar,     sum_scalar};
    return table;
}

}  // namespace gprank::kernels::detail
