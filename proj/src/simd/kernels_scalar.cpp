#include "speclust/simd/kernels.hpp"

#include <cmath>

namespace speclust::simd::detail {

namespace {

double sq_dist_scalar(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

void exp_neg_scale_scalar(const double* in, double* out, std::size_t count, double inv_beta) {
    for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(-in[i] * inv_beta);
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{&sq_dist_scalar, &exp_neg_scale_scalar};
    return table;
}

}  // namespace speclust::simd::detail
