#include "speclust/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace speclust::simd {

namespace detail {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace detail

namespace {

std::optional<Backend>& forced() {
    static std::optional<Backend> value;
    return value;
}

Backend detect() {
    if (const char* env = std::getenv("SPECLUST_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && detail::avx2_supported()) return Backend::Avx2;
    }
    return detail::avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

const detail::KernelTable& table() {
    if (active_backend() == Backend::Avx2) return detail::avx2_table();
    return detail::scalar_table();
}

}  // namespace

Backend active_backend() {
    if (forced()) return *forced();
    static const Backend detected = detect();
    return detected;
}

void force_backend(std::optional<Backend> backend) {
    if (backend == Backend::Avx2 && !detail::avx2_supported())
        throw std::runtime_error("simd: AVX2 backend not supported on this CPU");
    forced() = backend;
}

const char* backend_name(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

double sq_dist(const double* a, const double* b, std::size_t d) {
    return table().sq_dist(a, b, d);
}

void exp_neg_scale(const double* in, double* out, std::size_t count, double inv_beta) {
    table().exp_neg_scale(in, out, count, inv_beta);
}

void pairwise_sq_dists(const double* x, std::size_t n, std::size_t d, double* out) {
    const auto& k = table();
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = k.sq_dist(x + i * d, x + j * d, d);
            out[i * n + j] = dist;
            out[j * n + i] = dist;
        }
    }
}

void nearest_center(const double* y, std::size_t n, std::size_t k, const double* centers,
                    std::size_t c, int* labels, double* dists) {
    const auto& kt = table();
    for (std::size_t i = 0; i < n; ++i) {
        int best = 0;
        double best_dist = kt.sq_dist(y + i * k, centers, k);
        for (std::size_t j = 1; j < c; ++j) {
            const double dist = kt.sq_dist(y + i * k, centers + j * k, k);
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(j);
            }
        }
        labels[i] = best;
        dists[i] = best_dist;
    }
}

}  // namespace speclust::simd
