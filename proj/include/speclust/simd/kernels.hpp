#pragma once

#include <cstddef>
#include <optional>
#include <string>

// Data-parallel inner loops behind the matrix-level API: pairwise squared
// distances, exp scaling for RBF affinities, and nearest-center assignment.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. The two are equivalence
// tested against each other.

namespace speclust::simd {

enum class Backend { Scalar, Avx2 };

/// Backend picked at startup: AVX2 when the CPU supports AVX2+FMA, scalar
/// otherwise. The SPECLUST_SIMD environment variable ("scalar" or "avx2")
/// overrides detection.
Backend active_backend();

/// Force a backend (tests). std::nullopt restores detection.
void force_backend(std::optional<Backend> backend);

const char* backend_name(Backend backend);

/// Squared Euclidean distance between two length-d vectors.
double sq_dist(const double* a, const double* b, std::size_t d);

/// All pairwise squared distances of the rows of the row-major n-by-d
/// matrix. out is n*n, symmetric with zero diagonal.
void pairwise_sq_dists(const double* x, std::size_t n, std::size_t d, double* out);

/// out[i] = exp(-in[i] * inv_beta).
void exp_neg_scale(const double* in, double* out, std::size_t count, double inv_beta);

/// For each row y_i of the row-major n-by-k matrix, the index of the
/// nearest of the c row-major k-dimensional centers (ties to the lowest
/// index) and the squared distance to it.
void nearest_center(const double* y, std::size_t n, std::size_t k, const double* centers,
                    std::size_t c, int* labels, double* dists);

namespace detail {

struct KernelTable {
    double (*sq_dist)(const double*, const double*, std::size_t);
    void (*exp_neg_scale)(const double*, double*, std::size_t, double);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // valid only when AVX2+FMA is available
bool avx2_supported();

}  // namespace detail

}  // namespace speclust::simd
