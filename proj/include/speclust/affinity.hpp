#pragma once

#include "speclust/types.hpp"

namespace speclust {

/// Symmetric nonnegative weight matrix with cached degrees (row sums).
struct AffinityGraph {
    Matrix w;
    Vector degrees;
    bool zero_diagonal = false;
};

enum class LaplacianKind { Plain, Sar };

/// Symmetric PSD operator annihilating the ones vector. Plain D - W, or the
/// SAR form (I - D^{-1}W)'(I - D^{-1}W) which is generally not Laplacian.
struct LaplacianOperator {
    Matrix m;
    LaplacianKind kind = LaplacianKind::Plain;
};

enum class KernelVariant { Plain, PlusIdentity };

struct KernelMatrix {
    Matrix k;
    bool centered = false;
};

/// Wrap an explicit weight matrix, validating symmetry (1e-12) and
/// nonnegativity and computing degrees.
AffinityGraph affinity_from_weights(Matrix w);

/// RBF affinities w_ij = exp(-||x_i - x_j||^2 / beta). The diagonal is 1,
/// or 0 when zero_diagonal is set.
AffinityGraph build_affinity(const Matrix& x, double beta, bool zero_diagonal);

/// Ncut weights Pi = D.
WeightVector degree_weights(const AffinityGraph& g);

LaplacianOperator laplacian(const AffinityGraph& g);

/// SAR operator (I - D^{-1}W)'(I - D^{-1}W). Requires every degree > 0.
LaplacianOperator sar_laplacian(const AffinityGraph& g);

/// Centered kernel H W H, or H (I + W) H for zero-diagonal graphs.
KernelMatrix centered_kernel(const AffinityGraph& g, KernelVariant variant);

/// Moore-Penrose inverse of the operator, treated as a kernel matrix.
KernelMatrix laplacian_kernel(const LaplacianOperator& lop);

/// Squared feature-space distances d_ij = K_ii + K_jj - 2 K_ij.
Matrix feature_distances(const KernelMatrix& kernel);

}  // namespace speclust
