#include "speclust/affinity.hpp"

#include "speclust/linalg.hpp"
#include "speclust/simd/kernels.hpp"

#include <cmath>
#include <vector>

namespace speclust {

AffinityGraph affinity_from_weights(Matrix w) {
    if (w.rows() != w.cols()) throw std::invalid_argument("affinity: weight matrix must be square");
    const Eigen::Index n = w.rows();
    bool zero_diag = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (w(i, i) != 0.0) zero_diag = false;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(w(i, j)) || w(i, j) < 0.0)
                throw std::invalid_argument("affinity: weights must be finite and nonnegative");
            if (std::abs(w(i, j) - w(j, i)) > 1e-12)
                throw std::invalid_argument("affinity: weight matrix not symmetric");
        }
    }
    AffinityGraph g{symmetrize(std::move(w)), Vector(), zero_diag};
    g.degrees = g.w.rowwise().sum();
    return g;
}

AffinityGraph build_affinity(const Matrix& x, double beta, bool zero_diagonal) {
    if (!(beta > 0.0)) throw std::invalid_argument("build_affinity: beta must be positive");
    if (!x.allFinite()) throw std::invalid_argument("build_affinity: non-finite entry in data");
    const std::size_t n = static_cast<std::size_t>(x.rows());
    const std::size_t d = static_cast<std::size_t>(x.cols());

    std::vector<double> rows(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rows[i * d + j] = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

    std::vector<double> dists(n * n);
    simd::pairwise_sq_dists(rows.data(), n, d, dists.data());
    simd::exp_neg_scale(dists.data(), dists.data(), n * n, 1.0 / beta);

    AffinityGraph g;
    g.zero_diagonal = zero_diagonal;
    g.w.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dists[i * n + j];
    if (zero_diagonal)
        g.w.diagonal().setZero();
    else
        g.w.diagonal().setOnes();
    g.degrees = g.w.rowwise().sum();
    return g;
}

WeightVector degree_weights(const AffinityGraph& g) {
    WeightVector w{g.degrees};
    for (Eigen::Index i = 0; i < w.pi.size(); ++i)
        if (!(w.pi(i) > 0.0)) throw std::invalid_argument("degree_weights: isolated vertex");
    return w;
}

LaplacianOperator laplacian(const AffinityGraph& g) {
    Matrix m = -g.w;
    m.diagonal() += g.degrees;
    return {std::move(m), LaplacianKind::Plain};
}

LaplacianOperator sar_laplacian(const AffinityGraph& g) {
    const Eigen::Index n = g.w.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(g.degrees(i) > 0.0)) throw std::invalid_argument("sar_laplacian: isolated vertex");
    const Matrix a = Matrix::Identity(n, n) - g.degrees.cwiseInverse().asDiagonal() * g.w;
    return {symmetrize(a.transpose() * a), LaplacianKind::Sar};
}

KernelMatrix centered_kernel(const AffinityGraph& g, KernelVariant variant) {
    const Eigen::Index n = g.w.rows();
    if (variant == KernelVariant::PlusIdentity && !g.zero_diagonal)
        throw std::invalid_argument("centered_kernel: plus_identity requires a zero-diagonal graph");
    const Matrix h = centering(static_cast<int>(n));
    Matrix base = g.w;
    if (variant == KernelVariant::PlusIdentity) base.diagonal().array() += 1.0;
    return {symmetrize(h * base * h), true};
}

KernelMatrix laplacian_kernel(const LaplacianOperator& lop) {
    return {pseudo_inverse_psd(lop.m), false};
}

Matrix feature_distances(const KernelMatrix& kernel) {
    const Matrix& k = kernel.k;
    const Vector diag = k.diagonal();
    Matrix delta = diag.replicate(1, k.cols()) + diag.transpose().replicate(k.rows(), 1) - 2.0 * k;
    delta.diagonal().setZero();
    return symmetrize(delta);
}

}  // namespace speclust
