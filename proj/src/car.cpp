#include "speclust/car.hpp"

#include "speclust/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace speclust {

double sigma_from_pi(const KernelMatrix& kernel, const WeightVector& weights) {
    weights.validate();
    if (weights.pi.size() != kernel.k.rows())
        throw std::invalid_argument("sigma_from_pi: size mismatch");
    const double trace = weights.pi.dot(kernel.k.diagonal());
    if (!(trace > 0.0)) throw std::invalid_argument("sigma_from_pi: tr(Pi K) must be positive");
    return 1.0 / trace;
}

double log_density(const Matrix& y, const CarSpec& spec) {
    if (y.rows() != spec.lop.m.rows())
        throw std::invalid_argument("log_density: shape mismatch");
    return -0.5 / spec.sigma2 * (y.transpose() * spec.lop.m * y).trace();
}

ConditionalMoments conditional_moments(int node, const Matrix& y, const AffinityGraph& g,
                                       const CarSpec& spec, double omega) {
    const int n = static_cast<int>(g.w.rows());
    if (node < 0 || node >= n) throw std::invalid_argument("conditional_moments: node out of range");
    if (y.rows() != n) throw std::invalid_argument("conditional_moments: shape mismatch");
    const double l_ii = g.degrees(node) - g.w(node, node);
    if (!(l_ii > 0.0)) throw std::invalid_argument("conditional_moments: isolated node");

    Vector mean = Vector::Zero(y.cols());
    for (int j = 0; j < n; ++j) {
        if (j == node) continue;
        mean += (g.w(node, j) / l_ii) * y.row(j).transpose();
    }
    return {omega * mean, spec.sigma2 / l_ii};
}

std::vector<Matrix> sample_car(const CarSpec& spec, int count, RngStream& rng) {
    if (count < 1) throw std::invalid_argument("sample_car: count must be >= 1");
    const Eigen::Index n = spec.lop.m.rows();

    // K^{1/2} from the spectrum of K = M^+: reciprocal square roots of the
    // nonzero eigenvalues of M.
    const auto eig = eig_sym(spec.lop.m);
    const double cutoff = static_cast<double>(n) * eig.values.cwiseAbs().maxCoeff() * 1e-12;
    Vector root = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (eig.values(i) > cutoff) root(i) = 1.0 / std::sqrt(eig.values(i));
    const Matrix factor = std::sqrt(spec.sigma2) *
                          (eig.vectors * root.asDiagonal() * eig.vectors.transpose());

    std::vector<Matrix> samples;
    samples.reserve(count);
    for (int s = 0; s < count; ++s) {
        Matrix z(n, spec.width);
        for (Eigen::Index i = 0; i < n; ++i)
            for (int j = 0; j < spec.width; ++j) z(i, j) = rng.normal();
        samples.push_back(factor * z);
    }
    return samples;
}

SarSpec make_sar(Matrix c) {
    if (c.rows() != c.cols()) throw std::invalid_argument("make_sar: matrix must be square");
    const Eigen::Index n = c.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (c(i, i) != 0.0) throw std::invalid_argument("make_sar: diagonal must be zero");
        double row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (c(i, j) < 0.0) throw std::invalid_argument("make_sar: entries must be nonnegative");
            row += c(i, j);
        }
        if (std::abs(row - 1.0) > 1e-10)
            throw std::invalid_argument("make_sar: rows must sum to one");
    }
    return {std::move(c)};
}

SarSpec sar_from_graph(const AffinityGraph& g) {
    if (!g.zero_diagonal) throw std::invalid_argument("sar_from_graph: graph must have zero diagonal");
    const Eigen::Index n = g.w.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(g.degrees(i) > 0.0)) throw std::invalid_argument("sar_from_graph: isolated vertex");
    return make_sar(g.degrees.cwiseInverse().asDiagonal() * g.w);
}

Matrix sar_residuals(const Matrix& y, const SarSpec& sar) {
    if (y.rows() != sar.c.rows()) throw std::invalid_argument("sar_residuals: shape mismatch");
    return y - sar.c * y;
}

double spectrum_equivalence(const AffinityGraph& g) {
    const Eigen::Index n = g.w.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(g.degrees(i) > 0.0)) throw std::invalid_argument("spectrum_equivalence: isolated vertex");

    const Vector d_sqrt = g.degrees.cwiseSqrt();
    const Vector d_inv_sqrt = d_sqrt.cwiseInverse();
    const Matrix sym =
        Matrix::Identity(n, n) - symmetrize(d_inv_sqrt.asDiagonal() * g.w * d_inv_sqrt.asDiagonal());

    // Same spectrum reached via D^{1/2} (D^{-1} W) D^{-1/2}.
    const Matrix c = g.degrees.cwiseInverse().asDiagonal() * g.w;
    const Matrix via_similarity =
        Matrix::Identity(n, n) - symmetrize(d_sqrt.asDiagonal() * c * d_inv_sqrt.asDiagonal());

    Vector a = eig_sym(sym).values;
    Vector b = eig_sym(via_similarity).values;
    std::sort(a.data(), a.data() + n);
    std::sort(b.data(), b.data() + n);
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace speclust
