#include "speclust/relaxation.hpp"

#include "speclust/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace speclust {

namespace {

void check_class_count(int c, Eigen::Index n, const char* where) {
    if (c < 2 || c > n)
        throw std::invalid_argument(std::string(where) + ": class count must be in [2, n]");
}

/// Flip each column so its largest-magnitude entry is positive.
void fix_signs(Matrix& u) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index imax = 0;
        u.col(j).cwiseAbs().maxCoeff(&imax);
        if (u(imax, j) < 0.0) u.col(j) = -u.col(j);
    }
}

}  // namespace

double pcut_graph(const Partition& p, const AffinityGraph& g, const WeightVector& weights) {
    p.require_nonempty("pcut_graph");
    weights.validate();
    if (p.size() != g.w.rows() || weights.pi.size() != g.w.rows())
        throw std::invalid_argument("pcut_graph: size mismatch");

    const Vector eta = p.class_weights(weights.pi);
    Vector leaving = Vector::Zero(p.num_classes);   // W(V_j, V)
    Vector internal = Vector::Zero(p.num_classes);  // W(V_j, V_j)
    for (int i = 0; i < p.size(); ++i) {
        leaving(p.labels[i]) += g.degrees(i);
        for (int j = 0; j < p.size(); ++j)
            if (p.labels[j] == p.labels[i]) internal(p.labels[i]) += g.w(i, j);
    }
    double total = 0.0;
    for (int j = 0; j < p.num_classes; ++j) total += (leaving(j) - internal(j)) / eta(j);
    return total;
}

double pcut_matrix(const Partition& p, const LaplacianOperator& lop, const WeightVector& weights) {
    p.require_nonempty("pcut_matrix");
    weights.validate();
    if (p.size() != lop.m.rows() || weights.pi.size() != lop.m.rows())
        throw std::invalid_argument("pcut_matrix: size mismatch");

    const Matrix e = p.indicator();
    const Matrix eme = e.transpose() * lop.m * e;
    const Vector eta = p.class_weights(weights.pi);  // diagonal of E' Pi E
    double total = 0.0;
    for (int j = 0; j < p.num_classes; ++j) total += eme(j, j) / eta(j);
    return total;
}

PsiMatrix build_psi(const Vector& class_weights) {
    const int c = static_cast<int>(class_weights.size());
    if (c < 2) throw std::invalid_argument("build_psi: need at least 2 classes");
    for (int j = 0; j < c; ++j)
        if (!(class_weights(j) > 0.0))
            throw std::invalid_argument("build_psi: class weights must be positive");

    // tail(l) = eta_l + ... + eta_c. Column l has zeros above the diagonal,
    // a positive diagonal entry and a constant negative tail below it.
    Vector tail(c + 1);
    tail(c) = 0.0;
    for (int j = c - 1; j >= 0; --j) tail(j) = tail(j + 1) + class_weights(j);

    Matrix psi = Matrix::Zero(c, c - 1);
    for (int l = 0; l < c - 1; ++l) {
        psi(l, l) = std::sqrt(tail(l + 1)) / std::sqrt(class_weights(l) * tail(l));
        const double below = -std::sqrt(class_weights(l)) / std::sqrt(tail(l) * tail(l + 1));
        for (int j = l + 1; j < c; ++j) psi(j, l) = below;
    }
    return {std::move(psi), class_weights};
}

Embedding embed_partition(const Partition& p, const PsiMatrix& psi, const WeightVector& weights) {
    p.require_nonempty("embed_partition");
    weights.validate();
    if (psi.psi.rows() != p.num_classes)
        throw std::invalid_argument("embed_partition: Psi shape does not match partition");
    if (weights.pi.size() != p.size())
        throw std::invalid_argument("embed_partition: weight size mismatch");

    Matrix y(p.size(), p.num_classes - 1);
    for (int i = 0; i < p.size(); ++i) y.row(i) = psi.psi.row(p.labels[i]);
    return {std::move(y), weights.pi};
}

RelaxationResult solve_relaxation(const LaplacianOperator& lop, const WeightVector& weights, int c) {
    const Eigen::Index n = lop.m.rows();
    check_class_count(c, n, "solve_relaxation");
    weights.validate();
    if (weights.pi.size() != n) throw std::invalid_argument("solve_relaxation: weight size mismatch");

    const Vector pi_sqrt = weights.pi.cwiseSqrt();
    const Vector pi_inv_sqrt = pi_sqrt.cwiseInverse();
    const Matrix s = symmetrize(pi_inv_sqrt.asDiagonal() * lop.m * pi_inv_sqrt.asDiagonal());
    const auto eig = eig_sym(s);

    // The gamma_1 = 0 eigenvector is the one best aligned with Pi^{1/2} 1,
    // not simply the one of smallest eigenvalue.
    const Vector q = pi_sqrt / pi_sqrt.norm();
    Eigen::Index zero_index = 0;
    (eig.vectors.transpose() * q).cwiseAbs().maxCoeff(&zero_index);

    std::vector<Eigen::Index> order;
    order.reserve(n);
    order.push_back(zero_index);
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != zero_index) order.push_back(i);

    EigenSystem system;
    system.gammas.resize(n);
    system.mus.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        system.gammas(i) = eig.values(order[static_cast<std::size_t>(i)]);
        system.mus.col(i) = eig.vectors.col(order[static_cast<std::size_t>(i)]);
    }

    // When the zero eigenvalue is degenerate (disconnected graphs) the
    // computed basis of that eigenspace need not contain the Pi^{1/2} 1
    // direction itself. Pin the first basis vector to it exactly and restore
    // orthonormality among the columns that overlap it; everything else is
    // already orthogonal to q up to roundoff.
    system.mus.col(0) = q;
    std::vector<Eigen::Index> touched;
    for (Eigen::Index j = 1; j < n; ++j) {
        const double overlap = q.dot(system.mus.col(j));
        if (std::abs(overlap) <= 1e-13) continue;
        Vector v = system.mus.col(j) - q * overlap;
        for (Eigen::Index k : touched) v -= system.mus.col(k) * system.mus.col(k).dot(v);
        const double norm = v.norm();
        if (norm > 1e-12) v /= norm;
        system.mus.col(j) = v;
        touched.push_back(j);
    }
    fix_signs(system.mus);

    Matrix u = system.mus.middleCols(1, c - 1);
    const double objective = system.gammas.segment(1, c - 1).sum();
    Embedding emb{pi_inv_sqrt.asDiagonal() * u, weights.pi};
    return {std::move(emb), std::move(system), objective};
}

RelaxationResult solve_minvar_relaxation(const KernelMatrix& kernel, const WeightVector& weights,
                                         int c) {
    const Eigen::Index n = kernel.k.rows();
    check_class_count(c, n, "solve_minvar_relaxation");
    weights.validate();
    if (weights.pi.size() != n)
        throw std::invalid_argument("solve_minvar_relaxation: weight size mismatch");

    const Vector pi_sqrt = weights.pi.cwiseSqrt();
    const Matrix h = weighted_centering(weights.pi);
    const Matrix t = symmetrize(pi_sqrt.asDiagonal() * h.transpose() * kernel.k * h *
                                pi_sqrt.asDiagonal());
    const auto eig = eig_sym(t);

    EigenSystem system{eig.values, eig.vectors};
    fix_signs(system.mus);

    // Top c-1 eigenvectors, largest first. Zero-eigenvalue picks may carry a
    // component along Pi^{1/2} 1; project it out and re-orthonormalize (a
    // no-op elsewhere since positive-eigenvalue eigenvectors are orthogonal
    // to the null direction).
    const Vector q = pi_sqrt / pi_sqrt.norm();
    Matrix u(n, c - 1);
    double objective = 0.0;
    for (int j = 0; j < c - 1; ++j) {
        Vector v = system.mus.col(n - 1 - j);
        v -= q * q.dot(v);
        for (int k = 0; k < j; ++k) v -= u.col(k) * u.col(k).dot(v);
        const double norm = v.norm();
        if (norm > 1e-12) v /= norm;
        u.col(j) = v;
        objective += system.gammas(n - 1 - j);
    }
    fix_signs(u);

    Embedding emb{pi_sqrt.cwiseInverse().asDiagonal() * u, weights.pi};
    return {std::move(emb), std::move(system), objective};
}

double eigengap(const EigenSystem& es, int c) {
    if (c + 1 > es.gammas.size())
        throw std::invalid_argument("eigengap: need c + 1 <= n eigenvalues");
    if (c < 1) throw std::invalid_argument("eigengap: class count must be positive");
    return es.gammas(c) - es.gammas(c - 1);
}

double range_consistency(const Embedding& emb, const KernelMatrix& kernel) {
    if (kernel.k.rows() != emb.y.rows())
        throw std::invalid_argument("range_consistency: size mismatch");
    const Matrix projector = range_projector_psd(kernel.k);
    const double norm = emb.y.norm();
    if (norm == 0.0) return 0.0;
    return (projector * emb.y - emb.y).norm() / norm;
}

Matrix yu_shi_embedding(const LaplacianOperator& lop, const WeightVector& weights, int c) {
    const Eigen::Index n = lop.m.rows();
    check_class_count(c, n, "yu_shi_embedding");
    weights.validate();
    const Vector pi_inv_sqrt = weights.pi.cwiseSqrt().cwiseInverse();
    const Matrix s = symmetrize(pi_inv_sqrt.asDiagonal() * lop.m * pi_inv_sqrt.asDiagonal());
    const auto eig = eig_sym(s);
    Matrix u = eig.vectors.leftCols(c);
    fix_signs(u);
    return pi_inv_sqrt.asDiagonal() * u;
}

Matrix yu_shi_embedding_kernel(const KernelMatrix& kernel, const WeightVector& weights, int c) {
    const Eigen::Index n = kernel.k.rows();
    check_class_count(c, n, "yu_shi_embedding_kernel");
    weights.validate();
    const Vector pi_sqrt = weights.pi.cwiseSqrt();
    const Matrix h = weighted_centering(weights.pi);
    const Matrix t = symmetrize(pi_sqrt.asDiagonal() * h.transpose() * kernel.k * h *
                                pi_sqrt.asDiagonal());
    const auto eig = eig_sym(t);
    Matrix u = eig.vectors.rightCols(c).rowwise().reverse();
    fix_signs(u);
    return pi_sqrt.cwiseInverse().asDiagonal() * u;
}

}  // namespace speclust
