#include "speclust/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace speclust {

EigenDecomposition eig_sym(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_sym: matrix must be square");
    if (m.rows() > kMaxEigenSize)
        throw std::invalid_argument("eig_sym: dense eigensolver capped at n = 5000, got n = " +
                                    std::to_string(m.rows()));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_sym: eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double rank_cutoff(const Vector& values) {
    const double max_eig = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
    return static_cast<double>(values.size()) * max_eig * 1e-12;
}

}  // namespace

Matrix pseudo_inverse_psd(const Matrix& m) {
    const auto eig = eig_sym(m);
    const double cutoff = rank_cutoff(eig.values);
    Vector inv = Vector::Zero(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > cutoff) inv(i) = 1.0 / eig.values(i);
    return symmetrize(eig.vectors * inv.asDiagonal() * eig.vectors.transpose());
}

Matrix range_projector_psd(const Matrix& m) {
    const auto eig = eig_sym(m);
    const double cutoff = rank_cutoff(eig.values);
    Vector keep = Vector::Zero(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > cutoff) keep(i) = 1.0;
    return symmetrize(eig.vectors * keep.asDiagonal() * eig.vectors.transpose());
}

Matrix centering(int n) {
    return Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
}

Matrix weighted_centering(const Vector& pi) {
    const double total = pi.sum();
    if (!(total > 0)) throw std::invalid_argument("weighted_centering: weights must sum positive");
    const Eigen::Index n = pi.size();
    return Matrix::Identity(n, n) - pi * Matrix::Constant(1, n, 1.0) / total;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_principal_angle: shape mismatch");
    const Matrix qa = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(a.rows(), a.cols());
    const Matrix qb = Eigen::HouseholderQR<Matrix>(b).householderQ() * Matrix::Identity(b.rows(), b.cols());
    Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
    const double smin = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
    return std::acos(smin);
}

}  // namespace speclust
