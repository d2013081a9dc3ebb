#pragma once

#include "speclust/types.hpp"

namespace speclust {

/// Dense-eigensolver size cap; beyond it the solvers refuse with an error.
inline constexpr int kMaxEigenSize = 5000;

struct EigenDecomposition {
    Vector values;   // ascending
    Matrix vectors;  // orthonormal columns, matching order
};

/// Symmetric eigendecomposition (dense, ascending eigenvalues).
EigenDecomposition eig_sym(const Matrix& m);

/// (m + m') / 2 to suppress drift after products that are symmetric in
/// exact arithmetic.
inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// Moore-Penrose inverse of a symmetric PSD matrix via eigendecomposition.
/// Eigenvalues at or below n * max_eig * 1e-12 are treated as exactly zero.
Matrix pseudo_inverse_psd(const Matrix& m);

/// Orthogonal projector onto the range of a symmetric PSD matrix, with the
/// same rank tolerance as pseudo_inverse_psd.
Matrix range_projector_psd(const Matrix& m);

/// Centering matrix H_n = I - (1/n) 1 1'.
Matrix centering(int n);

/// Weighted centering H_pi = I - pi 1' / (pi' 1). H_pi' x subtracts the
/// pi-weighted mean from each row of x.
Matrix weighted_centering(const Vector& pi);

/// Largest principal angle (radians) between the column spaces of a and b.
double max_principal_angle(const Matrix& a, const Matrix& b);

}  // namespace speclust
