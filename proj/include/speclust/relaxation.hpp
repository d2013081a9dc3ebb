#pragma once

#include "speclust/affinity.hpp"
#include "speclust/types.hpp"

namespace speclust {

/// Relaxed n-by-(c-1) embedding Y together with the weights it was solved
/// under. Satisfies Y' Pi Y = I and Y' Pi 1 = 0; it is defined only up to a
/// right orthogonal factor, and the solvers return the canonical
/// representative with that factor fixed to the identity.
struct Embedding {
    Matrix y;
    Vector pi;
};

/// Eigenpairs of the solved operator. For the cut relaxation the pair
/// closest in direction to Pi^{1/2} 1 (the gamma_1 = 0 direction) is listed
/// first and the rest follow in ascending order; the kernel relaxation
/// returns the plain ascending order.
struct EigenSystem {
    Vector gammas;
    Matrix mus;
};

/// The c-by-(c-1) matrix making Y = E Psi feasible for the relaxation. Rows
/// form a simplex with squared vertex distances 1/eta_i + 1/eta_j.
struct PsiMatrix {
    Matrix psi;
    Vector class_weights;
};

struct RelaxationResult {
    Embedding embedding;
    EigenSystem system;
    double objective = 0.0;
};

/// Penalized-cut value from the graph-sum form: each class contributes the
/// weight leaving it divided by its weight sum.
double pcut_graph(const Partition& p, const AffinityGraph& g, const WeightVector& weights);

/// Penalized-cut value from the matrix form tr(E'ME (E'PiE)^{-1}). Accepts
/// any symmetric operator annihilating the ones vector, not just Laplacians.
double pcut_matrix(const Partition& p, const LaplacianOperator& lop, const WeightVector& weights);

/// Closed-form Psi for the given positive class weights eta.
PsiMatrix build_psi(const Vector& class_weights);

/// Piecewise-constant feasible embedding Y = E Psi.
Embedding embed_partition(const Partition& p, const PsiMatrix& psi, const WeightVector& weights);

/// Cut relaxation: eigendecompose Pi^{-1/2} M Pi^{-1/2}, drop the zero
/// direction along Pi^{1/2} 1, keep the next c-1 eigenvectors. The achieved
/// objective is the sum of the kept eigenvalues.
RelaxationResult solve_relaxation(const LaplacianOperator& lop, const WeightVector& weights, int c);

/// Kernel (minimum-variance) relaxation: top c-1 eigenvectors of
/// Pi^{1/2} H_pi' K H_pi Pi^{1/2}; the achieved objective is their eigenvalue sum.
RelaxationResult solve_minvar_relaxation(const KernelMatrix& kernel, const WeightVector& weights,
                                         int c);

/// gamma_{c+1} - gamma_c in the cut solver's ordering.
double eigengap(const EigenSystem& es, int c);

/// Relative residual || K K^+ Y - Y ||_F / ||Y||_F; small when the embedding
/// columns lie in the range of the kernel.
double range_consistency(const Embedding& emb, const KernelMatrix& kernel);

/// c-column relaxation used by the Yu-Shi scheme: bottom c eigenvectors of
/// Pi^{-1/2} M Pi^{-1/2}, mapped back by Pi^{-1/2}, with no centering
/// constraint.
Matrix yu_shi_embedding(const LaplacianOperator& lop, const WeightVector& weights, int c);

/// Kernel-criterion analog: top c eigenvectors of Pi^{1/2} H_pi' K H_pi Pi^{1/2}.
Matrix yu_shi_embedding_kernel(const KernelMatrix& kernel, const WeightVector& weights, int c);

}  // namespace speclust
