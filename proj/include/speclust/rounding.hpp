#pragma once

#include "speclust/relaxation.hpp"
#include "speclust/rng.hpp"
#include "speclust/types.hpp"

#include <vector>

namespace speclust {

enum class InitStrategy { Orthogonal, Identity, Random };

/// Output of an iterative rounder. objective_trace holds one value per
/// iteration of the objective the alternation improves, and is
/// non-increasing up to 1e-10 per step.
struct RoundingResult {
    Partition partition;
    std::vector<double> objective_trace;
    int iterations = 0;
    Matrix rotation;  // Procrustes / Yu-Shi only
    Matrix centers;   // K-means only
};

/// G = [I_{c-1} - (1/c) 1 1', -(1/c) 1]': the margin targets g_j, one row
/// per class.
Matrix g_matrix(int c);

/// Orthogonal Q maximizing tr(Q' U' E G), the polar factor of U'EG.
/// U must have orthonormal columns; the partition must have at least two
/// nonempty classes.
Matrix procrustes_align(const Matrix& u, const Partition& p);

/// Margin rule: class argmax_j y_ij when the row maximum is positive,
/// otherwise the last class. Ties break to the lowest index.
Partition assign_by_margin(const Matrix& y);

/// Initial partition for the rounders. "orthogonal" seeds by furthest-first
/// cosine selection; "identity" reads the unrotated matrix directly;
/// "random" draws uniform labels (repaired to keep every class nonempty).
Partition initialize_partition(const Matrix& m, int c, InitStrategy strategy, RngStream& rng);

/// Alternate the Procrustes rotation with margin reassignment until the
/// partition stabilizes. The trace records the negated alignment
/// -tr(Q'U'EG) that both steps improve.
RoundingResult procrustean_rounding(const Embedding& emb, int c, InitStrategy strategy,
                                    int max_iter, RngStream& rng);

/// Alternate weighted center updates m_j = sum_i pi_i y_i / sum_i pi_i with
/// nearest-center reassignment. The trace records the weighted distortion
/// sum_j sum_{i in V_j} pi_i ||y_i - m_j||^2.
RoundingResult weighted_kmeans_rounding(const Embedding& emb, int c, InitStrategy strategy,
                                        int max_iter, RngStream& rng);

/// Yu-Shi scheme on a c-column embedding: normalize rows to unit norm, then
/// alternate a c-by-c Procrustes rotation against E with argmax
/// reassignment. The trace records ||E - Z_hat R||_F^2.
RoundingResult yu_shi_rounding(const Matrix& z, InitStrategy strategy, int max_iter,
                               RngStream& rng);

/// Exponential multiclass surrogate f_j(y) = sum_{l != j} exp(y_l - y_j),
/// with y extended by y_c = 0.
double surrogate_loss(const Vector& y, int j);

/// Mean surrogate loss of the rows of Y under the given labels.
double empirical_risk(const Matrix& y, const Partition& labels);

/// Minimizer of the expected surrogate loss: y_j = (1/2) log(P_j / P_c).
Vector fisher_consistent_margins(const Vector& probs);

}  // namespace speclust
