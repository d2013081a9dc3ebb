#pragma once

#include "speclust/affinity.hpp"
#include "speclust/rng.hpp"
#include "speclust/types.hpp"

#include <vector>

namespace speclust {

/// Intrinsic Gaussian autoregression: Y ~ N(0, sigma^2 K (x) I) with the
/// operator M as the precision up to sigma^2 (K = M^+).
struct CarSpec {
    LaplacianOperator lop;
    double sigma2 = 1.0;
    int width = 1;  // c - 1
};

/// Simultaneous autoregression Y = C Y + noise; C is row-stochastic,
/// nonnegative, with zero diagonal.
struct SarSpec {
    Matrix c;
};

struct ConditionalMoments {
    Vector mean;
    double variance_scale = 0.0;  // isotropic: covariance is this times I
};

/// sigma^2 = 1 / tr(Pi K), which normalizes E(Y' Pi Y) to the identity.
double sigma_from_pi(const KernelMatrix& kernel, const WeightVector& weights);

/// Log density up to an additive constant: -(1 / 2 sigma^2) tr(Y' M Y).
double log_density(const Matrix& y, const CarSpec& spec);

/// Full conditional of row i: mean omega * sum_j (w_ij / l_ii) y_j and
/// isotropic variance sigma^2 / l_ii. omega < 1 gives the proper
/// autoregression built on D - omega W.
ConditionalMoments conditional_moments(int node, const Matrix& y, const AffinityGraph& g,
                                       const CarSpec& spec, double omega = 1.0);

/// Draw matrices sigma K^{1/2} Z with Z standard normal; zero eigenvalues of
/// K stay zero, so samples live in the range of K.
std::vector<Matrix> sample_car(const CarSpec& spec, int count, RngStream& rng);

/// Validated SAR coefficient matrix C = D^{-1} W (graph must have zero
/// diagonal and no isolated vertex).
SarSpec sar_from_graph(const AffinityGraph& g);

SarSpec make_sar(Matrix c);

/// Residuals E = Y - C Y of the simultaneous autoregression.
Matrix sar_residuals(const Matrix& y, const SarSpec& sar);

/// Max discrepancy between the sorted spectra of I - D^{-1/2} W D^{-1/2}
/// and of I - D^{-1} W, the latter reached through its similarity transform
/// D^{1/2} (D^{-1} W) D^{-1/2}.
double spectrum_equivalence(const AffinityGraph& g);

}  // namespace speclust
