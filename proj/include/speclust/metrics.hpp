#pragma once

#include "speclust/affinity.hpp"
#include "speclust/types.hpp"

#include <cstdint>
#include <optional>

namespace speclust {

/// Per-replicate evaluation record.
struct MetricReport {
    std::optional<double> rand_index;  // absent when no ground truth
    double pcut_value = 0.0;
    double minvar_trace = 0.0;
    double eigengap = 0.0;
    int replicate_id = 0;
    std::uint64_t seed = 0;
};

/// Rand index (a + b) / C(n, 2) via contingency-table counting; label
/// permutation invariant, in [0, 1].
double rand_index(const Partition& u, const Partition& v);

/// Weighted within-class scatter trace in the kernel-implied feature space,
/// computed from kernel entries only.
double minvar_trace(const KernelMatrix& kernel, const Partition& p, const WeightVector& weights);

/// Centered between-class objective T = tr(E'Pi H' K H Pi E (E'PiE)^{-1}).
double objective_T(const Partition& p, const KernelMatrix& kernel, const WeightVector& weights);

/// Uncentered variant T' = tr(E'Pi K Pi E (E'PiE)^{-1}); equals
/// T + pi'K pi / (pi'1).
double objective_Tprime(const Partition& p, const KernelMatrix& kernel, const WeightVector& weights);

}  // namespace speclust
