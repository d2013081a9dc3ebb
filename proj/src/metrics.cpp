#include "speclust/metrics.hpp"

#include "speclust/linalg.hpp"

#include <cmath>
#include <vector>

namespace speclust {

double rand_index(const Partition& u, const Partition& v) {
    const int n = u.size();
    if (n != v.size()) throw std::invalid_argument("rand_index: partitions must cover the same items");
    if (n < 2) throw std::invalid_argument("rand_index: need at least 2 items");

    std::vector<long long> table(static_cast<std::size_t>(u.num_classes) * v.num_classes, 0);
    for (int i = 0; i < n; ++i)
        ++table[static_cast<std::size_t>(u.labels[i]) * v.num_classes + v.labels[i]];

    const auto choose2 = [](long long m) { return m * (m - 1) / 2; };
    long long same_uv = 0;
    for (long long cell : table) same_uv += choose2(cell);
    long long same_u = 0;
    for (int s : u.class_sizes()) same_u += choose2(s);
    long long same_v = 0;
    for (int s : v.class_sizes()) same_v += choose2(s);

    const long long pairs = choose2(n);
    // a = pairs together in both; b = pairs apart in both.
    const long long a = same_uv;
    const long long b = pairs - same_u - same_v + same_uv;
    return static_cast<double>(a + b) / static_cast<double>(pairs);
}

double minvar_trace(const KernelMatrix& kernel, const Partition& p, const WeightVector& weights) {
    p.require_nonempty("minvar_trace");
    weights.validate();
    const int n = p.size();
    if (kernel.k.rows() != n || weights.pi.size() != n)
        throw std::invalid_argument("minvar_trace: size mismatch");

    // Per class: sum_i pi_i K_ii - (1/eta_j) sum_{i,k} pi_i pi_k K_ik, which
    // is the weighted scatter around the weighted class mean written with
    // inner products only.
    const Vector eta = p.class_weights(weights.pi);
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += weights.pi(i) * kernel.k(i, i);
    const Matrix e = p.indicator();
    const Vector pik_sums = (e.transpose() * weights.pi.asDiagonal() * kernel.k *
                             weights.pi.asDiagonal() * e)
                                .diagonal();
    for (int j = 0; j < p.num_classes; ++j) total -= pik_sums(j) / eta(j);
    return total / weights.pi.sum();
}

namespace {

double scaled_quadratic(const Partition& p, const Matrix& inner, const WeightVector& weights) {
    const Matrix e = p.indicator();
    const Matrix a = e.transpose() * weights.pi.asDiagonal() * inner * weights.pi.asDiagonal() * e;
    const Vector eta = p.class_weights(weights.pi);
    double total = 0.0;
    for (int j = 0; j < p.num_classes; ++j) total += a(j, j) / eta(j);
    return total;
}

}  // namespace

double objective_T(const Partition& p, const KernelMatrix& kernel, const WeightVector& weights) {
    p.require_nonempty("objective_T");
    weights.validate();
    if (kernel.k.rows() != p.size() || weights.pi.size() != p.size())
        throw std::invalid_argument("objective_T: size mismatch");
    const Matrix h = weighted_centering(weights.pi);
    return scaled_quadratic(p, symmetrize(h.transpose() * kernel.k * h), weights);
}

double objective_Tprime(const Partition& p, const KernelMatrix& kernel, const WeightVector& weights) {
    p.require_nonempty("objective_Tprime");
    weights.validate();
    if (kernel.k.rows() != p.size() || weights.pi.size() != p.size())
        throw std::invalid_argument("objective_Tprime: size mismatch");
    return scaled_quadratic(p, kernel.k, weights);
}

}  // namespace speclust
