#pragma once

#include "speclust/affinity.hpp"
#include "speclust/relaxation.hpp"
#include "speclust/rng.hpp"
#include "speclust/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <functional>
#include <vector>

namespace speclust::testing {

inline Matrix random_matrix(RngStream& rng, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
    return m;
}

/// Haar-ish orthogonal matrix: QR of a Gaussian with sign-fixed R diagonal.
inline Matrix random_orthogonal(RngStream& rng, int k) {
    const Matrix a = random_matrix(rng, k, k);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

/// Orthonormal-column n-by-k matrix.
inline Matrix random_orthonormal(RngStream& rng, int n, int k) {
    const Matrix a = random_matrix(rng, n, k);
    Eigen::HouseholderQR<Matrix> qr(a);
    return Matrix(qr.householderQ()) * Matrix::Identity(n, k);
}

/// Connected weighted graph: a random spanning tree plus extra random edges.
inline AffinityGraph random_connected_graph(RngStream& rng, int n, bool zero_diagonal = true) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const int j = rng.uniform_int(i);
        const double weight = 0.2 + rng.uniform();
        w(i, j) = w(j, i) = weight;
    }
    const int extras = n;
    for (int e = 0; e < extras; ++e) {
        const int i = rng.uniform_int(n);
        const int j = rng.uniform_int(n);
        if (i == j) continue;
        const double weight = 0.2 + rng.uniform();
        w(i, j) = w(j, i) = weight;
    }
    if (!zero_diagonal)
        for (int i = 0; i < n; ++i) w(i, i) = 1.0;
    return affinity_from_weights(std::move(w));
}

/// Graph made of unit-weight cliques, one per block size; no cross edges.
inline AffinityGraph component_graph(const std::vector<int>& block_sizes) {
    int n = 0;
    for (int b : block_sizes) n += b;
    Matrix w = Matrix::Zero(n, n);
    int start = 0;
    for (int b : block_sizes) {
        for (int i = start; i < start + b; ++i)
            for (int j = start; j < start + b; ++j)
                if (i != j) w(i, j) = 1.0;
        start += b;
    }
    return affinity_from_weights(std::move(w));
}

inline Partition component_partition(const std::vector<int>& block_sizes) {
    std::vector<int> labels;
    for (int j = 0; j < static_cast<int>(block_sizes.size()); ++j)
        labels.insert(labels.end(), block_sizes[static_cast<std::size_t>(j)], j);
    return Partition(std::move(labels), static_cast<int>(block_sizes.size()));
}

inline AffinityGraph path_graph(int n) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
    return affinity_from_weights(std::move(w));
}

inline AffinityGraph cycle_graph(int n) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        w(i, j) = w(j, i) = 1.0;
    }
    return affinity_from_weights(std::move(w));
}

inline AffinityGraph complete_graph(int n) {
    Matrix w = Matrix::Constant(n, n, 1.0);
    for (int i = 0; i < n; ++i) w(i, i) = 0.0;
    return affinity_from_weights(std::move(w));
}

/// Random partition with every class nonempty (requires n >= c).
inline Partition random_partition(RngStream& rng, int n, int c) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int j = 0; j < c; ++j) labels[static_cast<std::size_t>(j)] = j;
    for (int i = c; i < n; ++i) labels[static_cast<std::size_t>(i)] = rng.uniform_int(c);
    for (int i = n - 1; i > 0; --i) {
        const int j = rng.uniform_int(i + 1);
        std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
    }
    return Partition(std::move(labels), c);
}

/// Random strictly positive weights.
inline WeightVector random_weights(RngStream& rng, int n) {
    Vector pi(n);
    for (int i = 0; i < n; ++i) pi(i) = 0.2 + 2.0 * rng.uniform();
    return {pi};
}

/// Random symmetric PSD matrix of the given rank.
inline Matrix random_psd(RngStream& rng, int n, int rank) {
    const Matrix a = random_matrix(rng, n, rank);
    return a * a.transpose();
}

/// Visit every assignment of n items to c classes with all classes
/// nonempty. Label permutations are visited separately.
inline void for_each_partition(int n, int c, const std::function<void(const Partition&)>& visit) {
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<int> counts(static_cast<std::size_t>(c), 0);
        for (int t : labels) ++counts[static_cast<std::size_t>(t)];
        if (std::all_of(counts.begin(), counts.end(), [](int v) { return v > 0; }))
            visit(Partition(labels, c));
        int pos = n - 1;
        while (pos >= 0 && labels[static_cast<std::size_t>(pos)] == c - 1) {
            labels[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++labels[static_cast<std::size_t>(pos)];
    }
}

/// Canonical relabeling by first occurrence, for comparing partitions
/// modulo label names.
inline std::vector<int> canonical_labels(const Partition& p) {
    std::vector<int> map(static_cast<std::size_t>(p.num_classes), -1);
    std::vector<int> out;
    out.reserve(p.labels.size());
    int next = 0;
    for (int t : p.labels) {
        if (map[static_cast<std::size_t>(t)] < 0) map[static_cast<std::size_t>(t)] = next++;
        out.push_back(map[static_cast<std::size_t>(t)]);
    }
    return out;
}

/// O(n^2) pair-enumeration Rand index oracle.
inline double rand_index_pairs(const Partition& u, const Partition& v) {
    const int n = u.size();
    long long agree = 0, pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ++pairs;
            const bool same_u = u.labels[static_cast<std::size_t>(i)] == u.labels[static_cast<std::size_t>(j)];
            const bool same_v = v.labels[static_cast<std::size_t>(i)] == v.labels[static_cast<std::size_t>(j)];
            if (same_u == same_v) ++agree;
        }
    return static_cast<double>(agree) / static_cast<double>(pairs);
}

/// Three well-separated Gaussian blobs in the plane; centers pairwise 1
/// apart, spread sigma.
inline std::pair<Matrix, Partition> blob_data(RngStream& rng, int per_blob, double sigma) {
    const double cx[3] = {0.0, 1.0, 0.5};
    const double cy[3] = {0.0, 0.0, 0.8660254037844386};
    Matrix x(3 * per_blob, 2);
    std::vector<int> labels;
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < per_blob; ++i) {
            const int row = b * per_blob + i;
            x(row, 0) = cx[b] + sigma * rng.normal();
            x(row, 1) = cy[b] + sigma * rng.normal();
            labels.push_back(b);
        }
    return {x, Partition(std::move(labels), 3)};
}

}  // namespace speclust::testing
