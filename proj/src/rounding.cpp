#include "speclust/rounding.hpp"

#include "speclust/simd/kernels.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace speclust {

namespace {

Matrix polar_factor(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

int nonempty_classes(const Partition& p) {
    int count = 0;
    for (int s : p.class_sizes())
        if (s > 0) ++count;
    return count;
}

/// Margin value that decided a row's assignment: the maximum of the row
/// extended with 0.
double row_margin(const Matrix& y, int i) {
    return std::max(y.row(i).maxCoeff(), 0.0);
}

/// Move one point into the first empty class: the donor is chosen by the
/// given score (largest wins) among points whose class keeps a member.
/// Returns true when no class is empty afterwards.
bool repair_empty_class(Partition& p, const std::vector<double>& donor_score) {
    auto sizes = p.class_sizes();
    int empty = -1;
    for (int j = 0; j < p.num_classes; ++j)
        if (sizes[j] == 0) {
            empty = j;
            break;
        }
    if (empty < 0) return true;

    int donor = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i) {
        if (sizes[p.labels[i]] < 2) continue;
        if (donor_score[i] > best) {
            best = donor_score[i];
            donor = i;
        }
    }
    if (donor >= 0) p.labels[donor] = empty;
    return !p.has_empty_class();
}

}  // namespace

Matrix g_matrix(int c) {
    if (c < 2) throw std::invalid_argument("g_matrix: need at least 2 classes");
    Matrix g = Matrix::Constant(c, c - 1, -1.0 / c);
    for (int j = 0; j < c - 1; ++j) g(j, j) += 1.0;
    return g;
}

Matrix procrustes_align(const Matrix& u, const Partition& p) {
    if (p.size() != u.rows()) throw std::invalid_argument("procrustes_align: size mismatch");
    if (u.cols() != p.num_classes - 1)
        throw std::invalid_argument("procrustes_align: embedding width must be c - 1");
    if ((u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm() > 1e-6)
        throw std::invalid_argument("procrustes_align: columns must be orthonormal");
    if (nonempty_classes(p) < 2)
        throw std::invalid_argument("procrustes_align: degenerate all-one-class partition");
    return polar_factor(u.transpose() * p.indicator() * g_matrix(p.num_classes));
}

Partition assign_by_margin(const Matrix& y) {
    const int n = static_cast<int>(y.rows());
    const int c = static_cast<int>(y.cols()) + 1;
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        const double mx = y.row(i).maxCoeff(&best);
        labels[i] = mx > 0.0 ? static_cast<int>(best) : c - 1;
    }
    return Partition(std::move(labels), c);
}

Partition initialize_partition(const Matrix& m, int c, InitStrategy strategy, RngStream& rng) {
    const int n = static_cast<int>(m.rows());
    if (n < c) throw std::invalid_argument("initialize_partition: fewer points than classes");

    switch (strategy) {
        case InitStrategy::Identity: {
            if (m.cols() == c - 1) return assign_by_margin(m);
            if (m.cols() == c) {
                std::vector<int> labels(n);
                for (int i = 0; i < n; ++i) {
                    Eigen::Index best = 0;
                    m.row(i).maxCoeff(&best);
                    labels[i] = static_cast<int>(best);
                }
                return Partition(std::move(labels), c);
            }
            throw std::invalid_argument("initialize_partition: unexpected embedding width");
        }
        case InitStrategy::Orthogonal: {
            // Furthest-first in angle: seed with the longest row, then
            // repeatedly take the row least aligned with every chosen seed.
            const Vector norms = m.rowwise().norm();
            std::vector<int> seeds;
            Eigen::Index first = 0;
            norms.maxCoeff(&first);
            seeds.push_back(static_cast<int>(first));
            while (static_cast<int>(seeds.size()) < c) {
                int pick = -1;
                double pick_score = std::numeric_limits<double>::infinity();
                for (int i = 0; i < n; ++i) {
                    if (norms(i) == 0.0) continue;
                    double worst = 0.0;
                    for (int s : seeds) {
                        const double denom = norms(i) * norms(s);
                        const double cosine = denom > 0.0 ? std::abs(m.row(i).dot(m.row(s))) / denom : 1.0;
                        worst = std::max(worst, cosine);
                    }
                    if (worst < pick_score) {
                        pick_score = worst;
                        pick = i;
                    }
                }
                if (pick < 0) pick = static_cast<int>(seeds.size()) % n;
                seeds.push_back(pick);
            }
            std::vector<int> labels(n);
            for (int i = 0; i < n; ++i) {
                int best = 0;
                double best_cos = -std::numeric_limits<double>::infinity();
                for (int j = 0; j < c; ++j) {
                    const double denom = norms(i) * norms(seeds[j]);
                    const double cosine = denom > 0.0 ? m.row(i).dot(m.row(seeds[j])) / denom : 0.0;
                    if (cosine > best_cos) {
                        best_cos = cosine;
                        best = j;
                    }
                }
                labels[i] = best;
            }
            Partition p(std::move(labels), c);
            std::vector<double> zero_score(n, 0.0);
            for (int tries = 0; tries < c && p.has_empty_class(); ++tries)
                repair_empty_class(p, zero_score);
            return p;
        }
        case InitStrategy::Random: {
            std::vector<int> labels(n);
            for (int i = 0; i < n; ++i) labels[i] = rng.uniform_int(c);
            Partition p(std::move(labels), c);
            // Deterministic repair: feed empty classes from the largest one.
            auto sizes = p.class_sizes();
            for (int j = 0; j < c; ++j) {
                while (sizes[j] == 0) {
                    int largest = 0;
                    for (int l = 1; l < c; ++l)
                        if (sizes[l] > sizes[largest]) largest = l;
                    for (int i = 0; i < n; ++i)
                        if (p.labels[i] == largest) {
                            p.labels[i] = j;
                            --sizes[largest];
                            ++sizes[j];
                            break;
                        }
                }
            }
            return p;
        }
    }
    throw std::invalid_argument("initialize_partition: unknown strategy");
}

RoundingResult procrustean_rounding(const Embedding& emb, int c, InitStrategy strategy,
                                    int max_iter, RngStream& rng) {
    if (max_iter < 1) throw std::invalid_argument("procrustean_rounding: max_iter must be >= 1");
    if (emb.y.cols() != c - 1)
        throw std::invalid_argument("procrustean_rounding: embedding width must be c - 1");

    const Matrix u = emb.pi.cwiseSqrt().asDiagonal() * emb.y;
    const Matrix g = g_matrix(c);

    RoundingResult result;
    result.partition = initialize_partition(emb.y, c, strategy, rng);
    int failed_repairs = 0;

    for (int iter = 1; iter <= max_iter; ++iter) {
        const Matrix q = polar_factor(u.transpose() * result.partition.indicator() * g);
        const Matrix y_rot = emb.y * q;  // Pi^{-1/2} U Q

        Partition next = assign_by_margin(y_rot);
        if (next.has_empty_class()) {
            std::vector<double> score(next.size());
            for (int i = 0; i < next.size(); ++i) score[i] = -row_margin(y_rot, i);
            if (!repair_empty_class(next, score)) {
                if (++failed_repairs >= c)
                    throw std::runtime_error("procrustean_rounding: empty-class repair failed");
            } else {
                failed_repairs = 0;
            }
        } else {
            failed_repairs = 0;
        }

        result.rotation = q;
        result.iterations = iter;
        result.objective_trace.push_back(-(q.transpose() * u.transpose() * next.indicator() * g).trace());

        const bool converged = next == result.partition;
        result.partition = std::move(next);
        if (converged) break;
    }
    return result;
}

RoundingResult weighted_kmeans_rounding(const Embedding& emb, int c, InitStrategy strategy,
                                        int max_iter, RngStream& rng) {
    if (max_iter < 1) throw std::invalid_argument("weighted_kmeans_rounding: max_iter must be >= 1");
    const int n = static_cast<int>(emb.y.rows());
    const int k = static_cast<int>(emb.y.cols());

    RoundingResult result;
    result.partition = initialize_partition(emb.y, c, strategy, rng);
    Matrix centers = Matrix::Zero(c, k);
    int failed_repairs = 0;

    // Row-major copies for the nearest-center kernel.
    std::vector<double> y_rows(static_cast<std::size_t>(n) * k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) y_rows[static_cast<std::size_t>(i) * k + j] = emb.y(i, j);
    std::vector<double> center_rows(static_cast<std::size_t>(c) * k);
    std::vector<int> labels(n);
    std::vector<double> dists(n);

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Weighted means; empty classes keep their previous center.
        const Vector eta = result.partition.class_weights(emb.pi);
        Matrix sums = Matrix::Zero(c, k);
        for (int i = 0; i < n; ++i)
            sums.row(result.partition.labels[i]) += emb.pi(i) * emb.y.row(i);
        for (int j = 0; j < c; ++j)
            if (eta(j) > 0.0) centers.row(j) = sums.row(j) / eta(j);

        for (int j = 0; j < c; ++j)
            for (int l = 0; l < k; ++l) center_rows[static_cast<std::size_t>(j) * k + l] = centers(j, l);
        simd::nearest_center(y_rows.data(), static_cast<std::size_t>(n), static_cast<std::size_t>(k),
                             center_rows.data(), static_cast<std::size_t>(c), labels.data(),
                             dists.data());

        Partition next(labels, c);
        if (next.has_empty_class()) {
            // Donor is the farthest point; the empty class's center moves to
            // it, so the recorded distortion cannot go up.
            Partition repaired = next;
            if (!repair_empty_class(repaired, dists)) {
                if (++failed_repairs >= c)
                    throw std::runtime_error("weighted_kmeans_rounding: empty-class repair failed");
            } else {
                failed_repairs = 0;
            }
            for (int i = 0; i < n; ++i)
                if (repaired.labels[i] != next.labels[i]) centers.row(repaired.labels[i]) = emb.y.row(i);
            next = std::move(repaired);
        } else {
            failed_repairs = 0;
        }

        double distortion = 0.0;
        for (int i = 0; i < n; ++i)
            distortion += emb.pi(i) * (emb.y.row(i) - centers.row(next.labels[i])).squaredNorm();

        result.iterations = iter;
        result.objective_trace.push_back(distortion);
        result.centers = centers;

        const bool converged = next == result.partition;
        result.partition = std::move(next);
        if (converged) break;
    }
    return result;
}

RoundingResult yu_shi_rounding(const Matrix& z, InitStrategy strategy, int max_iter,
                               RngStream& rng) {
    if (max_iter < 1) throw std::invalid_argument("yu_shi_rounding: max_iter must be >= 1");
    const int n = static_cast<int>(z.rows());
    const int c = static_cast<int>(z.cols());
    if (c < 2) throw std::invalid_argument("yu_shi_rounding: need at least 2 columns");

    Matrix zhat = z;
    std::vector<bool> pinned(n, false);
    int zero_rows = 0;
    for (int i = 0; i < n; ++i) {
        const double norm = zhat.row(i).norm();
        if (norm > 0.0) {
            zhat.row(i) /= norm;
        } else {
            pinned[i] = true;  // left zero, forced to the last class
            ++zero_rows;
        }
    }
    if (zero_rows > 0)
        std::fprintf(stderr, "yu_shi_rounding: warning: %d zero-norm row(s) assigned to class %d\n",
                     zero_rows, c - 1);

    RoundingResult result;
    result.partition = initialize_partition(zhat, c, strategy, rng);
    for (int i = 0; i < n; ++i)
        if (pinned[i]) result.partition.labels[i] = c - 1;

    for (int iter = 1; iter <= max_iter; ++iter) {
        const Matrix r = polar_factor(zhat.transpose() * result.partition.indicator());
        const Matrix zr = zhat * r;

        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            if (pinned[i]) {
                labels[i] = c - 1;
                continue;
            }
            Eigen::Index best = 0;
            zr.row(i).maxCoeff(&best);
            labels[i] = static_cast<int>(best);
        }
        Partition next(std::move(labels), c);

        result.rotation = r;
        result.iterations = iter;
        result.objective_trace.push_back((next.indicator() - zr).squaredNorm());

        const bool converged = next == result.partition;
        result.partition = std::move(next);
        if (converged) break;
    }
    return result;
}

double surrogate_loss(const Vector& y, int j) {
    const int c = static_cast<int>(y.size()) + 1;
    if (j < 0 || j >= c) throw std::invalid_argument("surrogate_loss: class out of range");
    const auto value = [&](int l) { return l == c - 1 ? 0.0 : y(l); };
    double total = 0.0;
    for (int l = 0; l < c; ++l)
        if (l != j) total += std::exp(value(l) - value(j));
    return total;
}

double empirical_risk(const Matrix& y, const Partition& labels) {
    if (labels.size() != y.rows()) throw std::invalid_argument("empirical_risk: size mismatch");
    if (labels.num_classes != y.cols() + 1)
        throw std::invalid_argument("empirical_risk: class count must be width + 1");
    double total = 0.0;
    for (int i = 0; i < labels.size(); ++i)
        total += surrogate_loss(y.row(i).transpose(), labels.labels[i]);
    return total / labels.size();
}

Vector fisher_consistent_margins(const Vector& probs) {
    const int c = static_cast<int>(probs.size());
    if (c < 2) throw std::invalid_argument("fisher_consistent_margins: need at least 2 classes");
    double sum = 0.0;
    for (int j = 0; j < c; ++j) {
        if (!(probs(j) > 0.0))
            throw std::invalid_argument("fisher_consistent_margins: probabilities must be positive");
        sum += probs(j);
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw std::invalid_argument("fisher_consistent_margins: probabilities must sum to 1");
    Vector y(c - 1);
    for (int j = 0; j < c - 1; ++j) y(j) = 0.5 * std::log(probs(j) / probs(c - 1));
    return y;
}

}  // namespace speclust
