#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace speclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Hard assignment of n items to c classes. Interchangeable with the n-by-c
/// binary indicator matrix E that has exactly one 1 per row.
struct Partition {
    std::vector<int> labels;  // class ids in {0, ..., num_classes - 1}
    int num_classes = 0;

    Partition() = default;
    Partition(std::vector<int> l, int c) : labels(std::move(l)), num_classes(c) {
        if (c < 1) throw std::invalid_argument("Partition: class count must be positive");
        for (int t : labels)
            if (t < 0 || t >= c) throw std::invalid_argument("Partition: class id out of range");
    }

    int size() const { return static_cast<int>(labels.size()); }

    /// n-by-c indicator matrix E.
    Matrix indicator() const {
        Matrix e = Matrix::Zero(size(), num_classes);
        for (int i = 0; i < size(); ++i) e(i, labels[i]) = 1.0;
        return e;
    }

    std::vector<int> class_sizes() const {
        std::vector<int> counts(num_classes, 0);
        for (int t : labels) ++counts[t];
        return counts;
    }

    /// Per-class weight sums eta_j = sum of pi over class j.
    Vector class_weights(const Vector& pi) const {
        if (pi.size() != size())
            throw std::invalid_argument("Partition: weight vector size mismatch");
        Vector eta = Vector::Zero(num_classes);
        for (int i = 0; i < size(); ++i) eta(labels[i]) += pi(i);
        return eta;
    }

    bool has_empty_class() const {
        for (int c : class_sizes())
            if (c == 0) return true;
        return false;
    }

    void require_nonempty(const char* where) const {
        if (has_empty_class())
            throw std::invalid_argument(std::string(where) + ": empty class in partition");
    }

    bool operator==(const Partition& other) const {
        return num_classes == other.num_classes && labels == other.labels;
    }
};

/// Diagonal weight matrix Pi as a vector of strictly positive per-node
/// weights. Identity for Rcut, node degrees for Ncut.
struct WeightVector {
    Vector pi;

    static WeightVector identity(int n) { return {Vector::Ones(n)}; }

    void validate() const {
        for (Eigen::Index i = 0; i < pi.size(); ++i)
            if (!(pi(i) > 0.0))
                throw std::invalid_argument("WeightVector: weights must be strictly positive");
    }
};

}  // namespace speclust
