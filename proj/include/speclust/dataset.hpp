#pragma once

#include "speclust/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclust {

/// Parsed dataset: n-by-d feature matrix plus optional ground-truth classes.
struct Dataset {
    Matrix x;
    std::optional<Partition> labels;
    std::vector<std::string> label_names;  // class id -> original label text
};

/// Load a rectangular numeric CSV. An optional header row is auto-detected
/// (non-numeric first line, ignoring the label column). When label_column is
/// given, that column is stripped and its values mapped to dense 0-based ids
/// in first-occurrence order.
///
/// Throws std::runtime_error on a missing file, ragged rows, a non-numeric
/// feature cell, or fewer than 2 data rows.
Dataset load_dataset(const std::string& path, std::optional<int> label_column = std::nullopt);

/// Center and scale every column to mean 0 and unit sample standard
/// deviation (n-1 divisor). Constant columns become all-zero.
Matrix standardize(const Matrix& x);

}  // namespace speclust
