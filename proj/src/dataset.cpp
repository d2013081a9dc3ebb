#include "speclust/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace speclust {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_number(const std::string& s, double& value) {
    if (s.empty()) return false;
    char* end = nullptr;
    value = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

Dataset load_dataset(const std::string& path, std::optional<int> label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_row(line));
    }
    if (!rows.empty()) {
        // Header if any non-label cell of the first line is non-numeric.
        bool header = false;
        for (std::size_t j = 0; j < rows[0].size(); ++j) {
            if (label_column && static_cast<int>(j) == *label_column) continue;
            double v;
            if (!parse_number(rows[0][j], v)) header = true;
        }
        if (header) rows.erase(rows.begin());
    }
    if (rows.size() < 2) throw std::runtime_error("load_dataset: fewer than 2 rows in " + path);

    const std::size_t cols = rows[0].size();
    if (label_column && (*label_column < 0 || *label_column >= static_cast<int>(cols)))
        throw std::runtime_error("load_dataset: label column out of range");
    const std::size_t d = label_column ? cols - 1 : cols;
    if (d < 1) throw std::runtime_error("load_dataset: no feature columns");

    Dataset out;
    out.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    std::vector<int> labels;
    std::unordered_map<std::string, int> label_ids;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::runtime_error("load_dataset: ragged row " + std::to_string(i + 1));
        std::size_t col = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (label_column && static_cast<int>(j) == *label_column) {
                const std::string& name = rows[i][j];
                auto it = label_ids.find(name);
                if (it == label_ids.end()) {
                    it = label_ids.emplace(name, static_cast<int>(out.label_names.size())).first;
                    out.label_names.push_back(name);
                }
                labels.push_back(it->second);
                continue;
            }
            double v;
            if (!parse_number(rows[i][j], v))
                throw std::runtime_error("load_dataset: non-numeric cell at row " +
                                         std::to_string(i + 1) + ", column " + std::to_string(j + 1));
            out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col++)) = v;
        }
    }
    if (label_column)
        out.labels = Partition(std::move(labels), static_cast<int>(out.label_names.size()));
    return out;
}

Matrix standardize(const Matrix& x) {
    if (x.rows() < 2) throw std::invalid_argument("standardize: need at least 2 rows");
    Matrix out(x.rows(), x.cols());
    const double n = static_cast<double>(x.rows());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double mean = x.col(j).mean();
        Vector centered = x.col(j).array() - mean;
        const double sd = std::sqrt(centered.squaredNorm() / (n - 1.0));
        if (sd <= 1e-12 * (std::abs(mean) + 1.0)) {
            out.col(j).setZero();  // constant column
        } else {
            out.col(j) = centered / sd;
        }
    }
    return out;
}

}  // namespace speclust
