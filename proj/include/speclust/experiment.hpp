#pragma once

#include "speclust/metrics.hpp"
#include "speclust/rounding.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace speclust {

enum class Criterion { Ncut, Rcut, Minvar };
enum class RoundingScheme { Procrustes, Kmeans, YuShi };
enum class OutputFormat { Csv, Json };

const char* to_string(Criterion c);
const char* to_string(RoundingScheme r);
const char* to_string(InitStrategy s);
const char* to_string(OutputFormat f);

/// One experiment: criterion x rounding over a beta sweep with seeded
/// replicates.
struct ExperimentConfig {
    std::string input;
    std::optional<int> label_column;
    Criterion criterion = Criterion::Ncut;
    RoundingScheme rounding = RoundingScheme::Procrustes;
    InitStrategy init = InitStrategy::Orthogonal;
    std::vector<double> betas;
    std::optional<int> classes;  // defaults to the ground-truth class count
    int replicates = 1;
    std::uint64_t seed = 0;
    std::string output;
    int max_iter = 100;
    int workers = 1;
    OutputFormat format = OutputFormat::Csv;
};

/// One planned run with its pre-split RNG stream, so execution order cannot
/// change results.
struct RunPlan {
    int beta_index = 0;
    double beta = 0.0;
    int replicate = 0;
    std::uint64_t stream = 0;
};

struct RunRecord {
    RunPlan plan;
    MetricReport report;
    int iterations = 0;
};

struct BetaAggregate {
    double beta = 0.0;
    int runs = 0;
    bool has_rand_index = false;
    double ri_mean = 0.0, ri_min = 0.0, ri_max = 0.0, ri_std = 0.0;
    double pcut_mean = 0.0;
    double eigengap_mean = 0.0;
    double mean_iterations = 0.0;
};

struct RunSummary {
    ExperimentConfig config;
    std::vector<RunRecord> runs;
    std::vector<BetaAggregate> aggregates;
};

/// Deterministic cross product betas x replicates. Replicates collapse to 1
/// per beta when the whole pipeline is deterministic (identity init).
std::vector<RunPlan> plan(const ExperimentConfig& config);

/// Run the full pipeline for every planned run: standardize, affinity,
/// criterion operator, relaxation, rounding, metrics. Runs execute in
/// parallel up to config.workers.
RunSummary execute(const ExperimentConfig& config);

std::string to_csv(const RunSummary& summary);
std::string to_json_string(const RunSummary& summary);

/// Write the summary to config.output in config.format.
void emit(const RunSummary& summary);

}  // namespace speclust
