#include "speclust/experiment.hpp"

#include "speclust/dataset.hpp"
#include "speclust/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace speclust {

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::Ncut: return "ncut";
        case Criterion::Rcut: return "rcut";
        case Criterion::Minvar: return "minvar";
    }
    return "?";
}

const char* to_string(RoundingScheme r) {
    switch (r) {
        case RoundingScheme::Procrustes: return "procrustes";
        case RoundingScheme::Kmeans: return "kmeans";
        case RoundingScheme::YuShi: return "yushi";
    }
    return "?";
}

const char* to_string(InitStrategy s) {
    switch (s) {
        case InitStrategy::Orthogonal: return "orthogonal";
        case InitStrategy::Identity: return "identity";
        case InitStrategy::Random: return "random";
    }
    return "?";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

namespace {

void validate(const ExperimentConfig& config) {
    if (config.betas.empty()) throw std::invalid_argument("config: beta list must not be empty");
    for (double b : config.betas)
        if (!(b > 0.0)) throw std::invalid_argument("config: betas must be positive");
    if (config.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (config.classes && *config.classes < 2)
        throw std::invalid_argument("config: class count must be >= 2");
    if (config.max_iter < 1) throw std::invalid_argument("config: max-iter must be >= 1");
    if (config.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RunContext {
    const ExperimentConfig& config;
    const Matrix& x;
    const std::optional<Partition>& truth;
    int classes;
};

RunRecord run_one(const RunContext& ctx, const RunPlan& plan) {
    const bool zero_diag = ctx.config.rounding == RoundingScheme::Procrustes;
    const AffinityGraph graph = build_affinity(ctx.x, plan.beta, zero_diag);
    const int c = ctx.classes;

    LaplacianOperator op;
    KernelMatrix kernel;
    WeightVector weights = WeightVector::identity(static_cast<int>(ctx.x.rows()));
    switch (ctx.config.criterion) {
        case Criterion::Ncut:
            op = laplacian(graph);
            weights = degree_weights(graph);
            kernel = centered_kernel(graph, zero_diag ? KernelVariant::PlusIdentity
                                                      : KernelVariant::Plain);
            break;
        case Criterion::Rcut:
            op = sar_laplacian(graph);
            kernel = centered_kernel(graph, zero_diag ? KernelVariant::PlusIdentity
                                                      : KernelVariant::Plain);
            break;
        case Criterion::Minvar:
            kernel = centered_kernel(graph, zero_diag ? KernelVariant::PlusIdentity
                                                      : KernelVariant::Plain);
            op = laplacian(graph);  // reporting only
            break;
    }

    const bool kernel_criterion = ctx.config.criterion == Criterion::Minvar;
    RelaxationResult relaxed = kernel_criterion ? solve_minvar_relaxation(kernel, weights, c)
                                                : solve_relaxation(op, weights, c);

    RngStream rng(plan.stream);
    RoundingResult rounded;
    switch (ctx.config.rounding) {
        case RoundingScheme::Procrustes:
            rounded = procrustean_rounding(relaxed.embedding, c, ctx.config.init,
                                           ctx.config.max_iter, rng);
            break;
        case RoundingScheme::Kmeans:
            rounded = weighted_kmeans_rounding(relaxed.embedding, c, ctx.config.init,
                                               ctx.config.max_iter, rng);
            break;
        case RoundingScheme::YuShi: {
            const Matrix z = kernel_criterion ? yu_shi_embedding_kernel(kernel, weights, c)
                                              : yu_shi_embedding(op, weights, c);
            rounded = yu_shi_rounding(z, ctx.config.init, ctx.config.max_iter, rng);
            break;
        }
    }

    RunRecord record;
    record.plan = plan;
    record.iterations = rounded.iterations;
    record.report.replicate_id = plan.replicate;
    record.report.seed = plan.stream;
    if (ctx.truth) record.report.rand_index = rand_index(*ctx.truth, rounded.partition);
    record.report.pcut_value = pcut_matrix(rounded.partition, op, weights);
    record.report.minvar_trace = minvar_trace(kernel, rounded.partition, weights);
    if (kernel_criterion) {
        // Gap below the kept top c-1 eigenvalues of the kernel operator.
        const Eigen::Index n = relaxed.system.gammas.size();
        record.report.eigengap =
            relaxed.system.gammas(n - c + 1) - relaxed.system.gammas(n - c);
    } else {
        record.report.eigengap = eigengap(relaxed.system, c);
    }
    return record;
}

}  // namespace

std::vector<RunPlan> plan(const ExperimentConfig& config) {
    validate(config);
    int replicates = config.replicates;
    if (config.init == InitStrategy::Identity && replicates > 1) {
        std::fprintf(stderr,
                     "plan: identity initialization is deterministic; collapsing %d replicates to 1\n",
                     replicates);
        replicates = 1;
    }
    std::vector<RunPlan> plans;
    plans.reserve(config.betas.size() * static_cast<std::size_t>(replicates));
    for (int b = 0; b < static_cast<int>(config.betas.size()); ++b)
        for (int r = 0; r < replicates; ++r)
            plans.push_back({b, config.betas[static_cast<std::size_t>(b)], r,
                             derive_stream(config.seed, b, r)});
    return plans;
}

RunSummary execute(const ExperimentConfig& config) {
    const std::vector<RunPlan> plans = plan(config);

    Dataset ds = load_dataset(config.input, config.label_column);
    const Matrix x = standardize(ds.x);
    int classes = 0;
    if (config.classes) {
        classes = *config.classes;
    } else if (ds.labels) {
        classes = ds.labels->num_classes;
    } else {
        throw std::invalid_argument("config: --classes is required without a label column");
    }
    if (classes < 2 || classes > static_cast<int>(x.rows()))
        throw std::invalid_argument("config: class count out of range for this dataset");

    RunContext ctx{config, x, ds.labels, classes};

    RunSummary summary;
    summary.config = config;
    summary.runs.resize(plans.size());

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < plans.size(); i = next.fetch_add(1)) {
            const RunPlan& p = plans[i];
            try {
                summary.runs[i] = run_one(ctx, p);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    std::ostringstream msg;
                    msg << "run criterion=" << to_string(config.criterion)
                        << " rounding=" << to_string(config.rounding) << " beta=" << p.beta
                        << " replicate=" << p.replicate << ": " << e.what();
                    first_error = msg.str();
                }
            }
        }
    };

    const int workers = std::min<int>(config.workers, static_cast<int>(plans.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);

    for (int b = 0; b < static_cast<int>(config.betas.size()); ++b) {
        BetaAggregate agg;
        agg.beta = config.betas[static_cast<std::size_t>(b)];
        double ri_sum = 0.0, ri_sq = 0.0, pcut_sum = 0.0, gap_sum = 0.0, iter_sum = 0.0;
        agg.ri_min = 1.0;
        agg.has_rand_index = static_cast<bool>(ds.labels);
        for (const RunRecord& r : summary.runs) {
            if (r.plan.beta_index != b) continue;
            ++agg.runs;
            pcut_sum += r.report.pcut_value;
            gap_sum += r.report.eigengap;
            iter_sum += r.iterations;
            if (r.report.rand_index) {
                const double ri = *r.report.rand_index;
                ri_sum += ri;
                ri_sq += ri * ri;
                agg.ri_min = std::min(agg.ri_min, ri);
                agg.ri_max = std::max(agg.ri_max, ri);
            }
        }
        if (agg.runs > 0) {
            agg.pcut_mean = pcut_sum / agg.runs;
            agg.eigengap_mean = gap_sum / agg.runs;
            agg.mean_iterations = iter_sum / agg.runs;
            if (agg.has_rand_index) {
                agg.ri_mean = ri_sum / agg.runs;
                const double var = std::max(0.0, ri_sq / agg.runs - agg.ri_mean * agg.ri_mean);
                agg.ri_std = std::sqrt(var);
            } else {
                agg.ri_min = 0.0;
            }
        }
        summary.aggregates.push_back(agg);
    }
    return summary;
}

std::string to_csv(const RunSummary& summary) {
    std::ostringstream out;
    out << "criterion,rounding,init,beta,replicate,seed,rand_index,pcut,eigengap,iterations\n";
    const std::string prefix = std::string(to_string(summary.config.criterion)) + "," +
                               to_string(summary.config.rounding) + "," +
                               to_string(summary.config.init) + ",";
    for (const RunRecord& r : summary.runs) {
        out << prefix << format_double(r.plan.beta) << "," << r.plan.replicate << ","
            << r.plan.stream << ",";
        if (r.report.rand_index) out << format_double(*r.report.rand_index);
        out << "," << format_double(r.report.pcut_value) << ","
            << format_double(r.report.eigengap) << "," << r.iterations << "\n";
    }
    for (const BetaAggregate& a : summary.aggregates) {
        out << prefix << format_double(a.beta) << ",mean,,";
        if (a.has_rand_index) out << format_double(a.ri_mean);
        out << "," << format_double(a.pcut_mean) << "," << format_double(a.eigengap_mean) << ","
            << format_double(a.mean_iterations) << "\n";
    }
    return out.str();
}

std::string to_json_string(const RunSummary& summary) {
    nlohmann::ordered_json root;
    root["config"] = {
        {"input", summary.config.input},
        {"criterion", to_string(summary.config.criterion)},
        {"rounding", to_string(summary.config.rounding)},
        {"init", to_string(summary.config.init)},
        {"betas", summary.config.betas},
        {"replicates", summary.config.replicates},
        {"seed", summary.config.seed},
        {"max_iter", summary.config.max_iter},
    };
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const RunRecord& r : summary.runs) {
        nlohmann::ordered_json row = {
            {"beta", r.plan.beta},
            {"replicate", r.plan.replicate},
            {"seed", r.plan.stream},
            {"pcut", r.report.pcut_value},
            {"minvar_trace", r.report.minvar_trace},
            {"eigengap", r.report.eigengap},
            {"iterations", r.iterations},
        };
        if (r.report.rand_index)
            row["rand_index"] = *r.report.rand_index;
        else
            row["rand_index"] = nullptr;
        runs.push_back(row);
    }
    root["runs"] = runs;
    nlohmann::ordered_json aggs = nlohmann::ordered_json::array();
    for (const BetaAggregate& a : summary.aggregates) {
        nlohmann::ordered_json row = {
            {"beta", a.beta},          {"runs", a.runs},
            {"pcut_mean", a.pcut_mean}, {"eigengap_mean", a.eigengap_mean},
            {"mean_iterations", a.mean_iterations},
        };
        if (a.has_rand_index) {
            row["ri_mean"] = a.ri_mean;
            row["ri_min"] = a.ri_min;
            row["ri_max"] = a.ri_max;
            row["ri_std"] = a.ri_std;
        }
        aggs.push_back(row);
    }
    root["aggregates"] = aggs;
    return root.dump(2) + "\n";
}

void emit(const RunSummary& summary) {
    std::ofstream out(summary.config.output, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot write " + summary.config.output);
    out << (summary.config.format == OutputFormat::Csv ? to_csv(summary)
                                                       : to_json_string(summary));
    if (!out) throw std::runtime_error("emit: write failed for " + summary.config.output);
}

}  // namespace speclust
