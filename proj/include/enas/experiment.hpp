#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "enas/evolution.hpp"

namespace enas {

struct ExperimentConfig {
    std::vector<int> M_values;
    std::vector<int> r_values;
    EvolutionConfig evolution;
    std::int64_t runs = 1000;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation
    double median = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    double success_rate = 0.0;
    double mean_evaluations = 0.0;
};

/// One (M, r) point of a sweep.
struct GridResult {
    int M = 0;
    int r = 0;
    std::vector<RunRecord> records;  ///< ordered by run index
    SummaryStats stats;
};

struct ScalingFit {
    double c = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// A row of the summary CSV; also the input to fit_scaling.
struct SummaryRow {
    std::string outer;
    std::string inner;
    int lambda = 1;
    std::string crossover;
    int M = 0;
    int r = 0;
    std::int64_t s = 0;
    std::int64_t runs = 0;
    double mean_generations = 0.0;
    double std = 0.0;
    double median = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
    double mean_evaluations = 0.0;
    double success_rate = 0.0;
};

void validate(const ExperimentConfig& cfg);

/// Effective worker count: ENAS_LAB_THREADS when set, else cfg.threads.
int resolve_threads(const ExperimentConfig& cfg);

SummaryStats summarize(std::span<const RunRecord> records);

/// Runs every grid point in M-major order. Replicate i of grid point g uses
/// derive_seed(master_seed, g * runs + i). Parallel over replicates with
/// OpenMP; output does not depend on the thread count.
std::vector<GridResult> run_experiment(const ExperimentConfig& cfg);

/// Single-threaded reference with identical output.
std::vector<GridResult> run_experiment_serial(const ExperimentConfig& cfg);

SummaryRow summary_row(const ExperimentConfig& cfg, const GridResult& result);

struct ScalingPoint {
    int M = 0;
    int r = 0;
    double mean_generations = 0.0;
};

/// Least squares through the origin of mean = c * rM ln(rM).
/// Throws ParameterError for fewer than 3 points or a degenerate x range.
ScalingFit fit_scaling(std::span<const ScalingPoint> points);

/// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

// CSV persistence. Reals use 6 significant digits, LF line endings, header
// always written. Throws IoError with the path on failure.
void write_runs_csv(std::span<const RunRecord> records, const std::filesystem::path& path);
void write_summary_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
std::string runs_csv(std::span<const RunRecord> records);
std::string summary_csv(std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

}  // namespace enas
