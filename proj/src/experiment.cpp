#include "enas/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "enas/error.hpp"

namespace enas {

void validate(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw ParameterError("runs must be >= 1");
    if (cfg.M_values.empty() || cfg.r_values.empty()) throw ParameterError("empty problem grid");
    for (int M : cfg.M_values)
        if (M < 2) throw ParameterError("grid value M=" + std::to_string(M) + " is below 2");
    for (int r : cfg.r_values)
        if (r < 2) throw ParameterError("grid value r=" + std::to_string(r) + " is below 2");
    if (cfg.threads < 1) throw ParameterError("threads must be >= 1");
    validate(cfg.evolution);
}

int resolve_threads(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("ENAS_LAB_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096)
            throw ParameterError(std::string("ENAS_LAB_THREADS must be a positive integer, got '") + env + "'");
        return static_cast<int>(v);
    }
    return cfg.threads;
}

SummaryStats summarize(std::span<const RunRecord> records) {
    SummaryStats st;
    if (records.empty()) return st;
    const auto n = static_cast<double>(records.size());

    std::vector<double> gens;
    gens.reserve(records.size());
    double evals = 0.0;
    double successes = 0.0;
    for (const auto& rec : records) {
        gens.push_back(static_cast<double>(rec.generations));
        evals += static_cast<double>(rec.evaluations);
        successes += rec.success ? 1.0 : 0.0;
    }
    st.mean = std::accumulate(gens.begin(), gens.end(), 0.0) / n;
    double ss = 0.0;
    for (double g : gens) ss += (g - st.mean) * (g - st.mean);
    st.std = records.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    std::sort(gens.begin(), gens.end());
    const std::size_t mid = gens.size() / 2;
    st.median = gens.size() % 2 ? gens[mid] : 0.5 * (gens[mid - 1] + gens[mid]);

    const double half = 1.96 * st.std / std::sqrt(n);
    st.ci95_lo = st.mean - half;
    st.ci95_hi = st.mean + half;
    st.success_rate = successes / n;
    st.mean_evaluations = evals / n;
    return st;
}

namespace {

struct Job {
    std::size_t grid = 0;
    std::int64_t run = 0;
};

RunRecord run_guarded(const ProblemParams& p, const EvolutionConfig& cfg, std::uint64_t seed) {
    try {
        return run(p, cfg, seed);
    } catch (const std::exception&) {
        RunRecord failed;
        failed.seed = seed;
        failed.success = false;
        return failed;
    }
}

std::vector<GridResult> execute(const ExperimentConfig& cfg, int threads) {
    validate(cfg);
    std::vector<GridResult> results;
    std::vector<ProblemParams> problems;
    for (int M : cfg.M_values)
        for (int r : cfg.r_values) {
            results.push_back({M, r, std::vector<RunRecord>(static_cast<std::size_t>(cfg.runs)), {}});
            problems.push_back(make_problem(M, r));
        }

    const auto total = static_cast<long long>(results.size()) * cfg.runs;
    const bool parallel = threads > 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (parallel)
    for (long long global = 0; global < total; ++global) {
        const auto grid = static_cast<std::size_t>(global / cfg.runs);
        const auto idx = static_cast<std::size_t>(global % cfg.runs);
        const auto seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(global));
        results[grid].records[idx] = run_guarded(problems[grid], cfg.evolution, seed);
    }

    for (auto& res : results) res.stats = summarize(res.records);
    return results;
}

}  // namespace

std::vector<GridResult> run_experiment(const ExperimentConfig& cfg) { return execute(cfg, resolve_threads(cfg)); }

std::vector<GridResult> run_experiment_serial(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<GridResult> results;
    std::uint64_t global = 0;
    for (int M : cfg.M_values)
        for (int r : cfg.r_values) {
            const auto p = make_problem(M, r);
            GridResult res{M, r, {}, {}};
            res.records.reserve(static_cast<std::size_t>(cfg.runs));
            for (std::int64_t i = 0; i < cfg.runs; ++i)
                res.records.push_back(run_guarded(p, cfg.evolution, derive_seed(cfg.master_seed, global++)));
            res.stats = summarize(res.records);
            results.push_back(std::move(res));
        }
    return results;
}

SummaryRow summary_row(const ExperimentConfig& cfg, const GridResult& result) {
    SummaryRow row;
    row.outer = to_string(cfg.evolution.mutation.outer);
    row.inner = inner_name(cfg.evolution.mutation);
    row.lambda = cfg.evolution.lambda;
    row.crossover = to_string(cfg.evolution.crossover);
    row.M = result.M;
    row.r = result.r;
    row.s = cfg.evolution.s.value_or(result.r);
    row.runs = static_cast<std::int64_t>(result.records.size());
    row.mean_generations = result.stats.mean;
    row.std = result.stats.std;
    row.median = result.stats.median;
    row.ci95_lo = result.stats.ci95_lo;
    row.ci95_hi = result.stats.ci95_hi;
    row.mean_evaluations = result.stats.mean_evaluations;
    row.success_rate = result.stats.success_rate;
    return row;
}

// ---------------------------------------------------------------------------

ScalingFit fit_scaling(std::span<const ScalingPoint> points) {
    if (points.size() < 3) throw ParameterError("scaling fit needs at least 3 points");
    std::vector<double> xs, ys;
    for (const auto& pt : points) {
        const double rm = static_cast<double>(pt.r) * pt.M;
        xs.push_back(rm * std::log(rm));
        ys.push_back(pt.mean_generations);
    }
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); }))
        throw ParameterError("scaling fit is degenerate: all rM ln(rM) values are equal");

    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    ScalingFit fit;
    fit.points = points.size();
    fit.c = sxy / sxx;

    const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - fit.c * xs[i];
        ss_res += e * e;
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    if (ss_tot == 0.0) throw ParameterError("scaling fit is degenerate: all means are equal");
    fit.r_squared = 1.0 - ss_res / ss_tot;
    return fit;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) out[order[k]] = avg;
        i = j + 1;
    }
    return out;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("spearman needs two equal-length series (n >= 2)");
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

constexpr const char* kRunsHeader = "run_index,seed,generations,evaluations,success,final_fitness";
constexpr const char* kSummaryHeader =
    "outer,inner,lambda,crossover,M,r,s,runs,mean_generations,std,median,ci95_lo,ci95_hi,"
    "mean_evaluations,success_rate";

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("malformed number '" + s + "' in summary CSV");
    }
    if (used != s.size()) throw ParameterError("malformed number '" + s + "' in summary CSV");
    return v;
}

std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("malformed integer '" + s + "' in summary CSV");
    }
    if (used != s.size()) throw ParameterError("malformed integer '" + s + "' in summary CSV");
    return v;
}

}  // namespace

std::string runs_csv(std::span<const RunRecord> records) {
    std::string out = std::string(kRunsHeader) + "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        out += std::to_string(i) + "," + std::to_string(rec.seed) + "," + std::to_string(rec.generations) + "," +
               std::to_string(rec.evaluations) + "," + (rec.success ? "1" : "0") + "," + real(rec.final_fitness) +
               "\n";
    }
    return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
    std::string out = std::string(kSummaryHeader) + "\n";
    for (const auto& row : rows) {
        out += row.outer + "," + row.inner + "," + std::to_string(row.lambda) + "," + row.crossover + "," +
               std::to_string(row.M) + "," + std::to_string(row.r) + "," + std::to_string(row.s) + "," +
               std::to_string(row.runs) + "," + real(row.mean_generations) + "," + real(row.std) + "," +
               real(row.median) + "," + real(row.ci95_lo) + "," + real(row.ci95_hi) + "," +
               real(row.mean_evaluations) + "," + real(row.success_rate) + "\n";
    }
    return out;
}

void write_runs_csv(std::span<const RunRecord> records, const std::filesystem::path& path) {
    write_file(runs_csv(records), path);
}

void write_summary_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path) {
    write_file(summary_csv(rows), path);
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSummaryHeader) throw ParameterError("summary CSV header mismatch");
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 15) throw ParameterError("summary CSV row has " + std::to_string(f.size()) + " fields, expected 15");
        SummaryRow row;
        row.outer = f[0];
        row.inner = f[1];
        row.lambda = static_cast<int>(parse_int(f[2]));
        row.crossover = f[3];
        row.M = static_cast<int>(parse_int(f[4]));
        row.r = static_cast<int>(parse_int(f[5]));
        row.s = parse_int(f[6]);
        row.runs = parse_int(f[7]);
        row.mean_generations = parse_real(f[8]);
        row.std = parse_real(f[9]);
        row.median = parse_real(f[10]);
        row.ci95_lo = parse_real(f[11]);
        row.ci95_hi = parse_real(f[12]);
        row.mean_evaluations = parse_real(f[13]);
        row.success_rate = parse_real(f[14]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_summary_csv(buf.str());
}

}  // namespace enas
