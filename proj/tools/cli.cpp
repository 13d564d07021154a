#include "cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enas/error.hpp"
#include "enas/evolution.hpp"
#include "enas/experiment.hpp"
#include "enas/network.hpp"
#include "enas/serialize.hpp"

namespace enas::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

long long to_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("bad integer '" + s + "' in " + what);
    }
    if (used != s.size()) throw ParameterError("bad integer '" + s + "' in " + what);
    return v;
}

double to_real(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("bad number '" + s + "' in " + what);
    }
    if (used != s.size() || !std::isfinite(v)) throw ParameterError("bad number '" + s + "' in " + what);
    return v;
}

ProblemParams parse_problem(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw ParameterError("--problem expects M,r");
    return make_problem(static_cast<int>(to_int(parts[0], "--problem")), static_cast<int>(to_int(parts[1], "--problem")));
}

// "a:b:c" is the inclusive range a, a+c, ... <= b; items may be comma-joined.
std::vector<int> parse_grid(const std::string& s, const std::string& flag) {
    std::vector<int> out;
    for (const auto& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(static_cast<int>(to_int(parts[0], flag)));
        } else if (parts.size() == 3) {
            const auto lo = to_int(parts[0], flag), hi = to_int(parts[1], flag), step = to_int(parts[2], flag);
            if (step <= 0 || hi < lo) throw ParameterError(flag + " range '" + item + "' is empty or has step <= 0");
            for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
        } else {
            throw ParameterError(flag + " item '" + item + "' is neither an integer nor a:b:c");
        }
    }
    if (out.empty()) throw ParameterError(flag + " is empty");
    return out;
}

Bits parse_bits(const std::string& s) {
    Bits bits;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw ParameterError("--bits must contain only 0 and 1");
        bits.push_back(ch == '1' ? 1 : 0);
    }
    return bits;
}

Point2 parse_point(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw ParameterError("--point expects x,y");
    return {to_real(parts[0], "--point"), to_real(parts[1], "--point")};
}

Genotype load_genotype(const std::string& path, const ProblemParams& p) {
    auto g = genotype_from_json(read_json_file(path));
    if (!(g.problem() == p))
        throw ParameterError("genotype file is for M=" + std::to_string(g.problem().M) + ", r=" +
                             std::to_string(g.problem().r) + " but --problem is " + std::to_string(p.M) + "," +
                             std::to_string(p.r));
    return g;
}

// Flags shared by run and sweep.
struct VariantFlags {
    std::string outer = "onebit";
    std::string inner = "local";
    int lambda = 1;
    std::string crossover = "none";
    std::int64_t runs = 1000;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> s;
    std::int64_t max_generations = 10'000'000;
    int threads = 1;

    void attach(CLI::App* sub) {
        sub->add_option("--outer", outer, "onebit | bitwise")->capture_default_str();
        sub->add_option("--inner", inner, "local | global | global-shifted")->capture_default_str();
        sub->add_option("--lambda", lambda, "population size (1 = (1+1))")->capture_default_str();
        sub->add_option("--crossover", crossover, "none | onepoint | uniform")->capture_default_str();
        sub->add_option("--runs", runs, "replicates per grid point")->capture_default_str();
        sub->add_option("--seed", seed, "master seed")->capture_default_str();
        sub->add_option("--s", s, "initialization upper bound (default r)");
        sub->add_option("--max-generations", max_generations, "per-run generation cap")->capture_default_str();
        sub->add_option("--threads", threads, "worker threads (ENAS_LAB_THREADS overrides)")->capture_default_str();
    }

    ExperimentConfig config(std::vector<int> Ms, std::vector<int> rs) const {
        ExperimentConfig cfg;
        cfg.M_values = std::move(Ms);
        cfg.r_values = std::move(rs);
        cfg.evolution.mutation.outer = parse_outer(outer);
        parse_inner(inner, cfg.evolution.mutation);
        cfg.evolution.lambda = lambda;
        cfg.evolution.crossover = parse_crossover(crossover);
        cfg.evolution.s = s;
        cfg.evolution.max_generations = max_generations;
        cfg.runs = runs;
        cfg.master_seed = seed;
        cfg.threads = threads;
        validate(cfg);
        return cfg;
    }
};

Json stats_json(const SummaryRow& row) {
    return {{"M", row.M},
            {"r", row.r},
            {"s", row.s},
            {"runs", row.runs},
            {"mean_generations", row.mean_generations},
            {"std", row.std},
            {"median", row.median},
            {"ci95_lo", row.ci95_lo},
            {"ci95_hi", row.ci95_hi},
            {"mean_evaluations", row.mean_evaluations},
            {"success_rate", row.success_rate}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Runtime-analysis lab for (1+1) and (lambda+lambda) evolutionary architecture search on MCC"};
    app.name("enas_lab");
    app.require_subcommand(1);

    // fitness
    auto* fit_cmd = app.add_subcommand("fitness", "closed-form fitness breakdown of a genotype");
    std::string problem_str, genotype_path;
    fit_cmd->add_option("--problem", problem_str, "M,r")->required();
    fit_cmd->add_option("--genotype", genotype_path, "genotype JSON file")->required();

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "forward pass for cell bits or for a point");
    std::string cls_problem, cls_genotype, cls_assignment, point_str, bits_str;
    cls_cmd->add_option("--problem", cls_problem, "M,r")->required();
    auto* opt_genotype = cls_cmd->add_option("--genotype", cls_genotype, "genotype JSON (greedy placement)");
    auto* opt_assign = cls_cmd->add_option("--assignment", cls_assignment, "explicit assignment JSON");
    auto* opt_point = cls_cmd->add_option("--point", point_str, "x,y");
    auto* opt_bits = cls_cmd->add_option("--bits", bits_str, "cell output bits, e.g. 01");
    opt_point->excludes(opt_bits);
    opt_genotype->excludes(opt_assign);

    // oracle
    auto* orc_cmd = app.add_subcommand("oracle", "check the closed form against exhaustive assignment search");
    int orc_M = 3, orc_r = 2;
    std::int64_t orc_max = 3;
    orc_cmd->add_option("--M", orc_M)->capture_default_str();
    orc_cmd->add_option("--r", orc_r)->capture_default_str();
    orc_cmd->add_option("--max-count", orc_max, "per-type count bound of the genotype grid")->capture_default_str();

    // run
    auto* run_cmd = app.add_subcommand("run", "replicated runs on a single problem");
    int run_M = 0, run_r = 0;
    std::string run_out;
    VariantFlags run_flags;
    run_cmd->add_option("--M", run_M)->required();
    run_cmd->add_option("--r", run_r)->required();
    run_cmd->add_option("--out", run_out, "per-run CSV path");
    run_flags.attach(run_cmd);

    // sweep
    auto* swp_cmd = app.add_subcommand("sweep", "grid sweep writing a summary CSV");
    std::string m_list, r_list, swp_out, swp_config;
    VariantFlags swp_flags;
    auto* opt_m_list = swp_cmd->add_option("--M-list", m_list, "e.g. 2:24:2 or 2,4,8");
    auto* opt_r_list = swp_cmd->add_option("--r-list", r_list, "e.g. 10 or 2:10:2");
    auto* opt_config = swp_cmd->add_option("--config", swp_config, "ExperimentConfig JSON");
    opt_config->excludes(opt_m_list)->excludes(opt_r_list);
    swp_cmd->add_option("--out", swp_out, "summary CSV path");
    swp_flags.attach(swp_cmd);

    // fit
    auto* fitlaw_cmd = app.add_subcommand("fit", "fit mean generations = c * rM ln(rM)");
    std::string fit_in;
    fitlaw_cmd->add_option("--in", fit_in, "summary CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (fit_cmd->parsed()) {
            const auto p = parse_problem(problem_str);
            const auto g = load_genotype(genotype_path, p);
            out << breakdown_to_json(fitness(g)).dump(2) << "\n";
        } else if (cls_cmd->parsed()) {
            const auto p = parse_problem(cls_problem);
            if (!opt_point->count() && !opt_bits->count()) throw ParameterError("classify needs --point or --bits");
            if (opt_bits->count()) {
                out << forward_to_json(forward(p, parse_bits(bits_str))).dump(2) << "\n";
            } else {
                Assignment assignment;
                if (opt_assign->count()) {
                    assignment = assignment_from_json(read_json_file(cls_assignment));
                } else if (opt_genotype->count()) {
                    assignment = greedy_assignment(load_genotype(cls_genotype, p));
                } else {
                    throw ParameterError("--point needs --genotype or --assignment");
                }
                const auto x = parse_point(point_str);
                const auto result = classify_point(p, assignment, x);
                const auto reg = *locate_point(p, x);
                Json j = forward_to_json(result);
                j["bits"] = [&] {
                    std::string b;
                    for (auto bit : Coverage(p, assignment).bits_for(reg)) b.push_back(bit ? '1' : '0');
                    return b;
                }();
                j["region"] = {{"k", reg.sector}, {"part", reg.part == Part::Triangle ? "tri" : "seg"}};
                j["label"] = region_label(p, reg);
                out << j.dump(2) << "\n";
            }
        } else if (orc_cmd->parsed()) {
            constexpr double tol = 1e-9;
            const auto report = validate_closed_form(orc_M, orc_r, orc_max, tol);
            Json j = {{"M", orc_M},
                      {"r", orc_r},
                      {"max_count", orc_max},
                      {"genotypes", report.genotypes},
                      {"max_brute_force_deviation", report.max_brute_force_deviation},
                      {"max_greedy_deviation", report.max_greedy_deviation},
                      {"tolerance", tol},
                      {"status", report.pass ? "PASS" : "FAIL"}};
            out << j.dump(2) << "\n";
            return report.pass ? kExitOk : kExitValidation;
        } else if (run_cmd->parsed()) {
            const auto cfg = run_flags.config({run_M}, {run_r});
            const auto results = run_experiment(cfg);
            if (!run_out.empty()) write_runs_csv(results.front().records, run_out);
            out << stats_json(summary_row(cfg, results.front())).dump(2) << "\n";
        } else if (swp_cmd->parsed()) {
            ExperimentConfig cfg;
            if (opt_config->count()) {
                cfg = experiment_config_from_json(read_json_file(swp_config));
            } else {
                if (!opt_m_list->count() || !opt_r_list->count())
                    throw ParameterError("sweep needs --M-list and --r-list (or --config)");
                cfg = swp_flags.config(parse_grid(m_list, "--M-list"), parse_grid(r_list, "--r-list"));
            }
            std::vector<SummaryRow> rows;
            for (const auto& res : run_experiment(cfg)) rows.push_back(summary_row(cfg, res));
            if (swp_out.empty()) {
                out << summary_csv(rows);
            } else {
                write_summary_csv(rows, swp_out);
                out << "wrote " << rows.size() << " summary rows to " << swp_out << "\n";
            }
        } else if (fitlaw_cmd->parsed()) {
            std::vector<ScalingPoint> pts;
            for (const auto& row : read_summary_csv(fit_in)) pts.push_back({row.M, row.r, row.mean_generations});
            const auto f = fit_scaling(pts);
            out << Json{{"c", f.c}, {"r_squared", f.r_squared}, {"points", f.points}}.dump(2) << "\n";
        }
    } catch (const IoError& e) {
        err << "enas_lab: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParameterError& e) {
        err << "enas_lab: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace enas::cli
