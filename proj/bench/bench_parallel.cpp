// Wall-clock comparison of the serial reference paths against their OpenMP
// counterparts. Usage: enas_bench [threads] [runs]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "enas/experiment.hpp"
#include "enas/network.hpp"

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    const long runs = argc > 2 ? std::atol(argv[2]) : 200;

    enas::ExperimentConfig cfg;
    cfg.M_values = {4, 8, 12};
    cfg.r_values = {4};
    cfg.runs = runs;
    cfg.master_seed = 7;
    cfg.threads = threads;

    std::vector<enas::GridResult> serial, parallel;
    serial = enas::run_experiment_serial(cfg);  // warm-up
    const double t_serial = seconds([&] { serial = enas::run_experiment_serial(cfg); });
    const double t_parallel = seconds([&] { parallel = enas::run_experiment(cfg); });
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i) same = serial[i].records == parallel[i].records;

    std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial_s", "omp_s", "speedup", "match");
    std::printf("%-28s %10.3f %10.3f %8.2f %s\n", "replicate sweep", t_serial, t_parallel, t_serial / t_parallel,
                same ? "yes" : "NO");

    omp_set_num_threads(threads);
    enas::OracleReport rs, rp;
    const double o_serial = seconds([&] { rs = enas::validate_closed_form(3, 2, 2, 1e-9, false); });
    const double o_parallel = seconds([&] { rp = enas::validate_closed_form(3, 2, 2, 1e-9, true); });
    const bool o_same = rs.max_brute_force_deviation == rp.max_brute_force_deviation &&
                        rs.max_greedy_deviation == rp.max_greedy_deviation;
    std::printf("%-28s %10.3f %10.3f %8.2f %s\n", "oracle grid (M=3,r=2,<=2)", o_serial, o_parallel,
                o_serial / o_parallel, o_same ? "yes" : "NO");
    std::printf("threads=%d runs=%ld\n", threads, runs);
    return same && o_same ? 0 : 1;
}
