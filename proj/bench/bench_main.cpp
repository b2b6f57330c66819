// Serial reference vs OpenMP engine on the standard scenario, plus a scaled
// portfolio to give the parallel loop something to chew on.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "claimsim/engine.hpp"

using namespace claimsim;

namespace {

double time_run(const ScenarioConfig& config, int threads, long& claims_out) {
    EngineOptions options;
    options.threads = threads;
    const auto start = std::chrono::steady_clock::now();
    const SimulationOutput out =
        (threads == 1) ? simulate_portfolio_serial(config, options)
                       : simulate_portfolio_parallel(config, options);
    claims_out = out.manifest.claim_rows;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_scenario(const char* label, const ScenarioConfig& config, int reps, int max_threads) {
    double serial_best = 1e30;
    double parallel_best = 1e30;
    long claims = 0;
    for (int rep = 0; rep < reps; ++rep) {
        serial_best = std::min(serial_best, time_run(config, 1, claims));
        parallel_best = std::min(parallel_best, time_run(config, max_threads, claims));
    }
    std::printf("%-24s %8ld claims   serial %8.1f ms   %d threads %8.1f ms   speedup %.2fx\n",
                label, claims, serial_best * 1e3, max_threads, parallel_best * 1e3,
                serial_best / parallel_best);
}

} // namespace

int main(int argc, char** argv) {
    int reps = 3;
    if (argc > 1) reps = std::max(1, std::atoi(argv[1]));

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    std::printf("claimsim benchmark, best of %d reps, %d hardware threads\n\n", reps, max_threads);

    bench_scenario("default 40q", preset("default"), reps, max_threads);

    ScenarioConfig heavy = preset("default");
    heavy.occurrence.frequency = {0.3}; // ten times the claim volume
    bench_scenario("default 40q, 10x volume", heavy, reps, max_threads);

    return 0;
}
