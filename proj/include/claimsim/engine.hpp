#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "claimsim/aggregation.hpp"
#include "claimsim/event_times.hpp"
#include "claimsim/frequency_severity.hpp"
#include "claimsim/inflation.hpp"
#include "claimsim/payment_plan.hpp"
#include "claimsim/scenario.hpp"

namespace claimsim {

/// Replacement samplers for individual lifecycle stages (library API only;
/// configs select the built-ins). Each hook receives its stage's dedicated
/// stream, so plugging one stage in or out leaves every other stage's draws
/// untouched. Claim sizes are in reference multiples.
struct SamplerHooks {
    std::function<long(int period, RngStream&)> claim_count;
    std::function<double(int period, long index, RngStream&)> occurrence_time;
    std::function<double(int period, RngStream&)> claim_size;
    std::function<double(int period, double s_mult, RngStream&)> notification_delay;
    std::function<double(int period, double s_mult, RngStream&)> settlement_delay;
    std::function<long(int period, double s_mult, RngStream&)> payment_count;
    std::function<std::vector<double>(int period, double s_mult, long m, RngStream&)>
        payment_proportions;
    std::function<std::vector<double>(int period, double s_mult, long m, double w, RngStream&)>
        payment_delays;
};

/// Scenario compiled into runnable form. Lifecycle models operate on claim
/// sizes in reference multiples (monetary pivots from the config are divided
/// by the reference at compile time); the superimposed-inflation functions
/// operate on constant-dollar currency amounts.
struct SimulationModel {
    TimeUnit unit;
    int periods = 0;
    double reference = 1.0;
    std::uint64_t master_seed = 0;
    ExposureSchedule schedule;
    SeverityModel severity;
    DelayModel notification;
    DelayModel closure;
    PaymentCountModel counts;
    PaymentSizeModel sizes;
    PaymentTimingModel timing;
    BaseInflationCurve base_curve;
    SuperimposedInflation superimposed;
};

/// Validates and compiles a scenario. Throws ConfigError on any problem.
SimulationModel compile(const ScenarioConfig& config);

struct RunManifest {
    std::string config_hash;
    std::uint64_t master_seed = 0;
    std::string version;
    long claim_rows = 0;
    long payment_rows = 0;
    double wall_clock_seconds = 0.0;
    int threads = 1;
};

struct SimulationOutput {
    std::vector<ClaimRecord> claims;     // ordered by claim_id
    std::vector<PaymentRecord> payments; // ordered by (claim_id, payment_no)
    RunManifest manifest;
};

struct EngineOptions {
    int threads = 0; // 0 = library default; 1 = serial reference path
    std::optional<std::uint64_t> seed_override;
    SamplerHooks hooks;
};

/// Serial reference implementation: one plain loop over occurrence periods.
SimulationOutput simulate_portfolio_serial(const ScenarioConfig& config,
                                           const EngineOptions& options = {});

/// OpenMP implementation, parallel over occurrence periods. Per-claim
/// counter-based streams make the results identical to the serial path for
/// any thread count.
SimulationOutput simulate_portfolio_parallel(const ScenarioConfig& config,
                                             const EngineOptions& options = {});

/// Front door: serial when options.threads == 1, parallel otherwise.
SimulationOutput run_simulation(const ScenarioConfig& config, const EngineOptions& options = {});

} // namespace claimsim
