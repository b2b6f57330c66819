#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "claimsim/aggregation.hpp"
#include "claimsim/event_times.hpp"
#include "claimsim/inflation.hpp"
#include "claimsim/time_model.hpp"

namespace claimsim {

enum class SeverityFamily { power_normal, weibull };
enum class AmountUnit { currency, multiples };

/// Size-dependent parameter: either a constant or a clamped log-linear form
/// in the claim size (pivot in currency).
struct SizeFunction {
    bool constant = false;
    double value = 0.0;
    ClampedLogLinear form;

    double operator()(double s_currency) const { return constant ? value : form(s_currency); }
};

/// Declarative description of one simulation world. Monetary fields are in
/// currency units; the engine converts to reference multiples internally.
struct ScenarioConfig {
    struct Global {
        double time_unit = 0.25; // years per period
        double reference_claim_size = 200000.0;
        int periods = 40; // I
        std::uint64_t master_seed = 10;
    } global;

    /// Scalar entries broadcast over all periods; per-period lists must have
    /// exactly `periods` entries.
    struct Occurrence {
        std::vector<double> exposure{12000.0};
        std::vector<double> frequency{0.03};
    } occurrence;

    struct ClaimSizeDist {
        SeverityFamily family = SeverityFamily::power_normal;
        double mu = 9.5;    // power_normal: location of S^power
        double sigma = 3.0; // power_normal: standard deviation of S^power
        double power = 0.2;
        double mean = 0.0; // weibull alternative, currency
        double cv = 0.0;
    } claim_size;

    struct Notification {
        double cv = 0.7;
        SizeFunction mean{false, 0.0, {2.0, -1.0 / 3.0, 100000.0, 1.0, 3.0}};
    } notification;

    struct Closure {
        double cv = 0.6;
        SizeFunction mean{false, 0.0, {6.0, 4.0, 20000.0, 1.0, 25.0}};
        // Gradual settlement speedup plus the small-claim override from
        // period 21 onward; override max_size in currency.
        PeriodFactor period_factor{1.0, -0.0075, 0.85, {true, 20000.0, 21, 0.65, 0.02, 0.85}};
    } closure;

    struct PaymentCount {
        double small_max = 7500.0;
        double medium_max = 15000.0;
        std::vector<std::pair<long, double>> small_pmf{{1, 0.5}, {2, 0.5}};
        std::vector<std::pair<long, double>> medium_pmf{{2, 1.0 / 3.0}, {3, 2.0 / 3.0}};
        long minimum = 4;
        SizeFunction geometric_mean{false, 0.0, {4.0, 1.0, 15000.0, std::nullopt, 8.0}};
    } payment_count;

    struct PaymentSizes {
        SizeFunction settlement_fraction_mean{false, 0.0,
                                              {0.75, 0.04, 20000.0, std::nullopt, 0.95}};
        double settlement_fraction_cv = 0.2;
        double split_mean = 0.9;
        double split_cv = 0.03;
        double minor_cv = 0.1;
    } payment_sizes;

    struct PaymentTiming {
        double final_mean_years = 0.25;
        double final_cv = 0.2;
        double other_cv = 0.35;
    } payment_timing;

    struct Inflation {
        // Exactly one of the two base specifications.
        std::optional<double> base_annual_rate = 0.02;
        std::optional<std::vector<double>> base_quarterly_rates;
        bool occurrence_enabled = true;
        OccurrenceInflationParams occurrence;
        bool payment_enabled = true;
        PaymentInflationParams payment;
    } inflation;

    struct Output {
        OutOfBoundsMode out_of_bounds = OutOfBoundsMode::cap;
        int aggregation_factor = 1;
        AmountUnit amounts = AmountUnit::currency;
    } output;
};

/// Built-in scenarios: "default" is the full-featured world (settlement
/// speedup, legislative change, superimposed inflation); "simple" switches
/// every occurrence-period effect off so the data stay chain-ladder friendly.
ScenarioConfig preset(const std::string& name);
ScenarioConfig default_preset();
ScenarioConfig simple_preset();

/// Parses and validates. All problems are reported together, each prefixed
/// with its field path (e.g. "global.periods: must be >= 1").
ScenarioConfig parse_config(const std::string& json_text);

/// parse_config over the contents of `path`; unreadable file -> IoError.
ScenarioConfig load_config(const std::string& path);

/// Canonical JSON rendering (keys sorted); parse_config(serialize_config(c))
/// reproduces c.
std::string serialize_config(const ScenarioConfig& config);

/// Structural validation of an in-memory config; returns one message per
/// problem, empty when valid.
std::vector<std::string> validation_errors(const ScenarioConfig& config);

/// Throwing wrapper around validation_errors.
void validate(const ScenarioConfig& config);

/// FNV-1a hash of the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& config);

/// True when the scenario meets the conditions under which the generated
/// data are chain-ladder compatible: no occurrence-period dependence in the
/// lifecycle modules, constant-rate base inflation, and no size-dependent or
/// occurrence-period superimposed inflation.
bool chain_ladder_compatible(const ScenarioConfig& config);

/// Number of quarterly base rates the scenario needs: the curve must cover
/// all 2I-1 payment periods.
int required_base_quarters(const ScenarioConfig& config);

} // namespace claimsim
