#include "claimsim/engine.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "claimsim/errors.hpp"
#include "claimsim/time_model.hpp"
#include "claimsim/version.hpp"

namespace claimsim {

namespace {

std::vector<double> broadcast(const std::vector<double>& values, int periods) {
    if (values.size() == 1) return std::vector<double>(static_cast<std::size_t>(periods), values.front());
    return values;
}

SizeFunction to_multiples(SizeFunction fn, double reference) {
    if (!fn.constant) fn.form.pivot /= reference;
    return fn;
}

Categorical to_categorical(const std::vector<std::pair<long, double>>& pmf) {
    return Categorical{pmf};
}

} // namespace

SimulationModel compile(const ScenarioConfig& config) {
    validate(config);

    SimulationModel model;
    model.unit = TimeUnit{config.global.time_unit};
    model.periods = config.global.periods;
    model.reference = config.global.reference_claim_size;
    model.master_seed = config.global.master_seed;

    model.schedule.exposure = broadcast(config.occurrence.exposure, model.periods);
    model.schedule.frequency = broadcast(config.occurrence.frequency, model.periods);

    model.severity.reference = model.reference;
    if (config.claim_size.family == SeverityFamily::power_normal) {
        const double mu = config.claim_size.mu;
        const double sigma = config.claim_size.sigma;
        const double power = config.claim_size.power;
        model.severity.draw_currency = [mu, sigma, power](RngStream& stream) {
            return power_normal_sample(mu, sigma, power, stream);
        };
    } else {
        const WeibullParams params =
            weibull_from_mean_cv(config.claim_size.mean, config.claim_size.cv);
        model.severity.draw_currency = [params](RngStream& stream) {
            return weibull_quantile(params, stream.next_uniform());
        };
    }

    const double reference = model.reference;
    {
        const SizeFunction mean = to_multiples(config.notification.mean, reference);
        const double cv = config.notification.cv;
        model.notification.mean_fn = [mean](int, double s_mult) { return mean(s_mult); };
        model.notification.cv_fn = [cv](int, double) { return cv; };
    }
    {
        const SizeFunction mean = to_multiples(config.closure.mean, reference);
        PeriodFactor factor = config.closure.period_factor;
        factor.override_small.max_size /= reference;
        const double cv = config.closure.cv;
        model.closure.mean_fn = [mean, factor](int period, double s_mult) {
            return factor(period, s_mult) * mean(s_mult);
        };
        model.closure.cv_fn = [cv](int, double) { return cv; };
    }

    model.counts.small_max = config.payment_count.small_max / reference;
    model.counts.medium_max = config.payment_count.medium_max / reference;
    model.counts.small = to_categorical(config.payment_count.small_pmf);
    model.counts.medium = to_categorical(config.payment_count.medium_pmf);
    model.counts.geometric_minimum = config.payment_count.minimum;
    {
        const SizeFunction mean = to_multiples(config.payment_count.geometric_mean, reference);
        model.counts.geometric_mean = mean.constant
                                          ? ClampedLogLinear{mean.value, 0.0, 1.0, {}, {}}
                                          : mean.form;
    }

    {
        const SizeFunction mean =
            to_multiples(config.payment_sizes.settlement_fraction_mean, reference);
        model.sizes.settlement_fraction_mean =
            mean.constant ? ClampedLogLinear{mean.value, 0.0, 1.0, {}, {}} : mean.form;
    }
    model.sizes.complement_cv = config.payment_sizes.settlement_fraction_cv;
    model.sizes.split_mean = config.payment_sizes.split_mean;
    model.sizes.split_cv = config.payment_sizes.split_cv;
    model.sizes.minor_cv = config.payment_sizes.minor_cv;

    model.timing.final_mean_units =
        config.payment_timing.final_mean_years / config.global.time_unit;
    model.timing.final_cv = config.payment_timing.final_cv;
    model.timing.other_cv = config.payment_timing.other_cv;

    const int quarters = required_base_quarters(config);
    model.base_curve =
        config.inflation.base_annual_rate
            ? BaseInflationCurve::from_annual_rate(*config.inflation.base_annual_rate, quarters)
            : BaseInflationCurve::from_quarterly_rates(*config.inflation.base_quarterly_rates);

    model.superimposed.occurrence_enabled = config.inflation.occurrence_enabled;
    model.superimposed.payment_enabled = config.inflation.payment_enabled;
    {
        const OccurrenceInflationParams params = config.inflation.occurrence;
        model.superimposed.g_occurrence = [params](int period, double s_currency) {
            return default_g_occurrence(period, s_currency, params);
        };
        const PaymentInflationParams pay = config.inflation.payment;
        const TimeUnit unit = model.unit;
        model.superimposed.g_payment = [pay, unit](double t_bar, double s_currency) {
            return default_g_payment(t_bar, s_currency, pay, unit);
        };
    }
    return model;
}

namespace {

struct PeriodBuffers {
    std::vector<ClaimRecord> claims;
    std::vector<PaymentRecord> payments;
};

// Modules run in lifecycle order per claim; each stochastic stage owns one
// counter-based stream keyed by (period, claim, stage).
void simulate_period(const SimulationModel& model, const SamplerHooks& hooks, int period,
                     long count, long id_offset, PeriodBuffers& out) {
    const RngFactory rng{model.master_seed};
    const auto pi = static_cast<std::uint32_t>(period);

    std::vector<double> times;
    {
        auto stream = rng.stream(pi, 0, ModuleId::occurrence_time);
        if (hooks.occurrence_time) {
            times.resize(static_cast<std::size_t>(count));
            for (long k = 0; k < count; ++k) {
                times[static_cast<std::size_t>(k)] = hooks.occurrence_time(period, k, stream);
            }
            std::sort(times.begin(), times.end());
        } else {
            times = simulate_occurrence_times(period, count, stream);
        }
    }

    out.claims.reserve(static_cast<std::size_t>(count));
    for (long r = 1; r <= count; ++r) {
        const long claim_id = id_offset + r;
        const auto ri = static_cast<std::uint32_t>(r);
        try {
            const double u = times[static_cast<std::size_t>(r - 1)];

            auto size_stream = rng.stream(pi, ri, ModuleId::claim_size);
            const double s_mult = hooks.claim_size
                                      ? hooks.claim_size(period, size_stream)
                                      : simulate_claim_size(model.severity, size_stream);
            const double s_currency = s_mult * model.reference;

            auto notif_stream = rng.stream(pi, ri, ModuleId::notification);
            const double v = hooks.notification_delay
                                 ? hooks.notification_delay(period, s_mult, notif_stream)
                                 : simulate_delay(model.notification, period, s_mult, notif_stream);

            auto close_stream = rng.stream(pi, ri, ModuleId::closure);
            const double w = hooks.settlement_delay
                                 ? hooks.settlement_delay(period, s_mult, close_stream)
                                 : simulate_delay(model.closure, period, s_mult, close_stream);

            auto count_stream = rng.stream(pi, ri, ModuleId::payment_count);
            const long m = hooks.payment_count
                               ? hooks.payment_count(period, s_mult, count_stream)
                               : simulate_payment_count(model.counts, s_mult, count_stream);

            auto sizes_stream = rng.stream(pi, ri, ModuleId::payment_sizes);
            const std::vector<double> proportions =
                hooks.payment_proportions
                    ? hooks.payment_proportions(period, s_mult, m, sizes_stream)
                    : simulate_payment_proportions(model.sizes, s_mult, m, sizes_stream);

            auto times_stream = rng.stream(pi, ri, ModuleId::payment_times);
            std::vector<double> delays =
                hooks.payment_delays
                    ? hooks.payment_delays(period, s_mult, m, w, times_stream)
                    : simulate_inter_partial_delays(model.timing, m, w, times_stream);
            if (hooks.payment_delays) {
                double sum = 0.0;
                for (const double d : delays) sum += d;
                for (auto& d : delays) d *= w / sum;
            }

            const std::vector<double> epochs = payment_epochs(u, v, delays);

            out.claims.push_back({claim_id, period, u, s_currency, v, w, m});
            for (long k = 1; k <= m; ++k) {
                const auto idx = static_cast<std::size_t>(k - 1);
                PaymentRecord pay;
                pay.claim_id = claim_id;
                pay.occurrence_period = period;
                pay.payment_no = static_cast<int>(k);
                pay.inter_partial_delay = delays[idx];
                pay.epoch = epochs[idx];
                pay.capped_epoch = cap_out_of_bounds(epochs[idx], period, model.periods);
                pay.payment_period = payment_period_of(pay.capped_epoch);
                pay.development_period = development_period_of(pay.capped_epoch, period);
                pay.amount_constant = proportions[idx] * s_currency;
                pay.amount_inflated =
                    inflate_payment(pay.amount_constant, pay.capped_epoch, period, s_currency,
                                    model.base_curve, model.superimposed, model.unit);
                out.payments.push_back(pay);
            }
        } catch (const ConfigError& e) {
            std::ostringstream msg;
            msg << "claim " << claim_id << " (occurrence period " << period << ", index " << r
                << "): " << e.what();
            throw ConfigError(msg.str());
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "claim " << claim_id << " (occurrence period " << period << ", index " << r
                << "): " << e.what();
            throw NumericError(msg.str());
        }
    }
}

SimulationOutput assemble(const SimulationModel& model, const ScenarioConfig& config,
                          std::vector<PeriodBuffers>& buffers, double seconds, int threads) {
    SimulationOutput output;
    std::size_t claim_total = 0;
    std::size_t payment_total = 0;
    for (const auto& buf : buffers) {
        claim_total += buf.claims.size();
        payment_total += buf.payments.size();
    }
    output.claims.reserve(claim_total);
    output.payments.reserve(payment_total);
    for (auto& buf : buffers) {
        output.claims.insert(output.claims.end(), buf.claims.begin(), buf.claims.end());
        output.payments.insert(output.payments.end(), buf.payments.begin(), buf.payments.end());
    }

    std::ostringstream hash;
    hash << std::hex << config_hash(config);
    output.manifest.config_hash = hash.str();
    output.manifest.master_seed = model.master_seed;
    output.manifest.version = version;
    output.manifest.claim_rows = static_cast<long>(output.claims.size());
    output.manifest.payment_rows = static_cast<long>(output.payments.size());
    output.manifest.wall_clock_seconds = seconds;
    output.manifest.threads = threads;
    return output;
}

std::vector<long> draw_counts(const SimulationModel& model, const SamplerHooks& hooks) {
    const RngFactory rng{model.master_seed};
    if (!hooks.claim_count) {
        return simulate_claim_counts(model.schedule, model.unit, rng);
    }
    std::vector<long> counts(static_cast<std::size_t>(model.periods));
    for (int i = 1; i <= model.periods; ++i) {
        auto stream = rng.stream(static_cast<std::uint32_t>(i), 0, ModuleId::occurrence_count);
        counts[static_cast<std::size_t>(i - 1)] = hooks.claim_count(i, stream);
    }
    return counts;
}

std::vector<long> id_offsets(const std::vector<long>& counts) {
    std::vector<long> offsets(counts.size(), 0);
    long running = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        offsets[i] = running;
        running += counts[i];
    }
    return offsets;
}

} // namespace

SimulationOutput simulate_portfolio_serial(const ScenarioConfig& config,
                                           const EngineOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioConfig effective = config;
    if (options.seed_override) effective.global.master_seed = *options.seed_override;
    const SimulationModel model = compile(effective);

    const std::vector<long> counts = draw_counts(model, options.hooks);
    const std::vector<long> offsets = id_offsets(counts);

    std::vector<PeriodBuffers> buffers(static_cast<std::size_t>(model.periods));
    for (int i = 1; i <= model.periods; ++i) {
        simulate_period(model, options.hooks, i, counts[static_cast<std::size_t>(i - 1)],
                        offsets[static_cast<std::size_t>(i - 1)],
                        buffers[static_cast<std::size_t>(i - 1)]);
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(model, effective, buffers, seconds, 1);
}

SimulationOutput simulate_portfolio_parallel(const ScenarioConfig& config,
                                             const EngineOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioConfig effective = config;
    if (options.seed_override) effective.global.master_seed = *options.seed_override;
    const SimulationModel model = compile(effective);

    const std::vector<long> counts = draw_counts(model, options.hooks);
    const std::vector<long> offsets = id_offsets(counts);

    int threads = options.threads;
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    threads = 1;
#endif

    std::vector<PeriodBuffers> buffers(static_cast<std::size_t>(model.periods));
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 1; i <= model.periods; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            simulate_period(model, options.hooks, i, counts[static_cast<std::size_t>(i - 1)],
                            offsets[static_cast<std::size_t>(i - 1)],
                            buffers[static_cast<std::size_t>(i - 1)]);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(claimsim_engine_error)
#endif
            {
                if (!failed.exchange(true)) first_error = std::current_exception();
            }
        }
    }
    if (failed.load()) std::rethrow_exception(first_error);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(model, effective, buffers, seconds, threads);
}

SimulationOutput run_simulation(const ScenarioConfig& config, const EngineOptions& options) {
    if (options.threads == 1) return simulate_portfolio_serial(config, options);
    return simulate_portfolio_parallel(config, options);
}

} // namespace claimsim
