#pragma once

#include <functional>
#include <optional>

#include "claimsim/distributions.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {

/// value(s) = clamp(intercept + slope * ln(s / pivot)) with optional floor
/// and cap. s and pivot must be in the same unit; the ratio makes the form
/// invariant to whether sizes are expressed in currency or in reference
/// multiples.
struct ClampedLogLinear {
    double intercept = 0.0;
    double slope = 0.0;
    double pivot = 1.0;
    std::optional<double> floor;
    std::optional<double> cap;

    double operator()(double s) const;
};

/// Multiplicative occurrence-period effect a(i) on a delay mean:
/// a(i) = max(floor, intercept + slope * i), with an optional override for
/// small claims from a given period onward:
/// a(i) = min(override.cap, override.base + override.slope * (i - from_period)).
struct PeriodFactor {
    double intercept = 1.0;
    double slope = 0.0;
    double floor = 0.0;

    struct Override {
        bool enabled = false;
        double max_size = 0.0; // applies to s < max_size (same unit as s)
        int from_period = 0;
        double base = 0.0;
        double slope = 0.0;
        double cap = 0.0;
    };
    Override override_small;

    double operator()(int period, double s) const;
};

/// Delay distribution with mean and CV possibly depending on occurrence
/// period and claim size. The built-in family is Weibull, sampled by inverse
/// transform; alternative families enter through the engine's sampler hooks.
struct DelayModel {
    std::function<double(int period, double s)> mean_fn;
    std::function<double(int period, double s)> cv_fn;
};

/// Moment-matched Weibull fit with a per-thread last-value cache on the CV
/// (the shape depends on the CV alone, and delay CVs are constants in the
/// standard scenario).
WeibullParams cached_weibull_fit(double mean, double cv);

/// Weibull draw with moments mean_fn(i, s) / cv_fn(i, s); strictly positive.
template <UniformStream Stream>
double simulate_delay(const DelayModel& model, int period, double s, Stream& stream) {
    const WeibullParams params =
        cached_weibull_fit(model.mean_fn(period, s), model.cv_fn(period, s));
    return weibull_quantile(params, stream.next_uniform());
}

/// Standard-scenario notification delay mean, s in currency:
/// min(3, max(1, 2 - ln(s/100000)/3)) time units.
double notification_mean(int period, double s_currency);

/// Standard-scenario settlement delay mean, s in currency:
/// a(i) * min(25, max(1, 6 + 4 ln(s/20000))), where a(i) = max(0.85,
/// 1 - 0.0075 i) except that claims under 20000 occurring in period >= 21
/// use a(i) = min(0.85, 0.65 + 0.02 (i - 21)).
double settlement_mean(int period, double s_currency);

} // namespace claimsim
