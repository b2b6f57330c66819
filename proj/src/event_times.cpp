#include "claimsim/event_times.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace claimsim {

double ClampedLogLinear::operator()(double s) const {
    if (!(s > 0.0)) throw std::domain_error("ClampedLogLinear: size must be positive");
    double value = intercept + slope * std::log(s / pivot);
    if (cap) value = std::min(value, *cap);
    if (floor) value = std::max(value, *floor);
    return value;
}

double PeriodFactor::operator()(int period, double s) const {
    if (override_small.enabled && s < override_small.max_size &&
        period >= override_small.from_period) {
        return std::min(override_small.cap,
                        override_small.base +
                            override_small.slope * (period - override_small.from_period));
    }
    return std::max(floor, intercept + slope * static_cast<double>(period));
}

namespace {

struct ShapeCache {
    double cv = -1.0;
    double shape = 0.0;
    double scale_per_mean = 0.0; // 1 / Gamma(1 + 1/shape)
};

thread_local ShapeCache g_shape_cache;

} // namespace

WeibullParams cached_weibull_fit(double mean, double cv) {
    if (!(mean > 0.0)) throw std::domain_error("cached_weibull_fit: mean must be positive");
    if (cv != g_shape_cache.cv) {
        const WeibullParams unit_fit = weibull_from_mean_cv(1.0, cv);
        g_shape_cache = {cv, unit_fit.shape, unit_fit.scale};
    }
    return {g_shape_cache.shape, mean * g_shape_cache.scale_per_mean};
}

double notification_mean(int /*period*/, double s_currency) {
    const ClampedLogLinear form{2.0, -1.0 / 3.0, 100000.0, 1.0, 3.0};
    return form(s_currency);
}

double settlement_mean(int period, double s_currency) {
    const ClampedLogLinear form{6.0, 4.0, 20000.0, 1.0, 25.0};
    PeriodFactor factor;
    factor.intercept = 1.0;
    factor.slope = -0.0075;
    factor.floor = 0.85;
    factor.override_small = {true, 20000.0, 21, 0.65, 0.02, 0.85};
    return factor(period, s_currency) * form(s_currency);
}

} // namespace claimsim
