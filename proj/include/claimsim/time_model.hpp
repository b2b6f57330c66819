#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace claimsim {

/// Length of one simulation period expressed in years. The whole engine is
/// agnostic to the choice; only base inflation (always quarterly) and
/// annual-effective inputs need the conversion factors below.
struct TimeUnit {
    double years_per_unit = 0.25;

    double quarters_per_unit() const { return years_per_unit * 4.0; }
};

inline TimeUnit quarter_unit() { return TimeUnit{0.25}; }
inline TimeUnit year_unit() { return TimeUnit{1.0}; }

/// Calendar period containing continuous time t_bar. Periods are half-open
/// intervals (k-1, k], so exact integer times belong to the earlier period;
/// the origin t_bar = 0 is assigned to period 1.
inline int payment_period_of(double t_bar) {
    if (t_bar < 0.0) {
        throw std::domain_error("payment_period_of: negative calendar time");
    }
    return std::max(1, static_cast<int>(std::ceil(t_bar)));
}

/// Development period of time t_bar relative to occurrence period i.
/// Requires t_bar > i - 1 (a transaction cannot precede its occurrence
/// period); the result is always >= 1.
inline int development_period_of(double t_bar, int occurrence_period) {
    if (!(t_bar > occurrence_period - 1)) {
        throw std::domain_error(
            "development_period_of: time precedes start of occurrence period");
    }
    return payment_period_of(t_bar) - occurrence_period + 1;
}

/// Duration conversion into quarters (the fixed granularity of base
/// inflation input rates).
inline double units_to_quarters(double d, const TimeUnit& unit) {
    return d * unit.years_per_unit * 4.0;
}

} // namespace claimsim
