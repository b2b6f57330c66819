#pragma once

#include <functional>
#include <vector>

#include "claimsim/time_model.hpp"

namespace claimsim {

/// Base (economy-wide) inflation index built from quarterly effective rates.
/// The index is 1 at calendar time zero, compounds at quarter ends, and is
/// exponentially interpolated inside a quarter, so log f is piecewise linear
/// in quarters.
class BaseInflationCurve {
public:
    static BaseInflationCurve from_quarterly_rates(std::vector<double> rates);

    /// Constant annual effective rate, converted to the equivalent quarterly
    /// effective rate and repeated over `quarters` quarters.
    static BaseInflationCurve from_annual_rate(double annual_rate, int quarters);

    /// Index value at q quarters from the origin. Throws std::domain_error
    /// beyond the horizon.
    double index_at_quarters(double q) const;

    int horizon_quarters() const { return static_cast<int>(rates_.size()); }
    const std::vector<double>& quarterly_rates() const { return rates_; }

private:
    std::vector<double> rates_;
    std::vector<double> index_at_end_; // index_at_end_[k] = f at the end of quarter k+1
};

/// Base index at calendar time t_bar (time units).
double base_index(const BaseInflationCurve& curve, double t_bar, const TimeUnit& unit);

/// Occurrence-period superimposed inflation: level shift applied to claims
/// of periods after `change_period`, strongest for the smallest claims and
/// fading linearly to nothing at `zero_above`. s in currency.
struct OccurrenceInflationParams {
    int change_period = 20;
    double max_reduction = 0.4;
    double zero_above = 50000.0;
};

double default_g_occurrence(int occurrence_period, double s_currency,
                            const OccurrenceInflationParams& params);

/// Payment-period superimposed inflation: (1 + beta(s))^t_bar with
/// beta(s) = gamma * max(0, 1 - s / zero_above), where gamma is the
/// per-time-unit equivalent of `annual_rate_at_zero`. s in currency.
struct PaymentInflationParams {
    double annual_rate_at_zero = 0.30;
    double zero_above = 200000.0;
};

double default_g_payment(double t_bar, double s_currency, const PaymentInflationParams& params,
                         const TimeUnit& unit);

/// The two superimposed components as pluggable functions plus enable flags;
/// a disabled component is identically 1.
struct SuperimposedInflation {
    bool occurrence_enabled = false;
    bool payment_enabled = false;
    std::function<double(int occurrence_period, double s_currency)> g_occurrence;
    std::function<double(double t_bar, double s_currency)> g_payment;

    double occurrence(int period, double s) const {
        return occurrence_enabled ? g_occurrence(period, s) : 1.0;
    }
    double payment(double t_bar, double s) const {
        return payment_enabled ? g_payment(t_bar, s) : 1.0;
    }
};

/// Actual-dollar value of a constant-dollar payment amount paid at time t_m
/// for a claim of period i and size s: the product of the base index and the
/// two superimposed indices, each normalized to its value at argument 1.
double inflate_payment(double amount_constant, double t_m, int occurrence_period,
                       double s_currency, const BaseInflationCurve& curve,
                       const SuperimposedInflation& si, const TimeUnit& unit);

} // namespace claimsim
