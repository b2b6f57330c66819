#include "claimsim/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "claimsim/errors.hpp"

namespace claimsim {

BaseInflationCurve BaseInflationCurve::from_quarterly_rates(std::vector<double> rates) {
    BaseInflationCurve curve;
    double index = 1.0;
    curve.index_at_end_.reserve(rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) {
        if (!(rates[k] > -1.0)) {
            std::ostringstream msg;
            msg << "base inflation rate for quarter " << (k + 1) << " must exceed -1";
            throw ConfigError(msg.str());
        }
        index *= 1.0 + rates[k];
        curve.index_at_end_.push_back(index);
    }
    curve.rates_ = std::move(rates);
    return curve;
}

BaseInflationCurve BaseInflationCurve::from_annual_rate(double annual_rate, int quarters) {
    if (!(annual_rate > -1.0)) throw ConfigError("base annual inflation rate must exceed -1");
    const double quarterly = std::pow(1.0 + annual_rate, 0.25) - 1.0;
    return from_quarterly_rates(std::vector<double>(static_cast<std::size_t>(quarters), quarterly));
}

double BaseInflationCurve::index_at_quarters(double q) const {
    if (q < 0.0) throw std::domain_error("base inflation index: negative time");
    if (q > static_cast<double>(rates_.size())) {
        std::ostringstream msg;
        msg << "base inflation index: time " << q << " quarters exceeds the curve horizon of "
            << rates_.size() << " quarters";
        throw std::domain_error(msg.str());
    }
    const auto whole = static_cast<std::size_t>(std::floor(q));
    const double frac = q - static_cast<double>(whole);
    const double at_whole = (whole == 0) ? 1.0 : index_at_end_[whole - 1];
    if (frac == 0.0) return at_whole;
    return at_whole * std::pow(1.0 + rates_[whole], frac);
}

double base_index(const BaseInflationCurve& curve, double t_bar, const TimeUnit& unit) {
    return curve.index_at_quarters(units_to_quarters(t_bar, unit));
}

double default_g_occurrence(int occurrence_period, double s_currency,
                            const OccurrenceInflationParams& params) {
    if (occurrence_period <= params.change_period) return 1.0;
    const double fade = std::max(0.0, 1.0 - s_currency / params.zero_above);
    return 1.0 - params.max_reduction * fade;
}

double default_g_payment(double t_bar, double s_currency, const PaymentInflationParams& params,
                         const TimeUnit& unit) {
    const double gamma = std::pow(1.0 + params.annual_rate_at_zero, unit.years_per_unit) - 1.0;
    const double beta = gamma * std::max(0.0, 1.0 - s_currency / params.zero_above);
    return std::pow(1.0 + beta, t_bar);
}

double inflate_payment(double amount_constant, double t_m, int occurrence_period,
                       double s_currency, const BaseInflationCurve& curve,
                       const SuperimposedInflation& si, const TimeUnit& unit) {
    const double base = base_index(curve, t_m, unit) / base_index(curve, 1.0, unit);
    const double occurrence =
        si.occurrence(occurrence_period, s_currency) / si.occurrence(1, s_currency);
    const double payment = si.payment(t_m, s_currency) / si.payment(1.0, s_currency);
    return amount_constant * base * occurrence * payment;
}

} // namespace claimsim
