#pragma once

#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "claimsim/errors.hpp"
#include "claimsim/event_times.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {

/// Number-of-payments model: two small-claim categorical branches and a
/// geometric-with-minimum branch for large claims, with a size-dependent
/// mean. Thresholds share the unit of s.
struct PaymentCountModel {
    double small_max = 0.0;
    double medium_max = 0.0;
    Categorical small;
    Categorical medium;
    long geometric_minimum = 4;
    ClampedLogLinear geometric_mean;
};

/// Settlement-dominated payment-size structure. For claims with at least
/// four payments, the last two (settlement and a smaller final payment) are
/// drawn first as a total, then split; the remainder is spread over the
/// earlier minor payments.
struct PaymentSizeModel {
    ClampedLogLinear settlement_fraction_mean; // mean of p^(m-1) + p^(m), capped
    double complement_cv = 0.2;                // CV of the Beta drawn for 1 - total
    double split_mean = 0.9;                   // settlement share of the total
    double split_cv = 0.03;
    double minor_cv = 0.1;
};

/// Inter-partial delay model: the delay into the final payment of a claim
/// with >= 4 payments has its own (short) mean; every other delay is scaled
/// to the claim's settlement delay.
struct PaymentTimingModel {
    double final_mean_units = 1.0; // mean delay into the final payment, time units
    double final_cv = 0.2;
    double other_cv = 0.35;
};

struct PaymentPlan {
    std::vector<double> proportions; // length m, sums to 1
    std::vector<double> delays;      // length m, sums to the settlement delay
};

/// Draws the number of partial payments for a claim of size s.
template <UniformStream Stream>
long simulate_payment_count(const PaymentCountModel& model, double s, Stream& stream) {
    if (!(s > 0.0)) throw std::domain_error("simulate_payment_count: size must be positive");
    const double z = stream.next_uniform();
    if (s <= model.small_max) return categorical_quantile(model.small, z);
    if (s <= model.medium_max) return categorical_quantile(model.medium, z);
    const double mean = model.geometric_mean(s);
    return geometric_min_quantile(geometric_min(model.geometric_minimum, mean), z);
}

/// Draws (p^(m-1), p^(m)) for a claim with m >= 4 payments: the total of the
/// two is 1 - C with C ~ Beta matched to the complement of the settlement
/// fraction mean, and the split is Beta(split_mean, split_cv).
template <UniformStream Stream>
std::pair<double, double> simulate_last_two_payments(const PaymentSizeModel& model, double s,
                                                     long m, Stream& stream) {
    if (m < 4) {
        throw std::invalid_argument(
            "simulate_last_two_payments: requires at least four payments");
    }
    const double complement_mean = 1.0 - model.settlement_fraction_mean(s);
    const BetaParams complement = beta_from_mean_cv(complement_mean, model.complement_cv);
    const double c = beta_quantile(complement, stream.next_uniform());
    const double total = 1.0 - c;

    const BetaParams split = beta_from_mean_cv(model.split_mean, model.split_cv);
    const double q = beta_quantile(split, stream.next_uniform());
    return {q * total, (1.0 - q) * total};
}

/// `count` positive proportions that sum exactly to `remaining` (unnormalized
/// Beta draws with mean remaining/count, then rescaled). remaining == 0
/// degenerates to zeros; count == 1 returns {remaining} outright since the
/// rescale would erase the draw anyway.
template <UniformStream Stream>
std::vector<double> simulate_minor_payments(const PaymentSizeModel& model, double remaining,
                                            long count, Stream& stream) {
    if (count < 0) throw std::invalid_argument("simulate_minor_payments: negative count");
    if (count == 0) return {};
    if (remaining == 0.0) return std::vector<double>(static_cast<std::size_t>(count), 0.0);
    if (count == 1) return {remaining};

    double mean = remaining / static_cast<double>(count);
    if (mean >= 1.0) mean = 0.999; // unreachable for remaining <= 1; guards custom callers
    const BetaParams params = beta_from_mean_cv(mean, model.minor_cv);

    std::vector<double> raw(static_cast<std::size_t>(count));
    double sum = 0.0;
    for (auto& value : raw) {
        value = beta_quantile(params, stream.next_uniform());
        sum += value;
    }
    for (auto& value : raw) value *= remaining / sum;
    return raw;
}

/// Proportions of the claim paid in each of its m payments. m >= 4 combines
/// the last-two draw with minor payments over the rest; m = 2 or 3 spreads
/// the whole claim over minor-style payments; m = 1 is the single payment.
template <UniformStream Stream>
std::vector<double> simulate_payment_proportions(const PaymentSizeModel& model, double s, long m,
                                                 Stream& stream) {
    if (!(s > 0.0)) throw std::domain_error("simulate_payment_proportions: size must be positive");
    if (m < 1) {
        throw std::invalid_argument("simulate_payment_proportions: payment count must be >= 1");
    }
    if (m == 1) return {1.0};

    if (m >= 4) {
        const auto [settlement, final_payment] = simulate_last_two_payments(model, s, m, stream);
        const double remaining = 1.0 - settlement - final_payment;
        std::vector<double> proportions = simulate_minor_payments(model, remaining, m - 2, stream);
        proportions.push_back(settlement);
        proportions.push_back(final_payment);
        return proportions;
    }
    // m = 2 or 3: no settlement structure; the whole claim is spread over
    // m minor-style payments.
    return simulate_minor_payments(model, 1.0, m, stream);
}

/// Inter-partial delays for m payments normalized to sum to w. The final
/// delay of a claim with >= 4 payments draws from the short final-leg
/// distribution before the joint rescale, so its mean holds only
/// approximately after normalization.
template <UniformStream Stream>
std::vector<double> simulate_inter_partial_delays(const PaymentTimingModel& model, long m,
                                                  double w, Stream& stream) {
    if (m < 1) {
        throw std::invalid_argument("simulate_inter_partial_delays: payment count must be >= 1");
    }
    if (!(w > 0.0)) {
        throw std::domain_error("simulate_inter_partial_delays: settlement delay must be positive");
    }
    if (m == 1) return {w};

    std::vector<double> raw(static_cast<std::size_t>(m));
    const double interim_mean = w / static_cast<double>(m);
    for (long k = 1; k <= m; ++k) {
        const bool final_of_large = (m >= 4 && k == m);
        const WeibullParams params =
            final_of_large ? cached_weibull_fit(model.final_mean_units, model.final_cv)
                           : cached_weibull_fit(interim_mean, model.other_cv);
        raw[static_cast<std::size_t>(k - 1)] = weibull_quantile(params, stream.next_uniform());
    }
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    for (auto& d : raw) d *= w / sum;
    return raw;
}

/// Full plan for one claim: proportions per the size model (cases m = 1,
/// m = 2 or 3, m >= 4) and inter-partial delays normalized so they sum to
/// the settlement delay w.
template <UniformStream Stream>
PaymentPlan build_payment_plan(const PaymentSizeModel& sizes, const PaymentTimingModel& timing,
                               double s, long m, double w, Stream& size_stream,
                               Stream& time_stream) {
    PaymentPlan plan;
    plan.proportions = simulate_payment_proportions(sizes, s, m, size_stream);
    plan.delays = simulate_inter_partial_delays(timing, m, w, time_stream);
    return plan;
}

/// Payment epochs u + v + d^(1) + ... + d^(m), strictly increasing; the last
/// equals the settlement time u + v + w up to rounding.
std::vector<double> payment_epochs(double u, double v, std::span<const double> delays);

} // namespace claimsim
