#include "claimsim/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "claimsim/errors.hpp"

namespace claimsim {

namespace detail {

double clamp_open_unit(double z) {
    // Uniform draws live on (0, 1]; quantile evaluation needs (0, 1).
    return std::min(z, 1.0 - std::numeric_limits<double>::epsilon() / 2.0);
}

} // namespace detail

namespace {

// log of the CV^2 + 1 implied by Weibull shape k.
double weibull_log_cv2p1(double k) {
    return std::lgamma(1.0 + 2.0 / k) - 2.0 * std::lgamma(1.0 + 1.0 / k);
}

} // namespace

WeibullParams weibull_from_mean_cv(double mean, double cv) {
    if (!(mean > 0.0)) throw std::domain_error("weibull_from_mean_cv: mean must be positive");
    if (!(cv > 0.0)) throw std::domain_error("weibull_from_mean_cv: cv must be positive");

    const double target = std::log1p(cv * cv);

    // weibull_log_cv2p1 is strictly decreasing in k; expand the bracket until
    // it straddles the target, then bisect in log space.
    double lo = 1e-2;
    double hi = 1e4;
    int guard = 0;
    while (weibull_log_cv2p1(lo) < target) {
        lo /= 4.0;
        if (++guard > 60) throw NumericError("weibull_from_mean_cv: bracket expansion failed (low)");
    }
    guard = 0;
    while (weibull_log_cv2p1(hi) > target) {
        hi *= 4.0;
        if (++guard > 60) throw NumericError("weibull_from_mean_cv: bracket expansion failed (high)");
    }

    double k = std::sqrt(lo * hi);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        k = std::sqrt(lo * hi);
        const double value = weibull_log_cv2p1(k);
        if (value > target) {
            lo = k;
        } else {
            hi = k;
        }
        if ((hi - lo) <= 1e-10 * k) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericError("weibull_from_mean_cv: shape solve did not converge");

    k = std::sqrt(lo * hi);
    const double scale = mean * std::exp(-std::lgamma(1.0 + 1.0 / k));
    return {k, scale};
}

double weibull_mean(const WeibullParams& p) {
    return p.scale * std::exp(std::lgamma(1.0 + 1.0 / p.shape));
}

double weibull_cv(const WeibullParams& p) {
    return std::sqrt(std::expm1(weibull_log_cv2p1(p.shape)));
}

double weibull_quantile(const WeibullParams& p, double z) {
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("weibull_quantile: z must lie in (0,1]");
    z = detail::clamp_open_unit(z);
    return p.scale * std::pow(-std::log1p(-z), 1.0 / p.shape);
}

BetaParams beta_from_mean_cv(double mean, double cv) {
    if (!(mean > 0.0 && mean < 1.0) || !(cv > 0.0) || !(cv * cv < (1.0 - mean) / mean)) {
        std::ostringstream msg;
        msg << "beta_from_mean_cv: infeasible target (mean=" << mean << ", cv=" << cv
            << "); requires 0<mean<1 and cv^2 < (1-mean)/mean";
        throw ConfigError(msg.str());
    }
    const double variance = (mean * cv) * (mean * cv);
    const double common = mean * (1.0 - mean) / variance - 1.0;
    return {mean * common, (1.0 - mean) * common};
}

double beta_mean(const BetaParams& p) {
    return p.alpha / (p.alpha + p.beta);
}

double beta_cv(const BetaParams& p) {
    const double sum = p.alpha + p.beta;
    const double variance = p.alpha * p.beta / (sum * sum * (sum + 1.0));
    return std::sqrt(variance) / beta_mean(p);
}

double beta_quantile(const BetaParams& p, double z) {
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("beta_quantile: z must lie in (0,1]");
    return incomplete_beta_inverse(p.alpha, p.beta, z);
}

GeometricMinParams geometric_min(long minimum, double mean) {
    if (!(mean > static_cast<double>(minimum))) {
        std::ostringstream msg;
        msg << "geometric_min: mean (" << mean << ") must exceed minimum (" << minimum << ")";
        throw ConfigError(msg.str());
    }
    return {minimum, 1.0 / (mean - static_cast<double>(minimum) + 1.0)};
}

long geometric_min_quantile(const GeometricMinParams& p, double z) {
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("geometric_min_quantile: z must lie in (0,1]");
    if (p.success_prob >= 1.0) return p.minimum;
    const double g = std::floor(std::log(z) / std::log1p(-p.success_prob));
    return p.minimum + static_cast<long>(g);
}

long categorical_quantile(const Categorical& c, double z) {
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("categorical_quantile: z must lie in (0,1]");
    double cum = 0.0;
    for (const auto& [value, prob] : c.pmf) {
        cum += prob;
        if (z <= cum) return value;
    }
    return c.pmf.back().first;
}

} // namespace claimsim
