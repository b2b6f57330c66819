#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "claimsim/rng.hpp"
#include "claimsim/special_functions.hpp"

namespace claimsim {

/// Anything that can hand out uniforms on (0, 1]. Satisfied by RngStream and
/// by scripted test stubs.
template <typename S>
concept UniformStream = requires(S s) {
    { s.next_uniform() } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------
// Weibull, parameterized by moment matching
// ---------------------------------------------------------------------------

struct WeibullParams {
    double shape = 1.0; // k
    double scale = 1.0; // lambda
};

/// Recovers (shape, scale) so that mean and coefficient of variation hit the
/// requested targets. The CV equation cv^2 = G(1+2/k)/G(1+1/k)^2 - 1 is
/// strictly decreasing in k; solved by bisection in log space to 1e-10
/// relative tolerance (hard cap 200 iterations).
WeibullParams weibull_from_mean_cv(double mean, double cv);

double weibull_mean(const WeibullParams& p);
double weibull_cv(const WeibullParams& p);

/// Quantile at z in (0, 1]. z = 1 is clamped one ulp below so that the
/// result stays finite.
double weibull_quantile(const WeibullParams& p, double z);

// ---------------------------------------------------------------------------
// Beta, parameterized by moment matching
// ---------------------------------------------------------------------------

struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
};

/// Closed-form moment match; requires 0 < mean < 1 and cv^2 < (1-mean)/mean,
/// otherwise the implied (alpha, beta) would not be positive.
BetaParams beta_from_mean_cv(double mean, double cv);

double beta_mean(const BetaParams& p);
double beta_cv(const BetaParams& p);

double beta_quantile(const BetaParams& p, double z);

// ---------------------------------------------------------------------------
// Geometric with a minimum
// ---------------------------------------------------------------------------

struct GeometricMinParams {
    long minimum = 0;
    double success_prob = 1.0; // p of the shifted geometric on {0,1,2,...}
};

/// M = minimum + G with G geometric(p), p chosen so that E[M] = mean.
GeometricMinParams geometric_min(long minimum, double mean);

/// Inverse-transform draw; z = 1 maps to the minimum.
long geometric_min_quantile(const GeometricMinParams& p, double z);

// ---------------------------------------------------------------------------
// Categorical over integer outcomes
// ---------------------------------------------------------------------------

struct Categorical {
    std::vector<std::pair<long, double>> pmf; // (value, probability), probs sum to 1
};

long categorical_quantile(const Categorical& c, double z);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// Inverse transform sampling: evaluates a quantile function at the stream's
/// next uniform on (0, 1].
template <typename Quantile, UniformStream Stream>
double inverse_transform(Quantile&& quantile, Stream& stream) {
    return quantile(stream.next_uniform());
}

namespace detail {
double clamp_open_unit(double z);
}

/// Draws X ~ Normal(mu, sigma), redrawing while X <= 0, and returns
/// X^(1/power). sigma is a standard deviation.
template <UniformStream Stream>
double power_normal_sample(double mu, double sigma, double power, Stream& stream) {
    if (!(sigma > 0.0)) throw std::domain_error("power_normal: sigma must be positive");
    if (!(power > 0.0)) throw std::domain_error("power_normal: power must be positive");
    double x;
    do {
        x = mu + sigma * normal_quantile(detail::clamp_open_unit(stream.next_uniform()));
    } while (x <= 0.0);
    return std::pow(x, 1.0 / power);
}

/// Poisson draw by CDF inversion. Means above 500 are split into
/// independent chunks so the term recursion never underflows.
template <UniformStream Stream>
long poisson_sample(double mean, Stream& stream) {
    if (!(mean > 0.0)) return 0;
    long total = 0;
    while (mean > 500.0) {
        // Chunked halving keeps exp(-mean) representable.
        const double half = mean / 2.0;
        total += poisson_sample(half, stream);
        mean -= half;
    }
    const double z = stream.next_uniform();
    double term = std::exp(-mean);
    double cum = term;
    long k = 0;
    const long cap = static_cast<long>(mean + 60.0 * std::sqrt(mean) + 20.0);
    while (z > cum && k < cap) {
        ++k;
        term *= mean / static_cast<double>(k);
        cum += term;
    }
    return total + k;
}

} // namespace claimsim
