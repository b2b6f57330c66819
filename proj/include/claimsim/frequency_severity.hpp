#pragma once

#include <functional>
#include <vector>

#include "claimsim/distributions.hpp"
#include "claimsim/rng.hpp"
#include "claimsim/time_model.hpp"

namespace claimsim {

/// Occurrence-side inputs: annual effective exposure and expected claim
/// frequency per unit exposure, one entry per occurrence period.
struct ExposureSchedule {
    std::vector<double> exposure;  // E_i, annual effective
    std::vector<double> frequency; // lambda_i, per unit exposure per year

    int periods() const { return static_cast<int>(exposure.size()); }
};

/// Claim severity sampler. Draws are in currency units; the caller converts
/// to reference multiples. `reference` is the global monetary scale.
struct SeverityModel {
    std::function<double(RngStream&)> draw_currency;
    double reference = 1.0;
};

/// Per-period claim counts, Poisson with mean E_i * lambda_i scaled to the
/// period length. Uses one stream per occurrence period so periods can be
/// simulated in any order.
std::vector<long> simulate_claim_counts(const ExposureSchedule& schedule,
                                        const TimeUnit& unit, const RngFactory& rng);

/// Occurrence times within period i: independent uniforms on (i-1, i],
/// sorted ascending so that claim index r is chronological.
std::vector<double> simulate_occurrence_times(int period, long count, RngStream& stream);

/// One claim size in reference multiples.
double simulate_claim_size(const SeverityModel& model, RngStream& stream);

} // namespace claimsim
