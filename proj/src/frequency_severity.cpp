#include "claimsim/frequency_severity.hpp"

#include <algorithm>
#include <stdexcept>

#include "claimsim/errors.hpp"

namespace claimsim {

std::vector<long> simulate_claim_counts(const ExposureSchedule& schedule,
                                        const TimeUnit& unit, const RngFactory& rng) {
    if (schedule.exposure.size() != schedule.frequency.size()) {
        throw std::invalid_argument("simulate_claim_counts: exposure/frequency length mismatch");
    }
    std::vector<long> counts(schedule.exposure.size());
    for (int i = 1; i <= schedule.periods(); ++i) {
        const double mean =
            schedule.exposure[i - 1] * schedule.frequency[i - 1] * unit.years_per_unit;
        auto stream = rng.stream(static_cast<std::uint32_t>(i), 0, ModuleId::occurrence_count);
        counts[i - 1] = poisson_sample(mean, stream);
    }
    return counts;
}

std::vector<double> simulate_occurrence_times(int period, long count, RngStream& stream) {
    if (count < 0) throw std::invalid_argument("simulate_occurrence_times: negative count");
    std::vector<double> times(static_cast<std::size_t>(count));
    for (auto& t : times) {
        // Uniform on (i-1, i]: the half-open side matches the period convention.
        t = static_cast<double>(period - 1) + stream.next_uniform();
    }
    std::sort(times.begin(), times.end());
    return times;
}

double simulate_claim_size(const SeverityModel& model, RngStream& stream) {
    if (!model.draw_currency) {
        throw std::invalid_argument("simulate_claim_size: severity sampler not set");
    }
    const double currency = model.draw_currency(stream);
    if (!(currency > 0.0)) {
        throw NumericError("simulate_claim_size: sampler produced a non-positive claim size");
    }
    return currency / model.reference;
}

} // namespace claimsim
