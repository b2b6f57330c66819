#include "claimsim/payment_plan.hpp"

namespace claimsim {

std::vector<double> payment_epochs(double u, double v, std::span<const double> delays) {
    std::vector<double> epochs(delays.size());
    double t = u + v;
    for (std::size_t k = 0; k < delays.size(); ++k) {
        t += delays[k];
        epochs[k] = t;
    }
    return epochs;
}

} // namespace claimsim
