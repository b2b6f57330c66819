#include "claimsim/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "claimsim/time_model.hpp"

namespace claimsim {

double Triangle::total() const {
    double sum = std::accumulate(cells.begin(), cells.end(), 0.0);
    if (tail) sum = std::accumulate(tail->begin(), tail->end(), sum);
    return sum;
}

Triangle Triangle::to_cumulative() const {
    if (kind == TriangleKind::cumulative) return *this;
    Triangle out;
    out.size = size;
    out.kind = TriangleKind::cumulative;
    out.cells.assign(cells.size(), 0.0);
    out.tail = tail;
    for (int i = 1; i <= size; ++i) {
        double running = 0.0;
        for (int j = 1; j <= size; ++j) {
            running += at(i, j);
            out.at(i, j) = running;
        }
    }
    return out;
}

Triangle Triangle::to_incremental() const {
    if (kind == TriangleKind::incremental) return *this;
    Triangle out;
    out.size = size;
    out.kind = TriangleKind::incremental;
    out.cells.assign(cells.size(), 0.0);
    out.tail = tail;
    for (int i = 1; i <= size; ++i) {
        out.at(i, 1) = at(i, 1);
        for (int j = 2; j <= size; ++j) {
            out.at(i, j) = at(i, j) - at(i, j - 1);
        }
    }
    return out;
}

double cap_out_of_bounds(double epoch, int occurrence_period, int periods) {
    if (!(epoch > occurrence_period - 1)) {
        throw std::domain_error("cap_out_of_bounds: epoch precedes occurrence period");
    }
    return std::min(epoch, static_cast<double>(occurrence_period - 1 + periods));
}

Triangle build_triangle(std::span<const PaymentRecord> payments, int periods,
                        OutOfBoundsMode mode, TriangleKind kind) {
    Triangle tri;
    tri.size = periods;
    tri.kind = TriangleKind::incremental;
    tri.cells.assign(static_cast<std::size_t>(periods) * periods, 0.0);
    if (mode == OutOfBoundsMode::tail) {
        tri.tail = std::vector<double>(static_cast<std::size_t>(periods), 0.0);
    }

    // Row index lists in input order; each row then accumulates
    // independently, so the pass over rows can run in parallel without
    // changing any cell's addition order.
    std::vector<std::vector<std::size_t>> rows(static_cast<std::size_t>(periods));
    for (std::size_t n = 0; n < payments.size(); ++n) {
        const int i = payments[n].occurrence_period;
        if (i < 1 || i > periods) {
            throw std::invalid_argument("build_triangle: occurrence period out of range");
        }
        rows[static_cast<std::size_t>(i - 1)].push_back(n);
    }

#pragma omp parallel for schedule(static)
    for (int i = 1; i <= periods; ++i) {
        for (const std::size_t n : rows[static_cast<std::size_t>(i - 1)]) {
            const PaymentRecord& pay = payments[n];
            const bool out_of_bounds = pay.epoch > pay.capped_epoch;
            if (tri.tail && out_of_bounds) {
                (*tri.tail)[static_cast<std::size_t>(i - 1)] += pay.amount_inflated;
            } else {
                tri.at(i, pay.development_period) += pay.amount_inflated;
            }
        }
    }

    return (kind == TriangleKind::cumulative) ? tri.to_cumulative() : tri;
}

Triangle reaggregate(const Triangle& tri, int factor) {
    if (factor < 1 || tri.size % factor != 0) {
        throw std::invalid_argument("reaggregate: factor must divide the triangle size");
    }
    const Triangle incr = tri.to_incremental();
    const int coarse_size = tri.size / factor;

    Triangle out;
    out.size = coarse_size;
    out.kind = TriangleKind::incremental;
    out.cells.assign(static_cast<std::size_t>(coarse_size) * coarse_size, 0.0);
    if (incr.tail) out.tail = std::vector<double>(static_cast<std::size_t>(coarse_size), 0.0);

    for (int i = 1; i <= tri.size; ++i) {
        const int a = (i + factor - 1) / factor;
        for (int j = 1; j <= tri.size; ++j) {
            const int t = i + j - 1;
            const int coarse_t = (t + factor - 1) / factor;
            const int b = std::min(coarse_t - a + 1, coarse_size);
            out.at(a, b) += incr.at(i, j);
        }
        if (incr.tail) {
            (*out.tail)[static_cast<std::size_t>(a - 1)] +=
                (*incr.tail)[static_cast<std::size_t>(i - 1)];
        }
    }
    return (tri.kind == TriangleKind::cumulative) ? out.to_cumulative() : out;
}

std::pair<std::vector<PaymentRecord>, std::vector<PaymentRecord>>
split_past_future(std::span<const PaymentRecord> payments, int periods) {
    std::pair<std::vector<PaymentRecord>, std::vector<PaymentRecord>> parts;
    for (const auto& pay : payments) {
        (pay.payment_period <= periods ? parts.first : parts.second).push_back(pay);
    }
    return parts;
}

} // namespace claimsim
