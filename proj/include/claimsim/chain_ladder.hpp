#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "claimsim/aggregation.hpp"

namespace claimsim {

/// Volume-weighted all-years development factors f_j, j = 1..I-1.
struct DevelopmentFactors {
    std::vector<double> f;
};

/// Fits the standard chain ladder on a cumulative triangle:
/// f_j = sum_{i<=I-j} C[i][j+1] / sum_{i<=I-j} C[i][j]. Only the upper
/// triangle (cells with i + j - 1 <= I) enters the sums. Throws NumericError
/// when a denominator is zero.
DevelopmentFactors fit_chain_ladder(const Triangle& cumulative);

struct ChainLadderProjection {
    Triangle completed;            // cumulative, lower triangle filled in
    std::vector<double> ultimates; // completed[i][I]
    std::vector<double> reserves;  // ultimate minus the diagonal cell
    double total_reserve = 0.0;
};

/// Completes the rectangle below the diagonal by chaining the factors and
/// reads off per-row reserves.
ChainLadderProjection project(const Triangle& cumulative, const DevelopmentFactors& factors);

/// Contiguous occurrence-period band used for report rows.
struct PeriodGroup {
    int first = 0;
    int last = 0;
    std::string label;
};

/// Row bands used for the I = 40 reserve report; other sizes fall back to
/// one group per occurrence period.
std::vector<PeriodGroup> default_grouping(int periods);

/// Per-group sums of inflated future payments (payment periods I+1..2I-1):
/// the simulator's own knowledge of outstanding claims.
std::vector<double> target_outstanding(std::span<const PaymentRecord> payments, int periods,
                                       std::span<const PeriodGroup> groups);

struct ReserveReport {
    struct Row {
        std::string label;
        double target = 0.0;
        double estimate = 0.0;
        double ratio_pct = 0.0; // estimate / target - 1, in percent
    };
    std::vector<Row> rows;
    Row total;
};

/// Chain-ladder estimate versus simulated outstanding, grouped. The triangle
/// must be cumulative and built from past payments only.
ReserveReport reserve_report(const Triangle& cumulative_past,
                             std::span<const PaymentRecord> payments,
                             std::span<const PeriodGroup> grouping);

/// Average constant-dollar size of the (m+1)-th partial payment, tabulated
/// by the size bucket of the m-th. Cells with no qualifying claims are empty
/// ("no claims" in the CSV rendering).
struct DependencyTable {
    std::vector<std::pair<double, double>> buckets; // [lo, hi) in currency
    std::vector<int> m_values;
    std::vector<std::vector<std::optional<double>>> cells;  // [bucket][m]
    std::vector<std::vector<long>> counts;

    static std::vector<std::pair<double, double>> default_buckets();
    static std::vector<int> default_m_values();
};

DependencyTable dependency_table(std::span<const ClaimRecord> claims,
                                 std::span<const PaymentRecord> payments,
                                 std::span<const int> m_values,
                                 std::span<const std::pair<double, double>> buckets);

} // namespace claimsim
