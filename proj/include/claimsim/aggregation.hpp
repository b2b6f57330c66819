#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace claimsim {

/// One claim's lifecycle realization, sizes in constant dollars (currency).
struct ClaimRecord {
    long claim_id = 0;
    int occurrence_period = 0;
    double occurrence_time = 0.0;
    double claim_size = 0.0;
    double notification_delay = 0.0;
    double settlement_delay = 0.0;
    long payment_count = 0;
};

/// One partial payment. `epoch` keeps the simulated time unchanged;
/// `capped_epoch` applies the out-of-bounds rule (transactions after the end
/// of development period I are deemed to occur at that end), and inflation
/// is evaluated at the capped time.
struct PaymentRecord {
    long claim_id = 0;
    int occurrence_period = 0;
    int payment_no = 0;
    double inter_partial_delay = 0.0;
    double epoch = 0.0;
    double capped_epoch = 0.0;
    int payment_period = 0;
    int development_period = 0;
    double amount_constant = 0.0;
    double amount_inflated = 0.0;
};

enum class OutOfBoundsMode { cap, tail };
enum class TriangleKind { incremental, cumulative };

/// Occurrence period x development period aggregate of payment amounts, with
/// an optional per-row tail bucket for out-of-bounds mass.
struct Triangle {
    int size = 0;
    TriangleKind kind = TriangleKind::incremental;
    std::vector<double> cells; // row-major, size*size
    std::optional<std::vector<double>> tail;

    double& at(int i, int j) { return cells[static_cast<std::size_t>(i - 1) * size + (j - 1)]; }
    double at(int i, int j) const {
        return cells[static_cast<std::size_t>(i - 1) * size + (j - 1)];
    }

    /// Sum of all cells plus any tail mass (cells taken as stored; call on
    /// incremental triangles when a mass total is wanted).
    double total() const;

    Triangle to_cumulative() const;
    Triangle to_incremental() const;
};

/// Out-of-bounds rule: a transaction past the end of development period I is
/// deemed to occur exactly at that end, i - 1 + I.
double cap_out_of_bounds(double epoch, int occurrence_period, int periods);

/// Aggregates inflated payment amounts into a triangle. In cap mode the
/// capped development period (already folded into column I) is used; in tail
/// mode out-of-bounds amounts land in the row's tail bucket instead.
/// Cell sums accumulate in input order, so results are independent of the
/// number of threads; callers should pass records sorted by
/// (claim_id, payment_no).
Triangle build_triangle(std::span<const PaymentRecord> payments, int periods,
                        OutOfBoundsMode mode, TriangleKind kind);

/// Coarsens a triangle by an integer factor (e.g. quarterly -> yearly,
/// factor 4). Rows group by occurrence period; the coarse development index
/// follows the payment period, so calendar diagonals stay aligned. Coarse
/// cells past the coarse horizon fold into the final coarse column, mirroring
/// the out-of-bounds rule at the coarse granularity.
Triangle reaggregate(const Triangle& tri, int factor);

/// Partition into past (payment periods 1..I) and future (I+1..2I-1),
/// judged on the capped epoch's payment period.
std::pair<std::vector<PaymentRecord>, std::vector<PaymentRecord>>
split_past_future(std::span<const PaymentRecord> payments, int periods);

} // namespace claimsim
