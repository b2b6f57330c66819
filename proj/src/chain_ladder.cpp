#include "claimsim/chain_ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "claimsim/errors.hpp"

namespace claimsim {

DevelopmentFactors fit_chain_ladder(const Triangle& cumulative) {
    if (cumulative.kind != TriangleKind::cumulative) {
        throw std::invalid_argument("fit_chain_ladder: triangle must be cumulative");
    }
    const int size = cumulative.size;
    DevelopmentFactors factors;
    factors.f.reserve(static_cast<std::size_t>(size - 1));
    for (int j = 1; j <= size - 1; ++j) {
        double num = 0.0;
        double den = 0.0;
        for (int i = 1; i <= size - j; ++i) {
            num += cumulative.at(i, j + 1);
            den += cumulative.at(i, j);
        }
        if (den == 0.0) {
            std::ostringstream msg;
            msg << "fit_chain_ladder: development factor undefined at j = " << j
                << " (zero denominator)";
            throw NumericError(msg.str());
        }
        factors.f.push_back(num / den);
    }
    return factors;
}

ChainLadderProjection project(const Triangle& cumulative, const DevelopmentFactors& factors) {
    if (cumulative.kind != TriangleKind::cumulative) {
        throw std::invalid_argument("project: triangle must be cumulative");
    }
    const int size = cumulative.size;
    if (static_cast<int>(factors.f.size()) != size - 1) {
        throw std::invalid_argument("project: factor count does not match the triangle size");
    }

    ChainLadderProjection result;
    result.completed = cumulative;
    result.ultimates.resize(static_cast<std::size_t>(size));
    result.reserves.resize(static_cast<std::size_t>(size));

    for (int i = 1; i <= size; ++i) {
        const int diagonal = size - i + 1;
        for (int j = diagonal; j <= size - 1; ++j) {
            result.completed.at(i, j + 1) =
                result.completed.at(i, j) * factors.f[static_cast<std::size_t>(j - 1)];
        }
        result.ultimates[static_cast<std::size_t>(i - 1)] = result.completed.at(i, size);
        result.reserves[static_cast<std::size_t>(i - 1)] =
            result.completed.at(i, size) - cumulative.at(i, diagonal);
        result.total_reserve += result.reserves[static_cast<std::size_t>(i - 1)];
    }
    return result;
}

std::vector<PeriodGroup> default_grouping(int periods) {
    std::vector<PeriodGroup> groups;
    if (periods == 40) {
        groups.push_back({1, 10, "1 to 10"});
        groups.push_back({11, 20, "11 to 20"});
        groups.push_back({21, 25, "21 to 25"});
        groups.push_back({26, 30, "26 to 30"});
        for (int i = 31; i <= 40; ++i) {
            groups.push_back({i, i, std::to_string(i)});
        }
    } else {
        for (int i = 1; i <= periods; ++i) {
            groups.push_back({i, i, std::to_string(i)});
        }
    }
    return groups;
}

std::vector<double> target_outstanding(std::span<const PaymentRecord> payments, int periods,
                                       std::span<const PeriodGroup> groups) {
    std::vector<double> totals(groups.size(), 0.0);
    for (const auto& pay : payments) {
        if (pay.payment_period <= periods) continue;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (pay.occurrence_period >= groups[g].first &&
                pay.occurrence_period <= groups[g].last) {
                totals[g] += pay.amount_inflated;
                break;
            }
        }
    }
    return totals;
}

namespace {

double ratio_pct(double estimate, double target) {
    if (target == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (estimate / target - 1.0) * 100.0;
}

} // namespace

ReserveReport reserve_report(const Triangle& cumulative_past,
                             std::span<const PaymentRecord> payments,
                             std::span<const PeriodGroup> grouping) {
    const DevelopmentFactors factors = fit_chain_ladder(cumulative_past);
    const ChainLadderProjection projection = project(cumulative_past, factors);
    const std::vector<double> targets =
        target_outstanding(payments, cumulative_past.size, grouping);

    ReserveReport report;
    double total_target = 0.0;
    double total_estimate = 0.0;
    for (std::size_t g = 0; g < grouping.size(); ++g) {
        double estimate = 0.0;
        for (int i = grouping[g].first; i <= grouping[g].last; ++i) {
            estimate += projection.reserves[static_cast<std::size_t>(i - 1)];
        }
        report.rows.push_back({grouping[g].label, targets[g], estimate,
                               ratio_pct(estimate, targets[g])});
        total_target += targets[g];
        total_estimate += estimate;
    }
    report.total = {"Total", total_target, total_estimate,
                    ratio_pct(total_estimate, total_target)};
    return report;
}

std::vector<std::pair<double, double>> DependencyTable::default_buckets() {
    const double inf = std::numeric_limits<double>::infinity();
    return {{0.0, 1000.0},     {1000.0, 2000.0},   {4000.0, 5000.0}, {8000.0, 10000.0},
            {20000.0, 50000.0}, {50000.0, 100000.0}, {100000.0, inf}};
}

std::vector<int> DependencyTable::default_m_values() { return {1, 2, 3, 5, 7, 9}; }

DependencyTable dependency_table(std::span<const ClaimRecord> claims,
                                 std::span<const PaymentRecord> payments,
                                 std::span<const int> m_values,
                                 std::span<const std::pair<double, double>> buckets) {
    DependencyTable table;
    table.buckets.assign(buckets.begin(), buckets.end());
    table.m_values.assign(m_values.begin(), m_values.end());
    table.cells.assign(buckets.size(),
                       std::vector<std::optional<double>>(m_values.size(), std::nullopt));
    table.counts.assign(buckets.size(), std::vector<long>(m_values.size(), 0));

    std::vector<std::vector<double>> sums(buckets.size(),
                                          std::vector<double>(m_values.size(), 0.0));

    // Constant-dollar payment amounts per claim, indexed by payment number.
    std::unordered_map<long, std::vector<double>> amounts;
    for (const auto& pay : payments) {
        auto& list = amounts[pay.claim_id];
        if (static_cast<std::size_t>(pay.payment_no) > list.size()) {
            list.resize(static_cast<std::size_t>(pay.payment_no), 0.0);
        }
        list[static_cast<std::size_t>(pay.payment_no - 1)] = pay.amount_constant;
    }

    for (const auto& claim : claims) {
        const auto it = amounts.find(claim.claim_id);
        if (it == amounts.end()) continue;
        const auto& list = it->second;
        for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
            const int m = m_values[mi];
            if (claim.payment_count < m + 1) continue;
            const double current = list[static_cast<std::size_t>(m - 1)];
            const double next = list[static_cast<std::size_t>(m)];
            for (std::size_t b = 0; b < buckets.size(); ++b) {
                if (current >= buckets[b].first && current < buckets[b].second) {
                    sums[b][mi] += next;
                    ++table.counts[b][mi];
                    break;
                }
            }
        }
    }

    for (std::size_t b = 0; b < buckets.size(); ++b) {
        for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
            if (table.counts[b][mi] > 0) {
                table.cells[b][mi] = sums[b][mi] / static_cast<double>(table.counts[b][mi]);
            }
        }
    }
    return table;
}

} // namespace claimsim
