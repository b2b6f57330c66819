#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "claimsim/aggregation.hpp"
#include "claimsim/chain_ladder.hpp"
#include "claimsim/engine.hpp"
#include "claimsim/scenario.hpp"

namespace claimsim {

/// Dataset CSVs carry full shortest-round-trip floats; report CSVs are
/// rounded as presented (reserve amounts in $M to one decimal, dependency
/// cells in $K to one decimal, ratios to whole percent).
/// `unit_divisor` rescales monetary columns (1 for currency, the reference
/// claim size for multiples output).

std::string claims_csv(std::span<const ClaimRecord> claims, double unit_divisor = 1.0);
std::string payments_csv(std::span<const PaymentRecord> payments, double unit_divisor = 1.0);

std::vector<ClaimRecord> parse_claims_csv(const std::string& text);
std::vector<PaymentRecord> parse_payments_csv(const std::string& text);

std::string triangle_csv(const Triangle& triangle);
Triangle parse_triangle_csv(const std::string& text);

std::string reserve_report_csv(const ReserveReport& report);
std::string dependency_table_csv(const DependencyTable& table);

/// Cumulative share of each occurrence period's total paid by development
/// period, from capped inflated amounts; every non-empty row ends at 1.
std::string devpattern_csv(std::span<const PaymentRecord> payments, int periods);

std::string manifest_json(const RunManifest& manifest, const ScenarioConfig& config);

/// Reads a manifest written by manifest_json; returns the manifest and the
/// embedded scenario.
std::pair<RunManifest, ScenarioConfig> parse_manifest_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace claimsim
