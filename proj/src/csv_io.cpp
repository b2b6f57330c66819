#include "claimsim/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "claimsim/errors.hpp"

namespace claimsim {

namespace {

void append_number(std::string& out, double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, result.ptr);
}

void append_number(std::string& out, long value) {
    char buf[24];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, result.ptr);
}

void append_fixed(std::string& out, double value, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    out.append(buf);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

double parse_double(const std::string& field, const char* context) {
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size()) {
        throw IoError(std::string("malformed number in ") + context + ": \"" + field + "\"");
    }
    return value;
}

long parse_long(const std::string& field, const char* context) {
    long value = 0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size()) {
        throw IoError(std::string("malformed integer in ") + context + ": \"" + field + "\"");
    }
    return value;
}

} // namespace

std::string claims_csv(std::span<const ClaimRecord> claims, double unit_divisor) {
    std::string out =
        "claim_id,occurrence_period,occurrence_time,claim_size,notification_delay,"
        "settlement_delay,payment_count\n";
    for (const auto& c : claims) {
        append_number(out, c.claim_id);
        out.push_back(',');
        append_number(out, static_cast<long>(c.occurrence_period));
        out.push_back(',');
        append_number(out, c.occurrence_time);
        out.push_back(',');
        append_number(out, c.claim_size / unit_divisor);
        out.push_back(',');
        append_number(out, c.notification_delay);
        out.push_back(',');
        append_number(out, c.settlement_delay);
        out.push_back(',');
        append_number(out, c.payment_count);
        out.push_back('\n');
    }
    return out;
}

std::string payments_csv(std::span<const PaymentRecord> payments, double unit_divisor) {
    std::string out =
        "claim_id,payment_no,inter_partial_delay,epoch,capped_epoch,payment_period,"
        "development_period,amount_constant,amount_inflated\n";
    for (const auto& p : payments) {
        append_number(out, p.claim_id);
        out.push_back(',');
        append_number(out, static_cast<long>(p.payment_no));
        out.push_back(',');
        append_number(out, p.inter_partial_delay);
        out.push_back(',');
        append_number(out, p.epoch);
        out.push_back(',');
        append_number(out, p.capped_epoch);
        out.push_back(',');
        append_number(out, static_cast<long>(p.payment_period));
        out.push_back(',');
        append_number(out, static_cast<long>(p.development_period));
        out.push_back(',');
        append_number(out, p.amount_constant / unit_divisor);
        out.push_back(',');
        append_number(out, p.amount_inflated / unit_divisor);
        out.push_back('\n');
    }
    return out;
}

std::vector<ClaimRecord> parse_claims_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty()) throw IoError("claims csv: empty file");
    std::vector<ClaimRecord> claims;
    claims.reserve(lines.size() - 1);
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const auto fields = split(lines[n], ',');
        if (fields.size() != 7) throw IoError("claims csv: expected 7 columns");
        ClaimRecord c;
        c.claim_id = parse_long(fields[0], "claims csv");
        c.occurrence_period = static_cast<int>(parse_long(fields[1], "claims csv"));
        c.occurrence_time = parse_double(fields[2], "claims csv");
        c.claim_size = parse_double(fields[3], "claims csv");
        c.notification_delay = parse_double(fields[4], "claims csv");
        c.settlement_delay = parse_double(fields[5], "claims csv");
        c.payment_count = parse_long(fields[6], "claims csv");
        claims.push_back(c);
    }
    return claims;
}

std::vector<PaymentRecord> parse_payments_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.empty()) throw IoError("payments csv: empty file");
    std::vector<PaymentRecord> payments;
    payments.reserve(lines.size() - 1);
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const auto fields = split(lines[n], ',');
        if (fields.size() != 9) throw IoError("payments csv: expected 9 columns");
        PaymentRecord p;
        p.claim_id = parse_long(fields[0], "payments csv");
        p.payment_no = static_cast<int>(parse_long(fields[1], "payments csv"));
        p.inter_partial_delay = parse_double(fields[2], "payments csv");
        p.epoch = parse_double(fields[3], "payments csv");
        p.capped_epoch = parse_double(fields[4], "payments csv");
        p.payment_period = static_cast<int>(parse_long(fields[5], "payments csv"));
        p.development_period = static_cast<int>(parse_long(fields[6], "payments csv"));
        p.amount_constant = parse_double(fields[7], "payments csv");
        p.amount_inflated = parse_double(fields[8], "payments csv");
        p.occurrence_period = p.payment_period - p.development_period + 1;
        payments.push_back(p);
    }
    return payments;
}

std::string triangle_csv(const Triangle& triangle) {
    std::string out = "occurrence_period";
    for (int j = 1; j <= triangle.size; ++j) {
        out.push_back(',');
        append_number(out, static_cast<long>(j));
    }
    if (triangle.tail) out += ",tail";
    out.push_back('\n');
    for (int i = 1; i <= triangle.size; ++i) {
        append_number(out, static_cast<long>(i));
        for (int j = 1; j <= triangle.size; ++j) {
            out.push_back(',');
            append_number(out, triangle.at(i, j));
        }
        if (triangle.tail) {
            out.push_back(',');
            append_number(out, (*triangle.tail)[static_cast<std::size_t>(i - 1)]);
        }
        out.push_back('\n');
    }
    return out;
}

Triangle parse_triangle_csv(const std::string& text) {
    const auto lines = non_empty_lines(text);
    if (lines.size() < 2) throw IoError("triangle csv: missing rows");
    const auto header = split(lines[0], ',');
    const bool has_tail = header.back() == "tail";
    const int size = static_cast<int>(header.size()) - 1 - (has_tail ? 1 : 0);
    if (size < 1 || static_cast<int>(lines.size()) - 1 != size) {
        throw IoError("triangle csv: row count does not match the header");
    }
    Triangle tri;
    tri.size = size;
    tri.kind = TriangleKind::incremental; // caller re-tags cumulative files
    tri.cells.assign(static_cast<std::size_t>(size) * size, 0.0);
    if (has_tail) tri.tail = std::vector<double>(static_cast<std::size_t>(size), 0.0);
    for (int i = 1; i <= size; ++i) {
        const auto fields = split(lines[static_cast<std::size_t>(i)], ',');
        if (static_cast<int>(fields.size()) != size + 1 + (has_tail ? 1 : 0)) {
            throw IoError("triangle csv: wrong column count");
        }
        for (int j = 1; j <= size; ++j) {
            tri.at(i, j) = parse_double(fields[static_cast<std::size_t>(j)], "triangle csv");
        }
        if (has_tail) {
            (*tri.tail)[static_cast<std::size_t>(i - 1)] =
                parse_double(fields.back(), "triangle csv");
        }
    }
    return tri;
}

std::string reserve_report_csv(const ReserveReport& report) {
    std::string out = "occurrence_periods,target_millions,chain_ladder_millions,ratio_pct\n";
    const auto row = [&out](const ReserveReport::Row& r) {
        out += r.label;
        out.push_back(',');
        append_fixed(out, r.target / 1e6, 1);
        out.push_back(',');
        append_fixed(out, r.estimate / 1e6, 1);
        out.push_back(',');
        if (std::isnan(r.ratio_pct)) {
            out += "n/a";
        } else {
            append_fixed(out, r.ratio_pct, 0);
        }
        out.push_back('\n');
    };
    for (const auto& r : report.rows) row(r);
    row(report.total);
    return out;
}

std::string dependency_table_csv(const DependencyTable& table) {
    std::string out = "payment_size_thousands";
    for (const int m : table.m_values) {
        out += ",m=";
        append_number(out, static_cast<long>(m));
    }
    out.push_back('\n');
    for (std::size_t b = 0; b < table.buckets.size(); ++b) {
        const auto [lo, hi] = table.buckets[b];
        if (std::isinf(hi)) {
            out += "over ";
            append_fixed(out, lo / 1000.0, 0);
        } else {
            append_fixed(out, lo / 1000.0, 0);
            out += " to ";
            append_fixed(out, hi / 1000.0, 0);
        }
        for (std::size_t mi = 0; mi < table.m_values.size(); ++mi) {
            out.push_back(',');
            if (table.cells[b][mi]) {
                append_fixed(out, *table.cells[b][mi] / 1000.0, 1);
            } else {
                out += "no claims";
            }
        }
        out.push_back('\n');
    }
    return out;
}

std::string devpattern_csv(std::span<const PaymentRecord> payments, int periods) {
    std::vector<std::vector<double>> incremental(
        static_cast<std::size_t>(periods), std::vector<double>(static_cast<std::size_t>(periods), 0.0));
    for (const auto& p : payments) {
        incremental[static_cast<std::size_t>(p.occurrence_period - 1)]
                   [static_cast<std::size_t>(p.development_period - 1)] += p.amount_inflated;
    }
    std::string out = "occurrence_period";
    for (int j = 1; j <= periods; ++j) {
        out.push_back(',');
        append_number(out, static_cast<long>(j));
    }
    out.push_back('\n');
    for (int i = 1; i <= periods; ++i) {
        double total = 0.0;
        for (const double cell : incremental[static_cast<std::size_t>(i - 1)]) total += cell;
        append_number(out, static_cast<long>(i));
        double running = 0.0;
        for (int j = 1; j <= periods; ++j) {
            running += incremental[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            out.push_back(',');
            append_number(out, total > 0.0 ? running / total : 0.0);
        }
        out.push_back('\n');
    }
    return out;
}

std::string manifest_json(const RunManifest& manifest, const ScenarioConfig& config) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(serialize_config(config));
    j["config_hash"] = manifest.config_hash;
    j["master_seed"] = manifest.master_seed;
    j["version"] = manifest.version;
    j["claim_rows"] = manifest.claim_rows;
    j["payment_rows"] = manifest.payment_rows;
    j["wall_clock_seconds"] = manifest.wall_clock_seconds;
    j["threads"] = manifest.threads;
    return j.dump(2);
}

std::pair<RunManifest, ScenarioConfig> parse_manifest_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("manifest parse error: ") + e.what());
    }
    RunManifest manifest;
    try {
        manifest.config_hash = j.at("config_hash").get<std::string>();
        manifest.master_seed = j.at("master_seed").get<std::uint64_t>();
        manifest.version = j.at("version").get<std::string>();
        manifest.claim_rows = j.at("claim_rows").get<long>();
        manifest.payment_rows = j.at("payment_rows").get<long>();
        manifest.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
        manifest.threads = j.at("threads").get<int>();
        return {manifest, parse_config(j.at("config").dump())};
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("manifest is missing fields: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace claimsim
