#include "claimsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "claimsim/errors.hpp"

namespace claimsim {

using nlohmann::json;

namespace {

// --------------------------------------------------------------------------
// JSON reading with accumulated, path-prefixed errors
// --------------------------------------------------------------------------

struct Reader {
    std::vector<std::string>& errors;

    void fail(const std::string& path, const std::string& what) const {
        errors.push_back(path + ": " + what);
    }

    const json* object(const json& parent, const char* key, const std::string& path,
                       bool required = true) const {
        if (!parent.contains(key)) {
            if (required) fail(path + "." + key, "missing section");
            return nullptr;
        }
        const json& j = parent.at(key);
        if (!j.is_object()) {
            fail(path + "." + key, "must be an object");
            return nullptr;
        }
        return &j;
    }

    std::optional<double> number(const json& obj, const char* key, const std::string& path,
                                 bool required = true) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "." + key, "missing value");
            return std::nullopt;
        }
        const json& j = obj.at(key);
        if (!j.is_number()) {
            fail(path + "." + key, "must be a number");
            return std::nullopt;
        }
        return j.get<double>();
    }

    std::optional<long> integer(const json& obj, const char* key, const std::string& path,
                                bool required = true) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "." + key, "missing value");
            return std::nullopt;
        }
        const json& j = obj.at(key);
        if (!j.is_number_integer()) {
            fail(path + "." + key, "must be an integer");
            return std::nullopt;
        }
        return j.get<long>();
    }

    std::optional<bool> boolean(const json& obj, const char* key, const std::string& path,
                                bool required = true) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "." + key, "missing value");
            return std::nullopt;
        }
        const json& j = obj.at(key);
        if (!j.is_boolean()) {
            fail(path + "." + key, "must be a boolean");
            return std::nullopt;
        }
        return j.get<bool>();
    }

    std::optional<std::string> string(const json& obj, const char* key, const std::string& path,
                                      bool required = true) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "." + key, "missing value");
            return std::nullopt;
        }
        const json& j = obj.at(key);
        if (!j.is_string()) {
            fail(path + "." + key, "must be a string");
            return std::nullopt;
        }
        return j.get<std::string>();
    }

    void known_keys(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) const {
        for (const auto& [key, value] : obj.items()) {
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                    return key == a;
                }) == allowed.end()) {
                fail(path + "." + key, "unknown field");
            }
        }
    }
};

std::vector<double> read_scalar_or_list(const Reader& r, const json& obj, const char* key,
                                        const std::string& path) {
    if (!obj.contains(key)) {
        r.fail(path + "." + key, "missing value");
        return {};
    }
    const json& j = obj.at(key);
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> values;
        for (const auto& item : j) {
            if (!item.is_number()) {
                r.fail(path + "." + key, "list entries must be numbers");
                return {};
            }
            values.push_back(item.get<double>());
        }
        return values;
    }
    r.fail(path + "." + key, "must be a number or a list of numbers");
    return {};
}

SizeFunction read_size_function(const Reader& r, const json& parent, const char* key,
                                const std::string& parent_path) {
    SizeFunction fn;
    const json* obj = r.object(parent, key, parent_path);
    if (!obj) return fn;
    const std::string path = parent_path + "." + key;
    if (obj->contains("value")) {
        r.known_keys(*obj, {"value"}, path);
        if (auto v = r.number(*obj, "value", path)) {
            fn.constant = true;
            fn.value = *v;
        }
        return fn;
    }
    r.known_keys(*obj, {"intercept", "slope", "pivot", "floor", "cap"}, path);
    fn.constant = false;
    if (auto v = r.number(*obj, "intercept", path)) fn.form.intercept = *v;
    if (auto v = r.number(*obj, "slope", path)) fn.form.slope = *v;
    if (auto v = r.number(*obj, "pivot", path)) fn.form.pivot = *v;
    fn.form.floor = r.number(*obj, "floor", path, false);
    fn.form.cap = r.number(*obj, "cap", path, false);
    return fn;
}

std::vector<std::pair<long, double>> read_pmf(const Reader& r, const json& parent,
                                              const char* key, const std::string& parent_path) {
    std::vector<std::pair<long, double>> pmf;
    const json* obj = r.object(parent, key, parent_path);
    if (!obj) return pmf;
    const std::string path = parent_path + "." + key;
    for (const auto& [k, v] : obj->items()) {
        long outcome = 0;
        try {
            std::size_t pos = 0;
            outcome = std::stol(k, &pos);
            if (pos != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            r.fail(path, "outcome keys must be integers, got \"" + k + "\"");
            continue;
        }
        if (!v.is_number()) {
            r.fail(path + "." + k, "probability must be a number");
            continue;
        }
        pmf.emplace_back(outcome, v.get<double>());
    }
    std::sort(pmf.begin(), pmf.end());
    return pmf;
}

// --------------------------------------------------------------------------
// Serialization
// --------------------------------------------------------------------------

json size_function_json(const SizeFunction& fn) {
    if (fn.constant) return json{{"value", fn.value}};
    json j{{"intercept", fn.form.intercept}, {"slope", fn.form.slope}, {"pivot", fn.form.pivot}};
    if (fn.form.floor) j["floor"] = *fn.form.floor;
    if (fn.form.cap) j["cap"] = *fn.form.cap;
    return j;
}

json scalar_or_list_json(const std::vector<double>& values) {
    if (values.size() == 1) return json(values.front());
    return json(values);
}

json pmf_json(const std::vector<std::pair<long, double>>& pmf) {
    json j = json::object();
    for (const auto& [outcome, prob] : pmf) j[std::to_string(outcome)] = prob;
    return j;
}

} // namespace

ScenarioConfig default_preset() { return ScenarioConfig{}; }

ScenarioConfig simple_preset() {
    ScenarioConfig config;
    config.closure.period_factor = PeriodFactor{1.0, 0.0, 0.0, {}};
    config.inflation.occurrence_enabled = false;
    config.inflation.payment_enabled = false;
    return config;
}

ScenarioConfig preset(const std::string& name) {
    if (name == "default") return default_preset();
    if (name == "simple") return simple_preset();
    throw ConfigError("unknown preset \"" + name + "\" (expected \"default\" or \"simple\")");
}

int required_base_quarters(const ScenarioConfig& config) {
    const TimeUnit unit{config.global.time_unit};
    const double horizon_units = static_cast<double>(2 * config.global.periods - 1);
    return static_cast<int>(std::ceil(units_to_quarters(horizon_units, unit)));
}

ScenarioConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    std::vector<std::string> errors;
    Reader r{errors};
    ScenarioConfig config;

    if (!root.is_object()) {
        throw ConfigError("config parse error: top level must be an object");
    }
    r.known_keys(root,
                 {"global", "occurrence", "claim_size", "notification", "closure",
                  "payment_count", "payment_sizes", "payment_timing", "inflation", "output"},
                 "");

    if (const json* g = r.object(root, "global", "")) {
        r.known_keys(*g, {"time_unit", "reference_claim_size", "periods", "master_seed"},
                     ".global");
        if (auto v = r.number(*g, "time_unit", ".global")) config.global.time_unit = *v;
        if (auto v = r.number(*g, "reference_claim_size", ".global")) {
            config.global.reference_claim_size = *v;
        }
        if (auto v = r.integer(*g, "periods", ".global")) {
            config.global.periods = static_cast<int>(*v);
        }
        if (auto v = r.integer(*g, "master_seed", ".global")) {
            config.global.master_seed = static_cast<std::uint64_t>(*v);
        }
    }

    if (const json* o = r.object(root, "occurrence", "")) {
        r.known_keys(*o, {"exposure", "frequency"}, ".occurrence");
        config.occurrence.exposure = read_scalar_or_list(r, *o, "exposure", ".occurrence");
        config.occurrence.frequency = read_scalar_or_list(r, *o, "frequency", ".occurrence");
    }

    if (const json* c = r.object(root, "claim_size", "")) {
        const auto family = r.string(*c, "family", ".claim_size");
        if (family && *family == "power_normal") {
            r.known_keys(*c, {"family", "mu", "sigma", "power"}, ".claim_size");
            config.claim_size.family = SeverityFamily::power_normal;
            if (auto v = r.number(*c, "mu", ".claim_size")) config.claim_size.mu = *v;
            if (auto v = r.number(*c, "sigma", ".claim_size")) config.claim_size.sigma = *v;
            if (auto v = r.number(*c, "power", ".claim_size")) config.claim_size.power = *v;
        } else if (family && *family == "weibull") {
            r.known_keys(*c, {"family", "mean", "cv"}, ".claim_size");
            config.claim_size.family = SeverityFamily::weibull;
            if (auto v = r.number(*c, "mean", ".claim_size")) config.claim_size.mean = *v;
            if (auto v = r.number(*c, "cv", ".claim_size")) config.claim_size.cv = *v;
        } else if (family) {
            r.fail(".claim_size.family",
                   "unknown family \"" + *family + "\" (expected power_normal or weibull)");
        }
    }

    if (const json* n = r.object(root, "notification", "")) {
        r.known_keys(*n, {"cv", "mean"}, ".notification");
        if (auto v = r.number(*n, "cv", ".notification")) config.notification.cv = *v;
        config.notification.mean = read_size_function(r, *n, "mean", ".notification");
    }

    if (const json* c = r.object(root, "closure", "")) {
        r.known_keys(*c, {"cv", "mean", "period_factor", "legislative_override"}, ".closure");
        if (auto v = r.number(*c, "cv", ".closure")) config.closure.cv = *v;
        config.closure.mean = read_size_function(r, *c, "mean", ".closure");
        if (const json* pf = r.object(*c, "period_factor", ".closure")) {
            r.known_keys(*pf, {"intercept", "slope", "floor"}, ".closure.period_factor");
            if (auto v = r.number(*pf, "intercept", ".closure.period_factor")) {
                config.closure.period_factor.intercept = *v;
            }
            if (auto v = r.number(*pf, "slope", ".closure.period_factor")) {
                config.closure.period_factor.slope = *v;
            }
            if (auto v = r.number(*pf, "floor", ".closure.period_factor")) {
                config.closure.period_factor.floor = *v;
            }
        }
        if (const json* ov = r.object(*c, "legislative_override", ".closure")) {
            const std::string path = ".closure.legislative_override";
            r.known_keys(*ov, {"enabled", "max_claim_size", "from_period", "base", "slope", "cap"},
                         path);
            auto& o = config.closure.period_factor.override_small;
            if (auto v = r.boolean(*ov, "enabled", path)) o.enabled = *v;
            if (auto v = r.number(*ov, "max_claim_size", path)) o.max_size = *v;
            if (auto v = r.integer(*ov, "from_period", path)) o.from_period = static_cast<int>(*v);
            if (auto v = r.number(*ov, "base", path)) o.base = *v;
            if (auto v = r.number(*ov, "slope", path)) o.slope = *v;
            if (auto v = r.number(*ov, "cap", path)) o.cap = *v;
        }
    }

    if (const json* p = r.object(root, "payment_count", "")) {
        r.known_keys(*p, {"small_max", "medium_max", "small_pmf", "medium_pmf", "geometric"},
                     ".payment_count");
        if (auto v = r.number(*p, "small_max", ".payment_count")) {
            config.payment_count.small_max = *v;
        }
        if (auto v = r.number(*p, "medium_max", ".payment_count")) {
            config.payment_count.medium_max = *v;
        }
        config.payment_count.small_pmf = read_pmf(r, *p, "small_pmf", ".payment_count");
        config.payment_count.medium_pmf = read_pmf(r, *p, "medium_pmf", ".payment_count");
        if (const json* g = r.object(*p, "geometric", ".payment_count")) {
            r.known_keys(*g, {"minimum", "mean"}, ".payment_count.geometric");
            if (auto v = r.integer(*g, "minimum", ".payment_count.geometric")) {
                config.payment_count.minimum = *v;
            }
            config.payment_count.geometric_mean =
                read_size_function(r, *g, "mean", ".payment_count.geometric");
        }
    }

    if (const json* p = r.object(root, "payment_sizes", "")) {
        r.known_keys(*p, {"settlement_fraction", "settlement_split", "minor"}, ".payment_sizes");
        if (const json* sf = r.object(*p, "settlement_fraction", ".payment_sizes")) {
            const std::string path = ".payment_sizes.settlement_fraction";
            r.known_keys(*sf, {"cv", "mean"}, path);
            if (auto v = r.number(*sf, "cv", path)) {
                config.payment_sizes.settlement_fraction_cv = *v;
            }
            config.payment_sizes.settlement_fraction_mean =
                read_size_function(r, *sf, "mean", path);
        }
        if (const json* sp = r.object(*p, "settlement_split", ".payment_sizes")) {
            const std::string path = ".payment_sizes.settlement_split";
            r.known_keys(*sp, {"mean", "cv"}, path);
            if (auto v = r.number(*sp, "mean", path)) config.payment_sizes.split_mean = *v;
            if (auto v = r.number(*sp, "cv", path)) config.payment_sizes.split_cv = *v;
        }
        if (const json* mn = r.object(*p, "minor", ".payment_sizes")) {
            r.known_keys(*mn, {"cv"}, ".payment_sizes.minor");
            if (auto v = r.number(*mn, "cv", ".payment_sizes.minor")) {
                config.payment_sizes.minor_cv = *v;
            }
        }
    }

    if (const json* p = r.object(root, "payment_timing", "")) {
        r.known_keys(*p, {"final_mean_years", "final_cv", "other_cv"}, ".payment_timing");
        if (auto v = r.number(*p, "final_mean_years", ".payment_timing")) {
            config.payment_timing.final_mean_years = *v;
        }
        if (auto v = r.number(*p, "final_cv", ".payment_timing")) {
            config.payment_timing.final_cv = *v;
        }
        if (auto v = r.number(*p, "other_cv", ".payment_timing")) {
            config.payment_timing.other_cv = *v;
        }
    }

    if (const json* f = r.object(root, "inflation", "")) {
        r.known_keys(*f, {"base", "occurrence_superimposed", "payment_superimposed"},
                     ".inflation");
        if (const json* b = r.object(*f, "base", ".inflation")) {
            r.known_keys(*b, {"annual_rate", "quarterly_rates"}, ".inflation.base");
            config.inflation.base_annual_rate.reset();
            config.inflation.base_quarterly_rates.reset();
            const bool has_annual = b->contains("annual_rate");
            const bool has_quarterly = b->contains("quarterly_rates");
            if (has_annual == has_quarterly) {
                r.fail(".inflation.base",
                       "provide exactly one of annual_rate or quarterly_rates");
            } else if (has_annual) {
                config.inflation.base_annual_rate = r.number(*b, "annual_rate", ".inflation.base");
            } else {
                std::vector<double> rates;
                const json& arr = b->at("quarterly_rates");
                if (!arr.is_array()) {
                    r.fail(".inflation.base.quarterly_rates", "must be a list of numbers");
                } else {
                    for (const auto& item : arr) {
                        if (!item.is_number()) {
                            r.fail(".inflation.base.quarterly_rates",
                                   "must be a list of numbers");
                            rates.clear();
                            break;
                        }
                        rates.push_back(item.get<double>());
                    }
                    config.inflation.base_quarterly_rates = std::move(rates);
                }
            }
        }
        if (const json* o = r.object(*f, "occurrence_superimposed", ".inflation")) {
            const std::string path = ".inflation.occurrence_superimposed";
            r.known_keys(*o, {"enabled", "change_period", "max_reduction", "zero_above"}, path);
            if (auto v = r.boolean(*o, "enabled", path)) config.inflation.occurrence_enabled = *v;
            if (auto v = r.integer(*o, "change_period", path)) {
                config.inflation.occurrence.change_period = static_cast<int>(*v);
            }
            if (auto v = r.number(*o, "max_reduction", path)) {
                config.inflation.occurrence.max_reduction = *v;
            }
            if (auto v = r.number(*o, "zero_above", path)) {
                config.inflation.occurrence.zero_above = *v;
            }
        }
        if (const json* p = r.object(*f, "payment_superimposed", ".inflation")) {
            const std::string path = ".inflation.payment_superimposed";
            r.known_keys(*p, {"enabled", "annual_rate_at_zero", "zero_above"}, path);
            if (auto v = r.boolean(*p, "enabled", path)) config.inflation.payment_enabled = *v;
            if (auto v = r.number(*p, "annual_rate_at_zero", path)) {
                config.inflation.payment.annual_rate_at_zero = *v;
            }
            if (auto v = r.number(*p, "zero_above", path)) {
                config.inflation.payment.zero_above = *v;
            }
        }
    }

    if (const json* o = r.object(root, "output", "")) {
        r.known_keys(*o, {"out_of_bounds", "aggregation_factor", "amounts"}, ".output");
        if (auto v = r.string(*o, "out_of_bounds", ".output", false)) {
            if (*v == "cap") {
                config.output.out_of_bounds = OutOfBoundsMode::cap;
            } else if (*v == "tail") {
                config.output.out_of_bounds = OutOfBoundsMode::tail;
            } else {
                r.fail(".output.out_of_bounds", "must be \"cap\" or \"tail\"");
            }
        }
        if (auto v = r.integer(*o, "aggregation_factor", ".output", false)) {
            config.output.aggregation_factor = static_cast<int>(*v);
        }
        if (auto v = r.string(*o, "amounts", ".output", false)) {
            if (*v == "currency") {
                config.output.amounts = AmountUnit::currency;
            } else if (*v == "multiples") {
                config.output.amounts = AmountUnit::multiples;
            } else {
                r.fail(".output.amounts", "must be \"currency\" or \"multiples\"");
            }
        }
    }

    if (errors.empty()) {
        const std::vector<std::string> structural = validation_errors(config);
        errors.insert(errors.end(), structural.begin(), structural.end());
    }
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid configuration (" << errors.size() << " problem"
            << (errors.size() == 1 ? "" : "s") << "):";
        for (const auto& e : errors) msg << "\n  " << e;
        throw ConfigError(msg.str());
    }
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    json root;
    root["global"] = {{"time_unit", c.global.time_unit},
                      {"reference_claim_size", c.global.reference_claim_size},
                      {"periods", c.global.periods},
                      {"master_seed", c.global.master_seed}};
    root["occurrence"] = {{"exposure", scalar_or_list_json(c.occurrence.exposure)},
                          {"frequency", scalar_or_list_json(c.occurrence.frequency)}};
    if (c.claim_size.family == SeverityFamily::power_normal) {
        root["claim_size"] = {{"family", "power_normal"},
                              {"mu", c.claim_size.mu},
                              {"sigma", c.claim_size.sigma},
                              {"power", c.claim_size.power}};
    } else {
        root["claim_size"] = {{"family", "weibull"},
                              {"mean", c.claim_size.mean},
                              {"cv", c.claim_size.cv}};
    }
    root["notification"] = {{"cv", c.notification.cv},
                            {"mean", size_function_json(c.notification.mean)}};
    const auto& ov = c.closure.period_factor.override_small;
    root["closure"] = {{"cv", c.closure.cv},
                       {"mean", size_function_json(c.closure.mean)},
                       {"period_factor",
                        {{"intercept", c.closure.period_factor.intercept},
                         {"slope", c.closure.period_factor.slope},
                         {"floor", c.closure.period_factor.floor}}},
                       {"legislative_override",
                        {{"enabled", ov.enabled},
                         {"max_claim_size", ov.max_size},
                         {"from_period", ov.from_period},
                         {"base", ov.base},
                         {"slope", ov.slope},
                         {"cap", ov.cap}}}};
    root["payment_count"] = {{"small_max", c.payment_count.small_max},
                             {"medium_max", c.payment_count.medium_max},
                             {"small_pmf", pmf_json(c.payment_count.small_pmf)},
                             {"medium_pmf", pmf_json(c.payment_count.medium_pmf)},
                             {"geometric",
                              {{"minimum", c.payment_count.minimum},
                               {"mean", size_function_json(c.payment_count.geometric_mean)}}}};
    root["payment_sizes"] = {
        {"settlement_fraction",
         {{"cv", c.payment_sizes.settlement_fraction_cv},
          {"mean", size_function_json(c.payment_sizes.settlement_fraction_mean)}}},
        {"settlement_split",
         {{"mean", c.payment_sizes.split_mean}, {"cv", c.payment_sizes.split_cv}}},
        {"minor", {{"cv", c.payment_sizes.minor_cv}}}};
    root["payment_timing"] = {{"final_mean_years", c.payment_timing.final_mean_years},
                              {"final_cv", c.payment_timing.final_cv},
                              {"other_cv", c.payment_timing.other_cv}};
    json base;
    if (c.inflation.base_annual_rate) {
        base = {{"annual_rate", *c.inflation.base_annual_rate}};
    } else {
        base = {{"quarterly_rates", *c.inflation.base_quarterly_rates}};
    }
    root["inflation"] = {
        {"base", base},
        {"occurrence_superimposed",
         {{"enabled", c.inflation.occurrence_enabled},
          {"change_period", c.inflation.occurrence.change_period},
          {"max_reduction", c.inflation.occurrence.max_reduction},
          {"zero_above", c.inflation.occurrence.zero_above}}},
        {"payment_superimposed",
         {{"enabled", c.inflation.payment_enabled},
          {"annual_rate_at_zero", c.inflation.payment.annual_rate_at_zero},
          {"zero_above", c.inflation.payment.zero_above}}}};
    root["output"] = {
        {"out_of_bounds", c.output.out_of_bounds == OutOfBoundsMode::cap ? "cap" : "tail"},
        {"aggregation_factor", c.output.aggregation_factor},
        {"amounts", c.output.amounts == AmountUnit::currency ? "currency" : "multiples"}};
    return root.dump(2);
}

namespace {

void check_pmf(const std::vector<std::pair<long, double>>& pmf, const std::string& path,
               std::vector<std::string>& errors) {
    if (pmf.empty()) {
        errors.push_back(path + ": must not be empty");
        return;
    }
    double sum = 0.0;
    for (const auto& [outcome, prob] : pmf) {
        if (outcome < 1) errors.push_back(path + ": outcomes must be >= 1");
        if (!(prob >= 0.0)) errors.push_back(path + ": probabilities must be >= 0");
        sum += prob;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        errors.push_back(path + ": probabilities must sum to 1");
    }
}

void check_positive_size_function(const SizeFunction& fn, const std::string& path,
                                  std::vector<std::string>& errors) {
    if (fn.constant) {
        if (!(fn.value > 0.0)) errors.push_back(path + ".value: must be > 0");
        return;
    }
    if (!(fn.form.pivot > 0.0)) errors.push_back(path + ".pivot: must be > 0");
    if (fn.form.floor && fn.form.cap && *fn.form.floor > *fn.form.cap) {
        errors.push_back(path + ": floor exceeds cap");
    }
}

} // namespace

std::vector<std::string> validation_errors(const ScenarioConfig& c) {
    std::vector<std::string> errors;

    if (!(c.global.time_unit > 0.0)) errors.push_back(".global.time_unit: must be > 0");
    if (!(c.global.reference_claim_size > 0.0)) {
        errors.push_back(".global.reference_claim_size: must be > 0");
    }
    if (c.global.periods < 1) errors.push_back(".global.periods: must be >= 1");

    const auto check_schedule = [&](const std::vector<double>& values, const char* name) {
        const std::string path = std::string(".occurrence.") + name;
        if (values.empty()) {
            errors.push_back(path + ": must be a number or a list of numbers");
            return;
        }
        if (values.size() != 1 && static_cast<int>(values.size()) != c.global.periods) {
            errors.push_back(path + ": list must have exactly " +
                             std::to_string(c.global.periods) + " entries (one per period)");
        }
        for (const double v : values) {
            if (!(v >= 0.0)) {
                errors.push_back(path + ": entries must be >= 0");
                break;
            }
        }
    };
    check_schedule(c.occurrence.exposure, "exposure");
    check_schedule(c.occurrence.frequency, "frequency");

    if (c.claim_size.family == SeverityFamily::power_normal) {
        if (!(c.claim_size.sigma > 0.0)) errors.push_back(".claim_size.sigma: must be > 0");
        if (!(c.claim_size.power > 0.0)) errors.push_back(".claim_size.power: must be > 0");
    } else {
        if (!(c.claim_size.mean > 0.0)) errors.push_back(".claim_size.mean: must be > 0");
        if (!(c.claim_size.cv > 0.0)) errors.push_back(".claim_size.cv: must be > 0");
    }

    if (!(c.notification.cv > 0.0)) errors.push_back(".notification.cv: must be > 0");
    check_positive_size_function(c.notification.mean, ".notification.mean", errors);
    if (!(c.closure.cv > 0.0)) errors.push_back(".closure.cv: must be > 0");
    check_positive_size_function(c.closure.mean, ".closure.mean", errors);

    if (!(c.payment_count.small_max > 0.0)) {
        errors.push_back(".payment_count.small_max: must be > 0");
    }
    if (!(c.payment_count.medium_max >= c.payment_count.small_max)) {
        errors.push_back(".payment_count.medium_max: must be >= small_max");
    }
    check_pmf(c.payment_count.small_pmf, ".payment_count.small_pmf", errors);
    check_pmf(c.payment_count.medium_pmf, ".payment_count.medium_pmf", errors);
    if (c.payment_count.minimum < 1) {
        errors.push_back(".payment_count.geometric.minimum: must be >= 1");
    }
    check_positive_size_function(c.payment_count.geometric_mean, ".payment_count.geometric.mean",
                                 errors);

    check_positive_size_function(c.payment_sizes.settlement_fraction_mean,
                                 ".payment_sizes.settlement_fraction.mean", errors);
    if (!c.payment_sizes.settlement_fraction_mean.constant) {
        const auto& cap = c.payment_sizes.settlement_fraction_mean.form.cap;
        if (!cap || !(*cap < 1.0)) {
            errors.push_back(
                ".payment_sizes.settlement_fraction.mean.cap: required and must be < 1");
        }
    }
    if (!(c.payment_sizes.settlement_fraction_cv > 0.0)) {
        errors.push_back(".payment_sizes.settlement_fraction.cv: must be > 0");
    }
    if (!(c.payment_sizes.split_mean > 0.0 && c.payment_sizes.split_mean < 1.0)) {
        errors.push_back(".payment_sizes.settlement_split.mean: must lie in (0,1)");
    } else if (!(c.payment_sizes.split_cv > 0.0) ||
               c.payment_sizes.split_cv * c.payment_sizes.split_cv >=
                   (1.0 - c.payment_sizes.split_mean) / c.payment_sizes.split_mean) {
        errors.push_back(
            ".payment_sizes.settlement_split: cv infeasible for the mean (needs cv^2 < "
            "(1-mean)/mean)");
    }
    if (!(c.payment_sizes.minor_cv > 0.0)) {
        errors.push_back(".payment_sizes.minor.cv: must be > 0");
    }

    if (!(c.payment_timing.final_mean_years > 0.0)) {
        errors.push_back(".payment_timing.final_mean_years: must be > 0");
    }
    if (!(c.payment_timing.final_cv > 0.0)) {
        errors.push_back(".payment_timing.final_cv: must be > 0");
    }
    if (!(c.payment_timing.other_cv > 0.0)) {
        errors.push_back(".payment_timing.other_cv: must be > 0");
    }

    if (c.inflation.base_annual_rate.has_value() ==
        c.inflation.base_quarterly_rates.has_value()) {
        errors.push_back(".inflation.base: provide exactly one of annual_rate or quarterly_rates");
    } else if (c.inflation.base_annual_rate) {
        if (!(*c.inflation.base_annual_rate > -1.0)) {
            errors.push_back(".inflation.base.annual_rate: must exceed -1");
        }
    } else {
        const int needed = required_base_quarters(c);
        if (static_cast<int>(c.inflation.base_quarterly_rates->size()) < needed) {
            errors.push_back(".inflation.base.quarterly_rates: needs at least " +
                             std::to_string(needed) + " quarters to cover " +
                             std::to_string(2 * c.global.periods - 1) + " payment periods, got " +
                             std::to_string(c.inflation.base_quarterly_rates->size()));
        }
        for (const double rate : *c.inflation.base_quarterly_rates) {
            if (!(rate > -1.0)) {
                errors.push_back(".inflation.base.quarterly_rates: rates must exceed -1");
                break;
            }
        }
    }
    if (!(c.inflation.occurrence.max_reduction >= 0.0 &&
          c.inflation.occurrence.max_reduction < 1.0)) {
        errors.push_back(".inflation.occurrence_superimposed.max_reduction: must lie in [0,1)");
    }
    if (!(c.inflation.occurrence.zero_above > 0.0)) {
        errors.push_back(".inflation.occurrence_superimposed.zero_above: must be > 0");
    }
    if (!(c.inflation.payment.annual_rate_at_zero > -1.0)) {
        errors.push_back(".inflation.payment_superimposed.annual_rate_at_zero: must exceed -1");
    }
    if (!(c.inflation.payment.zero_above > 0.0)) {
        errors.push_back(".inflation.payment_superimposed.zero_above: must be > 0");
    }

    if (c.output.aggregation_factor < 1 ||
        c.global.periods % std::max(1, c.output.aggregation_factor) != 0) {
        errors.push_back(".output.aggregation_factor: must be >= 1 and divide global.periods");
    }

    return errors;
}

void validate(const ScenarioConfig& config) {
    const std::vector<std::string> errors = validation_errors(config);
    if (errors.empty()) return;
    std::ostringstream msg;
    msg << "invalid configuration (" << errors.size() << " problem"
        << (errors.size() == 1 ? "" : "s") << "):";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
}

std::uint64_t config_hash(const ScenarioConfig& config) {
    const std::string canonical = serialize_config(config);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char byte : canonical) {
        hash ^= byte;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

bool chain_ladder_compatible(const ScenarioConfig& c) {
    const auto& pf = c.closure.period_factor;
    if (pf.slope != 0.0 || pf.override_small.enabled) return false;
    if (c.inflation.occurrence_enabled && c.inflation.occurrence.max_reduction != 0.0) {
        return false;
    }
    if (c.inflation.payment_enabled && c.inflation.payment.annual_rate_at_zero != 0.0) {
        return false;
    }
    if (c.inflation.base_quarterly_rates) {
        const auto& rates = *c.inflation.base_quarterly_rates;
        for (const double rate : rates) {
            if (rate != rates.front()) return false;
        }
    }
    return true;
}

} // namespace claimsim
