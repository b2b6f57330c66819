#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "claimsim/csv_io.hpp"
#include "claimsim/engine.hpp"
#include "claimsim/errors.hpp"

using namespace claimsim;

TEST_CASE("same seed reproduces byte-identical datasets, different seeds differ") {
    const ScenarioConfig config = preset("default");

    EngineOptions options;
    options.threads = 1;
    const SimulationOutput a = run_simulation(config, options);
    const SimulationOutput b = run_simulation(config, options);
    CHECK(claims_csv(a.claims) == claims_csv(b.claims));
    CHECK(payments_csv(a.payments) == payments_csv(b.payments));

    options.seed_override = config.global.master_seed + 17;
    const SimulationOutput c = run_simulation(config, options);
    CHECK(claims_csv(c.claims) != claims_csv(a.claims));
    CHECK(c.claims.size() != a.claims.size()); // counts shift with the seed almost surely
}

TEST_CASE("serial reference and parallel engine agree exactly") {
    const ScenarioConfig config = preset("default");
    const SimulationOutput serial = simulate_portfolio_serial(config);
    EngineOptions options;
    options.threads = 4;
    const SimulationOutput parallel = simulate_portfolio_parallel(config, options);

    CHECK(claims_csv(serial.claims) == claims_csv(parallel.claims));
    CHECK(payments_csv(serial.payments) == payments_csv(parallel.payments));
    CHECK(parallel.manifest.claim_rows == serial.manifest.claim_rows);
}

TEST_CASE("one default run is structurally sound") {
    const SimulationOutput out = run_simulation(preset("default"));
    const int periods = 40;

    // Poisson(90) over 40 quarters: a wide guard band around 3600.
    CHECK(out.claims.size() >= 3200);
    CHECK(out.claims.size() <= 4000);

    long total_payments = 0;
    for (std::size_t k = 0; k < out.claims.size(); ++k) {
        const ClaimRecord& c = out.claims[k];
        CHECK(c.claim_id == static_cast<long>(k + 1)); // period-major, chronological ids
        CHECK(c.occurrence_time > c.occurrence_period - 1);
        CHECK(c.occurrence_time <= c.occurrence_period);
        CHECK(c.claim_size > 0.0);
        CHECK(c.notification_delay > 0.0);
        CHECK(c.settlement_delay > 0.0);
        CHECK(c.payment_count >= 1);
        total_payments += c.payment_count;
    }
    CHECK(static_cast<long>(out.payments.size()) == total_payments);

    for (const PaymentRecord& p : out.payments) {
        CHECK(p.capped_epoch <= p.epoch);
        CHECK(p.capped_epoch <= p.occurrence_period - 1 + periods);
        CHECK(p.development_period >= 1);
        CHECK(p.development_period <= periods);
        CHECK(p.payment_period == p.occurrence_period + p.development_period - 1);
        CHECK(p.amount_constant > 0.0);
        CHECK(p.amount_inflated > 0.0);
    }
}

TEST_CASE("per-claim normalization identities hold across a run") {
    const SimulationOutput out = run_simulation(preset("default"), EngineOptions{.threads = 1});

    std::size_t cursor = 0;
    for (const ClaimRecord& claim : out.claims) {
        double proportion_sum = 0.0;
        double delay_sum = 0.0;
        double last_epoch = 0.0;
        double prev_epoch = claim.occurrence_time + claim.notification_delay;
        for (long k = 0; k < claim.payment_count; ++k, ++cursor) {
            const PaymentRecord& p = out.payments[cursor];
            REQUIRE(p.claim_id == claim.claim_id);
            REQUIRE(p.payment_no == static_cast<int>(k + 1));
            proportion_sum += p.amount_constant / claim.claim_size;
            delay_sum += p.inter_partial_delay;
            CHECK(p.epoch > prev_epoch);
            prev_epoch = p.epoch;
            last_epoch = p.epoch;
        }
        CHECK(std::fabs(proportion_sum - 1.0) < 1e-9);
        CHECK(std::fabs(delay_sum - claim.settlement_delay) < 1e-9);
        const double settlement_time =
            claim.occurrence_time + claim.notification_delay + claim.settlement_delay;
        CHECK(std::fabs(last_epoch - settlement_time) < 1e-9);
    }
    CHECK(cursor == out.payments.size());
}

TEST_CASE("sampler hooks replace a single stage without disturbing the rest") {
    const ScenarioConfig config = preset("default");
    const SimulationOutput base = run_simulation(config, EngineOptions{.threads = 1});

    SUBCASE("a constant claim-size hook passes through in reference multiples") {
        EngineOptions options;
        options.threads = 1;
        options.hooks.claim_size = [](int, RngStream&) { return 1.0; };
        const SimulationOutput out = run_simulation(config, options);
        for (const ClaimRecord& c : out.claims) {
            CHECK(c.claim_size == doctest::Approx(config.global.reference_claim_size));
        }
    }

    SUBCASE("replacing the notification module leaves other draws untouched") {
        EngineOptions options;
        options.threads = 1;
        options.hooks.notification_delay = [](int, double, RngStream&) { return 0.125; };
        const SimulationOutput out = run_simulation(config, options);
        REQUIRE(out.claims.size() == base.claims.size());
        for (std::size_t k = 0; k < out.claims.size(); ++k) {
            CHECK(out.claims[k].notification_delay == 0.125);
            // Same streams everywhere else: sizes, closure, counts unchanged.
            CHECK(out.claims[k].claim_size == base.claims[k].claim_size);
            CHECK(out.claims[k].settlement_delay == base.claims[k].settlement_delay);
            CHECK(out.claims[k].payment_count == base.claims[k].payment_count);
        }
    }

    SUBCASE("a negative-binomial frequency hook as the documented replacement example") {
        EngineOptions options;
        options.threads = 1;
        options.hooks.claim_count = [](int, RngStream& stream) {
            // NB(r = 30, p = 0.25): mean 90, variance 360 per quarter.
            const double r = 30.0;
            const double p = 0.25;
            const double z = stream.next_uniform();
            double pmf = std::pow(p, r);
            double cum = pmf;
            long k = 0;
            while (z > cum && k < 4000) {
                ++k;
                pmf *= (r + k - 1.0) / k * (1.0 - p);
                cum += pmf;
            }
            return k;
        };
        const SimulationOutput out = run_simulation(config, options);
        // mean 3600, sd 120: a 4-sigma guard band
        CHECK(out.claims.size() > 3120);
        CHECK(out.claims.size() < 4080);
    }

    SUBCASE("custom payment-delay hooks are normalized to the settlement delay") {
        EngineOptions options;
        options.threads = 1;
        options.hooks.payment_delays = [](int, double, long m, double, RngStream&) {
            return std::vector<double>(static_cast<std::size_t>(m), 1.0);
        };
        const SimulationOutput out = run_simulation(config, options);
        std::size_t cursor = 0;
        for (const ClaimRecord& claim : out.claims) {
            double delay_sum = 0.0;
            for (long k = 0; k < claim.payment_count; ++k, ++cursor) {
                delay_sum += out.payments[cursor].inter_partial_delay;
            }
            CHECK(std::fabs(delay_sum - claim.settlement_delay) < 1e-9);
        }
    }
}

TEST_CASE("the dependency table ignores the inflation configuration") {
    const ScenarioConfig base = preset("default");
    ScenarioConfig reshaped = base;
    reshaped.inflation.base_annual_rate = 0.10;
    reshaped.inflation.occurrence_enabled = false;
    reshaped.inflation.payment_enabled = false;

    const SimulationOutput a = run_simulation(base, EngineOptions{.threads = 1});
    const SimulationOutput b = run_simulation(reshaped, EngineOptions{.threads = 1});
    REQUIRE(a.payments.size() == b.payments.size());

    const auto buckets = DependencyTable::default_buckets();
    const auto m_values = DependencyTable::default_m_values();
    const DependencyTable ta = dependency_table(a.claims, a.payments, m_values, buckets);
    const DependencyTable tb = dependency_table(b.claims, b.payments, m_values, buckets);
    CHECK(ta.counts == tb.counts);
    for (std::size_t bk = 0; bk < buckets.size(); ++bk) {
        for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
            REQUIRE(ta.cells[bk][mi].has_value() == tb.cells[bk][mi].has_value());
            if (ta.cells[bk][mi]) {
                CHECK(*ta.cells[bk][mi] == *tb.cells[bk][mi]); // constant dollars, bitwise
            }
        }
    }
}

TEST_CASE("per-claim failures carry the claim id") {
    ScenarioConfig config = preset("default");
    // A geometric mean below the minimum fails on the first large claim.
    config.payment_count.geometric_mean = SizeFunction{true, 3.0, {}};
    try {
        run_simulation(config, EngineOptions{.threads = 1});
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("claim ") != std::string::npos);
        CHECK(what.find("occurrence period") != std::string::npos);
    }
}

TEST_CASE("weibull severity family runs end to end") {
    ScenarioConfig config = preset("default");
    config.global.periods = 5;
    config.claim_size.family = SeverityFamily::weibull;
    config.claim_size.mean = 160000.0;
    config.claim_size.cv = 1.5;
    const ScenarioConfig reparsed = parse_config(serialize_config(config));
    CHECK(reparsed.claim_size.family == SeverityFamily::weibull);
    CHECK(reparsed.claim_size.mean == config.claim_size.mean);

    const SimulationOutput out = run_simulation(reparsed, EngineOptions{.threads = 1});
    CHECK(!out.claims.empty());
    double sum = 0.0;
    for (const auto& c : out.claims) {
        CHECK(c.claim_size > 0.0);
        sum += c.claim_size;
    }
    // ~450 claims, severity cv 1.5: a loose 5-sigma band around the mean
    CHECK(sum / static_cast<double>(out.claims.size()) ==
          doctest::Approx(160000.0).epsilon(5.0 * 1.5 / std::sqrt(400.0)));
}

TEST_CASE("dataset csv round trips") {
    ScenarioConfig config = preset("default");
    config.global.periods = 10; // keep it small
    config.occurrence.exposure = {3000.0};
    const SimulationOutput out = run_simulation(config, EngineOptions{.threads = 1});

    SUBCASE("claims and payments reparse exactly") {
        const auto claims2 = parse_claims_csv(claims_csv(out.claims));
        REQUIRE(claims2.size() == out.claims.size());
        for (std::size_t k = 0; k < claims2.size(); ++k) {
            CHECK(claims2[k].claim_id == out.claims[k].claim_id);
            CHECK(claims2[k].occurrence_time == out.claims[k].occurrence_time);
            CHECK(claims2[k].claim_size == out.claims[k].claim_size);
        }
        const auto payments2 = parse_payments_csv(payments_csv(out.payments));
        REQUIRE(payments2.size() == out.payments.size());
        for (std::size_t k = 0; k < payments2.size(); ++k) {
            CHECK(payments2[k].occurrence_period == out.payments[k].occurrence_period);
            CHECK(payments2[k].amount_inflated == out.payments[k].amount_inflated);
            CHECK(payments2[k].capped_epoch == out.payments[k].capped_epoch);
        }
    }

    SUBCASE("the multiples flag rescales monetary columns") {
        const std::string csv =
            claims_csv(out.claims, config.global.reference_claim_size);
        const auto claims2 = parse_claims_csv(csv);
        CHECK(claims2.front().claim_size ==
              doctest::Approx(out.claims.front().claim_size / 200000.0));
    }

    SUBCASE("triangle csv round trips including the tail column") {
        const Triangle tri =
            build_triangle(out.payments, 10, OutOfBoundsMode::tail, TriangleKind::incremental);
        const Triangle back = parse_triangle_csv(triangle_csv(tri));
        CHECK(back.size == tri.size);
        CHECK(back.cells == tri.cells);
        REQUIRE(back.tail.has_value());
        CHECK(*back.tail == *tri.tail);
    }

    SUBCASE("manifest embeds the scenario") {
        const std::string text = manifest_json(out.manifest, config);
        const auto [manifest2, config2] = parse_manifest_json(text);
        CHECK(manifest2.claim_rows == out.manifest.claim_rows);
        CHECK(manifest2.config_hash == out.manifest.config_hash);
        CHECK(serialize_config(config2) == serialize_config(config));
    }

    SUBCASE("devpattern rows end fully developed") {
        const std::string csv = devpattern_csv(out.payments, 10);
        const auto lines = [&] {
            std::vector<std::string> rows;
            std::size_t start = 0;
            while (start < csv.size()) {
                const std::size_t eol = csv.find('\n', start);
                rows.push_back(csv.substr(start, eol - start));
                start = eol + 1;
            }
            return rows;
        }();
        REQUIRE(lines.size() == 11);
        for (std::size_t row = 1; row < lines.size(); ++row) {
            const std::size_t last_comma = lines[row].rfind(',');
            const double last = std::stod(lines[row].substr(last_comma + 1));
            CHECK(last == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
