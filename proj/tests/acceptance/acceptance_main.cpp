// Acceptance suite: one criterion per function, one PASS/FAIL line per
// criterion. Run with no arguments for the full battery or with a single
// 1-based criterion number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "claimsim/chain_ladder.hpp"
#include "claimsim/csv_io.hpp"
#include "claimsim/distributions.hpp"
#include "claimsim/engine.hpp"
#include "claimsim/inflation.hpp"

using namespace claimsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct ReserveComparison {
    double estimate = 0.0;
    double target = 0.0;
};

ReserveComparison chain_ladder_vs_target(const ScenarioConfig& config, std::uint64_t seed) {
    EngineOptions options;
    options.seed_override = seed;
    const SimulationOutput out = run_simulation(config, options);
    const int periods = config.global.periods;

    const auto [past, future] = split_past_future(out.payments, periods);
    const Triangle cumulative =
        build_triangle(past, periods, OutOfBoundsMode::cap, TriangleKind::cumulative);
    const ChainLadderProjection projection = project(cumulative, fit_chain_ladder(cumulative));

    ReserveComparison result;
    result.estimate = projection.total_reserve;
    for (const auto& p : future) result.target += p.amount_inflated;
    return result;
}

// ---------------------------------------------------------------------------

bool criterion_01(std::string& detail) {
    Triangle tri;
    tri.size = 3;
    tri.kind = TriangleKind::cumulative;
    tri.cells = {100, 150, 165, 120, 180, 0, 140, 0, 0};

    const auto start = Clock::now();
    const DevelopmentFactors factors = fit_chain_ladder(tri);
    const ChainLadderProjection projection = project(tri, factors);
    const double elapsed = seconds_since(start);

    const bool exact = std::fabs(factors.f[0] - 1.5) <= 1e-9 &&
                       std::fabs(factors.f[1] - 1.1) <= 1e-9 &&
                       std::fabs(projection.reserves[0] - 0.0) <= 1e-9 &&
                       std::fabs(projection.reserves[1] - 18.0) <= 1e-9 &&
                       std::fabs(projection.reserves[2] - 91.0) <= 1e-9 &&
                       std::fabs(projection.total_reserve - 109.0) <= 1e-9;
    const bool fast = elapsed < 1e-3;

    std::ostringstream msg;
    msg << "factors (" << factors.f[0] << ", " << factors.f[1] << "), reserves ("
        << projection.reserves[0] << ", " << projection.reserves[1] << ", "
        << projection.reserves[2] << "), total " << projection.total_reserve << ", "
        << elapsed * 1e6 << " us";
    detail = msg.str();
    return exact && fast;
}

bool criterion_02(std::string& detail) {
    const auto start = Clock::now();
    const std::size_t draws = 1000000;
    std::mt19937_64 gen(20240801);
    double worst_analytic = 0.0;
    double worst_mc = 0.0;

    const auto update = [](double& worst, double value, double target) {
        worst = std::max(worst, std::fabs(value / target - 1.0));
    };

    for (int pair = 0; pair < 20; ++pair) {
        const double mean = std::uniform_real_distribution<double>(0.1, 10.0)(gen);
        const double cv = std::uniform_real_distribution<double>(0.1, 2.0)(gen);
        const WeibullParams p = weibull_from_mean_cv(mean, cv);
        update(worst_analytic, weibull_mean(p), mean);
        update(worst_analytic, weibull_cv(p), cv);

        RngStream stream(9000 + static_cast<std::uint64_t>(pair), 1, 1, ModuleId::claim_size);
        double sum = 0.0;
        double sumsq = 0.0;
        for (std::size_t k = 0; k < draws; ++k) {
            const double x = weibull_quantile(p, stream.next_uniform());
            sum += x;
            sumsq += x * x;
        }
        const double mc_mean = sum / draws;
        const double mc_cv = std::sqrt(sumsq / draws - mc_mean * mc_mean) / mc_mean;
        update(worst_mc, mc_mean, mean);
        update(worst_mc, mc_cv, cv);
    }

    for (int pair = 0; pair < 20; ++pair) {
        const double mean = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
        const double frac = std::uniform_real_distribution<double>(0.15, 0.85)(gen);
        const double cv = frac * std::sqrt((1.0 - mean) / mean);
        const BetaParams p = beta_from_mean_cv(mean, cv);
        update(worst_analytic, beta_mean(p), mean);
        update(worst_analytic, beta_cv(p), cv);

        RngStream stream(9100 + static_cast<std::uint64_t>(pair), 1, 1, ModuleId::payment_sizes);
        double sum = 0.0;
        double sumsq = 0.0;
        for (std::size_t k = 0; k < draws; ++k) {
            const double x = beta_quantile(p, stream.next_uniform());
            sum += x;
            sumsq += x * x;
        }
        const double mc_mean = sum / draws;
        const double mc_cv = std::sqrt(sumsq / draws - mc_mean * mc_mean) / mc_mean;
        update(worst_mc, mc_mean, mean);
        update(worst_mc, mc_cv, cv);
    }

    const double elapsed = seconds_since(start);
    std::ostringstream msg;
    msg << "20 weibull + 20 beta fits: worst analytic error " << worst_analytic
        << " (tol 1e-8), worst monte-carlo error " << worst_mc << " (tol 0.01), " << elapsed
        << " s";
    detail = msg.str();
    return worst_analytic <= 1e-8 && worst_mc <= 0.01 && elapsed < 30.0;
}

bool criterion_03(std::string& detail) {
    const auto start = Clock::now();
    const ScenarioConfig config = preset("default");
    ExposureSchedule schedule;
    schedule.exposure.assign(static_cast<std::size_t>(config.global.periods),
                             config.occurrence.exposure.front());
    schedule.frequency.assign(static_cast<std::size_t>(config.global.periods),
                              config.occurrence.frequency.front());
    const TimeUnit unit{config.global.time_unit};

    double total = 0.0;
    long cells = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto counts = simulate_claim_counts(schedule, unit, RngFactory{seed});
        for (const long n : counts) {
            total += static_cast<double>(n);
            ++cells;
        }
    }
    const double grand_mean = total / static_cast<double>(cells);
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << "grand mean claims per quarter over 100 seeds: " << grand_mean
        << " (band [89.5, 90.5]), " << elapsed << " s";
    detail = msg.str();
    return grand_mean >= 89.5 && grand_mean <= 90.5 && elapsed < 120.0;
}

bool criterion_04(std::string& detail) {
    const auto start = Clock::now();
    const SimulationOutput out = run_simulation(preset("default"));

    std::size_t cursor = 0;
    double worst_p = 0.0;
    double worst_d = 0.0;
    double worst_epoch = 0.0;
    bool increasing = true;
    for (const ClaimRecord& claim : out.claims) {
        double proportion_sum = 0.0;
        double delay_sum = 0.0;
        double prev = claim.occurrence_time + claim.notification_delay;
        double last = prev;
        for (long k = 0; k < claim.payment_count; ++k, ++cursor) {
            const PaymentRecord& p = out.payments[cursor];
            proportion_sum += p.amount_constant / claim.claim_size;
            delay_sum += p.inter_partial_delay;
            if (!(p.epoch > prev)) increasing = false;
            prev = p.epoch;
            last = p.epoch;
        }
        worst_p = std::max(worst_p, std::fabs(proportion_sum - 1.0));
        worst_d = std::max(worst_d, std::fabs(delay_sum - claim.settlement_delay));
        const double settlement =
            claim.occurrence_time + claim.notification_delay + claim.settlement_delay;
        worst_epoch = std::max(worst_epoch, std::fabs(last - settlement));
    }
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << out.claims.size() << " claims: max |sum p - 1| = " << worst_p
        << ", max |sum d - w| = " << worst_d << ", max |last epoch - settlement| = " << worst_epoch
        << ", epochs strictly increasing: " << (increasing ? "yes" : "NO") << ", " << elapsed
        << " s";
    detail = msg.str();
    return worst_p <= 1e-9 && worst_d <= 1e-9 && worst_epoch <= 1e-9 && increasing &&
           elapsed < 10.0;
}

bool criterion_05(std::string& detail) {
    const auto curve = BaseInflationCurve::from_annual_rate(0.02, 79);
    const TimeUnit quarter{0.25};
    const double at_four = base_index(curve, 4.0, quarter);
    const double at_half = base_index(curve, 0.5, quarter);
    const double err_four = std::fabs(at_four - 1.02);
    const double err_half = std::fabs(at_half - std::pow(1.02, 0.125));

    std::ostringstream msg;
    msg << "f(4 quarters) = " << at_four << " (err " << err_four << "), f(0.5 quarters) = "
        << at_half << " (err " << err_half << "), tol 1e-12";
    detail = msg.str();
    return err_four <= 1e-12 && err_half <= 1e-12;
}

bool criterion_06(std::string& detail) {
    const auto start = Clock::now();
    const ScenarioConfig config = preset("default");
    int overshoots = 0;
    std::vector<double> overstatements;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ReserveComparison r = chain_ladder_vs_target(config, seed);
        if (r.estimate > r.target) ++overshoots;
        overstatements.push_back(r.estimate / r.target - 1.0);
    }
    const double med = median(overstatements);
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << "chain ladder exceeded the target in " << overshoots
        << "/30 seeds (need >= 27), median overstatement " << med * 100.0
        << "% (need > 15%), " << elapsed << " s";
    detail = msg.str();
    return overshoots >= 27 && med > 0.15 && elapsed < 600.0;
}

bool criterion_07(std::string& detail) {
    const auto start = Clock::now();
    const ScenarioConfig config = preset("simple");
    std::vector<double> abs_errors;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ReserveComparison r = chain_ladder_vs_target(config, seed);
        abs_errors.push_back(std::fabs(r.estimate / r.target - 1.0));
    }
    const double med = median(abs_errors);
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << "median |chain ladder / target - 1| over 30 seeds: " << med * 100.0
        << "% (need <= 15%), " << elapsed << " s";
    detail = msg.str();
    return med <= 0.15 && elapsed < 600.0;
}

bool criterion_08(std::string& detail) {
    const auto start = Clock::now();
    const SimulationOutput out = run_simulation(preset("default"));
    const auto buckets = DependencyTable::default_buckets();
    const auto m_values = DependencyTable::default_m_values();
    const DependencyTable table =
        dependency_table(out.claims, out.payments, m_values, buckets);

    // Buckets 0..3 are 0-1K, 1-2K, 4-5K, 8-10K; m_values[0] is m = 1.
    bool increasing = true;
    for (int b = 0; b < 3; ++b) {
        if (!table.cells[b][0] || !table.cells[b + 1][0] ||
            !(*table.cells[b + 1][0] > *table.cells[b][0])) {
            increasing = false;
        }
    }

    // For m >= 3 the >20K buckets (20-50, 50-100, over 100) must average
    // below the 8-10K bucket for the same m: once the settlement payment has
    // occurred, the next payment collapses.
    bool settled_effect = true;
    std::ostringstream bucket_msg;
    for (std::size_t mi = 2; mi < m_values.size(); ++mi) { // m = 3, 5, 7, 9
        double sum = 0.0;
        int populated = 0;
        for (std::size_t b = 4; b <= 6; ++b) {
            if (table.cells[b][mi]) {
                sum += *table.cells[b][mi];
                ++populated;
            }
        }
        if (populated == 0 || !table.cells[3][mi]) {
            settled_effect = false;
            continue;
        }
        const double average = sum / static_cast<double>(populated);
        if (!(average < *table.cells[3][mi])) settled_effect = false;
        bucket_msg << " m=" << m_values[mi] << ": >20K avg " << average / 1000.0
                   << "K vs 8-10K cell " << *table.cells[3][mi] / 1000.0 << "K;";
    }
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << "m=1 growth across 0-1K/1-2K/4-5K/8-10K: " << (increasing ? "yes" : "NO")
        << "; settled-claim drop:" << bucket_msg.str() << " " << elapsed << " s";
    detail = msg.str();
    return increasing && settled_effect && elapsed < 30.0;
}

bool criterion_09(std::string& detail) {
    const auto start = Clock::now();
    const ScenarioConfig config = preset("default");

    EngineOptions serial;
    serial.threads = 1;
    const SimulationOutput a = run_simulation(config, serial);

    EngineOptions eight;
    eight.threads = 8;
    const SimulationOutput b = run_simulation(config, eight);

    const bool claims_equal = claims_csv(a.claims) == claims_csv(b.claims);
    const bool payments_equal = payments_csv(a.payments) == payments_csv(b.payments);
    const double elapsed = seconds_since(start);

    std::ostringstream msg;
    msg << "1-thread vs 8-thread datasets byte-identical: claims "
        << (claims_equal ? "yes" : "NO") << ", payments " << (payments_equal ? "yes" : "NO")
        << ", " << elapsed << " s";
    detail = msg.str();
    return claims_equal && payments_equal && elapsed < 60.0;
}

bool criterion_10(std::string& detail) {
    const auto start = Clock::now();
    const SimulationOutput out = run_simulation(preset("default"));
    const int periods = 40;

    double paid = 0.0;
    for (const auto& p : out.payments) paid += p.amount_inflated;

    double worst = 0.0;
    const auto check_total = [&](const Triangle& tri) {
        worst = std::max(worst, std::fabs(tri.total() / paid - 1.0));
    };
    const Triangle capped =
        build_triangle(out.payments, periods, OutOfBoundsMode::cap, TriangleKind::incremental);
    const Triangle tailed =
        build_triangle(out.payments, periods, OutOfBoundsMode::tail, TriangleKind::incremental);
    check_total(capped);
    check_total(tailed);
    check_total(reaggregate(capped, 4));
    check_total(reaggregate(tailed, 4));

    const double elapsed = seconds_since(start);
    std::ostringstream msg;
    msg << "worst relative mass error across cap/tail x quarterly/yearly: " << worst
        << " (tol 1e-6), " << elapsed << " s";
    detail = msg.str();
    return worst <= 1e-6 && elapsed < 10.0;
}

struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
};

const Criterion criteria[] = {
    {"chain-ladder oracle", criterion_01},
    {"sampler moment matching", criterion_02},
    {"claim frequency", criterion_03},
    {"normalization invariants", criterion_04},
    {"inflation index", criterion_05},
    {"chain-ladder bias on the default scenario", criterion_06},
    {"chain-ladder compatibility of the simple scenario", criterion_07},
    {"successive-payment dependency pattern", criterion_08},
    {"thread-count determinism", criterion_09},
    {"triangle mass conservation", criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1..10]\n", argv[0]);
            return 2;
        }
    }

    int failures = 0;
    for (int n = 1; n <= 10; ++n) {
        if (only != 0 && n != only) continue;
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[n - 1].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!pass) ++failures;
        std::printf("[%s] %2d. %s — %s\n", pass ? "PASS" : "FAIL", n, criteria[n - 1].name,
                    detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
