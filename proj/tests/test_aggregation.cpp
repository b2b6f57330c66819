#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "claimsim/aggregation.hpp"
#include "claimsim/time_model.hpp"

using namespace claimsim;

namespace {

PaymentRecord make_payment(long claim_id, int i, double epoch, double amount, int periods) {
    PaymentRecord p;
    p.claim_id = claim_id;
    p.occurrence_period = i;
    p.payment_no = 1;
    p.epoch = epoch;
    p.capped_epoch = cap_out_of_bounds(epoch, i, periods);
    p.payment_period = payment_period_of(p.capped_epoch);
    p.development_period = development_period_of(p.capped_epoch, i);
    p.amount_constant = amount;
    p.amount_inflated = amount;
    return p;
}

std::vector<PaymentRecord> random_payments(int periods, int count, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> period(1, periods);
    std::uniform_real_distribution<double> amount(10.0, 5000.0);
    std::uniform_real_distribution<double> lag(0.0, 1.8 * periods);
    std::vector<PaymentRecord> payments;
    payments.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const int i = period(gen);
        const double epoch = (i - 1) + 0.01 + lag(gen);
        payments.push_back(make_payment(k + 1, i, epoch, amount(gen), periods));
    }
    return payments;
}

} // namespace

TEST_CASE("out-of-bounds capping") {
    CHECK(cap_out_of_bounds(45.2, 3, 40) == doctest::Approx(42.0));
    CHECK(cap_out_of_bounds(10.0, 3, 40) == doctest::Approx(10.0)); // in-bounds identity
    CHECK(cap_out_of_bounds(42.0, 3, 40) == doctest::Approx(42.0)); // boundary stays
    CHECK_THROWS_AS(cap_out_of_bounds(1.0, 3, 40), std::domain_error);
}

TEST_CASE("triangle construction") {
    SUBCASE("single payment lands in its cell") {
        const std::vector<PaymentRecord> payments{make_payment(1, 1, 0.5, 100.0, 5)};
        const Triangle tri =
            build_triangle(payments, 5, OutOfBoundsMode::cap, TriangleKind::incremental);
        CHECK(tri.at(1, 1) == 100.0);
        CHECK(tri.total() == doctest::Approx(100.0));
    }

    SUBCASE("cumulative rows are running sums") {
        std::vector<PaymentRecord> payments;
        payments.push_back(make_payment(1, 1, 0.5, 10.0, 3));
        payments.push_back(make_payment(1, 1, 1.5, 5.0, 3));
        const Triangle tri =
            build_triangle(payments, 3, OutOfBoundsMode::cap, TriangleKind::cumulative);
        CHECK(tri.at(1, 1) == doctest::Approx(10.0));
        CHECK(tri.at(1, 2) == doctest::Approx(15.0));
        CHECK(tri.at(1, 3) == doctest::Approx(15.0));
    }

    SUBCASE("out-of-bounds mass folds into the final column after capping") {
        const std::vector<PaymentRecord> payments{make_payment(1, 2, 99.0, 7.0, 5)};
        const Triangle tri =
            build_triangle(payments, 5, OutOfBoundsMode::cap, TriangleKind::incremental);
        CHECK(tri.at(2, 5) == doctest::Approx(7.0));
    }

    SUBCASE("cap and tail modes differ only in where the overflow sits") {
        const auto payments = random_payments(8, 500, 41);
        const Triangle capped =
            build_triangle(payments, 8, OutOfBoundsMode::cap, TriangleKind::incremental);
        const Triangle tailed =
            build_triangle(payments, 8, OutOfBoundsMode::tail, TriangleKind::incremental);
        REQUIRE(tailed.tail.has_value());
        CHECK(capped.total() == doctest::Approx(tailed.total()));
        for (int i = 1; i <= 8; ++i) {
            for (int j = 1; j < 8; ++j) {
                CHECK(capped.at(i, j) == tailed.at(i, j));
            }
            CHECK(capped.at(i, 8) ==
                  doctest::Approx(tailed.at(i, 8) + (*tailed.tail)[static_cast<std::size_t>(i - 1)]));
        }
    }

    SUBCASE("mass conservation against the raw payment sum") {
        const auto payments = random_payments(12, 3000, 43);
        double raw = 0.0;
        for (const auto& p : payments) raw += p.amount_inflated;
        const Triangle tri =
            build_triangle(payments, 12, OutOfBoundsMode::cap, TriangleKind::incremental);
        CHECK(tri.total() == doctest::Approx(raw).epsilon(1e-9));
    }

#ifdef _OPENMP
    SUBCASE("cell values do not depend on the thread count") {
        const auto payments = random_payments(16, 4000, 44);
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const Triangle serial =
            build_triangle(payments, 16, OutOfBoundsMode::cap, TriangleKind::incremental);
        omp_set_num_threads(4);
        const Triangle parallel =
            build_triangle(payments, 16, OutOfBoundsMode::cap, TriangleKind::incremental);
        omp_set_num_threads(saved);
        CHECK(serial.cells == parallel.cells); // bitwise equality
    }
#endif
}

TEST_CASE("reaggregation") {
    SUBCASE("factor one is the identity") {
        const auto payments = random_payments(8, 200, 45);
        const Triangle tri =
            build_triangle(payments, 8, OutOfBoundsMode::cap, TriangleKind::incremental);
        const Triangle same = reaggregate(tri, 1);
        CHECK(same.cells == tri.cells);
    }

    SUBCASE("quarterly to yearly keeps the mass and shrinks the shape") {
        const auto payments = random_payments(40, 5000, 46);
        const Triangle quarterly =
            build_triangle(payments, 40, OutOfBoundsMode::cap, TriangleKind::incremental);
        const Triangle yearly = reaggregate(quarterly, 4);
        CHECK(yearly.size == 10);
        CHECK(yearly.total() == doctest::Approx(quarterly.total()).epsilon(1e-12));
    }

    SUBCASE("calendar mapping: same payment period ends up on the same coarse diagonal") {
        // Quarterly cells (1,8) and (4,5) share payment quarter 8 = year 2.
        std::vector<PaymentRecord> payments;
        payments.push_back(make_payment(1, 1, 7.5, 10.0, 8));
        payments.push_back(make_payment(2, 4, 7.5, 20.0, 8));
        const Triangle quarterly =
            build_triangle(payments, 8, OutOfBoundsMode::cap, TriangleKind::incremental);
        const Triangle yearly = reaggregate(quarterly, 4);
        CHECK(yearly.at(1, 2) == doctest::Approx(30.0));
    }

    SUBCASE("cumulative triangles reaggregate through their increments") {
        const auto payments = random_payments(12, 800, 47);
        const Triangle cumulative =
            build_triangle(payments, 12, OutOfBoundsMode::cap, TriangleKind::cumulative);
        const Triangle yearly = reaggregate(cumulative, 3);
        CHECK(yearly.kind == TriangleKind::cumulative);
        const Triangle incr =
            reaggregate(build_triangle(payments, 12, OutOfBoundsMode::cap,
                                       TriangleKind::incremental),
                        3);
        CHECK(yearly.at(4, 4) == doctest::Approx(incr.to_cumulative().at(4, 4)));
    }

    SUBCASE("tail buckets group by coarse row") {
        const auto payments = random_payments(8, 600, 48);
        const Triangle tailed =
            build_triangle(payments, 8, OutOfBoundsMode::tail, TriangleKind::incremental);
        const Triangle yearly = reaggregate(tailed, 2);
        REQUIRE(yearly.tail.has_value());
        CHECK(yearly.total() == doctest::Approx(tailed.total()).epsilon(1e-12));
    }

    SUBCASE("factor must divide the size") {
        const Triangle tri =
            build_triangle(random_payments(10, 50, 49), 10, OutOfBoundsMode::cap,
                           TriangleKind::incremental);
        CHECK_THROWS_AS(reaggregate(tri, 3), std::invalid_argument);
    }
}

TEST_CASE("past/future split") {
    const int periods = 6;
    std::vector<PaymentRecord> payments;
    payments.push_back(make_payment(1, 2, 5.1, 1.0, periods));  // payment period 6 = past edge
    payments.push_back(make_payment(2, 2, 6.01, 2.0, periods)); // payment period 7 = future
    payments.push_back(make_payment(3, 6, 5.5, 4.0, periods));  // diagonal, past

    const auto [past, future] = split_past_future(payments, periods);
    REQUIRE(past.size() == 2);
    REQUIRE(future.size() == 1);
    CHECK(future.front().claim_id == 2);

    // Union is a partition.
    CHECK(past.size() + future.size() == payments.size());
    // Past payments occupy the upper triangle exactly.
    for (const auto& p : past) {
        CHECK(p.occurrence_period + p.development_period - 1 <= periods);
    }
    for (const auto& p : future) {
        CHECK(p.occurrence_period + p.development_period - 1 > periods);
    }
}
