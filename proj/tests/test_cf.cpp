#include <doctest.h>

#include <altsum/cf.hpp>
#include <altsum/realnum.hpp>

#include <stdexcept>
#include <thread>
#include <vector>

#include "oracles.hpp"

using namespace altsum;

namespace {

AlphaSource sqrt2() { return AlphaSource::surd(0, 2, 1); }
AlphaSource e1_rule() { return AlphaSource::rule(QuotientRule::arithmetic(1, 6, 4)); }
AlphaSource finite_list() {
    return AlphaSource::rule(QuotientRule::explicit_list(1, {Int(2), Int(2)}));
}

}  // namespace

TEST_CASE("convergent table reproduces the arithmetic-tail table through index 8") {
    AlphaSource a = e1_rule();
    ConvergentTable& t = a.table();
    t.extend_to_index(8);
    const long long qs[] = {1, 6, 61, 860, 15541, 342762, 8927353, 268163352, 9126481321};
    const long long ps[] = {1, 7, 71, 1001, 18089, 398959, 10391023, 312129649, 10622799089};
    for (std::size_t i = 0; i <= 8; ++i) {
        CHECK(t.q(i) == qs[i]);
        CHECK(t.p(i) == ps[i]);
    }
}

TEST_CASE("convergent table for sqrt 2 through index 9") {
    AlphaSource a = sqrt2();
    ConvergentTable& t = a.table();
    t.extend_to_index(9);
    const long long qs[] = {1, 2, 5, 12, 29, 70, 169, 408, 985, 2378};
    for (std::size_t i = 0; i <= 9; ++i) CHECK(t.q(i) == qs[i]);
    CHECK(t.a(0) == 1);
    for (std::size_t i = 1; i <= 9; ++i) CHECK(t.a(i) == 2);
}

TEST_CASE("seed accessors expose the recurrence base") {
    ConvergentTable& t = sqrt2().table();
    CHECK(t.p_seed(-2) == 0);
    CHECK(t.p_seed(-1) == 1);
    CHECK(t.q_seed(-2) == 1);
    CHECK(t.q_seed(-1) == 0);
}

TEST_CASE("first index whose continuant exceeds a target") {
    CHECK(e1_rule().table().extend_until_q_exceeds(100) == 3);
    CHECK(sqrt2().table().extend_until_q_exceeds(0) == 0);
    CHECK(sqrt2().table().extend_until_q_exceeds(119) == 6);
}

TEST_CASE("tables agree with the reference recurrence far beyond the pinned rows") {
    auto quots = oracle::arithmetic_quotients(1, 6, 4, 40);
    auto ref = oracle::continuants(quots);
    AlphaSource a = e1_rule();
    ConvergentTable& t = a.table();
    t.extend_to_index(39);
    for (std::size_t i = 0; i < 40; ++i) {
        CHECK(t.p(i) == ref.p[i]);
        CHECK(t.q(i) == ref.q[i]);
    }
}

TEST_CASE("determinant identity holds through deep indices") {
    for (AlphaSource a : {sqrt2(), e1_rule()}) {
        a.table().extend_to_index(40);
        CHECK(determinant_identity_holds(a.table(), 40));
        // Spot-check the identity directly at a few indices.
        ConvergentTable& t = a.table();
        for (std::size_t i : {1u, 7u, 20u, 40u}) {
            Int det = t.p(i) * t.q(i - 1) - t.p(i - 1) * t.q(i);
            CHECK(det == (i % 2 == 0 ? -1 : 1));
        }
    }
}

TEST_CASE("convergents are in lowest terms with odd numerators here") {
    for (AlphaSource a : {sqrt2(), e1_rule()}) {
        ConvergentTable& t = a.table();
        t.extend_to_index(40);
        for (std::size_t i = 0; i <= 40; ++i) {
            CHECK(gcd(t.p(i), t.q(i)) == 1);
            CHECK(is_odd(t.p(i)));
        }
    }
}

TEST_CASE("convergents alternate around the value") {
    for (AlphaSource a : {sqrt2(), e1_rule()}) {
        ConvergentTable& t = a.table();
        t.extend_to_index(12);
        for (std::size_t i = 0; i <= 12; ++i) {
            Ordering o = alpha_compare(a, Rat(t.p(i), t.q(i)));
            CHECK(o == (i % 2 == 0 ? Ordering::greater : Ordering::less));
        }
    }
}

TEST_CASE("prefix intervals trap the value and shrink") {
    AlphaSource a = sqrt2();
    ConvergentTable& t = a.table();
    t.extend_to_index(8);
    Rat prev_width = 0;
    for (std::size_t m = 1; m <= 8; ++m) {
        auto [lo, hi] = t.interval_at(m);
        CHECK(lo < hi);
        CHECK(alpha_compare(a, lo) == Ordering::greater);
        CHECK(alpha_compare(a, hi) == Ordering::less);
        Rat width = hi - lo;
        // width = 1/(q_m (q_m + q_{m-1}))
        CHECK(width == Rat(Int(1), t.q(m) * (t.q(m) + t.q(m - 1))));
        if (m > 1) CHECK(width < prev_width);
        prev_width = width;
    }
}

TEST_CASE("continuants strictly increase from index one") {
    AlphaSource a = e1_rule();
    ConvergentTable& t = a.table();
    t.extend_to_index(15);
    for (std::size_t i = 1; i <= 15; ++i) CHECK(t.q(i) > t.q(i - 1));
}

TEST_CASE("a finite quotient list ends the stream") {
    AlphaSource a = finite_list();
    ConvergentTable& t = a.table();
    CHECK(t.try_extend_to_index(2));
    CHECK_FALSE(t.try_extend_to_index(3));
    CHECK(t.stream_ended());
    CHECK(t.materialized() == 3);
    CHECK_THROWS_AS(t.extend_to_index(3), InsufficientPrecision);
    // [1;2,2] = 7/5
    CHECK(t.p(2) == 7);
    CHECK(t.q(2) == 5);
}

TEST_CASE("the index cap stops refinement with a precision error") {
    AlphaSource a = sqrt2();
    a.set_precision_cap(5);
    ConvergentTable& t = a.table();
    t.extend_to_index(5);
    CHECK_THROWS_AS(t.extend_to_index(6), InsufficientPrecision);
    CHECK_THROWS_AS(t.try_extend_to_index(6), InsufficientPrecision);
    CHECK_FALSE(t.stream_ended());
    a.set_precision_cap(8);
    t.extend_to_index(8);
    CHECK(t.materialized() == 9);
}

TEST_CASE("reading out of the materialized range is an index error") {
    AlphaSource a = sqrt2();
    ConvergentTable& t = a.table();
    t.extend_to_index(2);
    CHECK_THROWS_AS(t.a(10), IndexOutOfRange);
    CHECK_THROWS_AS(t.q(10), IndexOutOfRange);
    CHECK_THROWS_AS(t.interval_at(10), IndexOutOfRange);
}

TEST_CASE("best-approximation property of convergents") {
    CHECK(best_approx_check(sqrt2(), 3, 28));
    CHECK(best_approx_check(sqrt2(), 0, 1));  // the equality case n = q_0
    CHECK(best_approx_check(e1_rule(), 2, 859));
    CHECK_THROWS_AS(best_approx_check(finite_list(), 2, 4), IndexOutOfRange);
    CHECK_THROWS_AS(best_approx_check(sqrt2(), 3, 29), std::invalid_argument);
    CHECK_THROWS_AS(best_approx_check(sqrt2(), 3, 0), std::invalid_argument);
}

TEST_CASE("concurrent extension stays consistent") {
    AlphaSource a = sqrt2();
    ConvergentTable& t = a.table();
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w)
        workers.emplace_back([&t] {
            for (std::size_t i = 0; i <= 200; i += 10) t.extend_to_index(i);
        });
    for (auto& w : workers) w.join();
    CHECK(t.materialized() >= 201);
    CHECK(determinant_identity_holds(t, 200));
}
