#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

Int oisqrt(const Int& x) {
    if (x < 0) throw std::domain_error("oisqrt: negative");
    if (x < 2) return x;
    // Newton iteration from a power-of-two overestimate; descends monotonically.
    Int r = Int(1) << (msb(x) / 2 + 1);
    for (;;) {
        Int next = (r + x / r) / 2;
        if (next >= r) break;
        r = next;
    }
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

Int ofdiv(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

Int floor_mul_sqrt(const Int& n, const Int& d) { return oisqrt(n * n * d); }

Int floor_surd_multiple(const Int& n, const Int& p, const Int& d, const Int& q) {
    if (q <= 0) throw std::domain_error("floor_surd_multiple: q must be positive");
    return ofdiv(n * p + oisqrt(n * n * d), q);
}

E1Floors::E1Floors() {
    big_ = 1;
    for (int i = 0; i < 220; ++i) big_ *= 10;
    Int term = big_;  // floor(B / 1!)
    Int total = term;
    long long k = 1;
    while (term > 0) {
        ++k;
        term /= k;  // floor(floor(B/(k-1)!)/k) == floor(B/k!)
        total += term;
    }
    t_ = total;
    slack_ = k + 2;  // each floored term loses < 1; the dropped tail is < 1
}

Int E1Floors::floor_n(const Int& n) const {
    // n * 2/(e-1) lies in (2nB/(T+slack), 2nB/T]; certify that both ends floor
    // to the same integer.
    Int num = 2 * n * big_;
    Int lo = ofdiv(num, t_ + slack_);
    Int hi = ofdiv(num, t_);
    if (lo != hi) throw std::logic_error("E1Floors: fixed-point margin exhausted");
    return hi;
}

Continuants continuants(const std::vector<Int>& quotients) {
    Continuants c;
    Int pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
    for (const Int& a : quotients) {
        Int p = a * pm1 + pm2;
        Int q = a * qm1 + qm2;
        c.p.push_back(p);
        c.q.push_back(q);
        pm2 = std::move(pm1);
        pm1 = std::move(p);
        qm2 = std::move(qm1);
        qm1 = std::move(q);
    }
    return c;
}

std::vector<Int> arithmetic_quotients(long long a0, long long c, long long d, std::size_t count) {
    std::vector<Int> out;
    out.reserve(count);
    if (count == 0) return out;
    out.emplace_back(a0);
    for (std::size_t i = 1; i < count; ++i) out.emplace_back(c + d * (long long)(i - 1));
    return out;
}

std::vector<Int> greedy_digits(Int n, const std::vector<Int>& q) {
    if (n < 0) throw std::domain_error("greedy_digits: negative");
    // Highest index whose denominator fits into n.
    std::size_t top = q.size();
    while (top > 0 && q[top - 1] > n) --top;
    std::vector<Int> digits(top, 0);
    for (std::size_t i = top; i-- > 0;) {
        digits[i] = n / q[i];
        n -= digits[i] * q[i];
    }
    if (n != 0) throw std::logic_error("greedy_digits: nonzero remainder below q_0 = 1");
    return digits;  // least significant first
}

std::optional<std::uint64_t> first_attainment(const std::vector<long long>& prefix, long long k) {
    for (std::size_t n = 1; n < prefix.size(); ++n)
        if (prefix[n] == k) return n;
    return std::nullopt;
}

Rat star_disc_reference(const std::vector<Rat>& pts) {
    if (pts.empty()) throw std::domain_error("star_disc_reference: empty point set");
    std::vector<Rat> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    Rat n = Rat((unsigned long long)pts.size());
    Rat best = 0;
    auto consider = [&](const Rat& v) {
        if (v > best) best = v;
    };
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;  // one candidate per distinct value
        Rat lt = Rat((unsigned long long)(std::lower_bound(sorted.begin(), sorted.end(), sorted[i]) -
                                          sorted.begin()));
        Rat le = Rat((unsigned long long)(std::upper_bound(sorted.begin(), sorted.end(), sorted[i]) -
                                          sorted.begin()));
        consider(abs(sorted[i] - lt / n));
        consider(abs(sorted[i] - le / n));
    }
    return best;
}

std::size_t count_below_reference(const std::vector<Rat>& pts, const Rat& x) {
    std::size_t c = 0;
    for (const Rat& p : pts)
        if (p < x) ++c;
    return c;
}

Rat random_fraction(std::mt19937_64& rng, long long max_den, long long span) {
    std::uniform_int_distribution<long long> den(1, max_den);
    long long q = den(rng);
    std::uniform_int_distribution<long long> num(0, span * q - 1);
    return Rat(Int(num(rng)), Int(q));
}

}  // namespace oracle

// Self-checks of the reference layer itself, so a broken oracle cannot
// silently validate the library.
TEST_CASE("reference square root agrees with squaring") {
    using oracle::Int;
    for (long long v : {0LL, 1LL, 2LL, 3LL, 4LL, 99LL, 100LL, 101LL, 1LL << 40}) {
        Int r = oracle::oisqrt(Int(v));
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
    Int big = Int("123456789123456789123456789123456789");
    Int r = oracle::oisqrt(big * big);
    CHECK(r == big);
    CHECK(oracle::oisqrt(big * big - 1) == big - 1);
}

TEST_CASE("fixed-point expansion reproduces hand-checked floors") {
    oracle::E1Floors e1;
    // 2/(e-1) = 1.16395341...; floors of the first few multiples by hand.
    CHECK(e1.floor_n(1) == 1);
    CHECK(e1.floor_n(2) == 2);
    CHECK(e1.floor_n(3) == 3);
    CHECK(e1.floor_n(4) == 4);
    CHECK(e1.floor_n(5) == 5);
    CHECK(e1.floor_n(6) == 6);
    CHECK(e1.floor_n(7) == 8);  // 8.147...
    CHECK(e1.floor_n(1000000) == 1163953);  // 2/(e-1) = 1.163953413...
}

TEST_CASE("reference continuants satisfy the defining recurrence seeds") {
    using oracle::Int;
    auto c = oracle::continuants({Int(1), Int(2), Int(2), Int(2)});
    REQUIRE(c.q.size() == 4);
    CHECK(c.p[0] == 1);
    CHECK(c.q[0] == 1);
    CHECK(c.p[3] == 17);
    CHECK(c.q[3] == 12);
}
