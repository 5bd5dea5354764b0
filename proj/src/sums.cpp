#include "altsum/sums.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "altsum/cf.hpp"
#include "altsum/errors.hpp"

namespace altsum {

namespace {

// Largest N the naive per-term verifiers accept, and the largest M that the
// internal helpers will evaluate by streaming rather than by closed form.
constexpr std::uint64_t kNaiveLimit = 100'000'000;

// Largest N for which a full S_0..S_N prefix vector is reasonable to hold.
constexpr std::uint64_t kPrefixLimit = 10'000'000;

std::uint64_t to_u64_checked(const Int& n, const char* what) {
    if (n < 0 || n > Int(kNaiveLimit))
        throw std::invalid_argument(std::string(what) + ": N out of the supported range for term-by-term evaluation");
    return n.convert_to<std::uint64_t>();
}

template <class I>
I icast(const Int& x) {
    if constexpr (std::is_same_v<I, Int>)
        return x;
    else
        return x.template convert_to<I>();
}

// Steps the parity of floor(n * num/den) from n to n+1 without recomputing the
// floor: with num/den = d + step/den (0 <= step < den), floor((n+1) num/den)
// - floor(n num/den) = d + carry, where carry records the residue wrapping.
template <class I>
struct ParityStream {
    I den{}, step{}, r{};
    int dpar = 0;  // parity of the integer part d
    int par = 0;   // parity of floor(n * num/den) at the current n

    void init(const Int& num, const Int& den_in) {
        Int d = fdiv(num, den_in);
        den = icast<I>(den_in);
        step = icast<I>(num - d * den_in);
        r = icast<I>(Int(0));
        dpar = is_odd(d) ? 1 : 0;
        par = 0;
    }

    int advance() {  // returns the carry
        r += step;
        int carry = 0;
        if (r >= den) {
            r -= den;
            carry = 1;
        }
        par ^= dpar ^ carry;
        return carry;
    }
};

}  // namespace

struct SumSeries::Impl {
    std::uint64_t n_max = 0;
    std::uint64_t n = 0;
    long long s = 0;
    SeriesStats stats;

    virtual ~Impl() = default;
    virtual int step_parity() = 0;

    bool next(SeriesPoint& out) {
        if (n >= n_max) return false;
        ++n;
        s += step_parity() ? -1 : 1;
        out.n = n;
        out.s = s;
        if (s < stats.min_s) {
            stats.min_s = s;
            stats.argmin = n;
        }
        if (s > stats.max_s) {
            stats.max_s = s;
            stats.argmax = n;
        }
        return true;
    }
};

namespace {

constexpr unsigned long long kMachineDenLimit = 1ull << 62;

// Exact rational alpha: one stream carries the parity directly.
template <class I>
struct SingleStreamImpl final : SumSeries::Impl {
    ParityStream<I> st;
    int step_parity() override {
        st.advance();
        return st.par;
    }
};

// Irrational alpha bracketed by the consecutive convergents lo < alpha < hi
// with hi's denominator q_I > n_max.  For every 1 <= n < q_I,
// floor(n * lo) = floor(n * alpha): no integer lies strictly between n*lo and
// n*hi, and the only possible integer endpoint is on the index-(I-1) side.
// The hi stream is kept as a running cross-check: the floors may differ only
// by one, exactly when n*hi is an integer (its residue wraps to zero).
template <class I>
struct BracketImpl final : SumSeries::Impl {
    ParityStream<I> lo, hi;
    long long drift = 0;  // floor(n*hi) - floor(n*lo)
    int dd = 0;           // difference of the integer parts

    int step_parity() override {
        int clo = lo.advance();
        int chi = hi.advance();
        drift += dd + chi - clo;
        bool ok = drift == 0 || (drift == 1 && hi.r == I(0));
        if (!ok) throw Error("sum series: bracketing convergents disagreed on a floor");
        return lo.par;
    }
};

template <template <class> class Shape, class Fill>
std::unique_ptr<SumSeries::Impl> make_impl(bool machine, Fill&& fill) {
    if (machine) {
        auto im = std::make_unique<Shape<unsigned long long>>();
        fill(*im);
        return im;
    }
    auto im = std::make_unique<Shape<Int>>();
    fill(*im);
    return im;
}

}  // namespace

SumSeries::SumSeries(const AlphaSource& alpha, std::uint64_t n_max) {
    if (n_max == 0) {
        auto im = std::make_unique<SingleStreamImpl<unsigned long long>>();
        im->st.init(0, 1);
        impl_ = std::move(im);
    } else if (alpha.kind() == AlphaSource::Kind::rational) {
        const Rat& v = alpha.rational_value();
        Int num = numerator(v), den = denominator(v);
        impl_ = make_impl<SingleStreamImpl>(den < Int(kMachineDenLimit),
                                            [&](auto& im) { im.st.init(num, den); });
    } else {
        ConvergentTable& t = alpha.table();
        std::size_t top = t.extend_until_q_exceeds(Int(n_max));
        // q_0 = 1 <= n_max, so top >= 1 and index top-1 exists.
        Int pa = t.p(top - 1), qa = t.q(top - 1);
        Int pb = t.p(top), qb = t.q(top);
        if (pa * qb > pb * qa) {
            std::swap(pa, pb);
            std::swap(qa, qb);
        }
        Int diff = fdiv(pb, qb) - fdiv(pa, qa);
        if (diff < -1 || diff > 1) throw Error("sum series: bracket setup is inconsistent");
        impl_ = make_impl<BracketImpl>(qb < Int(kMachineDenLimit) && qa < Int(kMachineDenLimit),
                                       [&](auto& im) {
                                           im.lo.init(pa, qa);
                                           im.hi.init(pb, qb);
                                           im.dd = diff.convert_to<int>();
                                       });
    }
    impl_->n_max = n_max;
}

SumSeries::~SumSeries() = default;
SumSeries::SumSeries(SumSeries&&) noexcept = default;
SumSeries& SumSeries::operator=(SumSeries&&) noexcept = default;

bool SumSeries::next(SeriesPoint& out) { return impl_->next(out); }

const SeriesStats& SumSeries::stats() const { return impl_->stats; }

Int s_naive(const AlphaSource& alpha, const Int& n) {
    if (n < 0) throw std::invalid_argument("s_naive: N must be nonnegative");
    Int s = 0;
    for (Int k = 1; k <= n; ++k) s += is_odd(floor_n_alpha(alpha, k)) ? -1 : 1;
    return s;
}

std::vector<long long> s_naive_prefix(const AlphaSource& alpha, std::uint64_t n_max) {
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(0);
    long long s = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        s += is_odd(floor_n_alpha(alpha, Int(n))) ? -1 : 1;
        out.push_back(s);
    }
    return out;
}

void require_parity_hypothesis(const AlphaSource& alpha, std::size_t through) {
    switch (alpha.kind()) {
        case AlphaSource::Kind::rational: {
            ConvergentTable& t = alpha.table();
            while (t.try_extend_to_index(t.materialized())) {
            }
            throw HypothesisViolated(t.materialized(),
                                     "parity hypothesis fails: the continued fraction terminates");
        }
        case AlphaSource::Kind::rule: {
            const QuotientRule& r = alpha.rule_value();
            if (!is_odd(r.a0()))
                throw HypothesisViolated(0, "parity hypothesis fails: a_0 is even");
            switch (r.tail_kind()) {
                case QuotientRule::Tail::explicit_list: {
                    const auto& terms = r.list();
                    for (std::size_t i = 0; i < terms.size(); ++i)
                        if (is_odd(terms[i]))
                            throw HypothesisViolated(
                                i + 1, "parity hypothesis fails: odd partial quotient at index " +
                                           std::to_string(i + 1));
                    return;
                }
                case QuotientRule::Tail::arithmetic:
                    if (is_odd(r.first()))
                        throw HypothesisViolated(1,
                                                 "parity hypothesis fails: odd partial quotient at index 1");
                    if (is_odd(r.step()))
                        throw HypothesisViolated(2,
                                                 "parity hypothesis fails: odd quotient step makes index 2 odd");
                    return;
                case QuotientRule::Tail::constant:
                    if (is_odd(r.first()))
                        throw HypothesisViolated(1,
                                                 "parity hypothesis fails: odd partial quotient at index 1");
                    return;
            }
            return;
        }
        case AlphaSource::Kind::surd: {
            ConvergentTable& t = alpha.table();
            t.extend_to_index(through);
            std::size_t m = t.materialized();
            for (std::size_t i = 0; i < m; ++i) {
                bool odd = is_odd(t.a(i));
                if (i == 0 ? !odd : odd)
                    throw HypothesisViolated(
                        i, i == 0 ? "parity hypothesis fails: a_0 is even"
                                  : "parity hypothesis fails: odd partial quotient at index " +
                                        std::to_string(i));
            }
            return;
        }
    }
}

Int s_fast(const AlphaSource& alpha, const Int& n) {
    if (n < 0) throw std::invalid_argument("s_fast: N must be nonnegative");
    // Rational and rule-backed alphas are decided symbolically, before any
    // table extension can fail for unrelated reasons; a surd is checked over
    // everything the encoding materialized.
    if (alpha.kind() != AlphaSource::Kind::surd) require_parity_hypothesis(alpha, 0);
    CfeDigits d = cfe_encode(alpha, n);
    if (alpha.kind() == AlphaSource::Kind::surd) require_parity_hypothesis(alpha, d.z.size());
    Int s = 0;
    int sigma = 0;  // parity of the digit sum strictly above index i
    for (std::size_t i = d.z.size(); i-- > 0;) {
        if (i % 2 == 0 && is_odd(d.z[i])) s -= sigma ? -1 : 1;
        if (is_odd(d.z[i])) sigma ^= 1;
    }
    return s;
}

namespace {

Int s_by_stream(const AlphaSource& alpha, std::uint64_t m) {
    SumSeries ser(alpha, m);
    SeriesPoint pt{0, 0};
    long long s = 0;
    while (ser.next(pt)) s = pt.s;
    return Int(s);
}

// Exact S_M by the cheapest safe route: stream for moderate M; beyond that,
// the term parities of a rational alpha repeat exactly (period 2q for odd p,
// q for even p), and an irrational alpha falls back to the closed form, which
// insists on the parity hypothesis.
Int s_at(const AlphaSource& alpha, const Int& m) {
    if (m <= 0) return 0;
    if (m <= Int(kNaiveLimit)) return s_by_stream(alpha, m.convert_to<std::uint64_t>());
    if (alpha.kind() == AlphaSource::Kind::rational) {
        const Rat& v = alpha.rational_value();
        Int period = is_odd(numerator(v)) ? 2 * denominator(v) : denominator(v);
        if (period <= Int(kNaiveLimit)) {
            Int cycles = fdiv(m, period);
            std::uint64_t per = period.convert_to<std::uint64_t>();
            std::uint64_t rem = (m - cycles * period).convert_to<std::uint64_t>();
            SumSeries ser(alpha, per);
            SeriesPoint pt{0, 0};
            long long s_rem = 0, s_per = 0;
            while (ser.next(pt)) {
                if (pt.n == rem) s_rem = pt.s;
                s_per = pt.s;
            }
            return cycles * Int(s_per) + Int(s_rem);
        }
    }
    return s_fast(alpha, m);
}

}  // namespace

QuarterValue s_renorm(const AlphaSource& alpha, const Rat& x) {
    if (x < 0) throw std::invalid_argument("s_renorm: x must be nonnegative");
    Int m = floor_div_alpha(alpha, x);
    return {4 * s_at(alpha, m) + 1};
}

QuarterValue idea1_residual(const AlphaSource& alpha, const Rat& x) {
    if (alpha.kind() != AlphaSource::Kind::surd)
        throw AlphaOutOfRange("idea1_residual: alpha must be an irrational quadratic surd");
    const QuadraticSurd& a = alpha.surd_value();
    if (a.compare(Rat(1)) != Ordering::greater)
        throw AlphaOutOfRange("idea1_residual: alpha must exceed 1");
    QuadraticSurd beta = a.times(a.plus_rational(Rat(-1)).reciprocal());
    QuarterValue left = s_renorm(alpha, x);
    QuarterValue right = s_renorm(AlphaSource::from_surd(beta), x);
    return {left.quarters + right.quarters};
}

bool idea2_transport_check(const AlphaSource& beta, const Int& m, const Rat& x) {
    if (m < 1) throw std::invalid_argument("idea2_transport_check: m must be positive");
    if (x < 0) throw std::invalid_argument("idea2_transport_check: x must be nonnegative");
    if (alpha_compare(beta, Rat(2 * m)) != Ordering::greater)
        throw AlphaOutOfRange("idea2_transport_check: beta must exceed 2m");
    Int big_m = floor_div_alpha(beta, x);
    AlphaSource shifted = beta.shifted(-2 * m);
    return s_at(beta, big_m) == s_at(shifted, big_m);
}

Idea3Result idea3_step_check(const AlphaSource& alpha, const Int& n) {
    if (n < 2) throw std::invalid_argument("idea3_step_check: N must be at least 2");
    std::uint64_t nn = to_u64_checked(n, "idea3_step_check");
    ConvergentTable& t = alpha.table();
    std::size_t i = t.extend_until_q_exceeds(n - 1);
    Int q = t.q(i - 1), p = t.p(i - 1);
    std::uint64_t qq = q.convert_to<std::uint64_t>();
    SumSeries ser(alpha, nn);
    SeriesPoint pt{0, 0};
    long long s_n = 0, s_q = 0, s_rem = 0;
    while (ser.next(pt)) {
        if (pt.n == qq) s_q = pt.s;
        if (pt.n == nn - qq) s_rem = pt.s;
        s_n = pt.s;
    }
    long long expect = s_q + (is_odd(p) ? -1LL : 1LL) * s_rem;
    return {s_n == expect, q, p};
}

bool idea3_range_check(const AlphaSource& alpha, std::uint64_t n_max) {
    if (n_max < 2) return true;
    if (n_max > kPrefixLimit)
        throw std::invalid_argument("idea3_range_check: N out of the supported range for a full prefix");
    ConvergentTable& t = alpha.table();
    t.extend_until_q_exceeds(Int(n_max) - 1);
    auto pre = s_naive_prefix(alpha, n_max);
    std::size_t idx = 0;  // largest index with q_idx < n, advanced as n grows
    std::uint64_t q = 1;
    bool p_odd = is_odd(t.p(0));
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        while (idx + 1 < t.materialized() && t.q(idx + 1) < Int(n)) {
            ++idx;
            q = t.q(idx).convert_to<std::uint64_t>();
            p_odd = is_odd(t.p(idx));
        }
        long long expect = pre[q] + (p_odd ? -1LL : 1LL) * pre[n - q];
        if (pre[n] != expect) return false;
    }
    return true;
}

RecordEntry record_closed(const AlphaSource& alpha, long long k) {
    if (k == 0) throw std::invalid_argument("record_closed: k must be nonzero");
    std::size_t kk = static_cast<std::size_t>(k > 0 ? k : -k);
    ConvergentTable& t = alpha.table();
    t.extend_to_index(2 * kk - 1);
    require_parity_hypothesis(alpha, 2 * kk - 1);
    Int r = 0;
    for (std::size_t i = 0; i <= 2 * kk - 2; ++i) r += t.q(i);
    if (k > 0) r += t.q(2 * kk - 1);
    return {k, r, RecordMethod::closed_form};
}

RecordEntry record_sqrt2_closed(long long k) {
    if (k == 0) throw std::invalid_argument("record_sqrt2_closed: k must be nonzero");
    unsigned long long e =
        k > 0 ? 2ull * static_cast<unsigned long long>(k) + 1 : 2ull * static_cast<unsigned long long>(-k);
    auto [a, b] = surd_pair_pow(1, 1, 2, e);
    Int r = QuadraticSurd::from_parts(a, b, 4, 2).floor();
    return {k, r, RecordMethod::floor_power};
}

std::vector<RecordEntry> record_search(const AlphaSource& alpha, long long k_min, long long k_max,
                                       std::uint64_t n_max) {
    if (k_min > k_max) throw std::invalid_argument("record_search: empty level range");
    std::size_t want = static_cast<std::size_t>(k_max - k_min + 1);
    if (k_min <= 0 && 0 <= k_max) --want;
    std::map<long long, Int> found;
    SumSeries ser(alpha, n_max);
    SeriesPoint pt{0, 0};
    while (found.size() < want && ser.next(pt)) {
        if (pt.s != 0 && k_min <= pt.s && pt.s <= k_max)
            found.emplace(pt.s, Int(pt.n));  // emplace keeps the first attainment
    }
    std::vector<RecordEntry> out;
    out.reserve(found.size());
    for (const auto& [k, r] : found) out.push_back({k, r, RecordMethod::search});
    return out;
}

BoundReport bound_check_upper(long long m, const Int& n, const Int& s) {
    if (m < 1) throw std::invalid_argument("bound_check_upper: m must be positive");
    if (n < 1) throw std::invalid_argument("bound_check_upper: N must be positive");
    Int k = abs(s);
    unsigned long long e = 0;
    if (k > 1) e = 2 * (k.convert_to<unsigned long long>() - 1);
    Int d = Int(m) * m + 1;
    auto [a, b] = surd_pair_pow(Int(m), 1, d, e);
    // gamma_m^(2(|S|-1)) <= N  <=>  A + B*sqrt(m^2+1) <= N, decided in integers.
    Int t = n - a;
    bool holds = t >= 0 && b * b * d <= t * t;
    return {n, k, holds, a, b};
}

bool bound_check_lower_sqrt2(long long k) {
    if (k >= 0) throw std::invalid_argument("bound_check_lower_sqrt2: k must be negative");
    Int r = record_sqrt2_closed(k).r;
    auto [a, b] = surd_pair_pow(1, 1, 2, 2ull * static_cast<unsigned long long>(-k));
    // (1+sqrt 2)^(2|k|) > 4 R_k  <=>  A + B*sqrt 2 > 4R, decided in integers.
    Int t = 4 * r - a;
    return t < 0 || t * t < 2 * b * b;
}

RationalProfile rational_profile(const Rat& alpha) {
    const Int& p = numerator(alpha);
    const Int& q = denominator(alpha);
    AlphaSource src = AlphaSource::rational(alpha);
    if (is_odd(p)) return {Rat(0), true, 2 * q};
    Int sq = s_naive(src, q);
    return {Rat(sq, q), sq == 0, q};
}

}  // namespace altsum
