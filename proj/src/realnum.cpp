#include "altsum/realnum.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <utility>

#include "altsum/cf.hpp"

namespace altsum {

namespace {

// Largest h dividing g with h^2 dividing d (best effort for huge g: trial
// division below 1000 plus the leftover cofactor checked as a block).
Int square_content(const Int& g, const Int& d) {
    if (g <= 1 || d == 0) return 1;
    Int h = 1, rest = g;
    auto absorb = [&](Int f) {  // by value: the last call passes rest itself
        Int ff = f * f;
        Int dd = d;
        while (rest % f == 0 && dd % ff == 0) {
            rest /= f;
            dd /= ff;
            h *= f;
        }
        while (rest % f == 0) rest /= f;
    };
    for (Int f = 2; f <= 1000 && f * f <= rest; ++f)
        if (rest % f == 0) absorb(f);
    if (rest > 1) absorb(rest);
    return h;
}

Int floor_p_sqrtd_q(const Int& p, const Int& d, const Int& s, const Int& q) {
    // floor((p + sqrt(d))/q) with s = isqrt(d); exact because for non-square d
    // no integer can lie in (s, sqrt(d)) — and for square d, s == sqrt(d).
    if (q > 0) return fdiv(p + s, q);
    if (d == 0 || s * s == d) return fdiv(p + s, q);
    return -fdiv(p + s, -q) - 1;
}

}  // namespace

QuadraticSurd::QuadraticSurd(Int p, Int d, Int q)
    : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)) {
    if (q_ == 0) throw std::invalid_argument("QuadraticSurd: Q must be nonzero");
    if (d_ < 0) throw std::invalid_argument("QuadraticSurd: D must be nonnegative");
    Int s;
    if (is_perfect_square(d_, &s)) {  // rational value: fold sqrt(D) into P
        p_ += s;
        d_ = 0;
        Int g = gcd(p_, q_);
        if (g > 1) { p_ /= g; q_ /= g; }
        if (q_ < 0) { p_ = -p_; q_ = -q_; }
        return;
    }
    Int h = square_content(gcd(abs(p_), abs(q_)), d_);
    if (h > 1) { p_ /= h; q_ /= h; d_ /= h * h; }
}

QuadraticSurd QuadraticSurd::from_parts(const Int& a, const Int& b, const Int& c, const Int& d) {
    if (b == 0) return QuadraticSurd(a, 0, c);
    if (b > 0) return QuadraticSurd(a, b * b * d, c);
    return QuadraticSurd(-a, b * b * d, -c);
}

Rat QuadraticSurd::rational_value() const {
    if (!is_rational()) throw std::logic_error("QuadraticSurd: irrational value");
    return Rat(p_, q_);
}

int QuadraticSurd::sign() const {
    int num;
    if (d_ == 0) {
        num = sign_of(p_);
    } else if (p_ >= 0) {
        num = 1;  // sqrt(D) > 0 whenever D > 0
    } else {
        num = d_ > p_ * p_ ? 1 : -1;  // equality impossible: D is not a square
    }
    return num * sign_of(q_);
}

Ordering QuadraticSurd::compare(const Rat& r) const {
    // value - u/v = ((P v - u Q) + v sqrt(D)) / (Q v), with v > 0
    const Int& u = numerator(r);
    const Int& v = denominator(r);
    Int a = p_ * v - u * q_;
    int num;
    if (d_ == 0) {
        num = sign_of(a);
    } else if (a >= 0) {
        num = 1;
    } else {
        Int lhs = v * v * d_, rhs = a * a;
        num = lhs > rhs ? 1 : lhs < rhs ? -1 : 0;
    }
    return ordering_of(num * sign_of(q_));
}

bool QuadraticSurd::operator==(const QuadraticSurd& o) const {
    if (d_ == 0 || o.d_ == 0)
        return d_ == 0 && o.d_ == 0 && Rat(p_, q_) == Rat(o.p_, o.q_);
    return sign_of(q_) == sign_of(o.q_) && Rat(p_, q_) == Rat(o.p_, o.q_) &&
           d_ * o.q_ * o.q_ == o.d_ * q_ * q_;
}

Int QuadraticSurd::floor() const {
    return floor_p_sqrtd_q(p_, d_, d_ == 0 ? Int(0) : isqrt(d_), q_);
}

Int QuadraticSurd::floor_times(const Int& n) const {
    if (n == 0) return 0;
    return from_parts(p_ * n, n, q_, d_).floor();
}

QuadraticSurd QuadraticSurd::plus_rational(const Rat& t) const {
    const Int& u = numerator(t);
    const Int& v = denominator(t);
    return from_parts(v * p_ + u * q_, v, v * q_, d_);
}

QuadraticSurd QuadraticSurd::times_rational(const Rat& t) const {
    if (t == 0) throw std::invalid_argument("QuadraticSurd: multiplication by zero");
    const Int& u = numerator(t);
    const Int& v = denominator(t);
    return from_parts(u * p_, u, v * q_, d_);
}

QuadraticSurd QuadraticSurd::reciprocal() const {
    if (d_ == 0) {
        if (p_ == 0) throw std::invalid_argument("QuadraticSurd: reciprocal of zero");
        return QuadraticSurd(q_, 0, p_);
    }
    // 1/((P+sqrt D)/Q) = Q(P - sqrt D)/(P^2 - D); P^2 - D != 0 since D is not a square
    return from_parts(q_ * p_, -q_, p_ * p_ - d_, d_);
}

QuadraticSurd QuadraticSurd::times(const QuadraticSurd& o) const {
    if (d_ == 0) return o.times_rational(Rat(p_, q_));
    if (o.d_ == 0) return times_rational(Rat(o.p_, o.q_));
    // Bring both factors over a common radicand: (a1 + b1 sqrt(d))/c1 times
    // (a2 + b2 sqrt(d))/c2 = (a1 a2 + b1 b2 d + (a1 b2 + a2 b1) sqrt(d))/(c1 c2).
    Int dd, b1 = 1, b2 = 1;
    if (d_ == o.d_) {
        dd = d_;
    } else if (o.d_ % d_ == 0 && is_perfect_square(o.d_ / d_, &b2)) {
        dd = d_;
    } else if (d_ % o.d_ == 0 && is_perfect_square(d_ / o.d_, &b1)) {
        dd = o.d_;
    } else {
        throw std::invalid_argument("QuadraticSurd: product of members of different quadratic fields");
    }
    return from_parts(p_ * o.p_ + b1 * b2 * dd, p_ * b2 + o.p_ * b1, q_ * o.q_, dd);
}

std::pair<Int, Int> surd_pair_pow(const Int& a, const Int& b, const Int& d, unsigned long long e) {
    Int ra = 1, rb = 0, xa = a, xb = b;
    while (e > 0) {
        if (e & 1) {
            Int na = ra * xa + rb * xb * d;
            rb = ra * xb + rb * xa;
            ra = std::move(na);
        }
        e >>= 1;
        if (e > 0) {
            Int na = xa * xa + xb * xb * d;
            xb = 2 * xa * xb;
            xa = std::move(na);
        }
    }
    return {ra, rb};
}

// --- QuotientRule -----------------------------------------------------------

QuotientRule QuotientRule::explicit_list(Int a0, std::vector<Int> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i] < 1)
            throw std::invalid_argument("QuotientRule: tail term < 1 at position " +
                                        std::to_string(i + 1));
    QuotientRule r;
    r.kind_ = Tail::explicit_list;
    r.a0_ = std::move(a0);
    r.list_ = std::move(terms);
    return r;
}

QuotientRule QuotientRule::arithmetic(Int a0, Int first, Int step) {
    if (first < 1) throw std::invalid_argument("QuotientRule: arithmetic first term < 1");
    if (step < 0) throw std::invalid_argument("QuotientRule: arithmetic step < 0");
    QuotientRule r;
    r.kind_ = Tail::arithmetic;
    r.a0_ = std::move(a0);
    r.first_ = std::move(first);
    r.step_ = std::move(step);
    return r;
}

QuotientRule QuotientRule::constant(Int a0, Int value) {
    if (value < 1) throw std::invalid_argument("QuotientRule: constant tail value < 1");
    QuotientRule r;
    r.kind_ = Tail::constant;
    r.a0_ = std::move(a0);
    r.first_ = std::move(value);
    r.step_ = 0;
    return r;
}

std::optional<Int> QuotientRule::term(std::size_t i) const {
    if (i == 0) return a0_;
    switch (kind_) {
        case Tail::explicit_list:
            if (i - 1 >= list_.size()) return std::nullopt;
            return list_[i - 1];
        case Tail::arithmetic:
            return first_ + step_ * Int(i - 1);
        case Tail::constant:
            return first_;
    }
    return std::nullopt;
}

QuotientRule QuotientRule::with_a0(Int a0) const {
    QuotientRule r = *this;
    r.a0_ = std::move(a0);
    return r;
}

std::string QuotientRule::describe() const {
    std::ostringstream os;
    os << '[' << a0_ << ';';
    if (kind_ == Tail::explicit_list) {
        for (std::size_t i = 0; i < list_.size(); ++i) {
            if (i) os << ',';
            os << list_[i];
        }
    } else {
        os << first_ << '+' << step_ << "*k";
    }
    os << ']';
    return os.str();
}

// --- quotient cursors -------------------------------------------------------

namespace {

class RuleCursor final : public QuotientCursor {
public:
    explicit RuleCursor(QuotientRule r) : rule_(std::move(r)) {}
    std::optional<Int> next() override { return rule_.term(i_++); }

private:
    QuotientRule rule_;
    std::size_t i_ = 0;
};

class RationalCursor final : public QuotientCursor {
public:
    RationalCursor(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {}
    std::optional<Int> next() override {
        if (done_) return std::nullopt;
        Int a = fdiv(num_, den_);
        Int r = num_ - a * den_;
        if (r == 0) {
            done_ = true;  // Euclid ends; the final quotient is >= 2 automatically
        } else {
            num_ = den_;
            den_ = std::move(r);
        }
        return a;
    }

private:
    Int num_, den_;
    bool done_ = false;
};

// Classical integer-only surd CF: state (P_k + sqrt(D)) / Q_k with the
// invariant Q_k | D - P_k^2, established upfront by rescaling.
class SurdCursor final : public QuotientCursor {
public:
    SurdCursor(Int p, Int d, Int q) : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)) {
        if ((d_ - p_ * p_) % q_ != 0) {
            Int aq = abs(q_);
            p_ *= aq;
            d_ *= q_ * q_;
            q_ *= aq;
        }
        s_ = isqrt(d_);
    }
    std::optional<Int> next() override {
        Int a = floor_p_sqrtd_q(p_, d_, s_, q_);
        Int pn = a * q_ - p_;
        Int qn = (d_ - pn * pn) / q_;
        p_ = std::move(pn);
        q_ = std::move(qn);
        return a;
    }

private:
    Int p_, d_, q_, s_;
};

}  // namespace

std::vector<Int> surd_partial_quotients(const QuadraticSurd& s, std::size_t count) {
    if (s.is_rational())
        throw PerfectSquareInput("surd_partial_quotients: value is rational (D is a perfect square)");
    SurdCursor cur(s.p(), s.d(), s.q());
    std::vector<Int> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(*cur.next());
    return out;
}

// --- AlphaSource -------------------------------------------------------------

struct AlphaSource::Data {
    Kind kind;
    std::optional<QuadraticSurd> surd;
    Rat rat;
    std::optional<QuotientRule> rule;
    std::atomic<std::size_t> cap{10000};
    std::once_flag table_once;
    std::unique_ptr<ConvergentTable> table;
};

AlphaSource AlphaSource::surd(const Int& p, const Int& d, const Int& q) {
    return from_surd(QuadraticSurd(p, d, q));
}

AlphaSource AlphaSource::from_surd(const QuadraticSurd& s) {
    if (s.is_rational()) return rational(s.rational_value());
    auto data = std::make_shared<Data>();
    data->kind = Kind::surd;
    data->surd = s;
    return AlphaSource(std::move(data));
}

AlphaSource AlphaSource::rational(const Int& p, const Int& q) {
    if (q == 0) throw std::invalid_argument("AlphaSource: zero denominator");
    return rational(Rat(p, q));
}

AlphaSource AlphaSource::rational(const Rat& r) {
    auto data = std::make_shared<Data>();
    data->kind = Kind::rational;
    data->rat = r;
    return AlphaSource(std::move(data));
}

AlphaSource AlphaSource::rule(QuotientRule r) {
    auto data = std::make_shared<Data>();
    data->kind = Kind::rule;
    data->rule = std::move(r);
    return AlphaSource(std::move(data));
}

AlphaSource::Kind AlphaSource::kind() const { return impl_->kind; }

const QuadraticSurd& AlphaSource::surd_value() const {
    if (impl_->kind != Kind::surd) throw std::logic_error("AlphaSource: not surd-backed");
    return *impl_->surd;
}

const Rat& AlphaSource::rational_value() const {
    if (impl_->kind != Kind::rational) throw std::logic_error("AlphaSource: not rational");
    return impl_->rat;
}

const QuotientRule& AlphaSource::rule_value() const {
    if (impl_->kind != Kind::rule) throw std::logic_error("AlphaSource: not rule-backed");
    return *impl_->rule;
}

std::size_t AlphaSource::precision_cap() const { return impl_->cap.load(); }

void AlphaSource::set_precision_cap(std::size_t cap) const {
    impl_->cap.store(cap);
    if (impl_->table) impl_->table->set_index_cap(cap);
}

std::unique_ptr<QuotientCursor> AlphaSource::quotient_cursor() const {
    switch (impl_->kind) {
        case Kind::surd: {
            const QuadraticSurd& s = *impl_->surd;
            return std::make_unique<SurdCursor>(s.p(), s.d(), s.q());
        }
        case Kind::rational:
            return std::make_unique<RationalCursor>(numerator(impl_->rat), denominator(impl_->rat));
        case Kind::rule:
            return std::make_unique<RuleCursor>(*impl_->rule);
    }
    throw std::logic_error("AlphaSource: bad kind");
}

ConvergentTable& AlphaSource::table() const {
    std::call_once(impl_->table_once, [this] {
        impl_->table = std::make_unique<ConvergentTable>(quotient_cursor(), impl_->cap.load());
    });
    return *impl_->table;
}

AlphaSource AlphaSource::shifted(const Int& t) const {
    switch (impl_->kind) {
        case Kind::surd:
            return from_surd(impl_->surd->plus_rational(Rat(t)));
        case Kind::rational:
            return rational(impl_->rat + Rat(t));
        case Kind::rule:
            return rule(impl_->rule->with_a0(impl_->rule->a0() + t));
    }
    throw std::logic_error("AlphaSource: bad kind");
}

std::string AlphaSource::describe() const {
    std::ostringstream os;
    switch (impl_->kind) {
        case Kind::surd: {
            const QuadraticSurd& s = *impl_->surd;
            if (s.p() == 0 && s.q() == 1)
                os << "sqrt(" << s.d() << ")";
            else
                os << '(' << s.p() << "+sqrt(" << s.d() << "))/" << s.q();
            break;
        }
        case Kind::rational:
            os << numerator(impl_->rat);
            if (denominator(impl_->rat) != 1) os << '/' << denominator(impl_->rat);
            break;
        case Kind::rule:
            os << impl_->rule->describe();
            break;
    }
    return os.str();
}

// --- exact floor / comparison -----------------------------------------------

namespace {

// floor of an unknown value confined to the open interval (lo, hi);
// nullopt when the interval does not pin the floor down.
std::optional<Int> floor_in_open_interval(const Rat& lo, const Rat& hi) {
    Int flo = rat_floor(lo);
    Int fhi = rat_floor(hi);
    if (Rat(fhi) == hi) --fhi;  // the right endpoint is excluded
    if (flo == fhi) return flo;
    return std::nullopt;
}

Int rule_floor_n(const AlphaSource& a, const Int& n) {
    ConvergentTable& t = a.table();
    t.extend_to_index(0);
    for (;;) {
        std::size_t m = t.materialized() - 1;
        auto [lo, hi] = t.interval_at(m);
        if (auto f = floor_in_open_interval(Rat(n) * lo, Rat(n) * hi)) return *f;
        if (!t.try_extend_to_index(m + 1))
            throw InsufficientPrecision(
                "floor(n*alpha): quotient prefix exhausted before the floor was decided (n=" +
                n.str() + ")");
    }
}

Ordering rule_compare(const AlphaSource& a, const Rat& r) {
    ConvergentTable& t = a.table();
    t.extend_to_index(0);
    for (;;) {
        std::size_t m = t.materialized() - 1;
        auto [lo, hi] = t.interval_at(m);
        if (r <= lo) return Ordering::greater;  // alpha > lo >= r
        if (r >= hi) return Ordering::less;     // alpha < hi <= r
        if (!t.try_extend_to_index(m + 1))
            throw ComparisonUndecidable(
                "alpha_compare: quotient prefix exhausted before the comparison was decided");
    }
}

}  // namespace

Int floor_n_alpha(const AlphaSource& alpha, const Int& n) {
    switch (alpha.kind()) {
        case AlphaSource::Kind::rational: {
            const Rat& r = alpha.rational_value();
            return fdiv(n * numerator(r), denominator(r));
        }
        case AlphaSource::Kind::surd:
            return alpha.surd_value().floor_times(n);
        case AlphaSource::Kind::rule:
            return rule_floor_n(alpha, n);
    }
    throw std::logic_error("floor_n_alpha: bad kind");
}

Ordering alpha_compare(const AlphaSource& alpha, const Rat& r) {
    switch (alpha.kind()) {
        case AlphaSource::Kind::rational: {
            const Rat& v = alpha.rational_value();
            return v < r ? Ordering::less : v > r ? Ordering::greater : Ordering::equal;
        }
        case AlphaSource::Kind::surd:
            return alpha.surd_value().compare(r);
        case AlphaSource::Kind::rule:
            return rule_compare(alpha, r);
    }
    throw std::logic_error("alpha_compare: bad kind");
}

int linear_form_sign(const AlphaSource& alpha, const Rat& u, const Rat& v) {
    if (u == 0) return v == 0 ? 0 : (v > 0 ? 1 : -1);
    Ordering o = alpha_compare(alpha, -v / u);  // sign(u*alpha + v) = sign(u) * sign(alpha + v/u)
    int s = o == Ordering::greater ? 1 : o == Ordering::less ? -1 : 0;
    return u > 0 ? s : -s;
}

Int floor_div_alpha(const AlphaSource& alpha, const Rat& x) {
    if (x < 0) throw std::invalid_argument("floor_div_alpha: x must be nonnegative");
    if (alpha_compare(alpha, Rat(0)) != Ordering::greater)
        throw AlphaOutOfRange("floor_div_alpha: alpha must be positive");
    if (x == 0) return 0;
    switch (alpha.kind()) {
        case AlphaSource::Kind::rational:
            return rat_floor(x / alpha.rational_value());
        case AlphaSource::Kind::surd:
            return alpha.surd_value().reciprocal().times_rational(x).floor();
        case AlphaSource::Kind::rule: {
            ConvergentTable& t = alpha.table();
            t.extend_to_index(0);
            for (;;) {
                std::size_t m = t.materialized() - 1;
                auto [lo, hi] = t.interval_at(m);
                if (lo > 0) {
                    if (auto f = floor_in_open_interval(x / hi, x / lo)) return *f;
                }
                if (!t.try_extend_to_index(m + 1))
                    throw InsufficientPrecision(
                        "floor(x/alpha): quotient prefix exhausted before the floor was decided");
            }
        }
    }
    throw std::logic_error("floor_div_alpha: bad kind");
}

}  // namespace altsum
