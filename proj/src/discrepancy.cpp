#include "altsum/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "altsum/cf.hpp"
#include "altsum/errors.hpp"
#include "altsum/sums.hpp"

namespace altsum {

namespace {

double alpha_approx(const AlphaSource& alpha) {
    switch (alpha.kind()) {
        case AlphaSource::Kind::rational:
            return alpha.rational_value().convert_to<double>();
        case AlphaSource::Kind::surd: {
            const QuadraticSurd& s = alpha.surd_value();
            return (s.p().convert_to<double>() + std::sqrt(s.d().convert_to<double>())) /
                   s.q().convert_to<double>();
        }
        case AlphaSource::Kind::rule: {
            ConvergentTable& t = alpha.table();
            t.extend_to_index(2);
            return t.interval_at(t.materialized() - 1).first.convert_to<double>();
        }
    }
    return 0.0;
}

Ordering ordering_of_sign(int s) {
    return s < 0 ? Ordering::less : (s > 0 ? Ordering::greater : Ordering::equal);
}

}  // namespace

PointSet PointSet::from_rationals(std::vector<Rat> pts) {
    for (const Rat& x : pts)
        if (x < 0 || x >= 1)
            throw std::invalid_argument("PointSet: points must lie in [0, 1)");
    PointSet ps;
    ps.rat_pts_ = std::move(pts);
    return ps;
}

PointSet PointSet::halves_of_multiples(const AlphaSource& alpha, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("PointSet: need at least one point");
    PointSet ps;
    if (alpha.kind() == AlphaSource::Kind::rational) {
        const Rat& v = alpha.rational_value();
        Int two_q = 2 * denominator(v);
        ps.rat_pts_.reserve(static_cast<std::size_t>(n));
        for (std::uint64_t k = 1; k <= n; ++k)
            ps.rat_pts_.emplace_back(fmod_floor(Int(k) * numerator(v), two_q), two_q);
        return ps;
    }
    ps.alpha_ = alpha;
    ps.sym_.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t k = 1; k <= n; ++k) {
        Int g = fdiv(floor_n_alpha(alpha, Int(k)), 2);
        ps.sym_.emplace_back(Int(k), std::move(g));
    }
    return ps;
}

std::size_t PointSet::size() const { return is_rational() ? rat_pts_.size() : sym_.size(); }

bool PointSet::is_rational() const { return !alpha_.has_value(); }

std::pair<Rat, Rat> PointSet::form(std::size_t i) const {
    if (is_rational()) return {Rat(0), rat_pts_.at(i)};
    const auto& [n, g] = sym_.at(i);
    return {Rat(n, Int(2)), Rat(Int(-g))};
}

Ordering PointSet::compare_point(std::size_t i, const Rat& x) const {
    if (is_rational()) {
        const Rat& p = rat_pts_.at(i);
        return p < x ? Ordering::less : (p > x ? Ordering::greater : Ordering::equal);
    }
    auto [u, v] = form(i);
    return ordering_of_sign(linear_form_sign(*alpha_, u, v - x));
}

Ordering PointSet::compare_points(std::size_t i, std::size_t j) const {
    if (is_rational()) {
        const Rat& a = rat_pts_.at(i);
        const Rat& b = rat_pts_.at(j);
        return a < b ? Ordering::less : (a > b ? Ordering::greater : Ordering::equal);
    }
    auto [ui, vi] = form(i);
    auto [uj, vj] = form(j);
    return ordering_of_sign(linear_form_sign(*alpha_, ui - uj, vi - vj));
}

std::size_t PointSet::count_below(const Rat& x) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
        if (compare_point(i, x) == Ordering::less) ++c;
    return c;
}

std::vector<std::size_t> PointSet::sorted_order() const {
    std::vector<std::size_t> idx(size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
        return compare_points(a, b) == Ordering::less;
    });
    return idx;
}

const AlphaSource& PointSet::alpha() const {
    if (is_rational()) throw std::logic_error("PointSet: rational point set has no alpha");
    return *alpha_;
}

SupValue::SupValue(Rat u, Rat v, std::optional<AlphaSource> alpha)
    : alpha_(std::move(alpha)), u_(std::move(u)), v_(std::move(v)) {
    // Fold away the symbolic part whenever the value is in fact rational.
    if (alpha_ && alpha_->kind() == AlphaSource::Kind::rational) {
        v_ += u_ * alpha_->rational_value();
        u_ = 0;
    }
    if (u_ == 0) alpha_.reset();
    if (u_ != 0 && !alpha_)
        throw std::invalid_argument("SupValue: a symbolic part needs its alpha");
}

bool SupValue::is_rational() const { return u_ == 0; }

Rat SupValue::as_rational() const {
    if (!is_rational()) throw std::logic_error("SupValue: value is irrational");
    return v_;
}

Ordering SupValue::compare(const Rat& r) const {
    if (is_rational()) return v_ < r ? Ordering::less : (v_ > r ? Ordering::greater : Ordering::equal);
    return ordering_of_sign(linear_form_sign(*alpha_, u_, v_ - r));
}

Ordering SupValue::compare(const SupValue& o) const {
    if (is_rational()) return flip(o.compare(v_));
    if (o.is_rational()) return compare(o.v_);
    return ordering_of_sign(linear_form_sign(*alpha_, u_ - o.u_, v_ - o.v_));
}

double SupValue::approx() const {
    double base = v_.convert_to<double>();
    if (is_rational()) return base;
    return base + u_.convert_to<double>() * alpha_approx(*alpha_);
}

Rat d_at_point(const PointSet& ps, const Rat& x) {
    if (ps.size() == 0) throw std::invalid_argument("d_at_point: empty point set");
    if (x < 0 || x >= 1) throw std::invalid_argument("d_at_point: x must lie in [0, 1)");
    Rat freq(Int(ps.count_below(x)), Int(ps.size()));
    Rat d = x - freq;
    return d < 0 ? Rat(-d) : d;
}

SupValue star_discrepancy(const PointSet& ps) {
    std::size_t n = ps.size();
    if (n == 0) throw std::invalid_argument("star_discrepancy: empty point set");
    std::optional<AlphaSource> a;
    if (!ps.is_rational()) a = ps.alpha();
    std::vector<std::size_t> order = ps.sorted_order();
    std::optional<SupValue> best;
    for (std::size_t i = 1; i <= n; ++i) {
        auto [u, v] = ps.form(order[i - 1]);
        // Attained at x = x_(i): x_(i) - (i-1)/N.  Approached as x -> x_(i)+:
        // i/N - x_(i).  The supremum convention keeps both.
        SupValue attained(u, v - Rat(Int(i - 1), Int(n)), a);
        SupValue limit(-u, Rat(Int(i), Int(n)) - v, a);
        if (!best || best->compare(attained) == Ordering::less) best = attained;
        if (best->compare(limit) == Ordering::less) best = limit;
    }
    return *best;
}

bool identity_check(const AlphaSource& alpha, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("identity_check: N must be positive");
    PointSet ps = PointSet::halves_of_multiples(alpha, n);
    Int s = s_naive(alpha, Int(n));
    Int as = abs(s);
    if (Rat(as) != Rat(Int(2 * n)) * d_at_point(ps, Rat(1, 2))) return false;
    // |S_N| <= 2N * D*_N, i.e. D*_N >= |S_N| / (2N).
    return star_discrepancy(ps).compare(Rat(as, Int(2 * n))) != Ordering::less;
}

bool identity_range_check(const AlphaSource& alpha, std::uint64_t n_max) {
    std::vector<std::pair<Rat, Rat>> forms;  // point n as u*alpha + v at forms[n-1]
    std::vector<std::size_t> order;          // indices sorted by point value
    forms.reserve(static_cast<std::size_t>(n_max));
    long long s = 0;
    std::uint64_t c = 0;  // points strictly below 1/2, counted independently
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        Int fl = floor_n_alpha(alpha, Int(n));
        s += is_odd(fl) ? -1 : 1;
        Rat u(Int(n), Int(2));
        Rat v(-fdiv(fl, 2));
        int vs_half = linear_form_sign(alpha, u, v - Rat(1, 2));
        if (vs_half == 0) return false;  // a point at exactly 1/2 breaks strict counting
        if (vs_half < 0) ++c;
        std::size_t k = forms.size();
        forms.emplace_back(std::move(u), std::move(v));
        auto pos = std::lower_bound(order.begin(), order.end(), k,
                                    [&](std::size_t a, std::size_t b) {
                                        return linear_form_sign(alpha, forms[a].first - forms[b].first,
                                                                forms[a].second - forms[b].second) < 0;
                                    });
        order.insert(pos, k);
        long long balance = static_cast<long long>(n) - 2 * static_cast<long long>(c);
        if ((s < 0 ? -s : s) != (balance < 0 ? -balance : balance)) return false;
        // |S_N|/(2N) <= D*_N: some sorted candidate must reach the target.
        Rat target(Int(s < 0 ? -s : s), Int(2 * n));
        bool reached = false;
        for (std::size_t i = 1; i <= order.size() && !reached; ++i) {
            const auto& [ux, vx] = forms[order[i - 1]];
            reached = linear_form_sign(alpha, ux, vx - Rat(Int(i - 1), Int(n)) - target) >= 0 ||
                      linear_form_sign(alpha, -ux, Rat(Int(i), Int(n)) - vx - target) >= 0;
        }
        if (!reached) return false;
    }
    return true;
}

}  // namespace altsum
