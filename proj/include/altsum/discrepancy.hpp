#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "altsum/realnum.hpp"

namespace altsum {

/// A finite multiset of points in [0, 1), either explicit rationals or the
/// symbolic family { <n*alpha/2> : 1 <= n <= N } whose members are linear
/// forms (n/2)*alpha - g_n with g_n = floor(n*alpha/2).  All point/point and
/// point/rational comparisons are exact.
class PointSet {
public:
    static PointSet from_rationals(std::vector<Rat> pts);
    static PointSet halves_of_multiples(const AlphaSource& alpha, std::uint64_t n);

    std::size_t size() const;
    bool is_rational() const;

    /// The i-th point as a linear form (u, v): value = u*alpha + v.
    /// Rational point sets have u = 0.
    std::pair<Rat, Rat> form(std::size_t i) const;

    Ordering compare_point(std::size_t i, const Rat& x) const;
    Ordering compare_points(std::size_t i, std::size_t j) const;

    /// Number of points strictly below x.
    std::size_t count_below(const Rat& x) const;

    /// Indices 0..size()-1 sorted by point value (stable).
    std::vector<std::size_t> sorted_order() const;

    const AlphaSource& alpha() const;  ///< requires !is_rational()

private:
    PointSet() = default;
    std::optional<AlphaSource> alpha_;
    std::vector<Rat> rat_pts_;                // rational case
    std::vector<std::pair<Int, Int>> sym_;    // symbolic case: (n, g_n)
};

/// Exact value of a linear form u*alpha + v, comparable exactly against
/// rationals and other forms over the same alpha.  Rational when u = 0 (or
/// alpha itself is rational).
class SupValue {
public:
    SupValue(Rat u, Rat v, std::optional<AlphaSource> alpha);

    bool is_rational() const;
    Rat as_rational() const;  ///< requires is_rational()

    const Rat& u() const { return u_; }
    const Rat& v() const { return v_; }

    Ordering compare(const Rat& r) const;
    Ordering compare(const SupValue& o) const;  ///< same underlying alpha

    double approx() const;  ///< display only; never used in a verdict

private:
    std::optional<AlphaSource> alpha_;
    Rat u_, v_;
};

/// Local discrepancy at x in [0, 1): | #{points < x}/N - x |, exact rational.
Rat d_at_point(const PointSet& ps, const Rat& x);

/// Star discrepancy with the strict-inequality counting convention:
/// D*_N = max_{i=1..N} max( i/N - x_(i), x_(i) - (i-1)/N ) over the sorted
/// points.  Exact; rational iff the point set is.
SupValue star_discrepancy(const PointSet& ps);

/// The identity |S_N(alpha)| = 2 N D_N(<n alpha/2>; 1/2) together with
/// D_N(.;1/2) <= D*_N, both verified exactly for this single N.
bool identity_check(const AlphaSource& alpha, std::uint64_t n);

/// identity_check for every 1 <= N <= n_max, sharing incremental state.
bool identity_range_check(const AlphaSource& alpha, std::uint64_t n_max);

}  // namespace altsum
