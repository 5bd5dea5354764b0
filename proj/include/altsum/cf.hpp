#pragma once

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <deque>
#include <utility>

#include "altsum/realnum.hpp"

namespace altsum {

/// Materialized partial quotients a_i and continuant pairs (p_i, q_i) of one
/// alpha, extended on demand from a QuotientCursor.  Recurrences use the seeds
/// p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0, so q_0 = 1 always.
///
/// Thread-safe: extension takes an exclusive lock, reads a shared one, and a
/// re-extension request that is already satisfied is a no-op, so concurrent
/// extension is equivalent to some sequential order.
class ConvergentTable {
public:
    ConvergentTable(std::unique_ptr<QuotientCursor> cursor, std::size_t index_cap);

    /// Termination guard: indices beyond the cap raise InsufficientPrecision.
    void set_index_cap(std::size_t cap);

    /// Number of materialized indices (indices 0 .. materialized()-1 are valid).
    std::size_t materialized() const;

    /// True once the underlying stream reported its end (finite sources only).
    bool stream_ended() const;

    /// Materialize through index i; false if the stream ended first.
    /// Raises InsufficientPrecision if i exceeds the index cap.
    bool try_extend_to_index(std::size_t i);

    /// Materialize through index i or raise InsufficientPrecision.
    void extend_to_index(std::size_t i);

    /// Least index I with q_I > n (extending as needed).
    std::size_t extend_until_q_exceeds(const Int& n);

    Int a(std::size_t i) const;
    Int p(std::size_t i) const;
    Int q(std::size_t i) const;

    /// Seed accessors: k = -1 or -2.
    Int p_seed(int k) const;
    Int q_seed(int k) const;

    /// Open interval (lo, hi) certainly containing alpha, derived from the
    /// prefix a_0..a_m: endpoints p_m/q_m and (p_m + p_{m-1})/(q_m + q_{m-1}),
    /// ordered.  Requires index m materialized.
    std::pair<Rat, Rat> interval_at(std::size_t m) const;

private:
    bool extend_one_locked();
    void check_index(std::size_t i) const;

    mutable std::shared_mutex mu_;
    std::unique_ptr<QuotientCursor> cursor_;
    std::deque<Int> a_;
    std::deque<Int> p_;  // offset by 2: p_[0] = p_{-2}, p_[1] = p_{-1}
    std::deque<Int> q_;
    bool ended_ = false;
    std::size_t cap_;
};

/// Check the determinant identity p_i q_{i-1} - p_{i-1} q_i = (-1)^{i-1}
/// for all materialized i <= through.
bool determinant_identity_holds(const ConvergentTable& t, std::size_t through);

/// Best-approximation property of convergent i, in fractional-part form: with
/// e_i = |q_i alpha - p_i|, every n in [1, n_max] (requires 1 <= n_max < q_{i+1})
/// satisfies e_i <= frac(n alpha) <= 1 - e_i, with equality on either side only
/// at n = q_i.  Verified by exact sign evaluations of linear forms in alpha;
/// intended for small n_max.
bool best_approx_check(const AlphaSource& alpha, std::size_t i, const Int& n_max);

}  // namespace altsum
