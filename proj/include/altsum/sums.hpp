#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "altsum/ostrowski.hpp"
#include "altsum/realnum.hpp"

namespace altsum {

/// S_N(alpha) = sum_{n=1}^{N} (-1)^{floor(n*alpha)}, exact, one floor per term.
/// Reference implementation; everything faster is checked against it.
Int s_naive(const AlphaSource& alpha, const Int& n);

/// The full prefix S_0..S_N as machine integers (|S_n| <= n).  Same arithmetic
/// as s_naive, recorded cumulatively.  Requires n_max to fit the vector.
std::vector<long long> s_naive_prefix(const AlphaSource& alpha, std::uint64_t n_max);

struct SeriesPoint {
    std::uint64_t n;
    long long s;
};

struct SeriesStats {
    long long min_s = 0, max_s = 0;
    std::uint64_t argmin = 0, argmax = 0;  ///< first n attaining each extreme
};

/// Incremental exact stream of (n, S_n) for n = 1..n_max.  Internally steps
/// floor parities through residue arithmetic on one (rational alpha) or two
/// bracketing convergents (irrational alpha) — no per-term floor computation,
/// no floating point.  next() returns false after n_max points.
class SumSeries {
public:
    SumSeries(const AlphaSource& alpha, std::uint64_t n_max);
    ~SumSeries();
    SumSeries(SumSeries&&) noexcept;
    SumSeries& operator=(SumSeries&&) noexcept;

    bool next(SeriesPoint& out);
    const SeriesStats& stats() const;  ///< over points produced so far (S_0 included)

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

/// Closed-form S_N via the continuant-digit sum: with digits Z_i of N,
/// S_N = - sum over even i with Z_i odd of (-1)^{sigma_i}, sigma_i = parity of
/// the digits above i.  Requires the parity hypothesis (a_0 odd, a_i even for
/// i >= 1), checked over all materialized quotients — symbolically for
/// rule-backed alpha — and raises HypothesisViolated otherwise.  O(log N).
Int s_fast(const AlphaSource& alpha, const Int& n);

/// Verify the parity hypothesis as s_fast would for an answer needing table
/// index `through`; raises HypothesisViolated at the first offending index.
void require_parity_hypothesis(const AlphaSource& alpha, std::size_t through);

/// A value in quarter-integers: value() = quarters / 4.  Holds renormalized
/// sums, which are always congruent to 1 quarter mod 4.
struct QuarterValue {
    Int quarters;
    Rat value() const { return Rat(quarters, 4); }
    bool operator==(const QuarterValue&) const = default;
};

/// Renormalized sum S(alpha; x) = 1/4 + sum_{0 < n*alpha <= x} (-1)^{floor... }:
/// equal to 1/4 + S_M(alpha) with M = floor(x / alpha).  Requires alpha > 0,
/// x >= 0.
QuarterValue s_renorm(const AlphaSource& alpha, const Rat& x);

/// S(alpha; x) + S(beta; x) with beta = alpha/(alpha-1) (exact surd algebra):
/// always +-1/2 for irrational alpha > 1.  Surd-backed alpha only.
QuarterValue idea1_residual(const AlphaSource& alpha, const Rat& x);

/// Transport identity: S(beta; x) with the sum over n*beta <= x equals the same
/// count-and-sign structure for beta - 2m.  Checks
/// S_M(beta) == S_M(beta - 2m) with M = floor(x / beta); requires beta > 2m > 0.
bool idea2_transport_check(const AlphaSource& beta, const Int& m, const Rat& x);

struct Idea3Result {
    bool holds;
    Int q;  ///< largest continuant of alpha strictly below N
    Int p;  ///< numerator paired with q
};

/// Splitting step: with q the largest continuant < N (ties to the larger index)
/// and p its numerator, S_N = S_q + (-1)^p * S_{N-q}.  Requires N >= 2.
Idea3Result idea3_step_check(const AlphaSource& alpha, const Int& n);

/// idea3_step_check for every 2 <= N <= n_max, sharing one naive prefix.
bool idea3_range_check(const AlphaSource& alpha, std::uint64_t n_max);

enum class RecordMethod { closed_form, floor_power, search };

struct RecordEntry {
    long long k;  ///< nonzero record level
    Int r;        ///< R_k = least N with S_N = k
    RecordMethod method;
};

/// Continuant closed form: R_k = [k>0] q_{2k-1} + sum_{i=0}^{2|k|-2} q_i.
/// Requires the parity hypothesis through index 2|k|-1.
RecordEntry record_closed(const AlphaSource& alpha, long long k);

/// sqrt(2) specialization: R_k = floor((1+sqrt 2)^{2k+1} / 4) for k > 0 and
/// floor((1+sqrt 2)^{-2k} / 4) for k < 0, via exact (A + B sqrt 2) powering.
RecordEntry record_sqrt2_closed(long long k);

/// Scan the series once up to n_max recording the first N attaining each
/// k in [k_min, k_max] (k = 0 excluded); sorted by k, unattained levels absent.
std::vector<RecordEntry> record_search(const AlphaSource& alpha, long long k_min,
                                       long long k_max, std::uint64_t n_max);

struct BoundReport {
    Int n;
    Int abs_s;
    bool holds;
    /// Certificate gamma^{2(|S|-1)} = cert_a + cert_b * sqrt(m^2+1); the bound
    /// holds iff that value is <= N, decided in integers.
    Int cert_a, cert_b;
};

/// Upper bound |S_N(alpha_m)| <= log N / (2 log gamma_m) + 1 with
/// gamma_m = m + sqrt(m^2+1), restated exactly as gamma_m^{2(|S|-1)} <= N.
/// The caller supplies the already-computed S (so any method can be audited).
BoundReport bound_check_upper(long long m, const Int& n, const Int& s);

/// Sharpness at alpha_1 = sqrt(2): for k < 0, the record N = R_k satisfies
/// (1 + sqrt 2)^{2|k|} > 4N, i.e. the upper bound is tight to within 1.
bool bound_check_lower_sqrt2(long long k);

struct RationalProfile {
    Rat limit;    ///< lim S_N / N
    bool bounded; ///< S_N bounded iff true
    Int period;   ///< S_{N+period} - S_N is constant (p even) or zero (p odd)
};

/// Behaviour of S_N(p/q): p odd => limit 0, bounded, period 2q; p even =>
/// limit S_q/q, bounded iff S_q = 0, period q.
RationalProfile rational_profile(const Rat& alpha);

}  // namespace altsum
