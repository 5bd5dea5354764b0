#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "altsum/errors.hpp"
#include "altsum/numeric.hpp"

namespace altsum {

class ConvergentTable;

/// A real number of the form (P + sqrt(D)) / Q with integer P, D >= 0, Q != 0.
///
/// Construction folds a perfect-square radicand into P (leaving D == 0), so
/// is_rational() is simply D == 0, and removes common integer content.  Q may
/// be negative: (A - B*sqrt(D))/C with B > 0 is stored as (-A + sqrt(B^2 D))/(-C).
/// Equality is algebraic (value equality), not representational.
class QuadraticSurd {
public:
    QuadraticSurd(Int p, Int d, Int q);

    /// Value (a + b*sqrt(d)) / c with any integer b, c != 0.
    static QuadraticSurd from_parts(const Int& a, const Int& b, const Int& c, const Int& d);

    const Int& p() const { return p_; }
    const Int& d() const { return d_; }
    const Int& q() const { return q_; }

    bool is_rational() const { return d_ == 0; }
    Rat rational_value() const;  ///< requires is_rational()

    int sign() const;                       ///< sign of the value
    Ordering compare(const Rat& r) const;   ///< exact three-way value comparison
    bool operator==(const QuadraticSurd& o) const;

    Int floor() const;
    Int floor_times(const Int& n) const;    ///< floor(n * value), n >= 1

    QuadraticSurd plus_rational(const Rat& t) const;
    QuadraticSurd times_rational(const Rat& t) const;  ///< t != 0
    QuadraticSurd reciprocal() const;                  ///< value != 0
    /// Product; the radicands must agree up to a square factor.
    QuadraticSurd times(const QuadraticSurd& o) const;

private:
    Int p_, d_, q_;
};

/// Expand (a + b*sqrt(d))^e for integer e >= 0 as a pair (A, B) with
/// value A + B*sqrt(d).
std::pair<Int, Int> surd_pair_pow(const Int& a, const Int& b, const Int& d, unsigned long long e);

/// A symbolic rule giving the partial quotients [a0; t_1, t_2, ...] directly.
/// Tail terms must all be >= 1.  An explicit list is a *finite known prefix of
/// an irrational number*: operations refine against it and raise
/// InsufficientPrecision when the prefix cannot decide, never approximate.
class QuotientRule {
public:
    enum class Tail { explicit_list, arithmetic, constant };

    static QuotientRule explicit_list(Int a0, std::vector<Int> terms);
    static QuotientRule arithmetic(Int a0, Int first, Int step);  ///< t_k = first + step*(k-1)
    static QuotientRule constant(Int a0, Int value);

    Tail tail_kind() const { return kind_; }
    const Int& a0() const { return a0_; }
    /// Tail term t_i for i >= 1; nullopt when an explicit list is exhausted.
    std::optional<Int> term(std::size_t i) const;

    const std::vector<Int>& list() const { return list_; }
    const Int& first() const { return first_; }
    const Int& step() const { return step_; }

    QuotientRule with_a0(Int a0) const;
    std::string describe() const;

private:
    QuotientRule() = default;
    Tail kind_ = Tail::constant;
    Int a0_;
    std::vector<Int> list_;
    Int first_, step_;
};

/// Pull-based partial-quotient stream; nullopt marks a finite stream's end.
class QuotientCursor {
public:
    virtual ~QuotientCursor() = default;
    virtual std::optional<Int> next() = 0;
};

/// A real number alpha given exactly, in one of three ways: a quadratic surd,
/// a rational p/q, or a quotient rule.  Copies share state (and the lazily
/// built ConvergentTable).  A surd with perfect-square D collapses to the
/// rational kind at construction.
class AlphaSource {
public:
    enum class Kind { surd, rational, rule };

    static AlphaSource surd(const Int& p, const Int& d, const Int& q);
    static AlphaSource from_surd(const QuadraticSurd& s);
    static AlphaSource rational(const Int& p, const Int& q);
    static AlphaSource rational(const Rat& r);
    static AlphaSource rule(QuotientRule r);

    Kind kind() const;
    bool is_irrational() const { return kind() != Kind::rational; }

    const QuadraticSurd& surd_value() const;  ///< requires kind() == surd
    const Rat& rational_value() const;        ///< requires kind() == rational
    const QuotientRule& rule_value() const;   ///< requires kind() == rule

    /// Largest quotient index the table may materialize before raising
    /// InsufficientPrecision.  Defaults to 10000.
    std::size_t precision_cap() const;
    void set_precision_cap(std::size_t cap) const;

    /// The shared, lazily constructed convergent table for this alpha.
    ConvergentTable& table() const;

    /// alpha + t for integer t, same kind.
    AlphaSource shifted(const Int& t) const;

    /// Fresh quotient stream for this alpha (independent of the table).
    std::unique_ptr<QuotientCursor> quotient_cursor() const;

    /// Canonical textual form, re-parseable by parse_alpha.
    std::string describe() const;

private:
    struct Data;
    explicit AlphaSource(std::shared_ptr<Data> d) : impl_(std::move(d)) {}
    std::shared_ptr<Data> impl_;
};

/// Exact floor(n * alpha) for n >= 1.
Int floor_n_alpha(const AlphaSource& alpha, const Int& n);

/// Exact three-way comparison of alpha with a rational.
Ordering alpha_compare(const AlphaSource& alpha, const Rat& r);

/// Exact sign of the linear form u*alpha + v with rational u, v.
int linear_form_sign(const AlphaSource& alpha, const Rat& u, const Rat& v);

/// Exact floor(x / alpha) for rational x; requires alpha > 0.
Int floor_div_alpha(const AlphaSource& alpha, const Rat& x);

/// First `count` partial quotients of an irrational quadratic surd.
/// Raises PerfectSquareInput when the value is rational.
std::vector<Int> surd_partial_quotients(const QuadraticSurd& s, std::size_t count);

/// Parse an alpha spec:
///   "sqrt(D)"  |  "(P+sqrt(D))/Q"  |  "p/q"  |  "n"
///   "[a0;a1,a2,...]"  |  "[a0;c+d*k]"  |  "@path" (quotient list file)
AlphaSource parse_alpha(const std::string& text);

}  // namespace altsum
