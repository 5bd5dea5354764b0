#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace altsum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Ordering { less, equal, greater };

inline Ordering ordering_of(int sign) {
    return sign < 0 ? Ordering::less : sign > 0 ? Ordering::greater : Ordering::equal;
}

inline Ordering flip(Ordering o) {
    return o == Ordering::less ? Ordering::greater
         : o == Ordering::greater ? Ordering::less : Ordering::equal;
}

inline int sign_of(const Int& x) { return x.sign(); }

inline bool is_odd(const Int& x) { return bit_test(x, 0); }

/// Floor division: largest integer f with f*b <= a.  b must be nonzero.
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Floored remainder, in [0, |b|).
inline Int fmod_floor(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

/// Integer square root: largest s with s*s <= x.  Requires x >= 0.
inline Int isqrt(const Int& x) {
    if (x < 0) throw std::domain_error("isqrt: negative argument");
    return sqrt(x);
}

inline bool is_perfect_square(const Int& x, Int* root = nullptr) {
    if (x < 0) return false;
    Int s = isqrt(x);
    if (root) *root = s;
    return s * s == x;
}

inline Int rat_floor(const Rat& r) { return fdiv(numerator(r), denominator(r)); }

}  // namespace altsum
