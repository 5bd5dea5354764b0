#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "altsum/cf.hpp"
#include "altsum/realnum.hpp"

namespace altsum {

/// Digits of a nonnegative integer in the continuant numeration of one alpha:
/// N = sum_i z[i] * q_i.  Digits are stored least-significant first (z[0]
/// multiplies q_0 = 1) with no trailing zeros; the canonical display order is
/// most-significant first, "(Z_I,...,Z_0)", and the empty tuple "()" is zero.
struct CfeDigits {
    AlphaSource alpha;
    std::vector<Int> z;

    std::size_t top_index() const { return z.empty() ? 0 : z.size() - 1; }
};

/// Greedy (lexicographically first, least-significant-digit order) encoding of
/// N >= 0.  Greedy here means: repeatedly take the largest continuant not
/// exceeding the remainder, preferring the larger index on ties.
CfeDigits cfe_encode(const AlphaSource& alpha, const Int& n);

/// Exact value sum_i z[i] * q_i of a digit string (digits need not be canonical).
Int cfe_decode(const CfeDigits& d);

struct CfeValidation {
    bool valid = true;
    std::string rule;       ///< first violated rule name, empty when valid
    std::size_t index = 0;  ///< digit index where it failed
};

/// Check a raw digit sequence (least-significant first) against the numeration
/// rules for alpha: digits nonnegative, z[0] < a_1 + ... bound form
/// z[i] <= a_{i+1} - (z[i-1] > 0 ? 1 : 0), with z[-1] treated as 0.
/// Reports the first violated rule.
CfeValidation cfe_validate(const AlphaSource& alpha, const std::vector<Int>& z);

/// Exhaustively confirm, for every 0 <= n <= n_max: cfe_encode(n) decodes back
/// to n, passes cfe_validate, and the encoding is order-isomorphic (digit
/// strings compared most-significant first, zero-padded, increase with n).
bool cfe_equiv_check(const AlphaSource& alpha, const Int& n_max);

/// Canonical display, most-significant digit first: "(1,6,3)"; zero is "()".
std::string cfe_to_string(const CfeDigits& d);

}  // namespace altsum
