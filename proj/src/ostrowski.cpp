#include "altsum/ostrowski.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace altsum {

CfeDigits cfe_encode(const AlphaSource& alpha, const Int& n) {
    if (n < 0) throw std::invalid_argument("cfe_encode: N must be nonnegative");
    CfeDigits out{alpha, {}};
    if (n == 0) return out;
    ConvergentTable& t = alpha.table();
    std::size_t top = t.extend_until_q_exceeds(n);  // q_top > n >= q_{top-1}
    out.z.assign(top, 0);
    Int rem = n;
    for (std::size_t i = top; i-- > 0;) {
        Int qi = t.q(i);
        if (rem >= qi) {
            out.z[i] = rem / qi;
            rem -= out.z[i] * qi;
        }
    }
    // rem vanished because q_0 = 1; and z[top-1] >= 1 since q_{top-1} <= n
    return out;
}

Int cfe_decode(const CfeDigits& d) {
    if (d.z.empty()) return 0;
    ConvergentTable& t = d.alpha.table();
    t.extend_to_index(d.z.size() - 1);
    Int n = 0;
    for (std::size_t i = 0; i < d.z.size(); ++i) n += d.z[i] * t.q(i);
    return n;
}

CfeValidation cfe_validate(const AlphaSource& alpha, const std::vector<Int>& z) {
    ConvergentTable& t = alpha.table();
    if (!z.empty()) t.extend_to_index(z.size());  // digit i needs a_{i+1}
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] < 0) return {false, "negative-digit", i};
        Int limit = t.a(i + 1) - ((i > 0 && z[i - 1] > 0) ? 1 : 0);
        if (z[i] > limit) return {false, "digit-bound", i};
    }
    return {};
}

namespace {

// Lexicographically first (in Z_0, Z_1, ... order) valid digit string summing
// to n over indices < top; digit bounds as in cfe_validate.  Small-n oracle.
bool lex_first_digits(const ConvergentTable& t, std::size_t top, const Int& n,
                      std::vector<Int>& out) {
    std::vector<Int> cur(top, 0);
    std::function<bool(std::size_t, const Int&, bool)> rec = [&](std::size_t i, const Int& rem,
                                                                 bool prev_pos) -> bool {
        if (i == top) return rem == 0;
        Int limit = t.a(i + 1) - (prev_pos ? 1 : 0);
        Int hi = rem / t.q(i);
        if (hi < limit) limit = hi;
        for (Int z = 0; z <= limit; ++z) {
            cur[i] = z;
            if (rec(i + 1, rem - z * t.q(i), z > 0)) return true;
        }
        return false;
    };
    if (!rec(0, n, false)) return false;
    out = cur;
    return true;
}

bool digits_less_msf(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t k = len; k-- > 0;) {
        Int da = k < a.size() ? a[k] : 0;
        Int db = k < b.size() ? b[k] : 0;
        if (da != db) return da < db;
    }
    return false;
}

}  // namespace

bool cfe_equiv_check(const AlphaSource& alpha, const Int& n_max) {
    if (n_max < 0) return false;
    ConvergentTable& t = alpha.table();
    std::size_t top_all = t.extend_until_q_exceeds(n_max);
    if (top_all == 0) top_all = 1;
    t.extend_to_index(top_all);
    std::vector<Int> prev;
    for (Int n = 0; n <= n_max; ++n) {
        CfeDigits d = cfe_encode(alpha, n);
        if (cfe_decode(d) != n) return false;
        if (!cfe_validate(alpha, d.z).valid) return false;
        if (!d.z.empty() && d.z.back() == 0) return false;

        // prefix-sum characterization
        Int acc = 0;
        for (std::size_t j = 0; j < d.z.size(); ++j) {
            acc += d.z[j] * t.q(j);
            if (acc >= t.q(j + 1)) return false;
        }

        // greedy = lexicographically first valid digit string
        std::vector<Int> lex;
        if (!lex_first_digits(t, top_all, n, lex)) return false;
        while (!lex.empty() && lex.back() == 0) lex.pop_back();
        if (lex != d.z) return false;

        // recursive characterization: digits of n - q_top are the same with
        // the leading digit decremented
        if (!d.z.empty()) {
            std::size_t top = d.z.size() - 1;
            CfeDigits e = cfe_encode(alpha, n - t.q(top));
            std::vector<Int> expect = d.z;
            expect[top] -= 1;
            while (!expect.empty() && expect.back() == 0) expect.pop_back();
            if (e.z != expect) return false;
        }

        // order isomorphism
        if (n > 0 && !digits_less_msf(prev, d.z)) return false;
        prev = d.z;
    }
    return true;
}

std::string cfe_to_string(const CfeDigits& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = d.z.size(); i-- > 0;) {
        os << d.z[i];
        if (i) os << ',';
    }
    os << ')';
    return os.str();
}

}  // namespace altsum
