#include "altsum/cf.hpp"

#include <mutex>

namespace altsum {

ConvergentTable::ConvergentTable(std::unique_ptr<QuotientCursor> cursor, std::size_t index_cap)
    : cursor_(std::move(cursor)), cap_(index_cap) {
    p_ = {0, 1};  // p_{-2}, p_{-1}
    q_ = {1, 0};  // q_{-2}, q_{-1}
}

void ConvergentTable::set_index_cap(std::size_t cap) {
    std::unique_lock lk(mu_);
    cap_ = cap;
}

std::size_t ConvergentTable::materialized() const {
    std::shared_lock lk(mu_);
    return a_.size();
}

bool ConvergentTable::stream_ended() const {
    std::shared_lock lk(mu_);
    return ended_;
}

bool ConvergentTable::extend_one_locked() {
    if (ended_) return false;
    // cap_ is the largest index allowed, so cap_ + 1 quotients may materialize.
    if (a_.size() > cap_)
        throw InsufficientPrecision("convergent table: index cap " + std::to_string(cap_) +
                                    " reached");
    auto next = cursor_->next();
    if (!next) {
        ended_ = true;
        return false;
    }
    std::size_t i = a_.size();
    if (i > 0 && *next < 1)
        throw Error("convergent table: partial quotient < 1 at index " + std::to_string(i));
    a_.push_back(std::move(*next));
    p_.push_back(a_.back() * p_[i + 1] + p_[i]);
    q_.push_back(a_.back() * q_[i + 1] + q_[i]);
    return true;
}

bool ConvergentTable::try_extend_to_index(std::size_t i) {
    std::unique_lock lk(mu_);
    while (a_.size() <= i)
        if (!extend_one_locked()) return false;
    return true;
}

void ConvergentTable::extend_to_index(std::size_t i) {
    if (!try_extend_to_index(i))
        throw InsufficientPrecision("convergent table: quotient stream ended before index " +
                                    std::to_string(i));
}

std::size_t ConvergentTable::extend_until_q_exceeds(const Int& n) {
    std::unique_lock lk(mu_);
    for (std::size_t i = 0;; ++i) {
        while (a_.size() <= i)
            if (!extend_one_locked())
                throw InsufficientPrecision(
                    "convergent table: quotient stream ended with all q <= " + n.str());
        if (q_[i + 2] > n) return i;
    }
}

void ConvergentTable::check_index(std::size_t i) const {
    if (i >= a_.size())
        throw IndexOutOfRange("convergent table: index " + std::to_string(i) +
                              " not materialized");
}

Int ConvergentTable::a(std::size_t i) const {
    std::shared_lock lk(mu_);
    check_index(i);
    return a_[i];
}

Int ConvergentTable::p(std::size_t i) const {
    std::shared_lock lk(mu_);
    check_index(i);
    return p_[i + 2];
}

Int ConvergentTable::q(std::size_t i) const {
    std::shared_lock lk(mu_);
    check_index(i);
    return q_[i + 2];
}

Int ConvergentTable::p_seed(int k) const {
    if (k != -1 && k != -2) throw IndexOutOfRange("convergent table: seed index");
    return p_[k + 2];
}

Int ConvergentTable::q_seed(int k) const {
    if (k != -1 && k != -2) throw IndexOutOfRange("convergent table: seed index");
    return q_[k + 2];
}

std::pair<Rat, Rat> ConvergentTable::interval_at(std::size_t m) const {
    std::shared_lock lk(mu_);
    check_index(m);
    Rat c1(p_[m + 2], q_[m + 2]);
    Rat c2(p_[m + 2] + p_[m + 1], q_[m + 2] + q_[m + 1]);
    return c1 < c2 ? std::pair{c1, c2} : std::pair{c2, c1};
}

bool determinant_identity_holds(const ConvergentTable& t, std::size_t through) {
    for (std::size_t i = 0; i <= through; ++i) {
        Int lhs = t.p(i) * (i == 0 ? t.q_seed(-1) : t.q(i - 1)) -
                  (i == 0 ? t.p_seed(-1) : t.p(i - 1)) * t.q(i);
        if (lhs != (i % 2 == 0 ? -1 : 1)) return false;
    }
    return true;
}

bool best_approx_check(const AlphaSource& alpha, std::size_t i, const Int& n_max) {
    ConvergentTable& t = alpha.table();
    try {
        t.extend_to_index(i + 1);
    } catch (const InsufficientPrecision& e) {
        throw IndexOutOfRange(std::string("best_approx_check: ") + e.what());
    }
    if (n_max >= t.q(i + 1) || n_max < 1)
        throw std::invalid_argument("best_approx_check: need 1 <= n_max < q_{i+1}");

    // err = |q_i*alpha - p_i| as a linear form (ue, ve) in alpha
    Int pi = t.p(i), qi = t.q(i);
    int s = linear_form_sign(alpha, Rat(qi), Rat(-pi));
    if (s == 0) return false;  // alpha rational and equal to the convergent
    Rat ue = s > 0 ? Rat(qi) : Rat(-qi);
    Rat ve = s > 0 ? Rat(-pi) : Rat(pi);

    for (Int n = 1; n <= n_max; ++n) {
        Int f = floor_n_alpha(alpha, n);
        // frac = <n*alpha> as the form (n, -f); require err <= frac <= 1 - err,
        // strictly except at n = q_i.
        int low = linear_form_sign(alpha, Rat(n) - ue, Rat(-f) - ve);
        int high = linear_form_sign(alpha, -ue - Rat(n), Rat(1) - ve + Rat(f));
        if (low < 0 || high < 0) return false;
        if ((low == 0 || high == 0) && n != qi) return false;
    }
    return true;
}

}  // namespace altsum
