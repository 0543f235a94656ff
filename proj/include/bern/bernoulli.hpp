#pragma once

// Exact Bernoulli arithmetic. The shared cache grows on demand and every
// value is computed by two independent routes: the defining convolution
// recurrence over rationals and the tangent-number recurrence (integer-only,
// combined with the Clausen-von Staudt denominator). Any disagreement is a
// hard failure.

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "bern/arith.hpp"

namespace bern {

// denom(B_n) = prod of primes p with p-1 | n
inline Int clausen_denominator(unsigned long n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("clausen_denominator: n must be even >= 2");
    Int d = 1;
    for (unsigned long q = 1; q * q <= n; ++q) {
        if (n % q != 0) continue;
        for (unsigned long div : {q, n / q}) {
            if (is_prime_u64(div + 1) && mpz_divisible_ui_p(d.get_mpz_t(), div + 1) == 0)
                d *= (div + 1);
        }
    }
    return d;
}

namespace detail {

// Tangent numbers T_1..T_k by the triangle recurrence;
// B_{2j} = (-1)^{j-1} * 2j * T_j / (4^j (4^j - 1)).
inline std::vector<Int> tangent_numbers(unsigned long k) {
    std::vector<Int> t(k + 1);
    if (k == 0) return t;
    t[1] = 1;
    for (unsigned long i = 2; i <= k; ++i) t[i] = (i - 1) * t[i - 1];
    for (unsigned long i = 2; i <= k; ++i)
        for (unsigned long j = i; j <= k; ++j)
            t[j] = (j - i) * t[j - 1] + (j - i + 2) * t[j];
    return t;
}

inline Rat bernoulli_from_tangent(unsigned long j, const Int& tangent_j) {
    Int four_j = pow_int(Int(4), j);
    Rat b(Int(2 * j) * tangent_j, four_j * (four_j - 1));
    b.canonicalize();
    if (j % 2 == 0) b = -b;
    return b;
}

}  // namespace detail

// Monotone cache of B_0..B_max; concurrent readers, exclusive growth.
class BernoulliCache {
  public:
    static BernoulliCache& global() {
        static BernoulliCache c;
        return c;
    }

    Rat get(unsigned long n) {
        {
            std::shared_lock lk(mu_);
            if (n < b_.size()) return b_[n];
        }
        std::unique_lock lk(mu_);
        if (n >= b_.size()) grow(n);
        return b_[n];
    }

    unsigned long computed_up_to() const {
        std::shared_lock lk(mu_);
        return b_.empty() ? 0 : b_.size() - 1;
    }

  private:
    mutable std::shared_mutex mu_;
    std::vector<Rat> b_;

    // Grow to at least `target`, doubling to amortize the O(n^2) recurrence.
    void grow(unsigned long target) {
        unsigned long cur = b_.empty() ? 0 : b_.size() - 1;
        unsigned long to = std::max<unsigned long>({target, 2 * cur, 16});

        // Common denominator for the convolution pass: every denominator of
        // B_j, j <= to, divides the primorial of to+1.
        Int lcm = 1;
        for (u32 p : primes_up_to(static_cast<u32>(to + 1))) lcm *= p;

        std::vector<Rat> nb(to + 1);
        std::vector<Int> scaled(to + 1);  // B_j * lcm, exact
        nb[0] = 1;
        scaled[0] = lcm;
        for (unsigned long m = 1; m <= to; ++m) {
            if (m > 1 && m % 2 == 1) {
                nb[m] = 0;
                scaled[m] = 0;
                continue;
            }
            Int acc = 0;
            Int c = 1;  // C(m+1, j), updated incrementally
            for (unsigned long j = 0; j < m; ++j) {
                if (scaled[j] != 0) acc += c * scaled[j];
                c *= (m + 1 - j);
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j + 1);
            }
            Rat bm(-acc, Int(m + 1) * lcm);
            bm.canonicalize();
            nb[m] = bm;
            if (!mpz_divisible_ui_p(acc.get_mpz_t(), m + 1))
                throw std::logic_error("bernoulli: convolution row not divisible by m+1");
            acc = -acc;
            mpz_divexact_ui(scaled[m].get_mpz_t(), acc.get_mpz_t(), m + 1);
        }

        // Independent route: tangent numbers. Disagreement is a hard failure.
        auto tang = detail::tangent_numbers(to / 2);
        for (unsigned long j = 1; 2 * j <= to; ++j) {
            if (detail::bernoulli_from_tangent(j, tang[j]) != nb[2 * j])
                throw std::logic_error("bernoulli: convolution and tangent routes disagree");
        }
        for (unsigned long m = 2; m <= to; m += 2) {
            if (Int(nb[m].get_den()) != clausen_denominator(m))
                throw std::logic_error("bernoulli: denominator fails Clausen-von Staudt");
        }
        b_ = std::move(nb);
    }
};

inline Rat bernoulli_exact(unsigned long n) { return BernoulliCache::global().get(n); }

inline Rat divided_bernoulli_exact(unsigned long n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("divided_bernoulli_exact: n must be even >= 2");
    Rat r = bernoulli_exact(n) / static_cast<long>(n);
    r.canonicalize();
    return r;
}

// B_n = Lambda_n / V_n with gcd(Lambda, V) = 1 and V squarefree.
struct BernoulliSplit {
    unsigned long n;
    Int lambda;
    Int v;
};

inline BernoulliSplit split(unsigned long n) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("split: n must be even >= 2");
    Rat b = bernoulli_exact(n);
    BernoulliSplit s{n, Int(b.get_num()), Int(b.get_den())};
    if (s.v != clausen_denominator(n)) throw std::logic_error("split: V_n mismatch");
    return s;
}

// S_n(m) = sum_{v=0}^{m-1} v^n by direct summation.
inline Int power_sum_exact(unsigned long n, const Int& m, u64 work_bound = 10000000) {
    if (n < 1 || m < 1) throw std::invalid_argument("power_sum_exact: need n,m >= 1");
    if (m > work_bound)
        throw BudgetExceeded("power_sum_exact: m exceeds work bound; use faulhaber_power_sum");
    Int acc = 0, t;
    unsigned long mm = m.get_ui();
    for (unsigned long v = 1; v < mm; ++v) {
        mpz_ui_pow_ui(t.get_mpz_t(), v, n);
        acc += t;
    }
    return acc;
}

// S_n(m) mod M via the closed-form Bernoulli expansion, evaluated exactly
// over rationals (the total is an integer).
inline Int faulhaber_power_sum(unsigned long n, const Int& m, const Int& M) {
    if (n < 10 || n % 2 != 0) throw std::invalid_argument("faulhaber_power_sum: n must be even >= 10");
    if (m < 1 || M < 1) throw std::invalid_argument("faulhaber_power_sum: need m, M >= 1");
    // S_n(m) = 1/(n+1) sum_{j=0}^{n} C(n+1,j) B_j m^{n+1-j}
    Rat acc = 0;
    Int c = 1;
    Int mp = pow_int(m, n + 1);
    for (unsigned long j = 0; j <= n; ++j) {
        Rat bj = bernoulli_exact(j);
        if (bj != 0) {
            Rat term(c * mp, 1);
            acc += term * bj;
        }
        c *= (n + 1 - j);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), j + 1);
        mpz_divexact(mp.get_mpz_t(), mp.get_mpz_t(), m.get_mpz_t());
    }
    acc /= static_cast<long>(n + 1);
    acc.canonicalize();
    if (acc.get_den() != 1) throw std::logic_error("faulhaber_power_sum: non-integer total");
    return mod_reduce(Int(acc.get_num()), M);
}

}  // namespace bern
