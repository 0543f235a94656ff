#pragma once

// Modular Bernoulli evaluation: B_n mod p^R for arbitrarily large even n via
// a Voronoi-type congruence with exponent reduction. This is the performance
// kernel; the inner sum runs allocation-free on 64-bit words.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "bern/arith.hpp"

namespace bern {

struct PrimePowerResidue {
    u64 p;
    unsigned r;
    Int value;  // reduced into [0, p^r)
};

struct ModularConfig {
    u64 summation_budget = 100000000;  // maximum p^R for the Voronoi sum
};

inline ModularConfig& modular_config() {
    static ModularConfig cfg;
    return cfg;
}

namespace detail {

inline void check_odd_prime(u64 p) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("voronoi: p must be an odd prime");
}

// n-1 reduced mod phi(p^R); valid as exponent for units mod p^R.
inline u64 reduced_exponent(const Int& n, u64 p, unsigned R, u64 m) {
    Int phi(m / p * (p - 1));
    Int e = mod_reduce(n - 1, phi);
    return e.get_ui();
}

}  // namespace detail

// B_n mod p^R via (b^n - 1) B_n = n b^{n-1} sum_{a=1}^{m-1} a^{n-1} floor(ab/m)
// (mod m), m = p^R, b a primitive root mod p and p^2.
// Requires p-1 not dividing n, so b^n - 1 is a unit mod m.
inline PrimePowerResidue voronoi_bernoulli_mod(const Int& n, u64 p, unsigned R,
                                               const ModularConfig& cfg = modular_config()) {
    detail::check_odd_prime(p);
    if (n < 2 || mpz_even_p(n.get_mpz_t()) == 0)
        throw std::invalid_argument("voronoi: n must be even >= 2");
    if (mpz_divisible_ui_p(n.get_mpz_t(), p - 1))
        throw std::invalid_argument("voronoi: p-1 divides n (Clausen-von Staudt pole)");
    u64 m = 1;
    for (unsigned i = 0; i < R; ++i) {
        if (m > cfg.summation_budget / p)
            throw BudgetExceeded("voronoi: p^R exceeds summation budget");
        m *= p;
    }

    u64 b = primitive_root_mod_p2(p);
    u64 e = detail::reduced_exponent(n, p, R, m);
    bool small_n = mpz_cmp_ui(n.get_mpz_t(), R) <= 0;  // only then do p | a terms survive

    u64 sum = 0;
    for (u64 a = 1; a < m; ++a) {
        u64 q = a * b / m;  // a*b < p^R * p <= 1e8 * p, fits for p^{R+1} < 2^64
        if (a % p != 0) {
            sum = (sum + mulmod(powmod(a, e, m), q, m)) % m;
        } else if (small_n) {
            u64 exp = n.get_ui() - 1;
            sum = (sum + mulmod(powmod(a, exp, m), q, m)) % m;
        }
        // else: a^{n-1} is divisible by p^{n-1}, n-1 >= R, term vanishes mod m
    }

    u64 bn1 = powmod(b, e, m);            // b^{n-1}
    u64 d = (mulmod(bn1, b, m) + m - 1) % m;  // b^n - 1
    Int dinv = invmod(Int(d), Int(m));
    u64 nm = mod_reduce(n, Int(m)).get_ui();
    u64 v = mulmod(mulmod(nm, bn1, m), sum, m);
    PrimePowerResidue out{p, R, mod_reduce(Int(v) * dinv, Int(m))};
    return out;
}

// (B_n / n) mod p^r; well-defined by Adams since p-1 does not divide n.
inline PrimePowerResidue divided_bernoulli_mod(const Int& n, u64 p, unsigned r,
                                               const ModularConfig& cfg = modular_config()) {
    unsigned long s = ord_p(n, Int(p));
    unsigned R = r + static_cast<unsigned>(s);
    PrimePowerResidue bn = voronoi_bernoulli_mod(n, p, R, cfg);
    Int ps = pow_int(Int(p), s);
    if (!mpz_divisible_p(bn.value.get_mpz_t(), ps.get_mpz_t()))
        throw std::logic_error("divided_bernoulli_mod: Adams divisibility failed");
    Int pr = pow_int(Int(p), r);
    Int w = bn.value / ps;
    Int nprime = mod_reduce(n / ps, pr);
    return {p, r, mod_reduce(w * invmod(nprime, pr), pr)};
}

// zeta_p(1-n) = (1 - p^{n-1}) * (-B_n/n) mod p^r, for p >= 5.
inline PrimePowerResidue zeta_p_value_mod(const Int& n, u64 p, unsigned r,
                                          const ModularConfig& cfg = modular_config()) {
    if (p < 5) throw std::invalid_argument("zeta_p_value_mod: p >= 5 required");
    PrimePowerResidue d = divided_bernoulli_mod(n, p, r, cfg);
    Int pr = pow_int(Int(p), r);
    Int euler = 1;
    if (mpz_cmp_ui(n.get_mpz_t(), r) <= 0) {
        // n - 1 < r: subtract the exact power
        euler -= pow_int(Int(p), n.get_ui() - 1);
    }
    return {p, r, mod_reduce(euler * (-d.value), pr)};
}

// One pass of B_l mod p for all even l in [2, p-3]; used by the irregular
// scan where the exact cache does not reach. Entry l/2 - 1 holds B_l mod p.
inline std::vector<u64> voronoi_scan_mod_p(u64 p) {
    detail::check_odd_prime(p);
    u64 b = primitive_root_mod_p2(p);
    std::size_t count = (p - 3) / 2;  // l = 2, 4, ..., p-3
    std::vector<u64> sums(count, 0);
    for (u64 a = 1; a < p; ++a) {
        u64 q = a * b / p;
        if (q == 0) continue;
        u64 x = a;  // a^{l-1}, starting at l = 2
        u64 a2 = mulmod(a, a, p);
        for (std::size_t i = 0; i < count; ++i) {
            sums[i] = (sums[i] + mulmod(x, q, p)) % p;
            x = mulmod(x, a2, p);
        }
    }
    std::vector<u64> out(count);
    u64 bl1 = b;  // b^{l-1}
    u64 b2 = mulmod(b, b, p);
    for (std::size_t i = 0; i < count; ++i) {
        u64 l = 2 * (i + 1);
        u64 d = (mulmod(bl1, b, p) + p - 1) % p;  // b^l - 1
        u64 dinv = powmod(d, p - 2, p);
        out[i] = mulmod(mulmod(mulmod(l % p, bl1, p), sums[i], p), dinv, p);
        bl1 = mulmod(bl1, b2, p);
    }
    return out;
}

}  // namespace bern
