#pragma once

// Basic number-theoretic helpers shared by all modules: modular arithmetic
// on 64-bit words, primality testing, prime sieving, p-adic valuations and
// primitive roots.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace bern {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Thrown when a computation would exceed a configured work budget. Callers
// catch this to switch to a cheaper backend.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sufficient base set for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(const Int& n) {
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline std::vector<u32> primes_up_to(u32 bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<u32> out;
    for (u32 i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = static_cast<u64>(i) * i; j <= bound; j += i) comp[j] = true;
        }
    }
    return out;
}

inline unsigned long ord_p(const Int& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("ord_p: zero has infinite valuation");
    Int t = x;
    unsigned long r = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        t /= p;
        ++r;
    }
    return r;
}

inline long ord_p(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("ord_p: zero has infinite valuation");
    return static_cast<long>(ord_p(Int(x.get_num()), p)) -
           static_cast<long>(ord_p(Int(x.get_den()), p));
}

// |x|_p = p^{-ord_p x}; |0|_p = 0.
inline Rat padic_abs(const Rat& x, const Int& p) {
    if (x == 0) return Rat(0);
    long v = ord_p(x, p);
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    Rat r = (v >= 0) ? Rat(1, pw) : Rat(pw, 1);
    r.canonicalize();
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int powmod_int(const Int& base, const Int& exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Reduce a rational with denominator coprime to m into [0, m).
inline Int mod_reduce_rat(const Rat& q, const Int& m) {
    Int num = mod_reduce(Int(q.get_num()), m);
    Int den = mod_reduce(Int(q.get_den()), m);
    return mod_reduce(num * invmod(den, m), m);
}

inline Int euler_phi(const Int& m) {
    if (m <= 0) throw std::invalid_argument("euler_phi: m must be positive");
    Int n = m, result = m;
    for (Int d = 2; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            result -= result / d;
            while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// phi(p^k) = p^{k-1} (p - 1)
inline Int phi_prime_power(const Int& p, unsigned long k) {
    if (k == 0) return Int(1);
    return pow_int(p, k - 1) * (p - 1);
}

inline std::vector<u64> distinct_prime_factors_u64(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Least g that generates (Z/p)^* and (Z/p^2)^*; for such g and p-1 not
// dividing n, b^n - 1 is a unit mod any power of p.
inline u64 primitive_root_mod_p2(u64 p) {
    if (p < 3 || !is_prime_u64(p)) throw std::invalid_argument("primitive_root_mod_p2: need odd prime");
    auto qs = distinct_prime_factors_u64(p - 1);
    u64 p2 = p * p;
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : qs) {
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (!ok) continue;
        if (powmod(g, p - 1, p2) == 1) continue;
        return g;
    }
    throw std::logic_error("primitive_root_mod_p2: none found");
}

inline Int binomial(const Int& n, unsigned long k) {
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace bern
