#pragma once

// Integer factorization at desk scale: trial division up to a bound, then
// Brent's cycle-finding variant of Pollard rho with a fixed seed. Cofactors
// that resist the configured effort are returned flagged incomplete.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "bern/arith.hpp"

namespace bern {

struct FactoredInteger {
    Int value;
    std::vector<std::pair<Int, unsigned long>> factors;  // (prime, exponent), primes ascending
    bool complete = true;
    // When incomplete, the unfactored composite cofactor.
    Int residual = 1;

    Int reassembled() const {
        Int r = residual;
        for (const auto& [p, e] : factors) r *= pow_int(p, e);
        return r;
    }
};

struct FactorConfig {
    u64 trial_bound = 100000;
    unsigned rho_rounds = 64;        // restarts with varied polynomial offset
    u64 rho_iterations = 1u << 22;   // per round
    unsigned long seed = 42;
};

namespace detail {

// Brent's improvement of Pollard rho; returns a nontrivial factor or 0.
inline Int rho_brent(const Int& n, gmp_randclass& rng, u64 max_iter) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    Int y = rng.get_z_range(n - 3) + 2;
    Int c = rng.get_z_range(n - 2) + 1;
    Int x, ys, q = 1, g = 1;
    const u64 m = 128;
    u64 it = 0;
    for (u64 r = 1; g == 1 && it < max_iter; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
        for (u64 k = 0; k < r && g == 1 && it < max_iter; k += m) {
            ys = y;
            u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Int d = x - y;
                if (d < 0) d = -d;
                q = q * d % n;
            }
            it += lim;
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) {
        // Backtrack one multiplication at a time.
        do {
            ys = (ys * ys + c) % n;
            Int d = x - ys;
            if (d < 0) d = -d;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n || g == 1) return Int(0);
    return g;
}

inline void factor_rec(const Int& n, std::vector<Int>& primes, std::vector<Int>& stuck,
                       gmp_randclass& rng, const FactorConfig& cfg, unsigned depth) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    // Scale effort down with operand size: rho cost per step grows with the
    // square of the limb count while the reachable factor range stays the
    // same, so large composites get a proportionally shorter leash.
    std::size_t limbs = mpz_size(n.get_mpz_t());
    u64 scale = limbs <= 8 ? 1 : (limbs / 8) * (limbs / 8);
    u64 budget = std::max<u64>(cfg.rho_iterations / scale, 1024);
    for (unsigned round = 0; round < cfg.rho_rounds; ++round) {
        Int g = rho_brent(n, rng, budget);
        if (g != 0) {
            factor_rec(g, primes, stuck, rng, cfg, depth + 1);
            factor_rec(n / g, primes, stuck, rng, cfg, depth + 1);
            return;
        }
    }
    stuck.push_back(n);
}

}  // namespace detail

inline FactoredInteger factorize(const Int& N, const FactorConfig& cfg = {}) {
    if (N < 1) throw std::invalid_argument("factorize: N must be positive");
    FactoredInteger out;
    out.value = N;
    if (N == 1) return out;

    Int n = N;
    std::vector<Int> primes;
    for (u64 d = 2; d * d <= cfg.trial_bound * cfg.trial_bound; d = (d == 2 ? 3 : d + 2)) {
        if (d > cfg.trial_bound) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            primes.push_back(Int(d));
            n /= static_cast<unsigned long>(d);
        }
        if (n == 1) break;
    }
    if (n > 1) {
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(cfg.seed);
        std::vector<Int> stuck;
        detail::factor_rec(n, primes, stuck, rng, cfg, 0);
        if (!stuck.empty()) {
            out.complete = false;
            out.residual = 1;
            for (const auto& s : stuck) out.residual *= s;
        }
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], j - i);
        i = j;
    }
    return out;
}

}  // namespace bern
