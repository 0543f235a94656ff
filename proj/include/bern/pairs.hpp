#pragma once

// Irregular pairs: scanning primes, Delta values, lifting pairs to higher
// order, p-adic digit notation, the order-two special-pair search and the
// pair cache file.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bern/arith.hpp"
#include "bern/bernoulli.hpp"
#include "bern/modular.hpp"

namespace bern {

struct IrregularPair {
    u64 p;
    unsigned long l;  // even, 2 <= l <= p-3, p | B_l
};

// (p, s_1, ..., s_n): index l_n = sum s_v phi(p^{v-1})
struct PairDigits {
    u64 p;
    std::vector<u64> digits;

    unsigned order() const { return static_cast<unsigned>(digits.size()); }
};

struct DeltaValue {
    u64 p;
    unsigned order;
    u64 value;  // in [0, p)

    bool singular() const { return value == 0; }
};

// Backend evaluating (B_n/n) mod p^r. The default switches between the
// exact cache and the Voronoi kernel; the zeta module supplies a
// Mahler-extrapolation backend for precisions beyond the Voronoi budget.
using DividedModFn = std::function<Int(const Int& n, u64 p, unsigned r)>;

inline Int divided_mod_exact(const Int& n, u64 p, unsigned r) {
    return mod_reduce_rat(divided_bernoulli_exact(n.get_ui()), pow_int(Int(p), r));
}

struct PairConfig {
    unsigned long exact_index_bound = 5000;  // largest index served from the exact cache
    u64 scan_exact_crossover = 400;          // scan via exact values for p <= this
    u64 special_search_default_bound = 2000;
};

inline PairConfig& pair_config() {
    static PairConfig cfg;
    return cfg;
}

inline Int divided_mod_auto(const Int& n, u64 p, unsigned r) {
    if (n.fits_ulong_p() && n.get_ui() <= pair_config().exact_index_bound)
        return divided_mod_exact(n, p, r);
    return divided_bernoulli_mod(n, p, r).value;
}

inline void validate_digits(const PairDigits& pd) {
    if (pd.digits.empty()) throw std::invalid_argument("pair: no digits");
    u64 s1 = pd.digits[0];
    if (s1 % 2 != 0 || s1 < 2 || s1 > pd.p - 3)
        throw std::invalid_argument("pair: s_1 out of range");
    for (u64 s : pd.digits)
        if (s >= pd.p) throw std::invalid_argument("pair: digit out of range");
}

inline Int index_from_digits(const PairDigits& pd) {
    validate_digits(pd);
    Int l = 0;
    for (std::size_t v = 0; v < pd.digits.size(); ++v)
        l += Int(pd.digits[v]) * phi_prime_power(Int(pd.p), static_cast<unsigned long>(v));
    return l;
}

inline PairDigits digits_from_index(u64 p, const Int& l, unsigned n) {
    if (l < 2 || l >= phi_prime_power(Int(p), n))
        throw std::invalid_argument("digits_from_index: l out of [2, phi(p^n))");
    PairDigits pd{p, {}};
    Int s1 = mod_reduce(l, Int(p - 1));
    pd.digits.push_back(s1.get_ui());
    Int q = (l - s1) / (p - 1);
    for (unsigned v = 1; v < n; ++v) {
        Int d = mod_reduce(q, Int(p));
        pd.digits.push_back(d.get_ui());
        q = (q - d) / p;
    }
    if (q != 0) throw std::logic_error("digits_from_index: leftover quotient");
    validate_digits(pd);
    return pd;
}

// All even l in [2, p-3] with p | B_l, ascending. i_1(p) is the count.
inline std::vector<IrregularPair> scan_irregular(u64 p) {
    detail::check_odd_prime(p);
    if (p < 5) return {};
    std::vector<IrregularPair> out;
    if (p <= pair_config().scan_exact_crossover) {
        for (unsigned long l = 2; l + 3 <= p; l += 2) {
            Rat b = bernoulli_exact(l);
            if (mpz_divisible_ui_p(Int(b.get_num()).get_mpz_t(), p)) out.push_back({p, l});
        }
    } else {
        auto residues = voronoi_scan_mod_p(p);
        for (std::size_t i = 0; i < residues.size(); ++i)
            if (residues[i] == 0) out.push_back({p, 2 * (i + 1)});
    }
    return out;
}

// Delta per the order-n divided difference, reduced into [0, p).
inline DeltaValue delta(const PairDigits& pd, const DividedModFn& eval = divided_mod_auto) {
    validate_digits(pd);
    unsigned n = pd.order();
    u64 p = pd.p;
    Int l = index_from_digits(pd);
    Int phi_pn = phi_prime_power(Int(p), n);
    Int pn1 = pow_int(Int(p), n + 1);
    Int d1 = eval(l, p, n + 1);
    Int d2 = eval(l + phi_pn, p, n + 1);
    Int diff = mod_reduce(d2 - d1, pn1);
    Int pn = pow_int(Int(p), n);
    if (!mpz_divisible_p(diff.get_mpz_t(), pn.get_mpz_t()))
        throw std::logic_error("delta: pair is not an irregular pair of its order");
    return {p, n, mod_reduce(diff / pn, Int(p)).get_ui()};
}

enum class LiftStatus {
    ok,              // unique continuation found and verified
    singular_stop,   // Delta singular, no digit continues the pair
    singular_branch  // Delta singular, all p digits continue the pair
};

struct LiftResult {
    LiftStatus status;
    PairDigits digits;             // extended pair when status == ok
    std::vector<u64> candidates;   // all digits passing the divisibility test
};

// Exhaustive digit search; independent of the linear solve. Also the oracle
// that fixes the sign convention of the solve.
inline std::vector<u64> lift_candidates_brute(const PairDigits& pd, const DividedModFn& eval) {
    unsigned n = pd.order();
    u64 p = pd.p;
    Int l = index_from_digits(pd);
    Int phi_pn = phi_prime_power(Int(p), n);
    Int pn1 = pow_int(Int(p), n + 1);
    std::vector<u64> hits;
    for (u64 s = 0; s < p; ++s) {
        Int v = eval(l + Int(s) * phi_pn, p, n + 1);
        if (mod_reduce(v, pn1) == 0) hits.push_back(s);
    }
    return hits;
}

// Extends an order-n pair by the unique digit s_{n+1} with
// p^{n+1} | B_l/l at l = l_n + s_{n+1} phi(p^n). Two routes must agree:
// the linear solve through Delta and an independent divisibility re-check.
inline LiftResult lift_once(const PairDigits& pd, const DividedModFn& eval = divided_mod_auto) {
    validate_digits(pd);
    unsigned n = pd.order();
    u64 p = pd.p;
    Int l = index_from_digits(pd);
    Int pn = pow_int(Int(p), n);
    Int pn1 = pn * p;

    // Delta of the order-1 ancestor; constant along the chain.
    DeltaValue dv = delta(PairDigits{p, {pd.digits[0]}}, eval);
    if (dv.singular()) {
        auto cands = lift_candidates_brute(pd, eval);
        LiftResult r{cands.empty() ? LiftStatus::singular_stop : LiftStatus::singular_branch,
                     pd, cands};
        return r;
    }

    Int v = mod_reduce(eval(l, p, n + 1), pn1);
    if (!mpz_divisible_p(v.get_mpz_t(), pn.get_mpz_t()))
        throw std::logic_error("lift_once: input is not an irregular pair of its order");
    Int w = mod_reduce(v / pn, Int(p));

    // zeta(t + s p^{n-1}) = zeta(t) - Delta s p^n (mod p^{n+1}) and
    // zeta = -B_l/l up to a unit; hence s = -Delta^{-1} w mod p.
    Int s = mod_reduce(-invmod(Int(dv.value), Int(p)) * w, Int(p));
    u64 digit = s.get_ui();

    // Independent verification of the divisibility for the found digit.
    Int l_next = l + Int(digit) * phi_prime_power(Int(p), n);
    Int check = mod_reduce(eval(l_next, p, n + 1), pn1);
    if (check != 0)
        throw std::logic_error("lift_once: linear solve and divisibility check disagree");

    LiftResult r{LiftStatus::ok, pd, {digit}};
    r.digits.digits.push_back(digit);
    return r;
}

// Lift an order-1 pair to the given order, returning the full digit chain.
inline PairDigits lift_to_order(u64 p, unsigned long l, unsigned order,
                                const DividedModFn& eval = divided_mod_auto) {
    PairDigits pd{p, {l}};
    validate_digits(pd);
    while (pd.order() < order) {
        LiftResult r = lift_once(pd, eval);
        if (r.status != LiftStatus::ok)
            throw std::runtime_error("lift_to_order: singular Delta event at order " +
                                     std::to_string(pd.order()));
        pd = r.digits;
    }
    return pd;
}

struct SpecialPairEntry {
    u64 p;
    unsigned long l;
    u64 s2;       // the unique order-two digit
    u64 delta1;   // order-1 Delta
    bool is_pll;      // s2 == l       (pair (p,l,l))
    bool is_pll1;     // s2 == l - 1   (pair (p,l,l-1))
    bool s2_zero;     // s2 == 0
};

struct SpecialPairReport {
    u64 p_max;
    std::vector<SpecialPairEntry> entries;
    bool found_pll = false;
    bool found_pll1 = false;
    bool i1_equals_i2_everywhere = true;
    unsigned long primes_scanned = 0;
    unsigned long irregular_primes = 0;
};

// For every irregular pair with p < p_max: compute the order-two digit and
// classify the special cases of the literature.
inline SpecialPairReport search_special_pairs(u64 p_max,
                                              const DividedModFn& eval = divided_mod_auto) {
    SpecialPairReport rep;
    rep.p_max = p_max;
    for (u32 p : primes_up_to(static_cast<u32>(p_max ? p_max - 1 : 0))) {
        if (p < 5) continue;
        ++rep.primes_scanned;
        auto pairs = scan_irregular(p);
        if (pairs.empty()) continue;
        ++rep.irregular_primes;
        unsigned long i2 = 0;
        for (const auto& pr : pairs) {
            PairDigits pd{pr.p, {pr.l}};
            DeltaValue dv = delta(pd, eval);
            LiftResult lr = lift_once(pd, eval);
            if (lr.status == LiftStatus::ok) ++i2;
            else {
                rep.i1_equals_i2_everywhere = false;
                continue;
            }
            u64 s2 = lr.candidates[0];
            SpecialPairEntry e{pr.p, pr.l, s2, dv.value,
                               s2 == pr.l, s2 + 1 == pr.l, s2 == 0};
            rep.found_pll |= e.is_pll;
            rep.found_pll1 |= e.is_pll1;
            rep.entries.push_back(e);
        }
        if (i2 != pairs.size()) rep.i1_equals_i2_everywhere = false;
    }
    return rep;
}

}  // namespace bern
