#pragma once

// p-adic zeta branches: value tables at small integer arguments, forward
// differences, Mahler-style evaluation at arbitrary p-adic arguments, the
// unique zero chi and the strong Kummer congruence checks.

#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "bern/arith.hpp"
#include "bern/bernoulli.hpp"
#include "bern/modular.hpp"
#include "bern/pairs.hpp"

namespace bern {

// Truncated p-adic integer: digits base p, least significant first.
struct PadicApprox {
    u64 p;
    std::vector<u64> digits;

    unsigned precision() const { return static_cast<unsigned>(digits.size()); }

    Int value() const {
        Int v = 0;
        for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
        return v;
    }

    static PadicApprox from_int(const Int& x, u64 p, unsigned N) {
        PadicApprox a{p, {}};
        Int v = mod_reduce(x, pow_int(Int(p), N));
        for (unsigned i = 0; i < N; ++i) {
            Int d = mod_reduce(v, Int(p));
            a.digits.push_back(d.get_ui());
            v = (v - d) / p;
        }
        return a;
    }
};

struct ZetaTable {
    u64 p;
    u64 branch_l;         // s_1 of the branch
    unsigned precision;   // N: everything mod p^N
    std::vector<Int> values;  // v_t = zeta_p(1-(l+(p-1)t)) mod p^N, t = 0..K-1
    std::vector<Int> diffs;   // forward differences c_k = Delta^k v_0 mod p^N
};

struct ZetaFunctionHandle {
    u64 p;
    u64 l;
    ZetaTable table;
};

struct ZetaConfig {
    unsigned guard_columns = 4;      // K = N + guard
    unsigned stability_window = 3;   // trailing diffs that must vanish mod p^N
    unsigned max_columns = 64;
};

inline ZetaConfig& zeta_config() {
    static ZetaConfig cfg;
    return cfg;
}

namespace detail {

// zeta_p(1-n) mod p^N from the exact cache when the index is reachable,
// else from the Voronoi kernel; throws BudgetExceeded naming the cheaper
// alternative when neither applies.
inline Int zeta_value_any_backend(const Int& n, u64 p, unsigned N) {
    if (n.fits_ulong_p() && n.get_ui() <= pair_config().exact_index_bound) {
        Int pN = pow_int(Int(p), N);
        unsigned long nn = n.get_ui();
        Rat d = divided_bernoulli_exact(nn);
        Int euler = 1;
        if (nn - 1 < N) euler -= pow_int(Int(p), nn - 1);
        return mod_reduce(euler * -mod_reduce_rat(d, pN), pN);
    }
    try {
        return zeta_p_value_mod(n, p, N).value;
    } catch (const BudgetExceeded&) {
        throw BudgetExceeded(
            "zeta table: index beyond exact bound and p^N beyond Voronoi budget; "
            "raise exact_index_bound or lower the precision");
    }
}

}  // namespace detail

// Tabulates v_t for t = 0..K-1 and fills forward differences. K grows until
// the trailing differences vanish mod p^N (guarded truncation).
inline ZetaTable build_table(u64 p, u64 l, unsigned N, unsigned K = 0) {
    if (p < 5) throw std::invalid_argument("build_table: p >= 5 required");
    if (l % 2 != 0 || l < 2 || l > p - 3) throw std::invalid_argument("build_table: bad branch l");
    const ZetaConfig& cfg = zeta_config();
    if (K == 0) K = N + cfg.guard_columns;
    Int pN = pow_int(Int(p), N);
    for (;;) {
        if (K > cfg.max_columns) throw std::runtime_error("build_table: difference tail does not saturate");
        if (K >= p) throw std::runtime_error("build_table: column count must stay below p");
        ZetaTable t{p, l, N, {}, {}};
        for (unsigned k = 0; k < K; ++k)
            t.values.push_back(detail::zeta_value_any_backend(Int(l) + Int(p - 1) * k, p, N));
        // forward differences in place
        std::vector<Int> row = t.values;
        t.diffs.push_back(row[0]);
        for (unsigned k = 1; k < K; ++k) {
            for (unsigned j = 0; j + k < K; ++j) row[j] = mod_reduce(row[j + 1] - row[j], pN);
            t.diffs.push_back(row[0]);
        }
        // stability: the trailing window must be 0 mod p^N
        bool stable = true;
        for (unsigned w = 0; w < cfg.stability_window && w < K; ++w)
            if (t.diffs[K - 1 - w] != 0) stable = false;
        if (stable) return t;
        K += 2;
    }
}

inline ZetaFunctionHandle make_zeta_handle(u64 p, u64 l, unsigned N) {
    return {p, l, build_table(p, l, N)};
}

// zeta_{p,l}(s) mod p^N as sum_k c_k binom(s, k); binomials are exact mod
// p^N because k < p keeps k! a unit.
inline Int zeta_eval(const ZetaFunctionHandle& h, const Int& s, unsigned N = 0) {
    if (N == 0) N = h.table.precision;
    if (N > h.table.precision) throw std::invalid_argument("zeta_eval: precision above table");
    Int pN = pow_int(Int(h.p), N);
    Int sred = mod_reduce(s, pN);
    Int acc = 0;
    Int num = 1;  // s (s-1) ... (s-k+1) mod p^N
    Int kfact_inv = 1;
    for (std::size_t k = 0; k < h.table.diffs.size(); ++k) {
        if (k > 0) {
            num = mod_reduce(num * mod_reduce(sred - Int(static_cast<unsigned long>(k - 1)), pN), pN);
            kfact_inv = mod_reduce(kfact_inv * invmod(Int(static_cast<unsigned long>(k)), pN), pN);
        }
        acc = mod_reduce(acc + h.table.diffs[k] * mod_reduce(num * kfact_inv, pN), pN);
    }
    return acc;
}

inline Int zeta_eval(const ZetaFunctionHandle& h, const PadicApprox& s, unsigned N = 0) {
    return zeta_eval(h, s.value(), N);
}

// DividedModFn backend driven by a zeta table: (B_n/n) mod p^r recovered by
// stripping the Euler factor from the interpolated value.
inline DividedModFn zeta_backend(u64 p, u64 l, unsigned N) {
    auto handle = std::make_shared<ZetaFunctionHandle>(make_zeta_handle(p, l, N));
    return [handle](const Int& n, u64 pp, unsigned r) -> Int {
        if (pp != handle->p) throw std::invalid_argument("zeta_backend: wrong prime");
        if (r > handle->table.precision) throw BudgetExceeded("zeta_backend: precision above table");
        Int lm = mod_reduce(n - Int(handle->l), Int(pp - 1));
        if (lm != 0) throw std::invalid_argument("zeta_backend: index not on branch");
        Int t = (n - Int(handle->l)) / Int(pp - 1);
        Int pr = pow_int(Int(pp), r);
        Int z = mod_reduce(zeta_eval(*handle, t, r), pr);
        Int euler = 1;  // 1 - p^{n-1}; n-1 >= r throughout the lifting ranges
        if (mpz_cmp_ui(n.get_mpz_t(), r) <= 0) euler -= pow_int(Int(pp), n.get_ui() - 1);
        return mod_reduce(-z * invmod(euler, pr), pr);
    };
}

// chi_{(p,l)} to N digits. Two routes must agree: the shifted digit chain
// from lifting and a Newton-style descent on zeta_eval.
inline PadicApprox chi_digits(u64 p, u64 l, unsigned N) {
    DividedModFn eval;
    // The digit chain needs values mod p^{N+2}; keep one backend for both routes.
    unsigned table_prec = N + 2;
    if (pow_int(Int(p), 3) <= Int(modular_config().summation_budget) && table_prec <= 3)
        eval = divided_mod_auto;
    else
        eval = zeta_backend(p, static_cast<u64>(l), table_prec);

    // Route (a): lifted pair digits, shifted by one position.
    PairDigits chain = lift_to_order(p, l, N + 1, eval);
    PadicApprox a{p, {chain.digits.begin() + 1, chain.digits.end()}};

    // Route (b): Newton descent using the constant slope -Delta.
    ZetaFunctionHandle h = make_zeta_handle(p, static_cast<u64>(l), N + 1);
    DeltaValue dv = delta(PairDigits{p, {static_cast<u64>(l)}}, eval);
    if (dv.singular()) throw std::runtime_error("chi_digits: singular Delta");
    Int dinv = invmod(Int(dv.value), Int(p));
    Int x = 0;
    PadicApprox b{p, {}};
    for (unsigned k = 0; k < N; ++k) {
        Int pk1 = pow_int(Int(p), k + 1);
        Int z = zeta_eval(h, x, k + 2);
        if (!mpz_divisible_p(z.get_mpz_t(), pk1.get_mpz_t()))
            throw std::logic_error("chi_digits: zero approximant lost precision");
        Int d = mod_reduce(dinv * (z / pk1), Int(p));
        // divisibility re-check before accepting the digit
        Int xn = x + d * pow_int(Int(p), k);
        Int z2 = zeta_eval(h, xn, k + 2);
        if (mod_reduce(z2, pk1 * p) != 0)
            throw std::logic_error("chi_digits: digit fails divisibility re-check");
        x = xn;
        b.digits.push_back(d.get_ui());
    }
    if (a.digits != b.digits)
        throw std::logic_error("chi_digits: lifting route and Newton route disagree");
    return a;
}

struct StrongKummerVerdict {
    unsigned precision;          // N used
    unsigned lhs_ord;            // ord_p(zeta(s) - zeta(t)), saturated at N
    unsigned rhs_ord;            // 1 + ord_p(s - t), saturated at N
    bool lhs_saturated;          // difference vanished mod p^N
    bool valuations_equal;       // checked only when rhs_ord < N
    bool quotient_matches_delta; // quotient = -Delta mod p
    bool degenerate;             // s == t
};

// |zeta(s) - zeta(t)|_p = |p (s - t)|_p, and the quotient is -Delta mod p.
inline StrongKummerVerdict strong_kummer_check(const ZetaFunctionHandle& h, const Int& s,
                                               const Int& t, unsigned N,
                                               const DividedModFn& eval = divided_mod_auto) {
    StrongKummerVerdict v{};
    v.precision = N;
    if (s == t) {
        v.degenerate = true;
        v.valuations_equal = true;
        v.quotient_matches_delta = true;
        return v;
    }
    Int pN = pow_int(Int(h.p), N);
    Int diff = mod_reduce(zeta_eval(h, s, N) - zeta_eval(h, t, N), pN);
    unsigned lo = N;
    if (diff != 0) lo = static_cast<unsigned>(ord_p(diff, Int(h.p)));
    v.lhs_ord = lo;
    v.lhs_saturated = (diff == 0);
    unsigned long st_ord = ord_p(Int(s - t), Int(h.p));
    unsigned ro = static_cast<unsigned>(std::min<unsigned long>(st_ord + 1, N));
    v.rhs_ord = ro;
    v.valuations_equal = (ro >= N) ? (v.lhs_saturated || lo >= N) : (lo == ro);
    v.quotient_matches_delta = true;
    if (ro < N && lo == ro) {
        DeltaValue dv = delta(PairDigits{h.p, {h.l}}, eval);
        Int unit_diff = (diff / pow_int(Int(h.p), lo));
        Int unit_st = Int(s - t) / pow_int(Int(h.p), st_ord);
        Int q = mod_reduce(unit_diff * invmod(mod_reduce(unit_st, Int(h.p)), Int(h.p)), Int(h.p));
        v.quotient_matches_delta = (q == mod_reduce(Int(h.p) - dv.value, Int(h.p)));
    }
    return v;
}

// The quotient at (s,t) = (1,0) recovers Delta; cross-module consistency.
inline DeltaValue delta_from_zeta(const ZetaFunctionHandle& h) {
    Int p(h.p);
    Int pN = pow_int(p, h.table.precision);
    Int diff = mod_reduce(zeta_eval(h, Int(1)) - zeta_eval(h, Int(0)), pN);
    if (!mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t()))
        throw std::logic_error("delta_from_zeta: difference not divisible by p");
    Int q = mod_reduce(diff / p, p);  // = -Delta mod p
    return {h.p, 1, mod_reduce(p - q, p).get_ui()};
}

}  // namespace bern
