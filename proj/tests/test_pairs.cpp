#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bern/pairs.hpp"
#include "bern/zeta.hpp"

using namespace bern;

TEST_CASE("scan finds the classical irregular indices") {
    CHECK(scan_irregular(5).empty());
    CHECK(scan_irregular(31).empty());
    auto p37 = scan_irregular(37);
    REQUIRE(p37.size() == 1);
    CHECK(p37[0].l == 32);
    auto p157 = scan_irregular(157);
    REQUIRE(p157.size() == 2);
    CHECK(p157[0].l == 62);
    CHECK(p157[1].l == 110);
    auto p691 = scan_irregular(691);
    REQUIRE(p691.size() == 2);
    CHECK(p691[0].l == 12);
    CHECK(p691[1].l == 200);
}

TEST_CASE("digit notation round-trips on random valid inputs") {
    std::mt19937_64 rng(42);
    const u64 primes[] = {5, 37, 101, 157, 691};
    for (int trial = 0; trial < 1000; ++trial) {
        u64 p = primes[rng() % std::size(primes)];
        unsigned order = 1 + rng() % 5;
        PairDigits pd{p, {}};
        pd.digits.push_back(2 + 2 * (rng() % ((p - 3) / 2)));
        for (unsigned v = 1; v < order; ++v) pd.digits.push_back(rng() % p);
        Int l = index_from_digits(pd);
        PairDigits back = digits_from_index(p, l, order);
        CHECK(back.digits == pd.digits);
    }
    CHECK(index_from_digits(PairDigits{157, {62, 40}}) == 6302);
    CHECK(index_from_digits(PairDigits{157, {62, 40, 145, 67, 29, 69, 0}}) ==
          Int("6557686520486"));
}

TEST_CASE("out-of-range digits and indices are rejected") {
    CHECK_THROWS_AS(index_from_digits(PairDigits{37, {33}}), std::invalid_argument);
    CHECK_THROWS_AS(index_from_digits(PairDigits{37, {32, 37}}), std::invalid_argument);
    CHECK_THROWS_AS(digits_from_index(37, Int(36 * 37), 1), std::invalid_argument);
}

TEST_CASE("lifting uniqueness: exactly one digit continues each pair") {
    for (u64 p : {37ull, 59ull, 67ull, 101ull, 103ull, 131ull, 149ull, 157ull}) {
        for (const auto& pr : scan_irregular(p)) {
            auto eval = zeta_backend(p, pr.l, 6);
            PairDigits pd{p, {pr.l}};
            for (unsigned level = 1; level <= 5; ++level) {
                auto cands = lift_candidates_brute(pd, eval);
                CAPTURE(p, pr.l, level);
                REQUIRE(cands.size() == 1);
                LiftResult lr = lift_once(pd, eval);
                REQUIRE(lr.status == LiftStatus::ok);
                CHECK(lr.digits.digits.back() == cands[0]);
                pd = lr.digits;
            }
            // indices grow monotonically and project down mod phi(p^k)
            for (unsigned k = 1; k < 5; ++k) {
                PairDigits a{p, {pd.digits.begin(), pd.digits.begin() + k}};
                PairDigits b{p, {pd.digits.begin(), pd.digits.begin() + k + 1}};
                Int la = index_from_digits(a), lb = index_from_digits(b);
                CHECK(la <= lb);
                CHECK(mod_reduce(lb, phi_prime_power(Int(p), k)) == la);
            }
            // Delta stability across orders
            DeltaValue d1 = delta(PairDigits{p, {pd.digits[0]}}, eval);
            for (unsigned k = 2; k <= 4; ++k) {
                PairDigits a{p, {pd.digits.begin(), pd.digits.begin() + k}};
                CHECK(delta(a, eval).value == d1.value);
            }
        }
    }
}

TEST_CASE("the order-10 chain of (157, 62)") {
    PairDigits pd = lift_to_order(157, 62, 10, zeta_backend(157, 62, 11));
    CHECK(pd.digits == std::vector<u64>{62, 40, 145, 67, 29, 69, 0, 87, 89, 21});
}

TEST_CASE("singular events are reported, not fatal") {
    // injected oracle: constant zero makes Delta singular with every digit passing
    DividedModFn all_zero = [](const Int&, u64, unsigned) { return Int(0); };
    LiftResult branch = lift_once(PairDigits{37, {32}}, all_zero);
    CHECK(branch.status == LiftStatus::singular_branch);
    CHECK(branch.candidates.size() == 37);
    // constant p^n: Delta singular and no digit passes
    DividedModFn no_digit = [](const Int&, u64 p, unsigned r) {
        return pow_int(Int(p), r - 1);
    };
    LiftResult stop = lift_once(PairDigits{37, {32}}, no_digit);
    CHECK(stop.status == LiftStatus::singular_stop);
    CHECK(stop.candidates.empty());
}

TEST_CASE("non-pairs are rejected by lift") {
    // (37, 30) is not an irregular pair, (157, [62,41]) has the wrong digit
    CHECK_THROWS_AS(lift_once(PairDigits{37, {30}}), std::logic_error);
    CHECK_THROWS_AS(lift_once(PairDigits{157, {62, 41}}), std::logic_error);
}
