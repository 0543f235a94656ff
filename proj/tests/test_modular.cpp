#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bern/bernoulli.hpp"
#include "bern/modular.hpp"

using namespace bern;

namespace {

Int exact_mod(unsigned long n, u64 p, unsigned r) {
    return mod_reduce_rat(bernoulli_exact(n), pow_int(Int(p), r));
}

}  // namespace

TEST_CASE("Voronoi values agree with exact reductions") {
    const u64 primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 53, 67, 97};
    for (u64 p : primes) {
        for (unsigned r = 1; r <= 3; ++r) {
            for (unsigned long n = 2; n <= 300; n += 2) {
                if (n % (p - 1) == 0) continue;
                CAPTURE(p, r, n);
                CHECK(voronoi_bernoulli_mod(Int(n), p, r).value == exact_mod(n, p, r));
            }
        }
    }
}

TEST_CASE("divided values divide out the index correctly") {
    for (u64 p : {13ull, 37ull, 157ull}) {
        for (unsigned long n = 2; n <= 200; n += 2) {
            if (n % (p - 1) == 0) continue;
            Int pr = pow_int(Int(p), 2);
            Int expect = mod_reduce_rat(divided_bernoulli_exact(n), pr);
            CHECK(divided_bernoulli_mod(Int(n), p, 2).value == expect);
        }
    }
}

TEST_CASE("Kummer congruence instance: B_16 vs B_4 mod 13") {
    CHECK(divided_bernoulli_mod(Int(16), 13, 1).value ==
          divided_bernoulli_mod(Int(4), 13, 1).value);
}

TEST_CASE("Kummer congruences on random pairs") {
    std::mt19937_64 rng(42);
    const u64 primes[] = {5, 7, 11, 13, 37, 59, 67};
    for (int trial = 0; trial < 500; ++trial) {
        u64 p = primes[rng() % std::size(primes)];
        unsigned r = 1 + rng() % 3;
        Int phi = phi_prime_power(Int(p), r);
        unsigned long n = 2 + 2 * (rng() % 5000);
        if (n % (p - 1) == 0) continue;
        Int m = Int(n) + phi * static_cast<unsigned long>(1 + rng() % 50);
        CAPTURE(p, r, n);
        CHECK(zeta_p_value_mod(Int(n), p, r).value == zeta_p_value_mod(m, p, r).value);
    }
}

TEST_CASE("precision tower: higher-precision values reduce consistently") {
    for (unsigned long n : {14ul, 32ul, 62ul, 150ul}) {
        for (u64 p : {7ull, 37ull, 157ull}) {
            if (n % (p - 1) == 0) continue;
            Int v3 = voronoi_bernoulli_mod(Int(n), p, 3).value;
            Int v2 = voronoi_bernoulli_mod(Int(n), p, 2).value;
            Int v1 = voronoi_bernoulli_mod(Int(n), p, 1).value;
            CHECK(mod_reduce(v3, pow_int(Int(p), 2)) == v2);
            CHECK(mod_reduce(v2, Int(p)) == v1);
        }
    }
}

TEST_CASE("batch scan agrees with exact residues") {
    for (u64 p : {37ull, 59ull, 101ull, 157ull}) {
        auto res = voronoi_scan_mod_p(p);
        REQUIRE(res.size() == (p - 3) / 2);
        for (unsigned long l = 2; l + 3 <= p; l += 2) {
            CHECK(res[l / 2 - 1] == mod_reduce_rat(bernoulli_exact(l), Int(p)).get_ui());
        }
    }
}

TEST_CASE("large-index evaluation beyond the exact range") {
    // the flagship order-2 index: 157^2 divides B_6302/6302
    CHECK(divided_bernoulli_mod(Int(6302), 157, 2).value == 0);
    CHECK(divided_bernoulli_mod(Int(6302), 157, 3).value != 0);
}

TEST_CASE("Clausen poles and budget limits are rejected") {
    CHECK_THROWS_AS(voronoi_bernoulli_mod(Int(12), 13, 2), std::invalid_argument);
    CHECK_THROWS_AS(voronoi_bernoulli_mod(Int(10), 9, 2), std::invalid_argument);
    ModularConfig tight{1000};
    CHECK_THROWS_AS(voronoi_bernoulli_mod(Int(10), 37, 2, tight), BudgetExceeded);
}
