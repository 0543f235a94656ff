#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bern/bernoulli.hpp"
#include "bern/factor.hpp"

using namespace bern;

TEST_CASE("small Bernoulli values match the classical table") {
    CHECK(bernoulli_exact(2) == Rat(1, 6));
    CHECK(bernoulli_exact(4) == Rat(-1, 30));
    CHECK(bernoulli_exact(6) == Rat(1, 42));
    CHECK(bernoulli_exact(8) == Rat(-1, 30));
    CHECK(bernoulli_exact(10) == Rat(5, 66));
    CHECK(bernoulli_exact(12) == Rat(-691, 2730));
    CHECK(bernoulli_exact(14) == Rat(7, 6));
    CHECK(bernoulli_exact(42) == Rat(Int("1520097643918070802691"), Int(1806)));
}

TEST_CASE("Clausen-von Staudt: denominator and sign for n <= 500") {
    for (unsigned long n = 2; n <= 500; n += 2) {
        Rat b = bernoulli_exact(n);
        CHECK(Int(b.get_den()) == clausen_denominator(n));
        // sign alternation: B_n > 0 iff n/2 odd
        CHECK((b > 0) == ((n / 2) % 2 == 1));
    }
}

TEST_CASE("Adams p-integrality: divided values only lose Clausen primes") {
    for (unsigned long n = 2; n <= 500; n += 2) {
        Rat d = divided_bernoulli_exact(n);
        Int den(d.get_den());
        FactoredInteger f = factorize(den);
        REQUIRE(f.complete);
        for (const auto& [p, e] : f.factors) {
            // p-integrality: only p-1 | n primes survive, at 1 + ord_p(n)
            CHECK(mpz_divisible_p(Int(n).get_mpz_t(), Int(p - 1).get_mpz_t()));
            CHECK(e == 1 + ord_p(Int(n), p));
        }
    }
}

TEST_CASE("split reproduces the Lambda/V decomposition") {
    BernoulliSplit s = split(50);
    CHECK(s.lambda == Int("495057205241079648212477525"));
    CHECK(s.v == Int(66));
    CHECK(clausen_denominator(48) == Int(2 * 3 * 5 * 7 * 13 * 17));
}

TEST_CASE("Faulhaber evaluation matches direct power sums") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned long n = 10 + 2 * (rng() % 26);  // even, 10..60
        Int m(static_cast<unsigned long>(1 + rng() % 500));
        Int M(static_cast<unsigned long>(2 + rng() % 1000000));
        Int direct = mod_reduce(power_sum_exact(n, m), M);
        CHECK(faulhaber_power_sum(n, m, M) == direct);
    }
}

TEST_CASE("power sum budget is enforced") {
    CHECK_THROWS_AS(power_sum_exact(4, Int("100000000000")), BudgetExceeded);
}

TEST_CASE("odd and zero indices are rejected") {
    CHECK_THROWS_AS(divided_bernoulli_exact(7), std::invalid_argument);
    CHECK_THROWS_AS(clausen_denominator(0), std::invalid_argument);
}
