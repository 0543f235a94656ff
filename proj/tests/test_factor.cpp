#include <catch2/catch_amalgamated.hpp>

#include "bern/bernoulli.hpp"
#include "bern/factor.hpp"

using namespace bern;

TEST_CASE("numerator of B_50 factors completely") {
    BernoulliSplit s = split(50);
    FactoredInteger f = factorize(abs(s.lambda));
    REQUIRE(f.complete);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair(Int(5), 2ul));
    CHECK(f.factors[1] == std::pair(Int(417202699), 1ul));
    CHECK(f.factors[2] == std::pair(Int("47464429777438199"), 1ul));
    CHECK(f.reassembled() == abs(s.lambda));
}

TEST_CASE("prime powers and mixed products round-trip") {
    Int n = pow_int(Int(2), 10) * pow_int(Int(101), 3) * Int(1000003) * Int("1000000007");
    FactoredInteger f = factorize(n);
    REQUIRE(f.complete);
    CHECK(f.reassembled() == n);
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[0] == std::pair(Int(2), 10ul));
    CHECK(f.factors[1] == std::pair(Int(101), 3ul));
    CHECK(f.factors[2] == std::pair(Int(1000003), 1ul));
    CHECK(f.factors[3] == std::pair(Int("1000000007"), 1ul));
}

TEST_CASE("large prime cofactors are certified, not brute-forced") {
    Int p("1520097643918070802691");  // numerator of B_42
    FactoredInteger f = factorize(p * 6);
    REQUIRE(f.complete);
    CHECK(f.factors.back() == std::pair(p, 1ul));
}

TEST_CASE("unreachable semiprimes come back as aggregate residual") {
    Int a(1), b(1);
    mpz_ui_pow_ui(a.get_mpz_t(), 10, 40);
    mpz_nextprime(a.get_mpz_t(), a.get_mpz_t());
    mpz_nextprime(b.get_mpz_t(), a.get_mpz_t());
    Int n = a * b * 7;
    FactorConfig light{100000, 2, 1u << 14, 42};
    FactoredInteger f = factorize(n, light);
    CHECK_FALSE(f.complete);
    CHECK(f.residual == a * b);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair(Int(7), 1ul));
    CHECK(f.reassembled() == n);
}

TEST_CASE("trivial inputs") {
    CHECK(factorize(Int(1)).factors.empty());
    CHECK_THROWS_AS(factorize(Int(0)), std::invalid_argument);
}
