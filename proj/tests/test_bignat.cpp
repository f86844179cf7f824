#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include <primetails/bignat.hpp>

using primetails::BigNat;

namespace {

mpz_class mpz_from_u64(uint64_t v) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

} // namespace

TEST_CASE("bignat small values and zero") {
    CHECK(BigNat().is_zero());
    CHECK(BigNat(0).is_zero());
    CHECK(BigNat().to_string() == "0");
    CHECK(BigNat(1).to_string() == "1");
    CHECK(BigNat(999999999).to_string() == "999999999");
    CHECK(BigNat(1000000000).to_string() == "1000000000");
    CHECK(BigNat(UINT64_MAX).to_string() == "18446744073709551615");
    CHECK_FALSE(BigNat(1).is_zero());
    CHECK(BigNat(0) == BigNat());
    CHECK(BigNat(0).limb_count() == 0);
    CHECK(BigNat(1).limb_count() == 1);
    CHECK(BigNat(uint64_t{1} << 32).limb_count() == 2);
}

TEST_CASE("bignat addition matches gmp") {
    std::mt19937_64 rng(0x5eedfeedULL);
    for (int i = 0; i < 2000; ++i) {
        uint64_t a = rng();
        uint64_t b = rng();
        // bias some draws toward small values so limb-length mismatch paths run
        if (i % 3 == 0)
            a &= 0xffff;
        if (i % 5 == 0)
            b &= 0xff;
        BigNat sum = BigNat(a) + BigNat(b);
        mpz_class want = mpz_from_u64(a) + mpz_from_u64(b);
        CHECK(sum.to_string() == want.get_str());
    }
}

TEST_CASE("bignat accumulated add and word multiply match gmp") {
    std::mt19937_64 rng(0xabcdef12ULL);
    BigNat acc(1);
    mpz_class want(1);
    for (int step = 0; step < 400; ++step) {
        if (step % 2 == 0) {
            auto m = static_cast<uint32_t>(rng());
            acc *= m;
            want *= m;
        } else {
            uint64_t a = rng();
            acc += BigNat(a);
            want += mpz_from_u64(a);
        }
        if (step % 7 == 0)
            REQUIRE(acc.to_string() == want.get_str());
    }
    REQUIRE(acc.to_string() == want.get_str());
}

TEST_CASE("bignat multiply by zero clears") {
    BigNat a(123456789);
    a *= 0;
    CHECK(a.is_zero());
    CHECK(a.to_string() == "0");
    a += BigNat(7);
    CHECK(a.to_string() == "7");
}

TEST_CASE("bignat pow matches gmp") {
    for (uint32_t base : {2u, 3u, 7u, 10u, 4294967295u}) {
        for (uint32_t exp : {0u, 1u, 2u, 17u, 64u, 150u}) {
            mpz_class want;
            mpz_ui_pow_ui(want.get_mpz_t(), base, exp);
            CHECK(BigNat::pow(base, exp).to_string() == want.get_str());
        }
    }
    CHECK(BigNat::pow(2, 0).to_string() == "1");
    CHECK(BigNat::pow(2, 100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("bignat ordering matches gmp") {
    std::mt19937_64 rng(0x0c0ffeeULL);
    for (int i = 0; i < 1000; ++i) {
        uint64_t a = rng();
        uint64_t b = (i % 4 == 0) ? a : rng();
        BigNat ba(a), bb(b);
        int cmp = mpz_cmp(mpz_from_u64(a).get_mpz_t(), mpz_from_u64(b).get_mpz_t());
        if (cmp < 0) {
            CHECK(ba < bb);
        } else if (cmp > 0) {
            CHECK(ba > bb);
        } else {
            CHECK(ba == bb);
        }
    }
    // multi-limb ordering: 2^96 vs 2^96 - 1 vs 2^96 + 1
    BigNat big = BigNat::pow(2, 96);
    BigNat bigger = big + BigNat(1);
    CHECK(big < bigger);
    CHECK(big <= big);
    CHECK(bigger > big);
}

TEST_CASE("bignat approx is close") {
    for (uint32_t exp : {10u, 50u, 100u, 500u}) {
        BigNat p = BigNat::pow(3, exp);
        long double got = p.approx();
        long double want = powl(3.0L, static_cast<long double>(exp));
        CHECK(fabsl(got / want - 1.0L) < 1e-15L);
    }
    CHECK(BigNat(0).approx() == 0.0L);
    CHECK(BigNat(12345).approx() == 12345.0L);
    // exactly representable two-limb value
    CHECK(BigNat(uint64_t{1} << 52).approx() == 4503599627370496.0L);
}

TEST_CASE("bignat to_string round trip through gmp") {
    std::mt19937_64 rng(0x7777ULL);
    BigNat acc(0);
    mpz_class want(0);
    for (int i = 0; i < 50; ++i) {
        BigNat term = BigNat::pow(static_cast<uint32_t>(2 + rng() % 9),
                                  static_cast<uint32_t>(rng() % 120));
        mpz_class mterm(term.to_string());
        acc += term;
        want += mterm;
    }
    CHECK(acc.to_string() == want.get_str());
    CHECK(mpz_class(acc.to_string()).get_str() == acc.to_string());
}
