#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include <primetails/chernoff.hpp>
#include <primetails/construction.hpp>
#include <primetails/digits.hpp>

using namespace primetails;
using Catch::Approx;

TEST_CASE("margin schedule") {
    CHECK_THROWS_AS(margin_schedule(2, 1.0), domain_error);
    CHECK_THROWS_AS(margin_schedule(1000, -0.5), domain_error);
    CHECK(margin_schedule(1000, 0.0) == 0.0);
    double lx = std::log(1000.0);
    CHECK(margin_schedule(1000, 1.0) == Approx(std::log(lx) / std::sqrt(lx)));
    CHECK(margin_schedule(1000, 2.0) == Approx(2.0 * margin_schedule(1000, 1.0)));
    // shrinks as x grows
    CHECK(margin_schedule(uint64_t{1} << 40, 1.0) < margin_schedule(1000, 1.0));
}

TEST_CASE("upper instance layout") {
    auto inst = build_instance(2, uint64_t{1} << 30, 0.7, TailSide::upper);
    CHECK(inst.q == 2);
    CHECK(inst.k == 30);
    CHECK(inst.l == 18); // 2(1-0.7)*30 rounds through the snap window
    CHECK(inst.adjusted == Approx(0.7));
    CHECK(inst.interval.lo == (uint64_t{1} << 30) - (uint64_t{1} << 18));
    CHECK(inst.interval.hi == uint64_t{1} << 30);
    CHECK(inst.threshold == Approx(21.0).margin(1e-9));

    auto q3 = build_instance(3, 14348907, 0.7, TailSide::upper); // 3^15
    CHECK(q3.k == 15);
    CHECK(q3.l == 9);
    CHECK(q3.interval.lo == 14348907 - 19683);
    CHECK(q3.threshold == Approx(21.0).margin(1e-9));
}

TEST_CASE("lower instance layout") {
    auto inst = build_instance(10, 1000000, 0.4, TailSide::lower);
    CHECK(inst.k == 6);
    CHECK(inst.l == 5);
    CHECK(inst.interval.lo == 100000);
    CHECK(inst.interval.hi == 200000);
    CHECK(inst.threshold == Approx(21.6).margin(1e-9));

    auto b2 = build_instance(2, uint64_t{1} << 30, 0.4, TailSide::lower);
    CHECK(b2.k == 30);
    CHECK(b2.l == 24);
    CHECK(b2.interval.lo == uint64_t{1} << 29);
    CHECK(b2.interval.hi == (uint64_t{1} << 29) + (uint64_t{1} << 24));
}

TEST_CASE("margin moves the interval length, not the threshold") {
    auto plain = build_instance(2, uint64_t{1} << 30, 0.4, TailSide::lower);
    auto slack = build_instance(2, uint64_t{1} << 30, 0.4, TailSide::lower, 0.05);
    CHECK(slack.l == 21);
    CHECK(slack.l < plain.l);
    CHECK(slack.threshold == Approx(plain.threshold));
    CHECK(slack.adjusted == Approx(0.35));

    auto up = build_instance(2, uint64_t{1} << 30, 0.55, TailSide::upper, 0.1);
    CHECK(up.adjusted == Approx(0.65));
    CHECK(up.l == 21); // ceil(0.7 * 30)
}

TEST_CASE("instance rejections") {
    uint64_t x = uint64_t{1} << 30;
    CHECK_THROWS_AS(build_instance(2, x, 0.74, TailSide::upper, 0.01), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.8, TailSide::upper), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.4, TailSide::upper), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.6, TailSide::lower), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.2, TailSide::lower), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.3, TailSide::lower, 0.05), domain_error);
    CHECK_THROWS_AS(build_instance(2, x, 0.7, TailSide::upper, -0.1), domain_error);
    CHECK_THROWS_AS(build_instance(2, 3, 0.7, TailSide::upper), domain_error);
    CHECK_THROWS_AS(build_instance(1, x, 0.7, TailSide::upper), domain_error);
    // lower side at target 1/2 with no margin leaves no leading digit
    CHECK_THROWS_AS(build_instance(2, x, 0.5, TailSide::lower), domain_error);
    CHECK_NOTHROW(build_instance(2, x, 0.5, TailSide::lower, 0.05));
}

TEST_CASE("upper target one half degenerates to the full range") {
    auto inst = build_instance(2, uint64_t{1} << 20, 0.5, TailSide::upper);
    CHECK(inst.l == inst.k);
    CHECK(inst.interval.lo == 0);
    CHECK(inst.interval.hi == uint64_t{1} << 20);
    auto rec = run_experiment(inst);
    CHECK(rec.primes_in_interval == 82025);
    CHECK(rec.qualifying_primes == 53831);
}

TEST_CASE("interval digit structure") {
    // every resident of an upper interval carries the all-(q-1) prefix
    for (uint32_t q : {2u, 3u, 5u}) {
        DigitSystem sys(q);
        for (uint32_t k : {3u, 4u, 5u, 6u}) {
            uint64_t qk = 1;
            for (uint32_t i = 0; i < k; ++i)
                qk *= q;
            for (uint32_t l = 1; l < k; ++l) {
                uint64_t ql = 1;
                for (uint32_t i = 0; i < l; ++i)
                    ql *= q;
                for (uint64_t n = qk - ql; n < qk; ++n)
                    CHECK(digit_sum(n, sys) ==
                          (q - 1) * (k - l) + digit_sum(n - (qk - ql), sys));
                uint64_t qk1 = qk / q;
                for (uint64_t n = qk1; l <= k - 1 && n < qk1 + ql; ++n)
                    CHECK(digit_sum(n, sys) == 1 + digit_sum(n - qk1, sys));
            }
        }
    }
}

TEST_CASE("upper experiments frozen counts") {
    struct Row {
        uint32_t e;
        uint32_t l;
        uint64_t primes;
        uint64_t qual;
    };
    // q=2, alpha=0.7, margin 0, x = 2^e
    const Row rows[] = {
        {24, 15, 1971, 1231},
        {26, 16, 3650, 1887},
        {28, 17, 6788, 3989},
        {30, 18, 12553, 8681},
    };
    for (const auto& row : rows) {
        auto rec = run_experiment(
            build_instance(2, uint64_t{1} << row.e, 0.7, TailSide::upper));
        CHECK(rec.instance.l == row.l);
        CHECK(rec.primes_in_interval == row.primes);
        CHECK(rec.qualifying_primes == row.qual);
        CHECK(rec.qualifying_primes <= rec.primes_in_interval);
        CHECK(2.0 * rec.qualifying_primes >= rec.primes_in_interval);
    }

    auto q3 = run_experiment(build_instance(3, 14348907, 0.7, TailSide::upper));
    CHECK(q3.primes_in_interval == 1189);
    CHECK(q3.qualifying_primes == 860);
}

TEST_CASE("lower experiments frozen counts") {
    auto q10 = run_experiment(build_instance(10, 1000000, 0.4, TailSide::lower));
    CHECK(q10.primes_in_interval == 8392);
    CHECK(q10.qualifying_primes == 2731);

    // at margin 0 the parity of primes drags the lower tail under 1/2;
    // a small margin restores the expected majority
    auto flat = run_experiment(
        build_instance(2, uint64_t{1} << 30, 0.4, TailSide::lower));
    CHECK(flat.primes_in_interval == 834239);
    CHECK(flat.qualifying_primes == 280327);

    auto slack = run_experiment(
        build_instance(2, uint64_t{1} << 30, 0.4, TailSide::lower, 0.05));
    CHECK(slack.primes_in_interval == 104236);
    CHECK(slack.qualifying_primes == 60731);
    CHECK(2.0 * slack.qualifying_primes >= slack.primes_in_interval);
}

TEST_CASE("experiment derived quantities") {
    auto rec = run_experiment(
        build_instance(2, uint64_t{1} << 30, 0.7, TailSide::upper));
    auto l = static_cast<double>(rec.instance.l);
    double log_l = std::log(l);
    CHECK(rec.delta == Approx(log_l / std::sqrt(l)));
    CHECK(rec.chernoff_exceptions_bound ==
          Approx(std::pow(2.0, l) *
                 std::exp(-l * rec.delta * rec.delta / 18.0)));
    CHECK(rec.lower_bound_main ==
          Approx(std::pow(std::pow(2.0, 30.0), 0.6)).epsilon(1e-12));
    double expected = rec.lower_bound_main / std::log(std::pow(2.0, 30.0));
    CHECK(rec.ratio == Approx(rec.qualifying_primes / expected));
    CHECK(rec.ratio > 0.0);
}

TEST_CASE("exceptional residents stay under the chernoff budget") {
    // count of low strings with digit sum below (q-1) l (1/2 - delta),
    // delta = log l / sqrt l, against the q^l exp(-l delta^2 / 18) budget
    struct Case {
        uint32_t q;
        uint32_t l;
    };
    for (auto [q, l] : {Case{2, 80}, Case{2, 100}, Case{3, 100}}) {
        DigitSystem sys(q);
        auto dist = build_distribution(sys, l);
        double delta = std::log(static_cast<double>(l)) /
                       std::sqrt(static_cast<double>(l));
        double cut = (q - 1.0) * l * (0.5 - delta);
        // strict "less than cut" is the complement of s >= cut under ceil
        BigNat not_below = tail_count(dist, cut);
        long double bad = dist.total().approx() - not_below.approx();
        long double budget = powl(static_cast<long double>(q), l) *
                             expl(-l * static_cast<long double>(delta) * delta / 18.0L);
        CHECK(bad >= 0.0L);
        CHECK(bad <= budget);
    }
}

TEST_CASE("forced prefix alone can clear the threshold") {
    // hand-built instance where (q-1)(k-l) already exceeds the threshold:
    // every prime in the interval qualifies no matter its low digits
    uint64_t hi = uint64_t{1} << 20;
    TheoremInstance inst{2,    hi,  TailSide::upper, 0.5, 0.0, 0.5,
                         20,   2,   PrimeRange(hi - 4, hi),
                         10.0};
    auto rec = run_experiment(inst);
    CHECK(rec.primes_in_interval == 1); // 1048573
    CHECK(rec.qualifying_primes == rec.primes_in_interval);
}

TEST_CASE("survey frozen counts") {
    auto small = survey_tail(2, 100, 0.5);
    CHECK(small.count == 12);
    CHECK(small.threshold == Approx(0.5 * std::log2(100.0)));
    CHECK(small.bound == Approx(100.0).epsilon(1e-12));

    auto mid = survey_tail(2, uint64_t{1} << 20, 0.7);
    CHECK(mid.count == 6145);
    CHECK(mid.threshold == Approx(14.0).margin(1e-9));

    auto half = survey_tail(2, uint64_t{1} << 20, 0.5);
    CHECK(half.count == 53831);

    auto steep = survey_tail(2, 1000, 0.9);
    CHECK(steep.count == 1); // 991 = 1111011111 in binary

    // alpha beyond the max digit sum leaves nothing
    CHECK(survey_tail(2, 1000, 3.0).count == 0);

    // monotone in alpha
    uint64_t prev = UINT64_MAX;
    for (double a : {0.5, 0.6, 0.7, 0.8, 0.9}) {
        uint64_t c = survey_tail(2, 100000, a).count;
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("survey counts at least the interval qualifiers") {
    uint64_t x = uint64_t{1} << 20;
    auto s = survey_tail(2, x, 0.7);
    auto rec = run_experiment(build_instance(2, x, 0.7, TailSide::upper));
    CHECK(s.count >= rec.qualifying_primes);
}

TEST_CASE("survey validation") {
    CHECK_THROWS_AS(survey_tail(2, 1, 0.5), domain_error);
    CHECK_THROWS_AS(survey_tail(1, 100, 0.5), domain_error);
    CHECK_THROWS_AS(survey_tail(2, 100, std::nan("")), domain_error);
    CHECK_THROWS_AS(survey_tail(2, kFullEnumCap + 1, 0.5), resource_error);
    CHECK_THROWS_AS(survey_tail(2, 1000, 0.5, 100), resource_error);
}

TEST_CASE("problem one frozen counts") {
    auto r2 = problem_one(2);
    CHECK(r2.count == 0);
    CHECK(r2.strict_log_count == 1); // 2^3 >= 4

    auto r10 = problem_one(10);
    CHECK(r10.count == 3);
    CHECK(r10.strict_log_count == 4);

    auto r100 = problem_one(100);
    CHECK(r100.count == 14);
    CHECK(r100.strict_log_count == 16);

    auto r1m = problem_one(1000000);
    CHECK(r1m.count == 11215);
    CHECK(r1m.strict_log_count == 12873);

    // the bit-length rule is the stricter of the two
    CHECK(r10.count <= r10.strict_log_count);
    CHECK(r1m.count <= r1m.strict_log_count);

    CHECK(problem_one(0).count == 0);
    CHECK(problem_one(1).strict_log_count == 0);
    CHECK_THROWS_AS(problem_one(kFullEnumCap + 1), resource_error);
    CHECK_THROWS_AS(problem_one(1000, 100), resource_error);

    // monotone in x
    uint64_t prev = 0;
    for (uint64_t x : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
        auto r = problem_one(x);
        CHECK(r.count >= prev);
        prev = r.count;
    }
}

TEST_CASE("digit sum average over primes") {
    auto tiny = copeland_erdos_average(2, 10);
    CHECK(tiny.prime_count == 4);
    CHECK(tiny.digit_sum_total == 8); // 2,3,5,7 -> 1+2+2+3
    CHECK(tiny.mean == Approx(2.0));
    CHECK(tiny.reference == Approx(0.5 * std::log2(10.0)));

    auto dec = copeland_erdos_average(10, 1000);
    CHECK(dec.prime_count == 168);
    CHECK(dec.digit_sum_total == 2255);
    CHECK(dec.mean == Approx(2255.0 / 168.0));
    CHECK(dec.reference == Approx(13.5)); // exact power of ten

    DigitSystem b10(10);
    CHECK(dec.mean <= (b10.q - 1.0) * digit_count(1000, b10));

    CHECK_THROWS_AS(copeland_erdos_average(2, 1), domain_error);
    CHECK_THROWS_AS(copeland_erdos_average(2, kFullEnumCap + 1), resource_error);
    CHECK_THROWS_AS(copeland_erdos_average(2, 1000, 100), resource_error);
}
