#pragma once

/**
 * @file construction.hpp
 * @brief Digit-constrained interval experiments and whole-range surveys.
 *
 * The central object is a short interval near a power of the base whose
 * elements all share an extreme digit prefix:
 *
 *   upper tail:  [q^k - q^l, q^k)        top k-l digits all q-1,
 *   lower tail:  [q^{k-1}, q^{k-1}+q^l)  leading 1, then k-1-l zeros.
 *
 * With l = ceil(2(1-a')k) (resp. ceil(2b'k)) the interval is long enough
 * that short-interval prime counts guarantee ~ q^l / log x primes in it,
 * and the prefix alone pushes the digit sum past the tail threshold for
 * all but an exponentially small fraction of residents. Sieving the
 * interval and thresholding digit sums makes the whole argument a
 * finite computation.
 *
 * Thresholds follow the convention in digits.hpp: qualification means
 * s >= ceil(threshold) on the upper side and s <= floor(threshold) on
 * the lower side, with near-integer values snapped first.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "primetails/digits.hpp"
#include "primetails/errors.hpp"
#include "primetails/sieve.hpp"

namespace primetails {

/// Largest limit accepted by the whole-range survey operations, which
/// enumerate every prime up to x rather than a short interval.
inline constexpr uint64_t kFullEnumCap = uint64_t{1} << 34;

/// Tail-target ranges the interval construction supports. Outside these
/// the interval is too short for the 0.525-exponent prime guarantee.
inline constexpr double kUpperTargetLimit = 0.7375;
inline constexpr double kLowerTargetLimit = 0.2625;

enum class TailSide { upper, lower };

namespace detail {

inline uint64_t pow_u64(uint32_t base, uint32_t exp) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        unsigned __int128 wide = static_cast<unsigned __int128>(r) * base;
        if (wide > ~uint64_t{0})
            throw domain_error("pow_u64: result exceeds 64 bits");
        r = static_cast<uint64_t>(wide);
    }
    return r;
}

/// log_q x as a real, exact (an integer) when x is a power of q.
inline double log_in_base(uint64_t x, const DigitSystem& sys) {
    uint32_t k = digit_count(x, sys) - 1;
    if (pow_u64(sys.q, k) == x)
        return static_cast<double>(k);
    return std::log(static_cast<double>(x)) / std::log(static_cast<double>(sys.q));
}

} // namespace detail

/// The slack schedule r(x) = c (log log x) / sqrt(log x) used to keep
/// the adjusted target inside the admissible range as x grows. At desk
/// scale the margin is usually passed directly instead.
inline double margin_schedule(uint64_t x, double c) {
    if (x < 3)
        throw domain_error("margin_schedule: x must be >= 3");
    if (c < 0.0)
        throw domain_error("margin_schedule: c must be >= 0");
    double lx = std::log(static_cast<double>(x));
    return c * std::log(lx) / std::sqrt(lx);
}

/// All derived quantities of one interval experiment.
struct TheoremInstance {
    uint32_t q;
    uint64_t x;
    TailSide side;
    double target;   // the tail exponent the bound is stated for
    double margin;   // slack deducted from the interval length instead
    double adjusted; // target +/- margin, what l is computed from
    uint32_t k;      // floor(log_q x)
    uint32_t l;      // free low digits of the interval
    PrimeRange interval;
    double threshold; // target * (q-1) * log_q x
};

/// Builds the interval and thresholds for one experiment.
///
/// Upper side: 1/2 <= target and target + margin < 0.7375, l =
/// ceil(2(1-adjusted)k). At target exactly 1/2 the interval degenerates
/// to all of [0, q^k) (l = k, no forced digits), which is allowed; l > k
/// cannot occur. Lower side: target <= 1/2 and target - margin > 0.2625,
/// l = ceil(2 adjusted k), and l <= k-1 is required so the leading digit
/// exists; targets at 1/2 need a positive margin.
inline TheoremInstance build_instance(uint32_t base, uint64_t x, double target,
                                      TailSide side, double margin = 0.0,
                                      uint64_t sieve_cap = kSieveHiCap) {
    DigitSystem sys(base);
    uint32_t q = sys.q;
    if (!(margin >= 0.0))
        throw domain_error("build_instance: margin must be >= 0");
    if (side == TailSide::upper) {
        if (!(target >= 0.5) || !(target + margin < kUpperTargetLimit))
            throw domain_error(
                "build_instance: upper side needs 1/2 <= target and "
                "target + margin < 0.7375");
    } else {
        if (!(target <= 0.5) || !(target - margin > kLowerTargetLimit))
            throw domain_error(
                "build_instance: lower side needs target <= 1/2 and "
                "target - margin > 0.2625");
    }
    if (x < static_cast<uint64_t>(q) * q)
        throw domain_error("build_instance: x must be >= q^2");

    uint32_t k = digit_count(x, sys) - 1;
    double adjusted = side == TailSide::upper ? target + margin : target - margin;
    double span = side == TailSide::upper ? 2.0 * (1.0 - adjusted) : 2.0 * adjusted;
    long long l_signed = snapped_ceil(span * k);
    if (l_signed < 1)
        throw domain_error("build_instance: interval has no free digits");
    auto l = static_cast<uint32_t>(l_signed);
    uint32_t max_l = side == TailSide::upper ? k : k - 1;
    if (l > max_l)
        throw domain_error("build_instance: l exceeds the available digits; "
                           "increase x or move the target off the boundary");

    uint64_t ql = detail::pow_u64(q, l);
    uint64_t lo, hi;
    if (side == TailSide::upper) {
        uint64_t qk = detail::pow_u64(q, k);
        lo = qk - ql;
        hi = qk;
    } else {
        lo = detail::pow_u64(q, k - 1);
        hi = lo + ql;
    }
    TheoremInstance inst{q,    x, side,
                         target, margin, adjusted,
                         k,    l, PrimeRange(lo, hi, sieve_cap),
                         target * (q - 1) * detail::log_in_base(x, sys)};

    // Endpoint digit inspection: both ends of the interval must carry the
    // promised prefix above the l free digits.
    for (uint64_t n : {inst.interval.lo, inst.interval.hi - 1}) {
        uint64_t prefix = n / ql;
        if (side == TailSide::upper) {
            bool ok = k == l ? prefix == 0
                             : prefix == detail::pow_u64(q, k - l) - 1 &&
                                   digit_sum(prefix, sys) ==
                                       (q - 1) * (k - l);
            if (!ok)
                throw std::logic_error("build_instance: upper prefix violated");
        } else {
            if (prefix != detail::pow_u64(q, k - 1 - l) ||
                digit_sum(prefix, sys) != 1)
                throw std::logic_error("build_instance: lower prefix violated");
        }
    }
    return inst;
}

/// Empirical outcome of sieving one instance, next to the quantities the
/// argument predicts for it.
struct ExperimentRecord {
    TheoremInstance instance;
    uint64_t primes_in_interval = 0;
    uint64_t qualifying_primes = 0;
    double delta = 0.0; // (log l)/sqrt(l)
    double chernoff_exceptions_bound = 0.0; // q^l exp(-l delta^2 / 18)
    double lower_bound_main = 0.0;          // x^{2(1-target)} or x^{2 target}
    double ratio = 0.0; // qualifying / (lower_bound_main / log x)
};

inline ExperimentRecord run_experiment(const TheoremInstance& inst,
                                       uint64_t segment_size = kDefaultSegmentSize) {
    DigitSystem sys(inst.q);
    ExperimentRecord rec{inst};
    long long t_min = snapped_ceil(inst.threshold);
    long long t_max = snapped_floor(inst.threshold);
    for_each_prime(
        inst.interval,
        [&](uint64_t p) {
            ++rec.primes_in_interval;
            auto s = static_cast<long long>(digit_sum(p, sys));
            bool qualifies =
                inst.side == TailSide::upper ? s >= t_min : s <= t_max;
            if (qualifies)
                ++rec.qualifying_primes;
        },
        segment_size);

    double log_l = std::log(static_cast<double>(inst.l));
    rec.delta = log_l / std::sqrt(static_cast<double>(inst.l));
    rec.chernoff_exceptions_bound =
        std::pow(static_cast<double>(inst.q), static_cast<double>(inst.l)) *
        std::exp(-log_l * log_l / 18.0);
    double exponent = inst.side == TailSide::upper ? 2.0 * (1.0 - inst.target)
                                                   : 2.0 * inst.target;
    rec.lower_bound_main = std::pow(static_cast<double>(inst.x), exponent);
    rec.ratio = static_cast<double>(rec.qualifying_primes) /
                (rec.lower_bound_main / std::log(static_cast<double>(inst.x)));
    return rec;
}

/// Exact tail count over ALL primes up to x, for comparison against the
/// interval-based lower bound x^{2(1-alpha)}.
struct TailSurvey {
    uint64_t count = 0;
    double threshold = 0.0;
    double bound = 0.0;
};

inline TailSurvey survey_tail(uint32_t base, uint64_t x, double alpha,
                              uint64_t enum_cap = kFullEnumCap,
                              uint64_t segment_size = kDefaultSegmentSize) {
    DigitSystem sys(base);
    if (x < 2)
        throw domain_error("survey_tail: no primes below 2");
    if (!std::isfinite(alpha))
        throw domain_error("survey_tail: alpha must be finite");
    if (x > enum_cap)
        throw resource_error("survey_tail: x exceeds the enumeration cap");

    TailSurvey s;
    s.threshold = alpha * (sys.q - 1) * detail::log_in_base(x, sys);
    s.bound = std::pow(static_cast<double>(x), 2.0 * (1.0 - alpha));
    long long t_min = snapped_ceil(s.threshold);
    for_each_prime(
        PrimeRange(2, x + 1),
        [&](uint64_t p) {
            if (static_cast<long long>(digit_sum(p, sys)) >= t_min)
                ++s.count;
        },
        segment_size);
    return s;
}

/// Primes whose binary expansion has at least twice as many ones as
/// zeros. The working rule compares against the bit length: qualify iff
/// 3 s_2(p) >= 2 len(p). The strict variant compares against log2 of p
/// itself, 3 s_2(p) >= 2 log2 p, decided exactly as 2^{3s} >= p^2.
struct ProblemOneCount {
    uint64_t count = 0;
    uint64_t strict_log_count = 0;
};

inline ProblemOneCount problem_one(uint64_t x, uint64_t enum_cap = kFullEnumCap,
                                   uint64_t segment_size = kDefaultSegmentSize) {
    if (x > enum_cap)
        throw resource_error("problem_one: x exceeds the enumeration cap");
    ProblemOneCount r;
    if (x < 2)
        return r;
    DigitSystem bin(2);
    for_each_prime(
        PrimeRange(2, x + 1),
        [&](uint64_t p) {
            uint64_t s3 = 3 * uint64_t{digit_sum(p, bin)};
            if (s3 >= 2 * uint64_t{digit_count(p, bin)})
                ++r.count;
            if (s3 >= 104 ||
                static_cast<unsigned __int128>(1) << s3 >=
                    static_cast<unsigned __int128>(p) * p)
                ++r.strict_log_count;
        },
        segment_size);
    return r;
}

/// Mean digit sum over the primes up to x, next to the asymptotic
/// reference value (q-1)/2 * log_q x it approaches.
struct DigitAverage {
    double mean = 0.0;
    double reference = 0.0;
    uint64_t prime_count = 0;
    uint64_t digit_sum_total = 0;
};

inline DigitAverage copeland_erdos_average(uint32_t base, uint64_t x,
                                           uint64_t enum_cap = kFullEnumCap,
                                           uint64_t segment_size = kDefaultSegmentSize) {
    DigitSystem sys(base);
    if (x < 2)
        throw domain_error("copeland_erdos_average: no primes below 2");
    if (x > enum_cap)
        throw resource_error("copeland_erdos_average: x exceeds the enumeration cap");

    DigitAverage r;
    for_each_prime(
        PrimeRange(2, x + 1),
        [&](uint64_t p) {
            ++r.prime_count;
            r.digit_sum_total += digit_sum(p, sys);
        },
        segment_size);
    r.mean = static_cast<double>(r.digit_sum_total) /
             static_cast<double>(r.prime_count);
    r.reference = (sys.q - 1) / 2.0 * detail::log_in_base(x, sys);
    return r;
}

} // namespace primetails
