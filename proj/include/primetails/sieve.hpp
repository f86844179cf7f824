#pragma once

/**
 * @file sieve.hpp
 * @brief Prime enumeration: segmented sieve, Miller-Rabin, digit-sum
 *        histograms over primes, and short-interval densities.
 *
 * The segmented sieve walks [lo, hi) in odd-only blocks so memory stays
 * bounded by the segment size regardless of the range, which keeps desk
 * experiments near 2^34 cheap. The hard ceiling of 2^52 is where the
 * base-prime list itself (up to 2^26) stops being trivially affordable;
 * everything here throws resource_error rather than thrash past it.
 */

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <new>
#include <ostream>
#include <vector>

#include "primetails/digits.hpp"
#include "primetails/errors.hpp"

namespace primetails {

inline constexpr uint64_t kSieveHiCap = uint64_t{1} << 52;
inline constexpr uint64_t kDefaultSegmentSize = uint64_t{1} << 20;

/// Floor of sqrt(n), exact for the full uint64 range.
inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0)
        return 0;
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n)
        --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

/// Half-open range [lo, hi) of candidates for prime enumeration.
struct PrimeRange {
    uint64_t lo;
    uint64_t hi;

    PrimeRange(uint64_t lo_, uint64_t hi_, uint64_t cap = kSieveHiCap)
        : lo(lo_), hi(hi_) {
        if (lo >= hi)
            throw domain_error("PrimeRange: need lo < hi");
        if (hi > cap)
            throw resource_error("PrimeRange: hi exceeds the sieve cap");
    }
};

/// All primes <= limit by a plain sieve of Eratosthenes.
inline std::vector<uint32_t> simple_sieve(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2)
        return primes;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p])
            continue;
        for (uint64_t m = p * p; m <= limit; m += p)
            composite[m] = 1;
    }
    for (uint64_t n = 2; n <= limit; ++n)
        if (!composite[n])
            primes.push_back(static_cast<uint32_t>(n));
    return primes;
}

/// Calls fn(p) for every prime p in range, in increasing order.
///
/// Odd-only: 2 is emitted specially, then each block holds segment_size
/// odd candidates (so a block spans 2 * segment_size integers). Base
/// primes above 2 cross off odd multiples starting at max(p^2, first
/// multiple in the block), stepping 2p.
template <typename Fn>
void for_each_prime(const PrimeRange& range, Fn&& fn,
                    uint64_t segment_size = kDefaultSegmentSize) {
    if (segment_size == 0)
        throw domain_error("for_each_prime: segment size must be positive");
    uint64_t lo = range.lo;
    uint64_t hi = range.hi;
    if (lo <= 2 && 2 < hi)
        fn(uint64_t{2});

    uint64_t start = lo < 3 ? 3 : lo;
    if (start % 2 == 0)
        ++start;
    if (start >= hi)
        return;

    try {
        std::vector<uint32_t> base = simple_sieve(isqrt_u64(hi - 1));
        std::vector<uint8_t> composite;
        for (uint64_t seg_lo = start; seg_lo < hi;) {
            uint64_t count = (hi - seg_lo + 1) / 2;
            if (count > segment_size)
                count = segment_size;
            uint64_t seg_end = seg_lo + 2 * count;
            composite.assign(count, 0);
            for (uint32_t p : base) {
                if (p == 2)
                    continue;
                uint64_t pp = static_cast<uint64_t>(p) * p;
                if (pp >= seg_end)
                    break;
                uint64_t first = (seg_lo + p - 1) / p * p;
                if (first < pp)
                    first = pp;
                if (first % 2 == 0)
                    first += p;
                for (uint64_t m = first; m < seg_end; m += 2 * uint64_t{p})
                    composite[(m - seg_lo) / 2] = 1;
            }
            for (uint64_t i = 0; i < count; ++i)
                if (!composite[i])
                    fn(seg_lo + 2 * i);
            seg_lo = seg_end;
        }
    } catch (const std::bad_alloc&) {
        throw resource_error("for_each_prime: sieve allocation failed");
    }
}

/// Primes in range, materialized.
inline std::vector<uint64_t> sieve_range(const PrimeRange& range,
                                         uint64_t segment_size = kDefaultSegmentSize) {
    std::vector<uint64_t> primes;
    for_each_prime(range, [&](uint64_t p) { primes.push_back(p); }, segment_size);
    return primes;
}

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1)
            r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin for the full uint64 range. The witness set
/// {2, 3, 5, 7, ..., 37} is known to be exact below 3.3 * 10^24.
inline bool is_prime(uint64_t n) {
    constexpr uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2)
        return false;
    for (uint64_t p : witnesses) {
        if (n % p == 0)
            return n == p;
    }
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (uint64_t a : witnesses) {
        uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

/// Digit sums of the primes in a range, bucketed by value.
struct DigitSumHistogram {
    uint32_t q = 2;
    uint64_t prime_count = 0;
    std::map<uint32_t, uint64_t> bins;
};

inline DigitSumHistogram count_and_histogram(const PrimeRange& range,
                                             const DigitSystem& sys,
                                             uint64_t segment_size = kDefaultSegmentSize) {
    DigitSumHistogram h;
    h.q = sys.q;
    for_each_prime(
        range,
        [&](uint64_t p) {
            ++h.prime_count;
            ++h.bins[digit_sum(p, sys)];
        },
        segment_size);
    return h;
}

inline void write_csv(const DigitSumHistogram& h, std::ostream& os) {
    os << "digit_sum,count\n";
    for (const auto& [s, c] : h.bins)
        os << s << ',' << c << '\n';
}

/// Prime count over the short interval (x, x + h] with h = ceil(x^theta),
/// compared against the h / log x predicted by the prime number theorem.
struct ShortIntervalDensity {
    uint64_t x = 0;
    double theta = 0.0;
    uint64_t h = 0;
    uint64_t prime_count = 0;
    double expected = 0.0;
    double ratio = 0.0;
};

inline ShortIntervalDensity empirical_short_interval_density(
    uint64_t x, double theta, uint64_t segment_size = kDefaultSegmentSize,
    uint64_t cap = kSieveHiCap) {
    if (x < 2)
        throw domain_error("empirical_short_interval_density: x must be >= 2");
    if (!(theta > 0.0) || theta > 1.0)
        throw domain_error("empirical_short_interval_density: theta must lie in (0, 1]");
    double hd = std::pow(static_cast<double>(x), theta);
    if (hd < 2.0 - kIntegralEps)
        throw domain_error("empirical_short_interval_density: interval too short");
    auto h = static_cast<uint64_t>(snapped_ceil(hd));
    if (x > cap || h > cap - x)
        throw resource_error("empirical_short_interval_density: x + h exceeds the sieve cap");

    ShortIntervalDensity d;
    d.x = x;
    d.theta = theta;
    d.h = h;
    PrimeRange range(x + 1, x + h + 1, cap);
    for_each_prime(range, [&](uint64_t) { ++d.prime_count; }, segment_size);
    double logx = std::log(static_cast<double>(x));
    d.expected = static_cast<double>(h) / logx;
    d.ratio = static_cast<double>(d.prime_count) * logx / static_cast<double>(h);
    return d;
}

} // namespace primetails
