#pragma once

/**
 * @file digits.hpp
 * @brief Base-q digit arithmetic and the exact digit-sum distribution.
 *
 * The distribution N(k, m) = |{0 <= n < q^k : s_q(n) = m}| is built by the
 * convolution recurrence N(k, m) = sum_{d=0}^{min(q-1,m)} N(k-1, m-d) in
 * exact arbitrary precision. It is the ground truth every tail bound in
 * this library is tested against.
 *
 * Threshold convention, used consistently everywhere: "digit sum >= t"
 * means s >= ceil(t) when t is non-integral and s >= t when integral
 * ("<=" mirrors with floor). This keeps thresholded sets subsets of their
 * real-valued ideal, so lower bounds stay valid. Floating thresholds
 * within 1e-9 of an integer are treated as that integer, absorbing
 * round-off from products like 0.7 * 30.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "primetails/bignat.hpp"
#include "primetails/errors.hpp"

namespace primetails {

/// Snapping tolerance for deciding that a real threshold is an integer.
inline constexpr double kIntegralEps = 1e-9;

inline long long snapped_ceil(double v) {
    double r = std::nearbyint(v);
    if (std::abs(v - r) < kIntegralEps)
        return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(v));
}

inline long long snapped_floor(double v) {
    double r = std::nearbyint(v);
    if (std::abs(v - r) < kIntegralEps)
        return static_cast<long long>(r);
    return static_cast<long long>(std::floor(v));
}

/// The base q >= 2 shared by all digit arithmetic.
struct DigitSystem {
    uint32_t q;

    explicit DigitSystem(uint32_t base) : q(base) {
        if (q < 2)
            throw domain_error("DigitSystem: base must be >= 2");
    }
};

/// Sum of the base-q digits of n. s_q(0) = 0.
inline uint32_t digit_sum(uint64_t n, const DigitSystem& sys) {
    uint32_t s = 0;
    while (n > 0) {
        s += static_cast<uint32_t>(n % sys.q);
        n /= sys.q;
    }
    return s;
}

/// Number of base-q digits of n >= 1, i.e. floor(log_q n) + 1.
inline uint32_t digit_count(uint64_t n, const DigitSystem& sys) {
    if (n == 0)
        throw domain_error("digit_count: n must be >= 1");
    uint32_t c = 0;
    while (n > 0) {
        ++c;
        n /= sys.q;
    }
    return c;
}

/// Exact counts of k-digit strings by digit sum; counts[m] is the number
/// of n in [0, q^k) with s_q(n) = m, for m in [0, (q-1)k].
struct DigitSumDistribution {
    uint32_t q = 2;
    uint32_t k = 0;
    std::vector<BigNat> counts;

    /// q^k, the total mass of the distribution.
    BigNat total() const { return BigNat::pow(q, k); }

    uint32_t max_sum() const { return (q - 1) * k; }
};

/// Default cap on k for the DP; the build is O(k^2 q (q-1)) big-natural
/// additions, which stays in the seconds range below this.
inline constexpr uint32_t kDefaultDigitCap = 600;
/// Hard ceiling: beyond this q^k overflows even long double exponents.
inline constexpr uint32_t kHardDigitCap = 2000;

inline DigitSumDistribution build_distribution(const DigitSystem& sys, uint32_t k,
                                               uint32_t cap = kDefaultDigitCap) {
    cap = std::min(cap, kHardDigitCap);
    if (k > cap)
        throw resource_error("build_distribution: k exceeds DP cap (" +
                             std::to_string(cap) + ")");
    DigitSumDistribution dist;
    dist.q = sys.q;
    dist.k = k;
    dist.counts.assign(1, BigNat(1)); // k = 0: only n = 0, digit sum 0
    std::vector<BigNat> next;
    for (uint32_t row = 1; row <= k; ++row) {
        next.assign(static_cast<size_t>(sys.q - 1) * row + 1, BigNat());
        for (size_t m = 0; m < next.size(); ++m) {
            size_t dmax = std::min<size_t>(sys.q - 1, m);
            for (size_t d = 0; d <= dmax; ++d) {
                size_t idx = m - d;
                if (idx < dist.counts.size())
                    next[m] += dist.counts[idx];
            }
        }
        dist.counts.swap(next);
    }
    return dist;
}

/// Count of n < q^k with s_q(n) >= threshold (ceil convention above).
inline BigNat tail_count(const DigitSumDistribution& dist, double threshold) {
    long long m0 = snapped_ceil(threshold);
    if (m0 < 0)
        m0 = 0;
    BigNat sum;
    for (size_t m = static_cast<size_t>(m0); m < dist.counts.size(); ++m)
        sum += dist.counts[m];
    return sum;
}

/// Mirror of tail_count: n < q^k with s_q(n) <= threshold (floor convention).
inline BigNat head_count(const DigitSumDistribution& dist, double threshold) {
    long long m1 = snapped_floor(threshold);
    BigNat sum;
    if (m1 < 0)
        return sum;
    size_t stop = std::min<size_t>(dist.counts.size(), static_cast<size_t>(m1) + 1);
    for (size_t m = 0; m < stop; ++m)
        sum += dist.counts[m];
    return sum;
}

/// Proportion of n < q^k with s_q(n) >= a(q-1)k, from the exact ratio.
/// Requires 1/2 < a < 1.
inline double tail_proportion(const DigitSumDistribution& dist, double a) {
    if (!(a > 0.5) || !(a < 1.0))
        throw domain_error("tail_proportion: a must lie in (1/2, 1)");
    double threshold = a * static_cast<double>(dist.q - 1) * dist.k;
    BigNat tail = tail_count(dist, threshold);
    long double num = tail.approx();
    long double den = dist.total().approx();
    return static_cast<double>(num / den);
}

/// CSV export, header `m,count`, counts in decimal.
inline void write_csv(const DigitSumDistribution& dist, std::ostream& os) {
    os << "m,count\n";
    for (size_t m = 0; m < dist.counts.size(); ++m)
        os << m << ',' << dist.counts[m].to_string() << '\n';
}

} // namespace primetails
