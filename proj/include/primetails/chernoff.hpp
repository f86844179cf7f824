#pragma once

/**
 * @file chernoff.hpp
 * @brief Large-deviation machinery for the uniform digit distribution.
 *
 * A base-q digit, normalized to xi = 2j/(q-1) - 1 with j uniform on
 * {0, ..., q-1}, has moment generating function
 *
 *     E(e^{t xi}) = (1/q) sinh(t + t/(q-1)) / sinh(t/(q-1)),
 *
 * log-expansion  c2 t^2 + c4 t^4 + O(t^6)  with
 *
 *     c2 = (q+1) / (6(q-1)),
 *     c4 = -(q^3 + q^2 + q + 1) / (180 (q-1)^3),
 *
 * and rate function I(t, gamma) = t gamma - log E(e^{t xi}). The tail
 * P(S_k / k >= gamma) is at most e^{-k I(t, gamma)} for every t >= 0.
 * This header provides the MGF both ways (direct sum and closed form),
 * the rate function, its exact supremum over t, and the two exponential
 * bounds derived from it: exp(-k (a - 1/2)^2 / 18) and exp(-k I*).
 */

#include <cmath>
#include <cstdint>
#include <string>

#include "primetails/errors.hpp"

namespace primetails {

/// Quadratic coefficient of log E(e^{t xi}); also its global upper bound:
/// log E <= c2 t^2 for all t.
inline double series_c2(uint32_t q) {
    return (q + 1.0) / (6.0 * (q - 1.0));
}

/// Quartic coefficient of the log-MGF expansion (negative).
inline double series_c4(uint32_t q) {
    double qd = q;
    return -(qd * qd * qd + qd * qd + qd + 1.0) /
           (180.0 * (qd - 1.0) * (qd - 1.0) * (qd - 1.0));
}

namespace detail {

inline void check_base(uint32_t q, const char* where) {
    if (q < 2)
        throw domain_error(std::string(where) + ": base must be >= 2");
}

/// Switch point below which the sinh ratio is evaluated through its
/// series; both branches agree to ~1e-18 in the overlap.
inline constexpr double kSeriesSwitch = 1e-4;

} // namespace detail

/// E(e^{t xi}) as the direct q-term sum.
inline double mgf_direct(uint32_t q, double t) {
    detail::check_base(q, "mgf_direct");
    long double sum = 0.0L;
    for (uint32_t j = 0; j < q; ++j) {
        long double e = static_cast<long double>(t) *
                        (2.0L * j / (q - 1.0L) - 1.0L);
        sum += expl(e);
    }
    sum /= q;
    if (!std::isfinite(static_cast<double>(sum)))
        throw domain_error("mgf_direct: e^|t| overflows");
    return static_cast<double>(sum);
}

/// E(e^{t xi}) in closed form; the sinh ratio has a removable singularity
/// at t = 0, where the value is exactly 1.
inline double mgf_closed(uint32_t q, double t) {
    detail::check_base(q, "mgf_closed");
    if (t == 0.0)
        return 1.0;
    long double tl = t;
    long double num = sinhl(tl + tl / (q - 1.0L));
    long double den = sinhl(tl / (q - 1.0L));
    long double r = num / den / q;
    if (!std::isfinite(static_cast<double>(r)))
        throw domain_error("mgf_closed: e^|t| overflows");
    return static_cast<double>(r);
}

/// log E(e^{t xi}); series branch near 0, closed form elsewhere.
/// Nonnegative for all real t, and bounded above by c2 t^2.
inline double log_mgf(uint32_t q, double t) {
    detail::check_base(q, "log_mgf");
    if (std::abs(t) < detail::kSeriesSwitch) {
        double t2 = t * t;
        return series_c2(q) * t2 + series_c4(q) * t2 * t2;
    }
    long double tl = t;
    long double num = sinhl(tl + tl / (q - 1.0L));
    long double den = sinhl(tl / (q - 1.0L));
    long double r = logl(num / den / q);
    if (!std::isfinite(static_cast<double>(r)))
        throw domain_error("log_mgf: e^|t| overflows");
    return static_cast<double>(r);
}

/// d/dt log E(e^{t xi}). The two coth terms share a 1/t pole that cancels
/// analytically, so the small-t branch goes through the series instead.
inline double log_mgf_derivative(uint32_t q, double t) {
    detail::check_base(q, "log_mgf_derivative");
    if (std::abs(t) < detail::kSeriesSwitch) {
        double t2 = t * t;
        return 2.0 * series_c2(q) * t + 4.0 * series_c4(q) * t2 * t;
    }
    long double tl = t;
    long double a = tl * q / (q - 1.0L);
    long double b = tl / (q - 1.0L);
    long double r = (q / (q - 1.0L)) / tanhl(a) - (1.0L / (q - 1.0L)) / tanhl(b);
    return static_cast<double>(r);
}

/// Rate function I(t, gamma) = t gamma - log E(e^{t xi}).
inline double rate(uint32_t q, double gamma, double t) {
    detail::check_base(q, "rate");
    if (gamma < 0.0 || gamma >= 1.0)
        throw domain_error("rate: gamma must lie in [0, 1)");
    if (t < 0.0)
        throw domain_error("rate: t must be >= 0");
    return t * gamma - log_mgf(q, t);
}

/// The explicit closed-form tilt t = (gamma/3)(q-1)/(q+1): a simple
/// valid choice behind display_bound, not the maximizer of I(., gamma).
inline double explicit_tilt(uint32_t q, double gamma) {
    return gamma / 3.0 * (q - 1.0) / (q + 1.0);
}

struct RateOptimum {
    double t_star = 0.0;
    double rate_star = 0.0;
    int iterations = 0;
};

/// Supremum of the strictly concave t -> I(t, gamma) over t >= 0, by
/// bisection on the derivative I'(t) = gamma - (log E)'(t). The bracket
/// grows geometrically until I'(T) < 0 (always reached: (log E)' -> 1 and
/// gamma < 1); bisection then drives |I'| below 1e-10.
inline RateOptimum optimize_rate(uint32_t q, double gamma) {
    detail::check_base(q, "optimize_rate");
    if (gamma < 0.0 || gamma >= 1.0)
        throw domain_error("optimize_rate: gamma must lie in [0, 1)");
    if (gamma == 0.0)
        return {0.0, 0.0, 0};

    constexpr double kDerivTol = 1e-10;
    constexpr int kMaxIter = 500;

    auto deriv = [&](double t) { return gamma - log_mgf_derivative(q, t); };

    double hi = 1.0;
    int it = 0;
    while (deriv(hi) > 0.0) {
        hi *= 2.0;
        if (++it > 200)
            throw resource_error("optimize_rate: bracket growth did not terminate");
    }
    double lo = 0.0;
    double mid = hi;
    while (true) {
        mid = 0.5 * (lo + hi);
        double d = deriv(mid);
        if (std::abs(d) < kDerivTol)
            break;
        if (++it > kMaxIter)
            throw resource_error("optimize_rate: derivative tolerance not reached");
        if (d > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {mid, rate(q, gamma, mid), it};
}

namespace detail {

inline void check_tail_target(double a, const char* where) {
    if (!(a > 0.5) || !(a < 1.0))
        throw domain_error(std::string(where) + ": a must lie in (1/2, 1)");
}

} // namespace detail

/// Crude exponential bound exp(-k (a - 1/2)^2 / 18) on the tail
/// proportion |{n < q^k : s_q(n) >= a(q-1)k}| / q^k. Valid for every
/// base, hence independent of q.
inline double lemma_bound(uint32_t q, uint32_t k, double a) {
    detail::check_base(q, "lemma_bound");
    detail::check_tail_target(a, "lemma_bound");
    double d = a - 0.5;
    return std::exp(-static_cast<double>(k) * d * d / 18.0);
}

/// Intermediate display bound exp(-(k/6)((q-1)/(q+1)) gamma^2) with
/// gamma = 2a - 1; sits between refined_bound and lemma_bound.
inline double display_bound(uint32_t q, uint32_t k, double a) {
    detail::check_base(q, "display_bound");
    detail::check_tail_target(a, "display_bound");
    double gamma = 2.0 * a - 1.0;
    return std::exp(-static_cast<double>(k) / 6.0 * (q - 1.0) / (q + 1.0) *
                    gamma * gamma);
}

/// Chernoff bound at the explicit tilt explicit_tilt(q, gamma).
inline double fixed_tilt_bound(uint32_t q, uint32_t k, double a) {
    detail::check_base(q, "fixed_tilt_bound");
    detail::check_tail_target(a, "fixed_tilt_bound");
    double gamma = 2.0 * a - 1.0;
    return std::exp(-static_cast<double>(k) *
                    rate(q, gamma, explicit_tilt(q, gamma)));
}

/// Sharpest computable Chernoff bound exp(-k I*) with I* the true
/// supremum of the rate function. Always between the exact tail
/// proportion and lemma_bound.
inline double refined_bound(uint32_t q, uint32_t k, double a) {
    detail::check_base(q, "refined_bound");
    detail::check_tail_target(a, "refined_bound");
    double gamma = 2.0 * a - 1.0;
    return std::exp(-static_cast<double>(k) * optimize_rate(q, gamma).rate_star);
}

} // namespace primetails
