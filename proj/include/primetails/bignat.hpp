#pragma once

/**
 * @file bignat.hpp
 * @brief Minimal arbitrary-precision natural numbers.
 *
 * Just enough big-integer arithmetic for exact digit-sum counting:
 * addition, comparison, multiplication by a machine word, small-base
 * powers, decimal output and a floating approximation. Counts of
 * digit strings overflow 64 bits around k = 64/log2(q), so every
 * count in the digits module is carried as a BigNat and converted to
 * floating point at the final division only.
 */

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace primetails {

class BigNat {
public:
    BigNat() = default;

    BigNat(uint64_t v) {
        if (v != 0) {
            limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
            if (v >> 32)
                limbs_.push_back(static_cast<uint32_t>(v >> 32));
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    BigNat& operator+=(const BigNat& rhs) {
        if (limbs_.size() < rhs.limbs_.size())
            limbs_.resize(rhs.limbs_.size(), 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t sum = carry + limbs_[i];
            if (i < rhs.limbs_.size())
                sum += rhs.limbs_[i];
            limbs_[i] = static_cast<uint32_t>(sum & 0xffffffffu);
            carry = sum >> 32;
            if (carry == 0 && i >= rhs.limbs_.size())
                break;
        }
        if (carry)
            limbs_.push_back(static_cast<uint32_t>(carry));
        return *this;
    }

    friend BigNat operator+(BigNat lhs, const BigNat& rhs) {
        lhs += rhs;
        return lhs;
    }

    /// Multiply in place by a machine word.
    BigNat& operator*=(uint32_t m) {
        if (m == 0) {
            limbs_.clear();
            return *this;
        }
        uint64_t carry = 0;
        for (auto& limb : limbs_) {
            uint64_t prod = static_cast<uint64_t>(limb) * m + carry;
            limb = static_cast<uint32_t>(prod & 0xffffffffu);
            carry = prod >> 32;
        }
        if (carry)
            limbs_.push_back(static_cast<uint32_t>(carry));
        return *this;
    }

    /// base^exp by repeated multiplication; exp is small in all uses here.
    static BigNat pow(uint32_t base, uint32_t exp) {
        BigNat r(1);
        for (uint32_t i = 0; i < exp; ++i)
            r *= base;
        return r;
    }

    friend bool operator==(const BigNat& a, const BigNat& b) {
        return a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() <=> b.limbs_.size();
        for (size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i])
                return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    /// Decimal representation, no leading zeros ("0" for zero).
    std::string to_string() const {
        if (limbs_.empty())
            return "0";
        std::vector<uint32_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            // divide work by 1e9, collecting the remainder
            uint64_t rem = 0;
            for (size_t i = work.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0)
                work.pop_back();
            std::string chunk = std::to_string(rem);
            if (work.empty()) {
                out.insert(0, chunk);
            } else {
                out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
            }
        }
        return out;
    }

    /// Closest long double; relative error ~ limbs * 2^-64, far below 2^-50
    /// for anything under the digit-DP cap.
    long double approx() const {
        long double r = 0.0L;
        for (size_t i = limbs_.size(); i-- > 0;)
            r = r * 4294967296.0L + static_cast<long double>(limbs_[i]);
        return r;
    }

    size_t limb_count() const { return limbs_.size(); }

private:
    std::vector<uint32_t> limbs_; // little-endian base 2^32, no trailing zeros
};

} // namespace primetails
