#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "frachyp/errors.hpp"

namespace frachyp {

/**
 * Arbitrary-precision signed integer (sign + base-2^32 magnitude).
 *
 * Sized for this toolkit: binomial coefficients, inclusion-exclusion counts
 * and exact-rational simplex pivots, i.e. numbers of at most a few thousand
 * bits.  Schoolbook arithmetic throughout.
 */
class BigInt {
public:
    BigInt() = default;

    BigInt(std::int64_t v) {  // NOLINT: implicit by design, mirrors integer literals
        if (v < 0) {
            std::uint64_t m = ~static_cast<std::uint64_t>(v) + 1;
            assign_u64(m);
            negative_ = !limbs_.empty();
        } else {
            assign_u64(static_cast<std::uint64_t>(v));
        }
    }

    static BigInt from_u64(std::uint64_t v) {
        BigInt r;
        r.assign_u64(v);
        return r;
    }

    static BigInt from_string(const std::string& s) {
        if (s.empty()) throw InvalidParams("BigInt: empty string");
        BigInt r;
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw InvalidParams("BigInt: no digits");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw InvalidParams("BigInt: bad digit in \"" + s + "\"");
            r.mul_u32_inplace(10);
            r.add_u32_inplace(static_cast<std::uint32_t>(s[i] - '0'));
        }
        r.negative_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.negative_ ? -c : c;
    }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.negative_ == b.negative_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_ && !r.limbs_.empty();
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.negative_ = a.negative_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.negative_ = b.negative_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                                    r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        r.negative_ = (a.negative_ != b.negative_) && !r.limbs_.empty();
        return r;
    }

    /// Truncated division (C semantics): quotient rounds toward zero.
    static void divmod(const BigInt& a, const BigInt& d, BigInt& q, BigInt& r) {
        if (d.is_zero()) throw InvalidParams("BigInt: division by zero");
        q = BigInt();
        r = BigInt();
        int bl = bit_length_mag(a.limbs_);
        for (int i = bl - 1; i >= 0; --i) {
            r.shl1_inplace();
            if (a.get_bit_mag(i)) r.set_bit0();
            if (cmp_mag(r.limbs_, d.limbs_) >= 0) {
                r.limbs_ = sub_mag(r.limbs_, d.limbs_);
                q.set_bit(i);
            }
        }
        q.trim();
        r.trim();
        q.negative_ = (a.negative_ != d.negative_) && !q.limbs_.empty();
        r.negative_ = a.negative_ && !r.limbs_.empty();
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt u, BigInt v) {
        u.negative_ = false;
        v.negative_ = false;
        if (u.is_zero()) return v;
        if (v.is_zero()) return u;
        int su = u.trailing_zeros();
        int sv = v.trailing_zeros();
        int shift = std::min(su, sv);
        u.shr_inplace(su);
        v.shr_inplace(sv);
        // binary gcd: both odd from here on
        for (;;) {
            if (cmp_mag(u.limbs_, v.limbs_) > 0) std::swap(u.limbs_, v.limbs_);
            v.limbs_ = sub_mag(v.limbs_, u.limbs_);
            v.trim();
            if (v.is_zero()) break;
            v.shr_inplace(v.trailing_zeros());
        }
        u.shl_inplace(shift);
        return u;
    }

    static BigInt pow(BigInt base, std::uint64_t exp) {
        BigInt result = 1;
        while (exp > 0) {
            if (exp & 1) result = result * base;
            base = base * base;
            exp >>= 1;
        }
        return result;
    }

    /// Exact binomial coefficient C(n, k).
    static BigInt binomial(std::uint64_t n, std::uint64_t k) {
        if (k > n) return BigInt();
        if (k > n - k) k = n - k;
        BigInt result = 1;
        for (std::uint64_t i = 1; i <= k; ++i) {
            result = result * BigInt::from_u64(n - k + i);
            BigInt q, r;
            divmod(result, BigInt::from_u64(i), q, r);
            result = q;  // exact at every step
        }
        return result;
    }

    int bit_length() const { return bit_length_mag(limbs_); }

    double to_double() const {
        if (is_zero()) return 0.0;
        int bl = bit_length();
        double mag;
        if (bl <= 64) {
            mag = static_cast<double>(to_u64_unchecked());
        } else {
            std::uint64_t top = top_bits(64);
            mag = std::ldexp(static_cast<double>(top), bl - 64);
        }
        return negative_ ? -mag : mag;
    }

    /// Natural log of a positive value; exact to double rounding even when
    /// the value itself overflows double.
    double log_value() const {
        if (sign() <= 0) throw InvalidParams("BigInt: log of nonpositive value");
        int bl = bit_length();
        if (bl <= 53) return std::log(static_cast<double>(to_u64_unchecked()));
        std::uint64_t top = top_bits(53);
        return std::log(static_cast<double>(top)) + (bl - 53) * std::log(2.0);
    }

    /// Value as int64 (throws if out of range).
    std::int64_t to_i64() const {
        if (limbs_.size() > 2) throw InvalidParams("BigInt: does not fit in int64");
        std::uint64_t m = to_u64_unchecked();
        if (!negative_ && m > static_cast<std::uint64_t>(INT64_MAX))
            throw InvalidParams("BigInt: does not fit in int64");
        if (negative_ && m > static_cast<std::uint64_t>(INT64_MAX) + 1)
            throw InvalidParams("BigInt: does not fit in int64");
        return negative_ ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> chunks;  // base 1e9, little endian
        BigInt t = *this;
        t.negative_ = false;
        while (!t.is_zero()) chunks.push_back(t.divmod_u32_inplace(1000000000));
        std::string s = negative_ ? "-" : "";
        s += std::to_string(chunks.back());
        for (auto it = chunks.rbegin() + 1; it != chunks.rend(); ++it) {
            std::string c = std::to_string(*it);
            s += std::string(9 - c.size(), '0') + c;
        }
        return s;
    }

private:
    std::vector<std::uint32_t> limbs_;  // little endian, trimmed
    bool negative_ = false;

    void assign_u64(std::uint64_t v) {
        limbs_.clear();
        negative_ = false;
        while (v > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            v >>= 32;
        }
    }

    std::uint64_t to_u64_unchecked() const {
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    std::uint64_t top_bits(int count) const {
        int bl = bit_length();
        std::uint64_t v = 0;
        for (int i = 0; i < count; ++i) {
            v <<= 1;
            int bit = bl - 1 - i;
            if (bit >= 0 && get_bit_mag(bit)) v |= 1;
        }
        return v;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& lo = a.size() < b.size() ? a : b;
        const auto& hi = a.size() < b.size() ? b : a;
        std::vector<std::uint32_t> r(hi.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t cur = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        r[hi.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            borrow = 0;
            if (cur < 0) {
                cur += (1LL << 32);
                borrow = 1;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static int bit_length_mag(const std::vector<std::uint32_t>& limbs) {
        if (limbs.empty()) return 0;
        std::uint32_t top = limbs.back();
        int bits = 0;
        while (top > 0) {
            ++bits;
            top >>= 1;
        }
        return bits + 32 * static_cast<int>(limbs.size() - 1);
    }

    bool get_bit_mag(int i) const {
        std::size_t limb = static_cast<std::size_t>(i) >> 5;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i & 31)) & 1;
    }

    void set_bit(int i) {
        std::size_t limb = static_cast<std::size_t>(i) >> 5;
        if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
        limbs_[limb] |= 1U << (i & 31);
    }

    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else limbs_[0] |= 1;
    }

    void shl1_inplace() {
        std::uint32_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
    }

    void shl_inplace(int k) {
        if (is_zero() || k == 0) return;
        int limb_shift = k >> 5, bit_shift = k & 31;
        limbs_.insert(limbs_.begin(), limb_shift, 0);
        if (bit_shift) {
            std::uint32_t carry = 0;
            for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
                std::uint32_t next = limbs_[i] >> (32 - bit_shift);
                limbs_[i] = (limbs_[i] << bit_shift) | carry;
                carry = next;
            }
            if (carry) limbs_.push_back(carry);
        }
    }

    void shr_inplace(int k) {
        if (is_zero() || k == 0) return;
        int limb_shift = k >> 5, bit_shift = k & 31;
        if (limb_shift >= static_cast<int>(limbs_.size())) {
            limbs_.clear();
            negative_ = false;
            return;
        }
        limbs_.erase(limbs_.begin(), limbs_.begin() + limb_shift);
        if (bit_shift) {
            for (std::size_t i = 0; i < limbs_.size(); ++i) {
                limbs_[i] >>= bit_shift;
                if (i + 1 < limbs_.size()) limbs_[i] |= limbs_[i + 1] << (32 - bit_shift);
            }
        }
        trim();
    }

    int trailing_zeros() const {
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            if (limbs_[i] != 0) {
                int tz = 0;
                std::uint32_t v = limbs_[i];
                while (!(v & 1)) {
                    ++tz;
                    v >>= 1;
                }
                return static_cast<int>(i) * 32 + tz;
            }
        }
        return 0;
    }

    void mul_u32_inplace(std::uint32_t m) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        trim();
    }

    void add_u32_inplace(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; i < limbs_.size() && carry; ++i) {
            std::uint64_t cur = limbs_[i] + carry;
            limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    }

    std::uint32_t divmod_u32_inplace(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }
};

}  // namespace frachyp
