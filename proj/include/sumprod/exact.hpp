// Copyright 2026 The sumprod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumprod {

/// Exact rational number with 64-bit storage.
///
/// Invariants: den > 0 and gcd(|num|, den) == 1. All intermediate products
/// run in 128 bits; a result that does not fit back into 64 bits throws
/// std::overflow_error. Desk-scale workloads stay far below that limit.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        return make128(n, (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        return make128(n, (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return (double)num_ / (double)den_; }

    /// Serialized form "num/den", e.g. "5/16" or "3/1".
    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a/b" or a bare integer "a".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = n;
        den_ = d;
    }

    static Rational make128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 kMax = INT64_MAX;
        if (n > kMax || n < -kMax || d > kMax)
            throw std::overflow_error("Rational: value exceeds 64-bit storage");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

/// floor(r * n) for n >= 0.
inline std::int64_t floor_scale(const Rational& r, std::int64_t n) {
    __int128 t = (__int128)r.num() * n;
    __int128 d = r.den();
    __int128 q = t / d;
    if (t % d != 0 && t < 0) --q;
    return (std::int64_t)q;
}

/// ceil(r * n) for n >= 0.
inline std::int64_t ceil_scale(const Rational& r, std::int64_t n) {
    __int128 t = (__int128)r.num() * n;
    __int128 d = r.den();
    __int128 q = t / d;
    if (t % d != 0 && t > 0) ++q;
    return (std::int64_t)q;
}

/// Arbitrary-size unsigned integer, just big enough for the power
/// comparisons the hypothesis checks need (products bounded by q^N raised
/// to small rational exponents). Little-endian 64-bit limbs.
class BigUint {
public:
    BigUint() {}
    BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& mul_u64(std::uint64_t m) {
        if (m == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 t = (unsigned __int128)limb * m + carry;
            limb = (std::uint64_t)t;
            carry = t >> 64;
        }
        if (carry) limbs_.push_back((std::uint64_t)carry);
        return *this;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        if (a.is_zero() || b.is_zero()) return BigUint();
        BigUint r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            unsigned __int128 carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                unsigned __int128 t = (unsigned __int128)a.limbs_[i] * b.limbs_[j] +
                                      r.limbs_[i + j] + carry;
                r.limbs_[i + j] = (std::uint64_t)t;
                carry = t >> 64;
            }
            r.limbs_[i + b.limbs_.size()] += (std::uint64_t)carry;
        }
        r.trim();
        return r;
    }

    static BigUint pow(std::uint64_t base, std::uint64_t exp) {
        BigUint r(1), b(base);
        while (exp) {
            if (exp & 1) r = r * b;
            b = b * b;
            exp >>= 1;
        }
        return r;
    }

    /// -1, 0, +1 as *this compares to other.
    int cmp(const BigUint& other) const {
        if (limbs_.size() != other.limbs_.size())
            return limbs_.size() < other.limbs_.size() ? -1 : 1;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator<(const BigUint& a, const BigUint& b) { return a.cmp(b) < 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigUint& a, const BigUint& b) { return a.cmp(b) == 0; }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint64_t> limbs_;
};

/// Exact test of value >= q^(levels * eps), i.e. value^eps.den >= q^(levels * eps.num).
/// Used by every projection-size hypothesis check; eps must be >= 0.
inline bool meets_power_bound(std::uint64_t value, std::uint64_t q, std::int64_t levels,
                              const Rational& eps) {
    if (eps.num() < 0) throw std::invalid_argument("meets_power_bound: negative exponent");
    BigUint lhs = BigUint::pow(value, (std::uint64_t)eps.den());
    BigUint rhs = BigUint::pow(q, (std::uint64_t)(levels * eps.num()));
    return lhs >= rhs;
}

/// Smallest integer c in [1, limit] with c^eps.den >= q^(levels * eps.num),
/// i.e. ceil(q^(levels*eps)) clamped to limit.
inline std::uint64_t ceil_power(std::uint64_t q, std::int64_t levels, const Rational& eps,
                                std::uint64_t limit) {
    std::uint64_t lo = 1, hi = limit;
    if (meets_power_bound(lo, q, levels, eps)) return lo;
    if (!meets_power_bound(hi, q, levels, eps))
        throw std::invalid_argument("ceil_power: bound unattainable within limit");
    // invariant: lo fails, hi meets
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (meets_power_bound(mid, q, levels, eps))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// Thrown when an operation would exceed its configured cost budget.
class cost_guard_error : public std::runtime_error {
public:
    explicit cost_guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sumprod
