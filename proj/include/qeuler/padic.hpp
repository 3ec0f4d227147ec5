#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "qeuler/numbers.hpp"

namespace qeuler {

/// Finite-precision element of Q_p stored as p^val * unit with an explicit
/// absolute precision: the represented value is known modulo p^prec.
///
/// Zero is the "valuation >= prec" class: nothing is known beyond
/// "congruent to 0 mod p^prec". Arithmetic propagates precision so that every
/// digit reported is correct; claims are conservative, never optimistic.
class Padic {
    Int p_;
    int prec_ = 0;       // absolute precision K
    bool zero_ = true;
    long long val_ = 0;  // valuation, meaningful only when !zero_
    Int unit_;           // in [1, p^(prec-val)), coprime to p

    Padic(Int p, int prec) : p_(std::move(p)), prec_(prec) {}

    long long rel() const { return prec_ - val_; } // unit digits known

    static void check_same_prime(const Padic& a, const Padic& b) {
        if (a.p_ != b.p_) throw domain_error("p-adic backend mismatch: different primes");
    }

public:
    Padic() = default;

    static Padic zero(const Int& p, int prec) { return Padic(p, prec); }

    /// Build value * p^scale known to absolute precision prec.
    static Padic from_scaled(const Int& p, int prec, long long scale, Int value) {
        if (prec - scale <= 0) return zero(p, prec);
        Int mod = int_pow(p, prec - scale);
        value %= mod;
        if (value < 0) value += mod;
        if (value == 0) return zero(p, prec);
        long long w = 0;
        while (value % p == 0) {
            value /= p;
            ++w;
        }
        Padic r(p, prec);
        r.zero_ = false;
        r.val_ = scale + w;
        r.unit_ = std::move(value);
        return r;
    }

    const Int& prime() const { return p_; }
    int precision() const { return prec_; }
    bool is_zero() const { return zero_; }
    std::optional<long long> valuation() const {
        return zero_ ? std::nullopt : std::optional<long long>(val_);
    }
    const Int& unit() const {
        if (zero_) throw domain_error("p-adic zero has no unit part");
        return unit_;
    }

    /// Base-p digits of the unit, least significant first, prec-val entries.
    std::vector<int> digits() const {
        std::vector<int> d;
        if (zero_) return d;
        Int u = unit_;
        for (long long i = 0; i < rel(); ++i) {
            d.push_back(static_cast<int>(u % p_));
            u /= p_;
        }
        return d;
    }

    /// The canonical rational representative p^val * unit (0 for zero).
    Rational representative() const {
        if (zero_) return Rational(0);
        if (val_ >= 0) return Rational(unit_ * int_pow(p_, val_));
        return Rational(unit_, int_pow(p_, -val_));
    }

    Padic operator-() const {
        if (zero_) return *this;
        Padic r = *this;
        r.unit_ = int_pow(p_, rel()) - unit_;
        return r;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        check_same_prime(a, b);
        int m = std::min(a.prec_, b.prec_);
        long long s = 0;
        if (!a.zero_) s = std::min(s, a.val_);
        if (!b.zero_) s = std::min(s, b.val_);
        Int v = 0;
        if (!a.zero_) v += a.unit_ * int_pow(a.p_, a.val_ - s);
        if (!b.zero_) v += b.unit_ * int_pow(a.p_, b.val_ - s);
        return from_scaled(a.p_, m, s, std::move(v));
    }

    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    friend Padic operator*(const Padic& a, const Padic& b) {
        check_same_prime(a, b);
        int cap = std::max(a.prec_, b.prec_);
        if (a.zero_ || b.zero_) {
            long long natural;
            if (a.zero_ && b.zero_)
                natural = static_cast<long long>(a.prec_) + b.prec_;
            else if (a.zero_)
                natural = a.prec_ + b.val_;
            else
                natural = b.prec_ + a.val_;
            return zero(a.p_, static_cast<int>(std::min<long long>(natural, cap)));
        }
        long long v = a.val_ + b.val_;
        long long k = std::min<long long>(v + std::min(a.rel(), b.rel()), cap);
        return from_scaled(a.p_, static_cast<int>(k), v, a.unit_ * b.unit_);
    }

    friend Padic operator/(const Padic& a, const Padic& b) {
        check_same_prime(a, b);
        if (b.zero_)
            throw precision_exhausted("p-adic division: divisor is indistinguishable from zero at its precision");
        int cap = std::max(a.prec_, b.prec_);
        if (a.zero_) {
            long long k = std::min<long long>(a.prec_ - b.val_, cap);
            if (k <= 0)
                throw precision_exhausted("p-adic division: result precision <= 0");
            return zero(a.p_, static_cast<int>(k));
        }
        long long v = a.val_ - b.val_;
        long long k = std::min<long long>(v + std::min(a.rel(), b.rel()), cap);
        if (k <= 0) throw precision_exhausted("p-adic division: result precision <= 0");
        Int mod = int_pow(a.p_, k - v);
        Int u = a.unit_ * inv_mod(b.unit_, mod);
        return from_scaled(a.p_, static_cast<int>(k), v, std::move(u));
    }

    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }
    Padic& operator/=(const Padic& o) { return *this = *this / o; }

    /// Indistinguishable at the shared absolute precision.
    friend bool operator==(const Padic& a, const Padic& b) {
        check_same_prime(a, b);
        int m = std::min(a.prec_, b.prec_);
        long long s = 0;
        if (!a.zero_) s = std::min(s, a.val_);
        if (!b.zero_) s = std::min(s, b.val_);
        if (m - s <= 0) return true; // no shared digits to compare
        Int mod = int_pow(a.p_, m - s);
        Int va = a.zero_ ? Int(0) : (a.unit_ * int_pow(a.p_, a.val_ - s)) % mod;
        Int vb = b.zero_ ? Int(0) : (b.unit_ * int_pow(a.p_, b.val_ - s)) % mod;
        return va == vb;
    }
    friend bool operator!=(const Padic& a, const Padic& b) { return !(a == b); }
};

/// Embed a rational into Q_p with absolute precision prec.
inline Padic padic_from_rational(const Rational& r, const Int& p, int prec) {
    if (!is_odd_prime(p)) throw domain_error("p must be an odd prime");
    if (prec < 1) throw domain_error("p-adic precision must be >= 1");
    if (r == 0) return Padic::zero(p, prec);
    Int num = numerator(r), den = denominator(r);
    long long vn = valuation(num, p), vd = valuation(den, p);
    long long v = vn - vd;
    if (v >= prec) return Padic::zero(p, prec);
    num /= int_pow(p, vn);
    den /= int_pow(p, vd);
    Int mod = int_pow(p, prec - v);
    Int u = (num % mod) * inv_mod(den, mod);
    return Padic::from_scaled(p, prec, v, std::move(u));
}

} // namespace qeuler
