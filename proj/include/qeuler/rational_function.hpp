#pragma once

#include <utility>

#include "qeuler/polynomial.hpp"

namespace qeuler {

/// Element of Q(q) held as a quotient of integer polynomials.
///
/// Every value keeps the cheap normal form (denominator nonzero with positive
/// leading coefficient, numerator/denominator integer contents coprime).
/// Arithmetic does not run polynomial gcds; canonical() produces the fully
/// gcd-reduced representative, and equality is decided by cross-multiplication,
/// which agrees with equality of canonical forms.
class RationalFunction {
    IntPoly num_, den_;

    void normalize() {
        if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = IntPoly(1);
            return;
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(num_.content(), den_.content());
        if (g > 1) {
            num_.divide_content(g);
            den_.divide_content(g);
        }
    }

public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(long long v) : num_(v), den_(1) {} // NOLINT: implicit scalar lift
    explicit RationalFunction(const Int& v) : num_(v), den_(1) {}
    explicit RationalFunction(const Rational& v)
        : num_(boost::multiprecision::numerator(v)), den_(boost::multiprecision::denominator(v)) {
        normalize();
    }
    explicit RationalFunction(IntPoly num) : num_(std::move(num)), den_(1) {}
    RationalFunction(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    /// The indeterminate q.
    static RationalFunction q() { return RationalFunction(IntPoly::monomial(1, 1)); }

    /// q^e for any integer e (Laurent powers become genuine fractions).
    static RationalFunction q_pow(long long e) {
        if (e >= 0) return RationalFunction(IntPoly::monomial(1, static_cast<std::size_t>(e)));
        return RationalFunction(IntPoly(1), IntPoly::monomial(1, static_cast<std::size_t>(-e)));
    }

    const IntPoly& numerator() const { return num_; }
    const IntPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw division_by_zero("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    /// Fully reduced representative; idempotent.
    RationalFunction canonical() const {
        if (num_.is_zero()) return {};
        IntPoly g = poly_gcd(num_, den_);
        if (g.degree() <= 0) {
            RationalFunction r = *this;
            return r;
        }
        return RationalFunction(divide_exact(num_, g), divide_exact(den_, g));
    }

    bool is_canonical() const { return poly_gcd(num_, den_).degree() <= 0; }

    /// Substitute q -> 1/q and renormalize.
    RationalFunction substitute_q_inverse() const {
        long long d = std::max(num_.degree(), den_.degree());
        if (d < 0) return {};
        auto reverse_to = [d](const IntPoly& p) {
            std::vector<Int> c(static_cast<std::size_t>(d) + 1);
            for (long long i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(d - i)] = p.coeff(static_cast<std::size_t>(i));
            return IntPoly(std::move(c));
        };
        return RationalFunction(reverse_to(num_), reverse_to(den_));
    }

    /// Exact evaluation at q0 with removable-singularity cancellation.
    Rational eval_at(const Rational& q0) const {
        auto lift = [](const IntPoly& p) {
            std::vector<Rational> c;
            c.reserve(static_cast<std::size_t>(p.degree()) + 1);
            for (long long i = 0; i <= p.degree(); ++i) c.emplace_back(p.coeff(static_cast<std::size_t>(i)));
            return c;
        };
        auto eval = [&q0](const std::vector<Rational>& c) {
            Rational acc = 0;
            for (std::size_t i = c.size(); i-- > 0;) acc = acc * q0 + c[i];
            return acc;
        };
        // Synthetic division by (q - q0); valid only when the value vanishes.
        auto deflate = [&q0](std::vector<Rational>& c) {
            std::vector<Rational> out(c.size() - 1);
            Rational carry = 0;
            for (std::size_t i = c.size(); i-- > 1;) {
                carry = c[i] + carry * q0;
                out[i - 1] = carry;
            }
            c = std::move(out);
        };
        std::vector<Rational> n = lift(num_), d = lift(den_);
        Rational dv = eval(d);
        Rational nv = eval(n);
        while (dv == 0 && nv == 0 && d.size() > 1) {
            deflate(n);
            deflate(d);
            dv = eval(d);
            nv = eval(n);
        }
        if (dv == 0) throw pole_error("rational function has a pole at the evaluation point");
        return nv / dv;
    }
};

} // namespace qeuler
