#pragma once

#include <cstdlib>
#include <utility>
#include <vector>

#include "qeuler/numbers.hpp"

namespace qeuler {

/// Dense univariate polynomial over Z, coefficients ascending.
/// The zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
    std::vector<Int> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

public:
    IntPoly() = default;
    IntPoly(long long v) { // NOLINT: implicit by design, mirrors Int
        if (v != 0) c_.push_back(Int(v));
    }
    explicit IntPoly(Int v) {
        if (v != 0) c_.push_back(std::move(v));
    }
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(Int coeff, std::size_t deg) {
        if (coeff == 0) return {};
        std::vector<Int> c(deg + 1);
        c[deg] = std::move(coeff);
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }

    Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    const Int& leading() const { return c_.back(); }
    const std::vector<Int>& coeffs() const { return c_; }

    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPoly& operator-=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }

    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
    IntPoly& operator*=(const Int& k) {
        if (k == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= k;
        return *this;
    }
    friend IntPoly operator*(IntPoly a, const Int& k) { return a *= k; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    template <class T>
    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    /// gcd of all coefficients (0 for the zero polynomial), nonnegative.
    Int content() const {
        Int g = 0;
        for (const auto& x : c_) {
            g = boost::multiprecision::gcd(g, x);
            if (g == 1) break;
        }
        return g;
    }

    /// Divide every coefficient by k (must divide exactly).
    IntPoly& divide_content(const Int& k) {
        for (auto& x : c_) x /= k;
        return *this;
    }
};

/// Exact division: q with a = q*b; throws if b does not divide a over Z.
inline IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    if (a.is_zero()) return {};
    long long da = a.degree(), db = b.degree();
    if (da < db) throw domain_error("divide_exact: not divisible");
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quo(da - db + 1);
    for (long long k = da - db; k >= 0; --k) {
        Int top = rem[k + db];
        if (top == 0) continue;
        if (top % b.leading() != 0) throw domain_error("divide_exact: not divisible");
        Int q = top / b.leading();
        for (long long i = 0; i <= db; ++i) rem[k + i] -= q * b.coeff(i);
        quo[k] = std::move(q);
    }
    for (const auto& x : rem)
        if (x != 0) throw domain_error("divide_exact: nonzero remainder");
    return IntPoly(std::move(quo));
}

/// Canonical pseudo-remainder: rem(lc(b)^(deg a - deg b + 1) * a, b).
inline IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    long long db = b.degree();
    if (db < 0) throw division_by_zero("pseudo_rem by zero");
    long long e = a.degree() - db + 1;
    if (e <= 0) return a;
    const Int& lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
        IntPoly t = IntPoly::monomial(a.leading(), static_cast<std::size_t>(a.degree() - db));
        a *= lb;
        a -= t * b;
        --e;
    }
    while (e-- > 0) a *= lb;
    return a;
}

inline IntPoly primitive_part(IntPoly a) {
    if (a.is_zero()) return a;
    Int c = a.content();
    if (a.leading() < 0) c = -c;
    a.divide_content(c);
    return a;
}

/// Primitive-PRS gcd over Z; result has positive leading coefficient and
/// content gcd(content(a), content(b)).
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    Int cont = boost::multiprecision::gcd(a.content(), b.content());
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    if (a.degree() < b.degree()) std::swap(a, b);
    while (true) {
        IntPoly r = pseudo_rem(a, b);
        if (r.is_zero()) break;
        if (r.degree() == 0) {
            b = IntPoly(1);
            break;
        }
        a = std::move(b);
        b = primitive_part(std::move(r));
    }
    return primitive_part(std::move(b)) * cont;
}

} // namespace qeuler
