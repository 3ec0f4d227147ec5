#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>

#include "qeuler/errors.hpp"

namespace qeuler {

// Expression templates stay off: the generic scalar code stores results of
// mixed +/- chains in deduced types and admits three interchangeable scalar
// backends, so plain value semantics are required.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Int int_pow(const Int& base, long long e) {
    if (e < 0) throw domain_error("int_pow: negative exponent");
    Int acc = 1, b = base;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline Rational rat_pow(const Rational& base, long long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw division_by_zero("rat_pow: 0 raised to negative power");
        return Rational(0);
    }
    bool invert = e < 0;
    unsigned long long n = invert ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                                  : static_cast<unsigned long long>(e);
    Rational acc = 1, b = base;
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (invert) acc = Rational(1) / acc;
    return acc;
}

/// Extended gcd: returns g = gcd(a, b) and fills x, y with a*x + b*y = g.
inline Int egcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b, t = a % b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    x = x0;
    y = y0;
    return a;
}

/// Inverse of a modulo m (m > 1, gcd(a, m) = 1).
inline Int inv_mod(const Int& a, const Int& m) {
    Int x, y;
    Int a_red = a % m;
    if (a_red < 0) a_red += m;
    Int g = egcd(a_red, m, x, y);
    if (g != 1) throw domain_error("inv_mod: arguments not coprime");
    x %= m;
    if (x < 0) x += m;
    return x;
}

/// Exponent of p in n (n must be nonzero).
inline long long valuation(Int n, const Int& p) {
    if (n == 0) throw domain_error("valuation of zero");
    long long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long long valuation(const Rational& r, const Int& p) {
    return valuation(numerator(r), p) - valuation(denominator(r), p);
}

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

/// k*(k-1)/2, the exponent in the ubiquitous q^(k choose 2) factors.
inline long long choose2(long long k) { return k * (k - 1) / 2; }

inline bool is_odd_prime(const Int& p) {
    if (p < 3 || p % 2 == 0) return false;
    for (Int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

} // namespace qeuler
