#pragma once

#include <vector>

#include "qeuler/numbers.hpp"

namespace qeuler {

namespace detail {

// Truncated formal power series over Q, coefficient of t^k at index k.
using Series = std::vector<Rational>;

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
    Series r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Series series_inverse(const Series& a, std::size_t len) {
    if (a.empty() || a[0] == 0) throw division_by_zero("series has no inverse");
    Series r(len);
    r[0] = Rational(1) / a[0];
    for (std::size_t k = 1; k < len; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * r[k - j];
        r[k] = -acc / a[0];
    }
    return r;
}

inline Series exp_series(const Rational& x, std::size_t len) {
    Series r(len);
    Rational term = 1;
    for (std::size_t k = 0; k < len; ++k) {
        r[k] = term;
        term = term * x / Rational(static_cast<long long>(k) + 1);
    }
    return r;
}

} // namespace detail

/// Classical E_n^(r)(x) from the generating function (2/(e^t+1))^r e^(xt).
inline Rational classical_euler(long long n, long long r, const Rational& x) {
    if (n < 0 || r < 1) throw domain_error("classical_euler: n >= 0, r >= 1");
    std::size_t len = static_cast<std::size_t>(n) + 1;
    // (e^t + 1)/2, then invert and raise to the r-th power.
    detail::Series kernel = detail::exp_series(Rational(1), len);
    for (auto& c : kernel) c /= 2;
    kernel[0] += Rational(1, 2);
    detail::Series inv = detail::series_inverse(kernel, len);
    detail::Series acc = detail::exp_series(x, len);
    for (long long i = 0; i < r; ++i) acc = detail::series_mul(acc, inv, len);
    // E_n = n! * coefficient of t^n
    Rational fact = 1;
    for (long long k = 2; k <= n; ++k) fact *= k;
    return acc[static_cast<std::size_t>(n)] * fact;
}

inline Rational classical_euler(long long n, const Rational& x) {
    return classical_euler(n, 1, x);
}

/// Independent route: Euler numbers from the umbral recurrence
/// (E+1)^n + E_n = 2*delta_{n,0}, then E_n(x) = sum_j C(n,j) E_j x^(n-j),
/// and order r by binomial convolution of the number sequences.
inline Rational classical_euler_umbral(long long n, long long r, const Rational& x) {
    if (n < 0 || r < 1) throw domain_error("classical_euler_umbral: n >= 0, r >= 1");
    std::size_t len = static_cast<std::size_t>(n) + 1;
    std::vector<Rational> e(len);
    e[0] = 1;
    for (std::size_t m = 1; m < len; ++m) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m; ++j)
            acc += Rational(binomial(static_cast<long long>(m), static_cast<long long>(j))) * e[j];
        e[m] = -acc / 2;
    }
    std::vector<Rational> numbers = e;
    for (long long i = 1; i < r; ++i) {
        std::vector<Rational> next(len);
        for (std::size_t m = 0; m < len; ++m)
            for (std::size_t j = 0; j <= m; ++j)
                next[m] += Rational(binomial(static_cast<long long>(m), static_cast<long long>(j))) *
                           numbers[j] * e[m - j];
        numbers = std::move(next);
    }
    Rational acc = 0;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j)
        acc += Rational(binomial(n, static_cast<long long>(j))) * numbers[j] *
               rat_pow(x, n - static_cast<long long>(j));
    return acc;
}

} // namespace qeuler
