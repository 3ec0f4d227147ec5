#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qeuler/context.hpp"

namespace qeuler {

/// [x]_q = (1 - q^x)/(1 - q); defined for every integer x.
template <class Ctx>
ScalarOf<Ctx> q_bracket(const Ctx& ctx, long long x) {
    if (x == 0) return ctx.from_int(0);
    return (ctx.from_int(1) - ctx.q_pow(x)) / (ctx.from_int(1) - ctx.q());
}

/// [x]_{-q} = (1 - (-q)^x)/(1 + q).
template <class Ctx>
ScalarOf<Ctx> q_bracket_signed(const Ctx& ctx, long long x) {
    auto qx = ctx.q_pow(x);
    if (x % 2 != 0) qx = -qx;
    return (ctx.from_int(1) - qx) / (ctx.from_int(1) + ctx.q());
}

template <class Ctx>
ScalarOf<Ctx> q_factorial(const Ctx& ctx, long long n) {
    auto acc = ctx.from_int(1);
    for (long long i = 2; i <= n; ++i) acc = acc * q_bracket(ctx, i);
    return acc;
}

/// Gaussian binomial coefficient; zero outside 0 <= k <= n so that sums over
/// full index ranges need no special casing.
template <class Ctx>
ScalarOf<Ctx> gauss_binomial(const Ctx& ctx, long long n, long long k) {
    if (k < 0 || k > n) return ctx.from_int(0);
    if (k > n - k) k = n - k;
    auto acc = ctx.from_int(1);
    for (long long i = 1; i <= k; ++i)
        acc = acc * q_bracket(ctx, n - k + i) / q_bracket(ctx, i);
    return acc;
}

/// (b; q)_n = (1-b)(1-bq)...(1-bq^(n-1)).
template <class Ctx>
ScalarOf<Ctx> q_pochhammer(const Ctx& ctx, const ScalarOf<Ctx>& b, long long n) {
    auto acc = ctx.from_int(1);
    for (long long j = 0; j < n; ++j) acc = acc * (ctx.from_int(1) - b * ctx.q_pow(j));
    return acc;
}

/// (-q^a; q)_r, the Pochhammer factor every closed form below leans on.
template <class Ctx>
ScalarOf<Ctx> neg_q_pochhammer(const Ctx& ctx, long long a, long long r) {
    return q_pochhammer(ctx, -ctx.q_pow(a), r);
}

/// Delta_q^n f(0) = sum_k C_q(n,k) (-1)^k q^(k choose 2) f(n-k),
/// for f given by its values f(0..n).
template <class Ctx>
ScalarOf<Ctx> q_difference(const Ctx& ctx, std::span<const ScalarOf<Ctx>> f, long long n) {
    if (std::cmp_less(f.size(), n + 1))
        throw domain_error("q_difference: need f(0..n)");
    auto acc = ctx.from_int(0);
    for (long long k = 0; k <= n; ++k) {
        auto term = gauss_binomial(ctx, n, k) * ctx.q_pow(choose2(k)) * f[static_cast<std::size_t>(n - k)];
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <class Ctx>
ScalarOf<Ctx> q_difference(const Ctx& ctx, const std::vector<ScalarOf<Ctx>>& f, long long n) {
    return q_difference(ctx, std::span<const ScalarOf<Ctx>>(f), n);
}

/// Carlitz q-Stirling number of the second kind,
/// S_2(n,k;q) = q^-(k choose 2)/[k]_q! * sum_j (-1)^j q^(j choose 2) C_q(k,j) [k-j]_q^n,
/// with the 0^0 = 1 convention making S_2(0,0;q) = 1.
template <class Ctx>
ScalarOf<Ctx> q_stirling2(const Ctx& ctx, long long n, long long k) {
    if (n < 0 || k < 0) throw domain_error("q_stirling2: n, k >= 0");
    auto acc = ctx.from_int(0);
    for (long long j = 0; j <= k; ++j) {
        auto pw = scalar_pow(ctx, q_bracket(ctx, k - j), n); // 0^0 = 1
        auto term = ctx.q_pow(choose2(j)) * gauss_binomial(ctx, k, j) * pw;
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return ctx.q_pow(-choose2(k)) * acc / q_factorial(ctx, k);
}

/// Same number through the operator route S_2(n,k;q) = q^-(k choose 2)/[k]_q! Delta_q^k 0^n.
template <class Ctx>
ScalarOf<Ctx> q_stirling2_operator(const Ctx& ctx, long long n, long long k) {
    std::vector<ScalarOf<Ctx>> f;
    f.reserve(static_cast<std::size_t>(k) + 1);
    for (long long x = 0; x <= k; ++x) f.push_back(scalar_pow(ctx, q_bracket(ctx, x), n));
    auto d = q_difference(ctx, f, k);
    return ctx.q_pow(-choose2(k)) * d / q_factorial(ctx, k);
}

/// Row n of the q-Stirling numbers of the first kind: coefficients of
/// prod_{k=1..n} (1 + [k]_q z) in z, so S_1(n,k;q) sits at index k.
template <class Ctx>
std::vector<ScalarOf<Ctx>> q_stirling1_row(const Ctx& ctx, long long n) {
    if (n < 0) throw domain_error("q_stirling1_row: n >= 0");
    std::vector<ScalarOf<Ctx>> row{ctx.from_int(1)};
    for (long long k = 1; k <= n; ++k) {
        auto bk = q_bracket(ctx, k);
        std::vector<ScalarOf<Ctx>> next(row.size() + 1, ctx.from_int(0));
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[i] = next[i] + row[i];
            next[i + 1] = next[i + 1] + row[i] * bk;
        }
        row = std::move(next);
    }
    return row;
}

struct QStirlingKind {
    enum Value { first, second };
};

/// Triangle of q-Stirling numbers up to row n_max.
template <class Ctx>
struct QStirlingTable {
    QStirlingKind::Value kind;
    std::vector<std::vector<ScalarOf<Ctx>>> rows; // rows[n][k], k <= n
};

template <class Ctx>
QStirlingTable<Ctx> q_stirling_table(const Ctx& ctx, QStirlingKind::Value kind, long long n_max) {
    QStirlingTable<Ctx> t{kind, {}};
    for (long long n = 0; n <= n_max; ++n) {
        if (kind == QStirlingKind::first) {
            t.rows.push_back(q_stirling1_row(ctx, n));
        } else {
            std::vector<ScalarOf<Ctx>> row;
            for (long long k = 0; k <= n; ++k) row.push_back(q_stirling2(ctx, n, k));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

/// Finite q-binomial formula: (b;q)_n == sum_i C_q(n,i) q^(i choose 2) (-1)^i b^i.
template <class Ctx>
struct QBinomialFiniteReport {
    ScalarOf<Ctx> product;
    ScalarOf<Ctx> expansion;
    bool equal;
};

template <class Ctx>
QBinomialFiniteReport<Ctx> q_binomial_finite_check(const Ctx& ctx, const ScalarOf<Ctx>& b, long long n) {
    auto lhs = q_pochhammer(ctx, b, n);
    auto rhs = ctx.from_int(0);
    for (long long i = 0; i <= n; ++i) {
        auto term = gauss_binomial(ctx, n, i) * ctx.q_pow(choose2(i)) * scalar_pow(ctx, b, i);
        rhs = (i % 2 == 0) ? rhs + term : rhs - term;
    }
    return {lhs, rhs, lhs == rhs};
}

/// Truncated evaluation of 1/(b;q)_n = sum_i C_q(n+i-1, i) b^i in the
/// absolutely convergent region |q| < 1, |b| < 1, with a geometric tail bound.
struct QBinomialSeriesReport {
    Rational partial;       // M-term partial sum
    Rational exact;         // 1/(b;q)_n
    Rational difference;    // |partial - exact|
    Rational tail_bound;    // proven bound on the dropped tail
    long long terms;
};

inline QBinomialSeriesReport q_binomial_series_check(const Rational& q, const Rational& b,
                                                     long long n, long long terms) {
    using boost::multiprecision::abs;
    if (abs(q) >= 1 || abs(b) >= 1)
        throw divergent_series("q-binomial series needs |q| < 1 and |b| < 1");
    RationalCtx ctx(q);
    auto prod = q_pochhammer(ctx, b, n);
    if (prod == 0) throw division_by_zero("(b;q)_n vanishes");
    Rational exact = Rational(1) / prod;
    Rational partial = 0;
    Rational coeff = 1; // C_q(n+i-1, i), updated incrementally
    Rational bpow = 1;
    for (long long i = 0; i < terms; ++i) {
        if (i > 0) coeff *= q_bracket(ctx, n + i - 1) / q_bracket(ctx, i);
        partial += coeff * bpow;
        bpow *= b;
    }
    // |C_q(n+i-1,i)| <= (2/(1-|q|))^(n-1) / prod_{j<n} [j]_q for every i.
    Rational cap = 1;
    for (long long j = 1; j < n; ++j) cap *= (Rational(2) / (1 - abs(q))) / q_bracket(ctx, j);
    Rational tail = cap * rat_pow(abs(b), terms) / (1 - abs(b));
    return {partial, exact, abs(partial - exact), tail, terms};
}

} // namespace qeuler
