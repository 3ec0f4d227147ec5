#pragma once

#include <string>
#include <vector>

#include "qeuler/classical.hpp"
#include "qeuler/integrator.hpp"
#include "qeuler/qkit.hpp"

namespace qeuler {

enum class FamilyKind {
    basic,         // E_{n,q}(x)
    order_r,       // E^(r)_{n,q}(x)
    order_neg_r,   // E^(-r)_{n,q}(x)
    h_r,           // E^(h,r)_{n,q}(x)
    h_neg_r,       // E^(h,-r)_{n,q}(x)
    weighted,      // E^(r)_{n,q}(x | w; delta)
    weighted_star, // E^{*(r)}_{n,q}(x | w; delta)
    classical,     // E^(r)_n(x), the q -> 1 family
};

struct EulerFamilySpec {
    FamilyKind kind = FamilyKind::basic;
    long long n = 0;
    long long r = 1;
    long long h = 0;
    long long x = 0;
    std::vector<long long> w;     // weighted kinds
    std::vector<long long> delta; // weighted kinds
};

inline const char* family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::basic: return "basic";
        case FamilyKind::order_r: return "r";
        case FamilyKind::order_neg_r: return "neg-r";
        case FamilyKind::h_r: return "hr";
        case FamilyKind::h_neg_r: return "h-neg-r";
        case FamilyKind::weighted: return "weighted";
        case FamilyKind::weighted_star: return "weighted-star";
        case FamilyKind::classical: return "classical";
    }
    return "?";
}

inline FamilyKind family_from_name(const std::string& s) {
    for (FamilyKind k : {FamilyKind::basic, FamilyKind::order_r, FamilyKind::order_neg_r,
                         FamilyKind::h_r, FamilyKind::h_neg_r, FamilyKind::weighted,
                         FamilyKind::weighted_star, FamilyKind::classical})
        if (s == family_name(k)) return k;
    throw domain_error("unknown family: " + s);
}

namespace detail {

/// sum_{l=0}^n C(n,l) (-1)^l q^(lx) factor(l).
template <class Ctx, class F>
ScalarOf<Ctx> alternating_l_sum(const Ctx& ctx, long long n, long long x, F factor) {
    auto acc = ctx.from_int(0);
    for (long long l = 0; l <= n; ++l) {
        auto term = ctx.from_rational(Rational(binomial(n, l))) * ctx.q_pow(l * x) * factor(l);
        acc = (l % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <class Ctx>
ScalarOf<Ctx> one_minus_q_power(const Ctx& ctx, long long n) {
    return scalar_pow(ctx, ctx.from_int(1) - ctx.q(), n);
}

} // namespace detail

/// E_{n,q}(x) = 2/(1-q)^n sum_l C(n,l)(-1)^l q^(lx)/(1+q^l).
template <class Ctx>
ScalarOf<Ctx> euler_q(const Ctx& ctx, long long n, long long x) {
    if (n < 0) throw domain_error("euler_q: n >= 0");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        return ctx.from_int(1) / (ctx.from_int(1) + ctx.q_pow(l));
    });
    return ctx.from_int(2) * s / detail::one_minus_q_power(ctx, n);
}

/// E^(r)_{n,q}(x) = 2^r/(1-q)^n sum_l C(n,l)(-1)^l q^(lx) (1+q^l)^(-r).
template <class Ctx>
ScalarOf<Ctx> euler_order_r(const Ctx& ctx, long long n, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_order_r: n >= 0, r >= 1");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        return ctx.from_int(1) / scalar_pow(ctx, ctx.from_int(1) + ctx.q_pow(l), r);
    });
    return scalar_pow(ctx, ctx.from_int(2), r) * s / detail::one_minus_q_power(ctx, n);
}

/// E^(-r)_{n,q}(x) = 2^-r sum_{m=0}^r C(r,m) [m+x]^n (finite m-form).
template <class Ctx>
ScalarOf<Ctx> euler_order_neg_r(const Ctx& ctx, long long n, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_order_neg_r: n >= 0, r >= 1");
    auto acc = ctx.from_int(0);
    for (long long m = 0; m <= r; ++m)
        acc = acc + ctx.from_rational(Rational(binomial(r, m))) *
                        scalar_pow(ctx, q_bracket(ctx, m + x), n);
    return acc / scalar_pow(ctx, ctx.from_int(2), r);
}

/// The dual route to the same value, through the alternating l-sum.
template <class Ctx>
ScalarOf<Ctx> euler_order_neg_r_lform(const Ctx& ctx, long long n, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_order_neg_r_lform: n >= 0, r >= 1");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        return scalar_pow(ctx, ctx.from_int(1) + ctx.q_pow(l), r);
    });
    return s / (scalar_pow(ctx, ctx.from_int(2), r) * detail::one_minus_q_power(ctx, n));
}

/// E^(h,r)_{n,q}(x) = 2^r/(1-q)^n sum_l C(n,l)(-1)^l q^(lx) / (-q^(h-r+l); q)_r.
template <class Ctx>
ScalarOf<Ctx> euler_hr(const Ctx& ctx, long long n, long long h, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_hr: n >= 0, r >= 1");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        return ctx.from_int(1) / neg_q_pochhammer(ctx, h - r + l, r);
    });
    return scalar_pow(ctx, ctx.from_int(2), r) * s / detail::one_minus_q_power(ctx, n);
}

/// Same family through the descending-Pochhammer denominator
/// (-q^(h-1+l); q^-1)_r = prod_{i<r} (1 + q^(h-1+l-i)).
template <class Ctx>
ScalarOf<Ctx> euler_hr_descending(const Ctx& ctx, long long n, long long h, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_hr_descending: n >= 0, r >= 1");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        auto den = ctx.from_int(1);
        for (long long i = 0; i < r; ++i)
            den = den * (ctx.from_int(1) + ctx.q_pow(h - 1 + l - i));
        return ctx.from_int(1) / den;
    });
    return scalar_pow(ctx, ctx.from_int(2), r) * s / detail::one_minus_q_power(ctx, n);
}

/// E^(h,-r)_{n,q}(x) = 2^-r sum_{m=0}^r q^(m choose 2) q^((h-r)m) C_q(r,m) [m+x]^n.
template <class Ctx>
ScalarOf<Ctx> euler_h_neg_r(const Ctx& ctx, long long n, long long h, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_h_neg_r: n >= 0, r >= 1");
    auto acc = ctx.from_int(0);
    for (long long m = 0; m <= r; ++m)
        acc = acc + ctx.q_pow(choose2(m) + (h - r) * m) * gauss_binomial(ctx, r, m) *
                        scalar_pow(ctx, q_bracket(ctx, m + x), n);
    return acc / scalar_pow(ctx, ctx.from_int(2), r);
}

template <class Ctx>
ScalarOf<Ctx> euler_h_neg_r_lform(const Ctx& ctx, long long n, long long h, long long r, long long x) {
    if (n < 0 || r < 1) throw domain_error("euler_h_neg_r_lform: n >= 0, r >= 1");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        return neg_q_pochhammer(ctx, h - r + l, r);
    });
    return s / (scalar_pow(ctx, ctx.from_int(2), r) * detail::one_minus_q_power(ctx, n));
}

/// Generalized weighted family: the expansion of the integral
/// of [x + sum w_j x_j]^n against mu_{-q^(delta_1)} x ... x mu_{-q^(delta_r)}.
/// Carries the 1/(1-q)^n factor the integral forces (the bare alternating sum
/// is exposed separately as the *_printed variant).
template <class Ctx>
ScalarOf<Ctx> euler_weighted_printed(const Ctx& ctx, long long n, long long r, long long x,
                                     const std::vector<long long>& w,
                                     const std::vector<long long>& delta) {
    if (n < 0 || r < 1) throw domain_error("euler_weighted: n >= 0, r >= 1");
    if (static_cast<long long>(w.size()) != r || static_cast<long long>(delta.size()) != r)
        throw domain_error("euler_weighted: need r weights and r exponents");
    return detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        auto acc = ctx.from_int(1);
        for (long long j = 0; j < r; ++j) {
            auto num = ctx.from_int(1) + ctx.q_pow(delta[static_cast<std::size_t>(j)]);
            auto den = ctx.from_int(1) +
                       ctx.q_pow(delta[static_cast<std::size_t>(j)] + l * w[static_cast<std::size_t>(j)]);
            acc = acc * (num / den);
        }
        return acc;
    });
}

template <class Ctx>
ScalarOf<Ctx> euler_weighted(const Ctx& ctx, long long n, long long r, long long x,
                             const std::vector<long long>& w, const std::vector<long long>& delta) {
    return euler_weighted_printed(ctx, n, r, x, w, delta) / detail::one_minus_q_power(ctx, n);
}

/// Companion weighted family: [sum w_j x_j + x]^n against mu_{-1}^r with
/// per-coordinate weights q^(delta_j x_j).
template <class Ctx>
ScalarOf<Ctx> euler_weighted_star_printed(const Ctx& ctx, long long n, long long r, long long x,
                                          const std::vector<long long>& w,
                                          const std::vector<long long>& delta) {
    if (n < 0 || r < 1) throw domain_error("euler_weighted_star: n >= 0, r >= 1");
    if (static_cast<long long>(w.size()) != r || static_cast<long long>(delta.size()) != r)
        throw domain_error("euler_weighted_star: need r weights and r exponents");
    auto s = detail::alternating_l_sum(ctx, n, x, [&](long long l) {
        auto den = ctx.from_int(1);
        for (long long j = 0; j < r; ++j)
            den = den * (ctx.from_int(1) +
                         ctx.q_pow(l * w[static_cast<std::size_t>(j)] + delta[static_cast<std::size_t>(j)]));
        return ctx.from_int(1) / den;
    });
    return scalar_pow(ctx, ctx.from_int(2), r) * s;
}

template <class Ctx>
ScalarOf<Ctx> euler_weighted_star(const Ctx& ctx, long long n, long long r, long long x,
                                  const std::vector<long long>& w,
                                  const std::vector<long long>& delta) {
    return euler_weighted_star_printed(ctx, n, r, x, w, delta) / detail::one_minus_q_power(ctx, n);
}

/// Closed-form value of one family member (classical excluded: it lives on
/// the rational side only, see classical_euler).
template <class Ctx>
ScalarOf<Ctx> evaluate_family(const Ctx& ctx, const EulerFamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::basic: return euler_q(ctx, spec.n, spec.x);
        case FamilyKind::order_r: return euler_order_r(ctx, spec.n, spec.r, spec.x);
        case FamilyKind::order_neg_r: return euler_order_neg_r(ctx, spec.n, spec.r, spec.x);
        case FamilyKind::h_r: return euler_hr(ctx, spec.n, spec.h, spec.r, spec.x);
        case FamilyKind::h_neg_r: return euler_h_neg_r(ctx, spec.n, spec.h, spec.r, spec.x);
        case FamilyKind::weighted: return euler_weighted(ctx, spec.n, spec.r, spec.x, spec.w, spec.delta);
        case FamilyKind::weighted_star:
            return euler_weighted_star(ctx, spec.n, spec.r, spec.x, spec.w, spec.delta);
        case FamilyKind::classical:
            throw domain_error("classical family needs the exact-rational oracle");
    }
    throw domain_error("unknown family kind");
}

/// Coefficient list c_0..c_M of the family's exponential generating series
/// (the series itself is never evaluated analytically).
template <class Ctx>
std::vector<ScalarOf<Ctx>> family_series(const Ctx& ctx, EulerFamilySpec spec, long long order) {
    std::vector<ScalarOf<Ctx>> out;
    for (long long n = 0; n <= order; ++n) {
        spec.n = n;
        out.push_back(evaluate_family(ctx, spec));
    }
    return out;
}

// -- Integral-side builders used by the p-adic cross-checks ------------------

/// Measures for the r-fold mu_{-1} integral with weights q^((h-j) x_j).
inline MeasureSpec hr_measure(long long h, long long r) {
    MeasureSpec m;
    for (long long j = 1; j <= r; ++j) m.push_back({0, h - j});
    return m;
}

/// Measures mu_{-q^(delta_j)} without extra weights.
inline MeasureSpec weighted_measure(const std::vector<long long>& delta) {
    MeasureSpec m;
    for (long long d : delta) m.push_back({d, 0});
    return m;
}

/// mu_{-1} with per-coordinate weights q^(delta_j x_j).
inline MeasureSpec star_measure(const std::vector<long long>& delta) {
    MeasureSpec m;
    for (long long d : delta) m.push_back({0, d});
    return m;
}

/// f(x_1..x_r) = [x0 + x_1 + ... + x_r]^n, a function of the coordinate sum.
template <class Ctx>
Integrand<Ctx> bracket_power_integrand(const Ctx& ctx, int r, long long n, long long x0) {
    return Integrand<Ctx>::of_coordinate_sum(
        r, [ctx, n, x0](long long s) { return scalar_pow(ctx, q_bracket(ctx, x0 + s), n); });
}

/// f(x_1..x_r) = [x0 + sum w_j x_j]^n; collapses to the sum form when all
/// weights are 1.
template <class Ctx>
Integrand<Ctx> weighted_bracket_power_integrand(const Ctx& ctx, int r, long long n, long long x0,
                                                const std::vector<long long>& w) {
    bool unit = true;
    for (long long wi : w) unit = unit && wi == 1;
    if (unit) return bracket_power_integrand(ctx, r, n, x0);
    std::vector<long long> weights = w;
    return Integrand<Ctx>::of_tuple(r, [ctx, n, x0, weights](std::span<const long long> xs) {
        long long s = x0;
        for (std::size_t j = 0; j < xs.size(); ++j) s += weights[j] * xs[j];
        return scalar_pow(ctx, q_bracket(ctx, s), n);
    });
}

/// f(x_1..x_r) = q^(t (x0 + sum x_j)).
template <class Ctx>
Integrand<Ctx> q_power_sum_integrand(const Ctx& ctx, int r, long long t, long long x0) {
    return Integrand<Ctx>::of_coordinate_sum(
        r, [ctx, t, x0](long long s) { return ctx.q_pow(t * (x0 + s)); });
}

// -- Convergent series route -------------------------------------------------

struct SeriesTailReport {
    Rational partial;    // M-term partial sum
    Rational tail_bound; // proven bound on the dropped tail
    long long terms;
};

/// Evaluates 2^r sum_m q^((h-r)m) (-1)^m C_q(m+r-1, m) [x+m]^n by truncation,
/// in the absolutely convergent region h > r, |q| < 1. Outside that region
/// the series identities are checked algebraically through the finite
/// q-binomial formula instead (q_binomial_finite_check).
inline SeriesTailReport series_tail_eval(const RationalCtx& ctx, long long n, long long h,
                                         long long r, long long x, long long terms) {
    using boost::multiprecision::abs;
    if (n < 0 || r < 1) throw domain_error("series_tail_eval: n >= 0, r >= 1");
    if (h <= r)
        throw divergent_series(
            "series form diverges for h <= r; use the finite q-binomial route instead");
    if (abs(ctx.q()) >= 1) throw divergent_series("series form needs |q| < 1");
    Rational partial = 0;
    Rational coeff = 1; // C_q(m+r-1, m)
    for (long long m = 0; m < terms; ++m) {
        if (m > 0) coeff *= q_bracket(ctx, m + r - 1) / q_bracket(ctx, m);
        Rational term = rat_pow(ctx.q(), (h - r) * m) * coeff *
                        rat_pow(q_bracket(ctx, x + m), n);
        partial += (m % 2 == 0) ? term : -term;
    }
    Rational two_r = rat_pow(Rational(2), r);
    partial *= two_r;
    Rational cap = 1; // |C_q(m+r-1,m)| <= prod_{j<r} (2/(1-|q|))/[j]_q
    for (long long j = 1; j < r; ++j) cap *= (Rational(2) / (1 - abs(ctx.q()))) / q_bracket(ctx, j);
    Rational bracket_cap = rat_pow(Rational(2) / (1 - abs(ctx.q())), n);
    Rational ratio = rat_pow(abs(ctx.q()), h - r);
    Rational tail = two_r * cap * bracket_cap * rat_pow(ratio, terms) / (1 - ratio);
    return {partial, tail, terms};
}

} // namespace qeuler
