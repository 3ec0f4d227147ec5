#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qeuler/context.hpp"

namespace qeuler {

/// One integration coordinate: measure mu_{-q^delta} (delta = 0 is mu_{-1})
/// plus an extra weight factor q^(weight * x_j) carried by the integrand.
struct MeasureCoordinate {
    long long delta = 0;
    long long weight = 0;
};
using MeasureSpec = std::vector<MeasureCoordinate>;

struct IntegratorLimits {
    long long max_grid_points = 10'000'000;
    /// When the integrand declares itself a function of the coordinate sum,
    /// the grid sum may be regrouped through per-coordinate convolutions.
    /// The regrouping sums exactly the same terms; disable to force the
    /// row-major loop.
    bool use_coordinate_sum_path = true;
};

/// Function on (tuples of) residues of Z_p, evaluable below any p^N.
template <class Ctx>
struct Integrand {
    int arity = 1;
    std::function<ScalarOf<Ctx>(std::span<const long long>)> rule;
    /// Set only when f(x_1..x_r) depends on the coordinates through their sum.
    std::function<ScalarOf<Ctx>(long long)> sum_rule;

    static Integrand univariate(std::function<ScalarOf<Ctx>(long long)> f) {
        Integrand g;
        g.arity = 1;
        g.rule = [f](std::span<const long long> xs) { return f(xs[0]); };
        g.sum_rule = std::move(f);
        return g;
    }
    static Integrand of_tuple(int r, std::function<ScalarOf<Ctx>(std::span<const long long>)> f) {
        Integrand g;
        g.arity = r;
        g.rule = std::move(f);
        return g;
    }
    static Integrand of_coordinate_sum(int r, std::function<ScalarOf<Ctx>(long long)> f) {
        Integrand g;
        g.arity = r;
        g.rule = [f](std::span<const long long> xs) {
            long long s = 0;
            for (long long x : xs) s += x;
            return f(s);
        };
        g.sum_rule = std::move(f);
        return g;
    }

    ScalarOf<Ctx> at(long long x) const {
        if (sum_rule && arity == 1) return sum_rule(x);
        return rule(std::span<const long long>(&x, 1));
    }
};

namespace detail {

template <class Ctx>
std::vector<ScalarOf<Ctx>> convolve(const Ctx& ctx, const std::vector<ScalarOf<Ctx>>& a,
                                    const std::vector<ScalarOf<Ctx>>& b) {
    std::vector<ScalarOf<Ctx>> r(a.size() + b.size() - 1, ctx.from_int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ctx.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

} // namespace detail

/// Level-N Riemann sum of the multivariate fermionic integral:
/// prod_j (1+q^dj)/(1+q^(dj p^N)) * sum over the residue grid of
/// f(x) * prod_j (-q^dj)^xj q^(wj xj), summed row-major over coordinates.
template <class Ctx>
ScalarOf<Ctx> multivariate_sum_level(const Ctx& ctx, const Integrand<Ctx>& f, const MeasureSpec& m,
                                     const Int& p, int level, const IntegratorLimits& limits = {}) {
    using S = ScalarOf<Ctx>;
    const int r = f.arity;
    if (static_cast<int>(m.size()) != r) throw domain_error("measure spec arity mismatch");
    if (level < 1) throw domain_error("integration level must be >= 1");
    Int big_points = 1;
    const Int big_p_level = int_pow(p, level);
    for (int j = 0; j < r; ++j) {
        big_points *= big_p_level;
        if (big_points > limits.max_grid_points)
            throw budget_exceeded("integration grid exceeds the point budget (p^(r*N) too large)");
    }
    const long long L = static_cast<long long>(big_p_level);

    S prefactor = ctx.from_int(1);
    for (const auto& mc : m) {
        S num = ctx.from_int(1) + ctx.q_pow(mc.delta);
        S den = ctx.from_int(1) + ctx.q_pow(mc.delta * L);
        prefactor = prefactor * (num / den);
    }

    // Per-coordinate weight tables (-q^dj)^x * q^(wj x) = (-1)^x q^((dj+wj) x).
    std::vector<std::vector<S>> w(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
        const S step = ctx.q_pow(m[static_cast<std::size_t>(j)].delta + m[static_cast<std::size_t>(j)].weight);
        auto& col = w[static_cast<std::size_t>(j)];
        col.reserve(static_cast<std::size_t>(L));
        S acc = ctx.from_int(1);
        for (long long x = 0; x < L; ++x) {
            col.push_back(x % 2 == 0 ? acc : -acc);
            acc = acc * step;
        }
    }

    if (f.sum_rule && limits.use_coordinate_sum_path) {
        std::vector<S> dist = w[0];
        for (int j = 1; j < r; ++j) dist = detail::convolve(ctx, dist, w[static_cast<std::size_t>(j)]);
        S total = ctx.from_int(0);
        for (std::size_t s = 0; s < dist.size(); ++s) {
            if (ctx.is_zero(dist[s])) continue;
            total = total + dist[s] * f.sum_rule(static_cast<long long>(s));
        }
        return prefactor * total;
    }

    std::vector<long long> xs(static_cast<std::size_t>(r), 0);
    S total = ctx.from_int(0);
    while (true) {
        S weight = w[0][static_cast<std::size_t>(xs[0])];
        for (int j = 1; j < r; ++j) weight = weight * w[static_cast<std::size_t>(j)][static_cast<std::size_t>(xs[static_cast<std::size_t>(j)])];
        total = total + weight * f.rule(xs);
        int j = r - 1;
        while (j >= 0 && ++xs[static_cast<std::size_t>(j)] == L) {
            xs[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return prefactor * total;
}

/// Level-N Riemann sum of the single fermionic integral over mu_{-q^delta}:
/// (1+q^d)/(1+q^(d p^N)) * sum_{x<p^N} f(x) (-q^d)^x.
template <class Ctx>
ScalarOf<Ctx> fermionic_sum_level(const Ctx& ctx, const Integrand<Ctx>& f, long long delta,
                                  const Int& p, int level, const IntegratorLimits& limits = {}) {
    if (f.arity != 1) throw domain_error("fermionic_sum_level wants a univariate integrand");
    return multivariate_sum_level(ctx, f, MeasureSpec{{delta, 0}}, p, level, limits);
}

template <class S>
struct IntegralResult {
    S value;
    int level = 0;
    /// v_p(S_{N+1} - S_N) for consecutive computed levels; nullopt when equal.
    std::vector<std::optional<long long>> diff_valuations;
    /// Empirical: min observed agreement, capped at the context precision.
    int achieved_precision = 0;
    /// Whether the difference valuations are nondecreasing.
    bool stabilizing = true;
    /// Exact per-level values (level 1 first).
    std::vector<Rational> level_values;
};

namespace detail {

inline IntegralResult<Padic> analyze_levels(const PadicCtx& ctx, std::vector<Rational> levels) {
    constexpr long long kInfinite = 1LL << 40; // stands in for v_p(0)
    IntegralResult<Padic> result;
    result.level = static_cast<int>(levels.size());
    long long achieved = ctx.precision();
    long long prev = -kInfinite;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        Rational diff = levels[i + 1] - levels[i];
        std::optional<long long> v;
        if (diff != 0) v = valuation(diff, ctx.prime());
        result.diff_valuations.push_back(v);
        long long vv = v ? *v : kInfinite;
        if (vv < prev) result.stabilizing = false;
        prev = vv;
        achieved = std::min(achieved, vv);
    }
    if (achieved <= 0) result.stabilizing = false;
    result.achieved_precision = static_cast<int>(std::clamp<long long>(achieved, 1, ctx.precision()));
    result.value = padic_from_rational(levels.back(), ctx.prime(), result.achieved_precision);
    result.level_values = std::move(levels);
    return result;
}

} // namespace detail

/// Runs levels 1..n_max of the single integral, in exact rational arithmetic
/// with the context's q, and reads off stabilization p-adically.
inline IntegralResult<Padic> fermionic_integral(const PadicCtx& ctx, const Integrand<RationalCtx>& f,
                                                long long delta, int n_max,
                                                const IntegratorLimits& limits = {}) {
    RationalCtx rctx = ctx.rational_ctx();
    std::vector<Rational> levels;
    for (int n = 1; n <= n_max; ++n)
        levels.push_back(fermionic_sum_level(rctx, f, delta, ctx.prime(), n, limits));
    return detail::analyze_levels(ctx, std::move(levels));
}

inline IntegralResult<Padic> multivariate_fermionic_integral(const PadicCtx& ctx,
                                                             const Integrand<RationalCtx>& f,
                                                             const MeasureSpec& m, int n_max,
                                                             const IntegratorLimits& limits = {}) {
    RationalCtx rctx = ctx.rational_ctx();
    std::vector<Rational> levels;
    for (int n = 1; n <= n_max; ++n)
        levels.push_back(multivariate_sum_level(rctx, f, m, ctx.prime(), n, limits));
    return detail::analyze_levels(ctx, std::move(levels));
}

struct ShiftRelationReport {
    /// Per level 1..n_max: v_p of the defect of
    /// I(f_n) = (-1)^n I(f) + 2 sum_{l<n} (-1)^(n-1-l) f(l); nullopt = exact.
    std::vector<std::optional<long long>> defect_valuations;
    bool shrinking = true; // valuations nondecreasing over levels
};

/// Checks the shift identity for the mu_{-1} integral at each truncation level.
inline ShiftRelationReport shift_relation_check(const PadicCtx& ctx, const Integrand<RationalCtx>& f,
                                                long long n, int n_max,
                                                const IntegratorLimits& limits = {}) {
    if (f.arity != 1) throw domain_error("shift_relation_check wants a univariate integrand");
    if (n < 0) throw domain_error("shift must be >= 0");
    RationalCtx rctx = ctx.rational_ctx();
    auto shifted = Integrand<RationalCtx>::univariate([f, n](long long x) { return f.at(x + n); });
    Rational boundary = 0;
    for (long long l = 0; l < n; ++l) {
        Rational v = f.at(l);
        boundary += ((n - 1 - l) % 2 == 0) ? v : -v;
    }
    ShiftRelationReport report;
    std::optional<long long> prev;
    for (int level = 1; level <= n_max; ++level) {
        Rational lhs = fermionic_sum_level(rctx, shifted, 0, ctx.prime(), level, limits);
        Rational rhs = fermionic_sum_level(rctx, f, 0, ctx.prime(), level, limits);
        if (n % 2 != 0) rhs = -rhs;
        rhs += 2 * boundary;
        Rational defect = lhs - rhs;
        std::optional<long long> v;
        if (defect != 0) v = valuation(defect, ctx.prime());
        if (prev && v && *v < *prev) report.shrinking = false;
        if (v) prev = v;
        report.defect_valuations.push_back(v);
    }
    return report;
}

} // namespace qeuler
