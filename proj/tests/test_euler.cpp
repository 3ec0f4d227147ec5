#include <catch2/catch_amalgamated.hpp>

#include "qeuler/qeuler.hpp"

using namespace qeuler;

TEST_CASE("classical Euler numbers, generating-function route") {
    const Rational expected[] = {Rational(1),      Rational(-1, 2), Rational(0),
                                 Rational(1, 4),   Rational(0),     Rational(-1, 2),
                                 Rational(0),      Rational(17, 8)};
    for (long long n = 0; n <= 7; ++n)
        CHECK(classical_euler(n, Rational(0)) == expected[n]);
    CHECK(classical_euler(0, Rational(5)) == Rational(1));
}

TEST_CASE("the two classical oracles agree") {
    for (long long n = 0; n <= 8; ++n)
        for (long long r = 1; r <= 3; ++r)
            for (long long x = 0; x <= 2; ++x)
                CHECK(classical_euler(n, r, Rational(x)) ==
                      classical_euler_umbral(n, r, Rational(x)));
}

TEST_CASE("basic family") {
    FuncFieldCtx fx;
    CHECK(euler_q(fx, 0, 0) == RationalFunction(1));
    CHECK(euler_q(fx, 0, 5) == RationalFunction(1));
    CHECK(euler_q(fx, 1, 0) == RationalFunction(IntPoly(-1), IntPoly({Int(1), Int(1)})));
    CHECK(euler_q(fx, 1, 0).eval_at(Rational(1)) == Rational(-1, 2));
    RationalCtx rx(Rational(1, 2));
    CHECK(euler_q(rx, 0, 5) == Rational(1));
}

TEST_CASE("order-r closed form") {
    FuncFieldCtx fx;
    for (long long r = 1; r <= 4; ++r) CHECK(euler_order_r(fx, 0, r, 2) == RationalFunction(1));
    for (long long n = 0; n <= 5; ++n)
        for (long long x = 0; x <= 2; ++x)
            CHECK(euler_order_r(fx, n, 1, x) == euler_q(fx, n, x));
}

TEST_CASE("order-r matches the unweighted double integral") {
    PadicCtx ctx(Int(3), 10, Rational(4));
    RationalCtx rctx = ctx.rational_ctx();
    auto f = bracket_power_integrand(rctx, 2, 2, 0);
    MeasureSpec m(2, MeasureCoordinate{0, 0});
    auto result = multivariate_fermionic_integral(ctx, f, m, 3);
    Rational closed = euler_order_r(rctx, 2, 2, 0);
    Rational diff = closed - result.level_values.back();
    CHECK(result.stabilizing);
    CHECK((diff == 0 || valuation(diff, Int(3)) >= result.achieved_precision));
}

TEST_CASE("negative order") {
    FuncFieldCtx fx;
    for (long long r = 1; r <= 4; ++r) CHECK(euler_order_neg_r(fx, 0, r, 1) == RationalFunction(1));
    CHECK(euler_order_neg_r(fx, 1, 1, 0) == RationalFunction(Rational(1, 2)));
    for (long long n = 0; n <= 3; ++n)
        for (long long x = 0; x <= 2; ++x)
            CHECK(euler_order_neg_r(fx, n, 2, x) == euler_order_neg_r_lform(fx, n, 2, x));
}

TEST_CASE("(h,r) family constants") {
    FuncFieldCtx fx;
    for (long long r = 1; r <= 3; ++r)
        for (long long h = -1; h <= r + 1; ++h) {
            auto expected = scalar_pow(fx, RationalFunction(2), r) / neg_q_pochhammer(fx, h - r, r);
            CHECK(euler_hr(fx, 0, h, r, 3) == expected);
        }
    // E_0^(h,1) = 2/[2]_(q^(h-1))
    for (long long h = -1; h <= 3; ++h) {
        auto expected = RationalFunction(2) / (RationalFunction(1) + fx.q_pow(h - 1));
        CHECK(euler_hr(fx, 0, h, 1, 0) == expected);
    }
}

TEST_CASE("(h,r) family against the weighted integral") {
    PadicCtx ctx(Int(3), 10, Rational(4));
    RationalCtx rctx = ctx.rational_ctx();
    auto f = bracket_power_integrand(rctx, 2, 2, 1);
    auto result = multivariate_fermionic_integral(ctx, f, hr_measure(2, 2), 3);
    Rational closed = euler_hr(rctx, 2, 2, 2, 1);
    Rational diff = closed - result.level_values.back();
    CHECK(result.stabilizing);
    CHECK((diff == 0 || valuation(diff, Int(3)) >= result.achieved_precision));
}

TEST_CASE("(h,-r) family") {
    FuncFieldCtx fx;
    for (long long r = 1; r <= 3; ++r)
        for (long long h = -1; h <= r + 1; ++h) {
            auto lform = euler_h_neg_r_lform(fx, 0, h, r, 2);
            CHECK(euler_h_neg_r(fx, 0, h, r, 2) == lform);
            // reciprocal of the (h,r) constant at n=0
            CHECK(euler_hr(fx, 0, h, r, 2) * lform == RationalFunction(1));
        }
    // h=r lands on the q^(m choose 2) m-sum
    for (long long n = 0; n <= 2; ++n) {
        RationalFunction direct(0);
        for (long long m = 0; m <= 2; ++m)
            direct += fx.q_pow(choose2(m)) * gauss_binomial(fx, 2, m) *
                      scalar_pow(fx, q_bracket(fx, m + 0), n);
        direct /= RationalFunction(4);
        CHECK(euler_h_neg_r(fx, n, 2, 2, 0) == direct);
    }
}

TEST_CASE("weighted family reduces to the basic one for the mu_{-1} measure") {
    FuncFieldCtx fx;
    for (long long n = 0; n <= 4; ++n)
        for (long long x = 0; x <= 2; ++x) {
            CHECK(euler_weighted(fx, n, 1, x, {1}, {0}) == euler_q(fx, n, x));
            CHECK(euler_weighted(fx, 0, 1, x, {1}, {1}) == RationalFunction(1));
        }
    // with delta = 1 the measure is mu_{-q} and the value genuinely differs
    CHECK(euler_weighted(fx, 1, 1, 0, {1}, {1}) != euler_q(fx, 1, 0));
}

TEST_CASE("the delta=1 weighted value is the mu_{-q} integral, not the basic family") {
    PadicCtx ctx(Int(3), 10, Rational(4));
    RationalCtx rctx = ctx.rational_ctx();
    auto f = bracket_power_integrand(rctx, 1, 1, 0);
    auto result = multivariate_fermionic_integral(ctx, f, weighted_measure({1}), 4);
    Rational weighted = euler_weighted(rctx, 1, 1, 0, {1}, {1});
    Rational basic = euler_q(rctx, 1, 0);
    Rational diff = weighted - result.level_values.back();
    CHECK(result.stabilizing);
    CHECK((diff == 0 || valuation(diff, Int(3)) >= result.achieved_precision));
    // the basic family's closed form corresponds to delta=0, not delta=1:
    // the grid sums settle on the weighted value, not on the basic one
    Rational wrong = basic - result.level_values.back();
    REQUIRE(wrong != 0);
    REQUIRE(diff != 0);
    CHECK(valuation(diff, Int(3)) > valuation(wrong, Int(3)));
}

TEST_CASE("star-weighted family") {
    FuncFieldCtx fx;
    for (long long r = 1; r <= 3; ++r) {
        std::vector<long long> w(r, 1), d(r, 0);
        for (long long n = 0; n <= 3; ++n)
            CHECK(euler_weighted_star(fx, n, r, 1, w, d) == euler_order_r(fx, n, r, 1));
    }
    // n=0 constant: 2^r / prod (1+q^(delta_j))
    std::vector<long long> w{1, 2}, d{0, 1};
    auto expected = RationalFunction(4) /
                    ((RationalFunction(1) + fx.q_pow(0)) * (RationalFunction(1) + fx.q_pow(1)));
    CHECK(euler_weighted_star(fx, 0, 2, 0, w, d) == expected);
}

TEST_CASE("q -> 1 limits equal the classical oracle") {
    FuncFieldCtx fx;
    for (long long n = 0; n <= 4; ++n)
        for (long long x = 0; x <= 2; ++x) {
            CHECK(euler_q(fx, n, x).eval_at(Rational(1)) == classical_euler(n, Rational(x)));
            for (long long r = 1; r <= 2; ++r)
                CHECK(euler_order_r(fx, n, r, x).eval_at(Rational(1)) ==
                      classical_euler(n, r, Rational(x)));
        }
}

TEST_CASE("family denominators factor over the cyclotomic-type pool") {
    FuncFieldCtx fx;
    auto strip = [](IntPoly den, long long max_j) {
        IntPoly q = IntPoly::monomial(1, 1);
        bool progress = true;
        while (progress && den.degree() > 0) {
            progress = false;
            std::vector<IntPoly> factors;
            factors.push_back(q);
            factors.push_back(IntPoly(1) - q);
            for (long long j = 1; j <= max_j; ++j)
                factors.push_back(IntPoly(1) + IntPoly::monomial(1, static_cast<std::size_t>(j)));
            for (const auto& f : factors) {
                try {
                    den = divide_exact(den, f);
                    progress = true;
                    break;
                } catch (const domain_error&) {
                }
            }
        }
        return den.degree() <= 0;
    };
    for (long long n = 0; n <= 4; ++n)
        for (long long r = 1; r <= 2; ++r)
            for (long long h = 0; h <= r + 1; ++h) {
                auto canon = euler_hr(fx, n, h, r, 1).canonical();
                CHECK(strip(canon.denominator(), h + n + r + 2));
            }
}

TEST_CASE("series evaluation in the convergent region") {
    RationalCtx half(Rational(1, 2));
    auto rep = series_tail_eval(half, 0, 2, 1, 0, 60);
    Rational closed = euler_hr(half, 0, 2, 1, 0); // 2/(1+q) = 4/3
    CHECK(closed == Rational(4, 3));
    CHECK(boost::multiprecision::abs(rep.partial - closed) <= rep.tail_bound);
    CHECK(boost::multiprecision::abs(rep.partial - closed) < Rational(1, Int(1) << 40));

    RationalCtx third(Rational(1, 3));
    auto rep2 = series_tail_eval(third, 1, 2, 1, 0, 80);
    Rational closed2 = euler_hr(third, 1, 2, 1, 0);
    CHECK(boost::multiprecision::abs(rep2.partial - closed2) <= rep2.tail_bound);

    CHECK_THROWS_AS(series_tail_eval(half, 1, 1, 1, 0, 10), divergent_series);
    CHECK_THROWS_AS(series_tail_eval(RationalCtx(Rational(2)), 1, 3, 1, 0, 10), divergent_series);
}

TEST_CASE("family series are coefficient lists") {
    FuncFieldCtx fx;
    EulerFamilySpec spec;
    spec.kind = FamilyKind::h_r;
    spec.h = 2;
    spec.r = 2;
    spec.x = 1;
    auto series = family_series(fx, spec, 3);
    REQUIRE(series.size() == 4);
    for (long long n = 0; n <= 3; ++n)
        CHECK(series[static_cast<std::size_t>(n)] == euler_hr(fx, n, 2, 2, 1));
}

TEST_CASE("family dispatch and validation") {
    FuncFieldCtx fx;
    EulerFamilySpec spec;
    spec.kind = FamilyKind::weighted;
    spec.n = 1;
    CHECK_THROWS_AS(evaluate_family(fx, spec), domain_error);
    spec.kind = FamilyKind::classical;
    CHECK_THROWS_AS(evaluate_family(fx, spec), domain_error);
    CHECK_THROWS_AS(euler_q(fx, -1, 0), domain_error);
    CHECK_THROWS_AS(euler_order_r(fx, 1, 0, 0), domain_error);
    CHECK(family_from_name("h-neg-r") == FamilyKind::h_neg_r);
    CHECK_THROWS_AS(family_from_name("nope"), domain_error);
}
