#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "qeuler/qeuler.hpp"

using namespace qeuler;

namespace {

// Oracle: Gaussian binomials as integer polynomials built purely from the
// Pascal recurrence C_q(n+1,k) = C_q(n,k-1) + q^k C_q(n,k).
IntPoly gauss_pascal_oracle(long long n, long long k) {
    if (k < 0 || k > n) return {};
    std::vector<std::vector<IntPoly>> table(static_cast<std::size_t>(n) + 1);
    table[0] = {IntPoly(1)};
    for (long long m = 1; m <= n; ++m) {
        table[static_cast<std::size_t>(m)].resize(static_cast<std::size_t>(m) + 1);
        for (long long j = 0; j <= m; ++j) {
            IntPoly up = j > 0 ? table[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)]
                               : IntPoly();
            IntPoly same = j <= m - 1
                               ? table[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j)] *
                                     IntPoly::monomial(1, static_cast<std::size_t>(j))
                               : IntPoly();
            table[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = up + same;
        }
    }
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Oracle: classical Stirling numbers of the second kind by recurrence.
long long stirling2_oracle(long long n, long long k) {
    if (n == 0 && k == 0) return 1;
    if (n == 0 || k == 0 || k > n) return 0;
    return k * stirling2_oracle(n - 1, k) + stirling2_oracle(n - 1, k - 1);
}

// Oracle: unsigned Stirling numbers of the first kind c(n,k).
long long stirling1_unsigned_oracle(long long n, long long k) {
    if (n == 0) return k == 0 ? 1 : 0;
    if (k < 1 || k > n) return 0;
    return stirling1_unsigned_oracle(n - 1, k - 1) + (n - 1) * stirling1_unsigned_oracle(n - 1, k);
}

} // namespace

TEST_CASE("q-brackets") {
    FuncFieldCtx fx;
    CHECK(q_bracket(fx, 0).is_zero());
    IntPoly geom({Int(1), Int(1), Int(1)}); // 1 + q + q^2
    CHECK(q_bracket(fx, 3) == RationalFunction(geom));
    RationalCtx rx(Rational(1, 2));
    CHECK(q_bracket(rx, 2) == Rational(3, 2));
    // negative arguments live in the Laurent extension
    CHECK(q_bracket(fx, -1) == RationalFunction(IntPoly(-1), IntPoly::monomial(1, 1)));
}

TEST_CASE("signed q-bracket") {
    FuncFieldCtx fx;
    CHECK(q_bracket_signed(fx, 0).is_zero());
    CHECK(q_bracket_signed(fx, 1) == RationalFunction(1));
    CHECK(q_bracket_signed(fx, 2) == RationalFunction(1) - fx.q());
}

TEST_CASE("gauss binomial against the Pascal oracle") {
    FuncFieldCtx fx;
    auto rf42 = gauss_binomial(fx, 4, 2).canonical();
    IntPoly expected = gauss_pascal_oracle(4, 2);
    CHECK(rf42.numerator() == expected);
    CHECK(rf42.denominator() == IntPoly(1));
    CHECK(expected == IntPoly({Int(1), Int(1), Int(2), Int(1), Int(1)}));

    for (long long n = 0; n <= 9; ++n)
        for (long long k = 0; k <= n; ++k)
            CHECK(gauss_binomial(fx, n, k) == RationalFunction(gauss_pascal_oracle(n, k)));

    CHECK(gauss_binomial(fx, 5, 2).eval_at(Rational(1)) == Rational(10));
    CHECK(gauss_binomial(fx, 4, -1).is_zero());
    CHECK(gauss_binomial(fx, 4, 5).is_zero());
}

TEST_CASE("both Pascal recurrences hold up to n = 12") {
    FuncFieldCtx fx;
    for (long long n = 0; n <= 12; ++n)
        for (long long k = 0; k <= n + 1; ++k) {
            auto lhs = gauss_binomial(fx, n + 1, k);
            auto first = gauss_binomial(fx, n, k - 1) + fx.q_pow(k) * gauss_binomial(fx, n, k);
            auto second = fx.q_pow(n + 1 - k) * gauss_binomial(fx, n, k - 1) + gauss_binomial(fx, n, k);
            CHECK(lhs == first);
            CHECK(lhs == second);
        }
}

TEST_CASE("q-analogs at q=1 equal their classical counterparts") {
    FuncFieldCtx fx;
    for (long long n = 0; n <= 8; ++n) {
        Rational fact = 1;
        for (long long i = 2; i <= n; ++i) fact *= i;
        CHECK(q_factorial(fx, n).eval_at(Rational(1)) == fact);
        for (long long k = 0; k <= n; ++k) {
            CHECK(gauss_binomial(fx, n, k).eval_at(Rational(1)) == Rational(binomial(n, k)));
            CHECK(q_stirling2(fx, n, k).eval_at(Rational(1)) == Rational(stirling2_oracle(n, k)));
        }
        auto row = q_stirling1_row(fx, n);
        for (long long k = 0; k <= n; ++k)
            CHECK(row[static_cast<std::size_t>(k)].eval_at(Rational(1)) ==
                  Rational(stirling1_unsigned_oracle(n + 1, n + 1 - k)));
    }
}

TEST_CASE("q-pochhammer") {
    FuncFieldCtx fx;
    CHECK(q_pochhammer(fx, fx.q(), 0) == RationalFunction(1));
    // (b;q)_2 = 1 - (1+q) b + q b^2, expanded with b as a formal variable
    std::vector<RationalFunction> coeffs{RationalFunction(1)};
    for (long long j = 0; j < 2; ++j) {
        std::vector<RationalFunction> next(coeffs.size() + 1, RationalFunction(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i];
            next[i + 1] -= coeffs[i] * fx.q_pow(j);
        }
        coeffs = std::move(next);
    }
    CHECK(coeffs[0] == RationalFunction(1));
    CHECK(coeffs[1] == -(RationalFunction(1) + fx.q()));
    CHECK(coeffs[2] == fx.q());
    // matches the scalar version at sampled b
    RationalCtx rx(Rational(1, 3));
    Rational b(2, 7);
    CHECK(q_pochhammer(rx, b, 2) == (1 - b) * (1 - b * rx.q()));
}

TEST_CASE("finite q-binomial formula") {
    FuncFieldCtx fx;
    const Rational samples[] = {Rational(0), Rational(1, 2), Rational(-3), Rational(2, 5),
                                Rational(7)};
    for (long long n = 0; n <= 8; ++n)
        for (const auto& b : samples) {
            auto rep = q_binomial_finite_check(fx, fx.from_rational(b), n);
            CHECK(rep.equal);
        }
}

TEST_CASE("q-binomial series converges inside the unit disc") {
    auto rep = q_binomial_series_check(Rational(1, 2), Rational(1, 4), 2, 60);
    CHECK(rep.difference < Rational(1, Int(1) << 40));
    CHECK(rep.difference <= rep.tail_bound);
    CHECK_THROWS_AS(q_binomial_series_check(Rational(1, 2), Rational(2), 2, 10), divergent_series);
    CHECK_THROWS_AS(q_binomial_series_check(Rational(3, 2), Rational(1, 4), 2, 10), divergent_series);
}

TEST_CASE("q-difference operator") {
    FuncFieldCtx fx;
    std::vector<RationalFunction> f0{RationalFunction(7)};
    CHECK(q_difference(fx, f0, 0) == RationalFunction(7));

    std::vector<RationalFunction> bracket;
    for (long long x = 0; x <= 4; ++x) bracket.push_back(q_bracket(fx, x));
    CHECK(q_difference(fx, bracket, 1) == RationalFunction(1));

    CHECK_THROWS_AS(q_difference(fx, f0, 2), domain_error);
}

TEST_CASE("Newton-type expansion reconstructs bracket powers") {
    FuncFieldCtx fx;
    std::vector<RationalFunction> f;
    for (long long x = 0; x <= 4; ++x) f.push_back(scalar_pow(fx, q_bracket(fx, x), 2));
    for (long long x = 0; x <= 4; ++x) {
        RationalFunction acc(0);
        for (long long n = 0; n <= 4; ++n) {
            std::vector<RationalFunction> head(f.begin(), f.begin() + n + 1);
            acc += gauss_binomial(fx, x, n) * q_difference(fx, head, n);
        }
        CHECK(acc == f[static_cast<std::size_t>(x)]);
    }
}

TEST_CASE("second-kind q-Stirling basics") {
    FuncFieldCtx fx;
    CHECK(q_stirling2(fx, 0, 0) == RationalFunction(1));
    CHECK(q_stirling2(fx, 3, 0).is_zero());
    CHECK(q_stirling2(fx, 2, 1) == RationalFunction(1));
    for (long long n = 0; n <= 5; ++n)
        for (long long k = 0; k <= 5; ++k)
            CHECK(q_stirling2(fx, n, k) == q_stirling2_operator(fx, n, k));
}

TEST_CASE("first-kind q-Stirling rows") {
    FuncFieldCtx fx;
    auto row0 = q_stirling1_row(fx, 0);
    REQUIRE(row0.size() == 1);
    CHECK(row0[0] == RationalFunction(1));

    auto row2 = q_stirling1_row(fx, 2);
    REQUIRE(row2.size() == 3);
    CHECK(row2[0] == RationalFunction(1));
    CHECK(row2[1] == RationalFunction(1) + q_bracket(fx, 2));
    CHECK(row2[2] == q_bracket(fx, 2));

    auto table = q_stirling_table(fx, QStirlingKind::first, 3);
    CHECK(table.rows.size() == 4);
    CHECK(table.rows[2][1] == row2[1]);
}

TEST_CASE("monic product expansion at n = 3") {
    FuncFieldCtx fx;
    // prod_{k=0..2} (z - [k]) as coefficients in z
    std::vector<RationalFunction> lhs{RationalFunction(1)};
    for (long long k = 0; k < 3; ++k) {
        std::vector<RationalFunction> next(lhs.size() + 1, RationalFunction(0));
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            next[i + 1] += lhs[i];
            next[i] -= lhs[i] * q_bracket(fx, k);
        }
        lhs = std::move(next);
    }
    auto row = q_stirling1_row(fx, 2);
    for (long long k = 0; k <= 3; ++k) {
        RationalFunction s1 = k < 3 ? row[static_cast<std::size_t>(k)] : RationalFunction(0);
        if (k % 2 != 0) s1 = -s1;
        CHECK(lhs[static_cast<std::size_t>(3 - k)] == s1);
    }
}

TEST_CASE("bracket product expansion") {
    FuncFieldCtx fx;
    for (long long m = 0; m <= 6; ++m)
        for (long long r = 0; r <= 6; ++r) {
            RationalFunction lhs(1);
            for (long long k = 0; k < m; ++k) lhs *= q_bracket(fx, r) - q_bracket(fx, k);
            auto row = m >= 1 ? q_stirling1_row(fx, m - 1)
                              : std::vector<RationalFunction>{RationalFunction(1)};
            RationalFunction rhs(0);
            for (long long k = 0; k <= m; ++k) {
                RationalFunction s1 =
                    k < static_cast<long long>(row.size()) ? row[static_cast<std::size_t>(k)]
                                                           : RationalFunction(0);
                auto term = s1 * scalar_pow(fx, q_bracket(fx, r), m - k);
                rhs = (k % 2 == 0) ? rhs + term : rhs - term;
            }
            CHECK(lhs == rhs);
        }
}
