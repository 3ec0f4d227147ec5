#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qeuler/qeuler.hpp"

using namespace qeuler;

TEST_CASE("rational rendering round-trips") {
    const Rational values[] = {Rational(0), Rational(7), Rational(-7), Rational(5, 6),
                               Rational(-22, 7)};
    for (const auto& v : values) CHECK(parse_rational(rational_to_string(v)) == v);
    CHECK(rational_to_string(Rational(5, 6)) == "5/6");
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("x"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
}

TEST_CASE("polynomial rendering round-trips") {
    IntPoly p({Int(1), Int(-1), Int(0), Int(2)}); // 2q^3 - q + 1
    CHECK(poly_to_string(p) == "2*q^3 - q + 1");
    CHECK(parse_poly(poly_to_string(p)) == p);
    CHECK(poly_to_string(IntPoly()) == "0");
    CHECK(parse_poly("0") == IntPoly());
    CHECK(parse_poly("q") == IntPoly::monomial(1, 1));
    CHECK(parse_poly("-q^2 + 3") == IntPoly({Int(3), Int(0), Int(-1)}));
}

TEST_CASE("rational-function rendering canonicalizes and round-trips") {
    FuncFieldCtx fx;
    auto q = fx.q();
    auto f = (RationalFunction(1) - q * q) / ((RationalFunction(1) - q) * (RationalFunction(1) + q * q));
    std::string s = ratfunc_to_string(f);
    CHECK(s == "(q + 1)/(q^2 + 1)");
    CHECK(parse_ratfunc(s) == f);
    CHECK(ratfunc_to_string(RationalFunction(2) / (RationalFunction(1) + q)) == "(2)/(q + 1)");
    CHECK(ratfunc_to_string(RationalFunction(5)) == "5");
    CHECK(parse_ratfunc("5") == RationalFunction(5));
}

TEST_CASE("p-adic rendering round-trips") {
    auto a = padic_from_rational(Rational(1, 2), Int(3), 4);
    std::string s = padic_to_string(a);
    CHECK(s == "3-adic val=0 digits=[2,1,1,1] prec=4");
    CHECK(parse_padic(s) == a);
    CHECK(parse_padic(s).precision() == a.precision());

    auto z = Padic::zero(Int(5), 6);
    CHECK(padic_to_string(z) == "5-adic val=inf digits=[] prec=6");
    CHECK(parse_padic(padic_to_string(z)).is_zero());

    auto neg = padic_from_rational(Rational(-1, 3), Int(3), 2);
    auto round = parse_padic(padic_to_string(neg));
    CHECK(round == neg);
    CHECK(*round.valuation() == -1);

    CHECK_THROWS_AS(parse_padic("nonsense"), parse_error);
}

TEST_CASE("rendered scalars parse back equal across random samples") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 30);
    for (int i = 0; i < 100; ++i) {
        Rational v(num(rng), den(rng));
        CHECK(parse_rational(rational_to_string(v)) == v);
        auto emb = padic_from_rational(v, Int(5), 6);
        CHECK(parse_padic(padic_to_string(emb)) == emb);
    }
    FuncFieldCtx fx;
    for (long long n = 0; n <= 4; ++n) {
        auto f = euler_hr(fx, n, 2, 2, 1);
        CHECK(parse_ratfunc(ratfunc_to_string(f)) == f);
    }
}

TEST_CASE("csv quoting") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
