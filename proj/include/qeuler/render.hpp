#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "qeuler/padic.hpp"
#include "qeuler/rational_function.hpp"

namespace qeuler {

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { throw parse_error("bad rational literal: " + std::string(s)); };
    std::size_t slash = s.find('/');
    auto parse_int = [&](std::string_view t) {
        if (t.empty()) bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) bad();
        for (std::size_t j = i; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j]))) bad();
        return Int(std::string(t));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
}

/// Descending-power rendering, e.g. "2*q^3 - q + 1"; zero renders as "0".
inline std::string poly_to_string(const IntPoly& p, const char* var = "q") {
    if (p.is_zero()) return "0";
    std::string out;
    for (long long i = p.degree(); i >= 0; --i) {
        Int c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        Int a = boost::multiprecision::abs(c);
        if (i == 0) {
            out += a.str();
        } else {
            if (a != 1) out += a.str() + "*";
            out += var;
            if (i != 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline IntPoly parse_poly(std::string_view s, char var = 'q') {
    struct Term {
        Int coeff;
        long long deg;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && s[i] == ' ') ++i;
    };
    skip_ws();
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        skip_ws();
        if (!first || s[i] == '+' || s[i] == '-') {
            if (i >= s.size() || (s[i] != '+' && s[i] != '-'))
                throw parse_error("bad polynomial: " + std::string(s));
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        }
        first = false;
        Int coeff = 1;
        bool saw_coeff = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            coeff = Int(std::string(s.substr(i, j - i)));
            i = j;
            saw_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        long long deg = 0;
        if (i < s.size() && s[i] == var) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw parse_error("bad exponent in: " + std::string(s));
                deg = std::stoll(std::string(s.substr(i, j - i)));
                i = j;
            }
        } else if (!saw_coeff) {
            throw parse_error("bad polynomial term in: " + std::string(s));
        }
        terms.push_back({coeff * sign, deg});
        skip_ws();
    }
    IntPoly out;
    for (const auto& t : terms) out += IntPoly::monomial(t.coeff, static_cast<std::size_t>(t.deg));
    return out;
}

/// Canonical rendering: fully reduced, "(num)/(den)" unless the denominator
/// is 1.
inline std::string ratfunc_to_string(const RationalFunction& f) {
    RationalFunction c = f.canonical();
    if (c.denominator() == IntPoly(1)) return poly_to_string(c.numerator());
    return "(" + poly_to_string(c.numerator()) + ")/(" + poly_to_string(c.denominator()) + ")";
}

inline RationalFunction parse_ratfunc(std::string_view s) {
    if (!s.empty() && s.front() == '(') {
        std::size_t split = s.find(")/(");
        if (split == std::string_view::npos || s.back() != ')')
            throw parse_error("bad rational function: " + std::string(s));
        IntPoly num = parse_poly(s.substr(1, split - 1));
        IntPoly den = parse_poly(s.substr(split + 3, s.size() - split - 4));
        return RationalFunction(num, den);
    }
    return RationalFunction(parse_poly(s));
}

/// Digit rendering, e.g. "3-adic val=0 digits=[2,1,0,1] prec=4"; the digit
/// list is the unit least-significant-first, prec-val entries.
inline std::string padic_to_string(const Padic& a) {
    std::string out = a.prime().str() + "-adic val=";
    if (a.is_zero())
        out += "inf";
    else
        out += std::to_string(*a.valuation());
    out += " digits=[";
    auto d = a.digits();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(d[i]);
    }
    out += "] prec=" + std::to_string(a.precision());
    return out;
}

inline Padic parse_padic(std::string_view s) {
    auto bad = [&] { throw parse_error("bad p-adic literal: " + std::string(s)); };
    auto expect = [&](std::string_view tok, std::size_t& i) {
        if (s.substr(i, tok.size()) != tok) bad();
        i += tok.size();
    };
    std::size_t dash = s.find("-adic val=");
    if (dash == std::string_view::npos) bad();
    Int p(std::string(s.substr(0, dash)));
    std::size_t i = dash;
    expect("-adic val=", i);
    bool zero = false;
    long long val = 0;
    if (s.substr(i, 3) == "inf") {
        zero = true;
        i += 3;
    } else {
        std::size_t j = i;
        if (j < s.size() && s[j] == '-') ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) bad();
        val = std::stoll(std::string(s.substr(i, j - i)));
        i = j;
    }
    expect(" digits=[", i);
    std::vector<int> digits;
    while (i < s.size() && s[i] != ']') {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) bad();
        digits.push_back(std::stoi(std::string(s.substr(i, j - i))));
        i = j;
        if (i < s.size() && s[i] == ',') ++i;
    }
    expect("] prec=", i);
    std::size_t j = i;
    if (j < s.size() && s[j] == '-') ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) bad();
    int prec = std::stoi(std::string(s.substr(i, j - i)));
    if (j != s.size()) bad();
    if (zero) return Padic::zero(p, prec);
    Int unit = 0;
    for (std::size_t k = digits.size(); k-- > 0;) unit = unit * p + digits[k];
    return Padic::from_scaled(p, prec, val, std::move(unit));
}

/// Minimal RFC-style CSV quoting.
inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace qeuler
