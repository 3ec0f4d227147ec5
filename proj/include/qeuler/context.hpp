#pragma once

#include <utility>

#include "qeuler/padic.hpp"
#include "qeuler/rational_function.hpp"

namespace qeuler {

/// Exact-rational backend: q is a fixed rational != 1. The q -> 1 limit is
/// reached only through the function-field backend after cancellation.
class RationalCtx {
    Rational q_;

public:
    using Scalar = Rational;

    explicit RationalCtx(Rational q) : q_(std::move(q)) {
        if (q_ == 1) throw domain_error("exact-rational backend requires q != 1");
    }

    const Rational& q() const { return q_; }
    Scalar q_pow(long long e) const { return rat_pow(q_, e); }
    Scalar from_int(long long v) const { return Rational(v); }
    Scalar from_rational(const Rational& r) const { return r; }
    bool is_zero(const Scalar& s) const { return s == 0; }
};

/// Function-field backend: q is the indeterminate of Q(q) and identity
/// checking is exact equality of rational functions.
class FuncFieldCtx {
public:
    using Scalar = RationalFunction;

    const RationalFunction& q() const {
        static const RationalFunction q_ = RationalFunction::q();
        return q_;
    }
    Scalar q_pow(long long e) const { return RationalFunction::q_pow(e); }
    Scalar from_int(long long v) const { return RationalFunction(v); }
    Scalar from_rational(const Rational& r) const { return RationalFunction(r); }
    bool is_zero(const Scalar& s) const { return s.is_zero(); }
};

/// p-adic backend: scalars are precision-tracked elements of Q_p; q is a
/// rational embedded in Z_p with |1-q|_p < 1 (so q-powers of p-adic integers
/// converge). Exact constants are embedded with `prec` correct unit digits.
class PadicCtx {
    Int p_;
    int prec_;
    Rational q_;
    long long q_minus_one_val_;

public:
    using Scalar = Padic;

    PadicCtx(Int p, int prec, Rational q) : p_(std::move(p)), prec_(prec), q_(std::move(q)) {
        if (!is_odd_prime(p_)) throw domain_error("p must be an odd prime");
        if (prec_ < 1) throw domain_error("p-adic precision must be >= 1");
        if (q_ == 1) throw domain_error("p-adic backend requires q != 1");
        q_minus_one_val_ = valuation(q_ - 1, p_);
        if (q_minus_one_val_ < 1)
            throw domain_error("p-adic backend requires |1-q|_p < 1");
    }

    const Int& prime() const { return p_; }
    int precision() const { return prec_; }
    const Rational& q_rational() const { return q_; }
    long long q_minus_one_valuation() const { return q_minus_one_val_; }

    /// Exactly-known rationals carry full relative precision.
    Scalar from_rational(const Rational& r) const {
        if (r == 0) return Padic::zero(p_, prec_);
        long long v = valuation(r, p_);
        int abs_prec = static_cast<int>(v + prec_);
        return padic_from_rational(r, p_, abs_prec);
    }
    Scalar q() const { return from_rational(q_); }
    Scalar q_pow(long long e) const { return from_rational(rat_pow(q_, e)); }
    Scalar from_int(long long v) const { return from_rational(Rational(v)); }
    bool is_zero(const Scalar& s) const { return s.is_zero(); }

    /// Companion exact context with the same q, for computations the
    /// integrator performs in exact arithmetic before embedding.
    RationalCtx rational_ctx() const { return RationalCtx(q_); }
};

template <class Ctx>
using ScalarOf = typename Ctx::Scalar;

/// Repeated squaring in the scalar field; e < 0 inverts (field scalars only).
template <class Ctx>
ScalarOf<Ctx> scalar_pow(const Ctx& ctx, ScalarOf<Ctx> base, long long e) {
    if (e < 0) return ctx.from_int(1) / scalar_pow(ctx, std::move(base), -e);
    ScalarOf<Ctx> acc = ctx.from_int(1);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// q^y for integer y: exact in every backend.
template <class Ctx>
ScalarOf<Ctx> q_power_extended(const Ctx& ctx, long long y) {
    return ctx.q_pow(y);
}

/// q^y for a p-adic integer exponent, via the binomial series
/// sum_i C(y,i) (q-1)^i, truncated once the term valuation i*v_p(q-1)
/// exceeds the reachable precision. C(y,i) is a p-adic integer, so the
/// truncated tail has valuation >= (i+1)*v_p(q-1).
inline Padic q_power_extended(const PadicCtx& ctx, const Padic& y) {
    if (!y.is_zero() && *y.valuation() < 0)
        throw domain_error("q^y needs a p-adic integer exponent");
    long long w = ctx.q_minus_one_valuation();
    // y only known mod p^prec(y); q^(y+dp^k) differs from q^y by valuation w+k.
    long long target = std::min<long long>(ctx.precision(), w + y.precision());
    if (target < 1) throw precision_exhausted("q^y: exponent too imprecise");
    // Integer lift of y mod p^prec(y).
    Int lift = 0;
    if (!y.is_zero()) lift = y.unit() * int_pow(ctx.prime(), *y.valuation());
    lift %= int_pow(ctx.prime(), y.precision());
    Rational qm1 = ctx.q_rational() - 1;
    Rational sum = 0, term = 1; // term_i = C(lift, i) (q-1)^i
    for (long long i = 0; i * w < target; ++i) {
        sum += term;
        term *= Rational(lift - i, i + 1) * qm1;
    }
    return padic_from_rational(sum, ctx.prime(), static_cast<int>(target));
}

} // namespace qeuler
