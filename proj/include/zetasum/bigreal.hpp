#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetasum/rational.hpp"

namespace zetasum {

/// Governs the precision of every BigReal derived from it: `digits` decimal
/// digits carry the accuracy contract, `guard_digits` extra digits absorb
/// rounding inside multi-step algorithms. Immutable and cheap to copy.
class PrecisionContext {
  public:
    explicit PrecisionContext(unsigned digits, unsigned guard_digits = 10)
        : digits_(digits), guard_digits_(guard_digits) {
        if (digits < 1) {
            throw std::invalid_argument("PrecisionContext: digits must be >= 1");
        }
        // 32 spare bits on top of the decimal request keep long accumulation
        // loops (10^6 terms and more) inside the guard band.
        double bits = std::ceil((digits_ + guard_digits_) * 3.3219280948873623479);
        prec_ = static_cast<mpfr_prec_t>(bits) + 32;
    }

    unsigned digits() const { return digits_; }
    unsigned guard_digits() const { return guard_digits_; }
    mpfr_prec_t prec_bits() const { return prec_; }

    /// Context with `extra` more working digits, same guard.
    PrecisionContext elevated(unsigned extra) const {
        return PrecisionContext(digits_ + extra, guard_digits_);
    }

    friend bool operator==(const PrecisionContext& a, const PrecisionContext& b) {
        return a.digits_ == b.digits_ && a.guard_digits_ == b.guard_digits_;
    }

  private:
    unsigned digits_;
    unsigned guard_digits_;
    mpfr_prec_t prec_;
};

inline PrecisionContext make_context(unsigned digits) { return PrecisionContext(digits); }

/// Arbitrary-precision real bound to a PrecisionContext. Every operation
/// rounds to nearest at the context's working precision, so each step is
/// accurate to within half an ulp of that precision.
class BigReal {
  public:
    explicit BigReal(const PrecisionContext& ctx) : ctx_(ctx) {
        mpfr_init2(v_, ctx.prec_bits());
        mpfr_set_zero(v_, 1);
    }

    BigReal(long value, const PrecisionContext& ctx) : ctx_(ctx) {
        mpfr_init2(v_, ctx.prec_bits());
        mpfr_set_si(v_, value, MPFR_RNDN);
    }

    BigReal(const Rational& q, const PrecisionContext& ctx) : ctx_(ctx) {
        mpfr_init2(v_, ctx.prec_bits());
        mpfr_set_q(v_, q.raw(), MPFR_RNDN);
    }

    static BigReal parse(const std::string& text, const PrecisionContext& ctx) {
        BigReal r(ctx);
        if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("BigReal: cannot parse '" + text + "'");
        }
        return r;
    }

    static BigReal from_double(double value, const PrecisionContext& ctx) {
        BigReal r(ctx);
        mpfr_set_d(r.v_, value, MPFR_RNDN);
        return r;
    }

    BigReal(const BigReal& o) : ctx_(o.ctx_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& o) noexcept : ctx_(o.ctx_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
            ctx_ = o.ctx_;
        }
        return *this;
    }

    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        ctx_ = o.ctx_;
        return *this;
    }

    ~BigReal() { mpfr_clear(v_); }

    const PrecisionContext& context() const { return ctx_; }

    /// Same value re-rounded under another context.
    BigReal rounded_to(const PrecisionContext& ctx) const {
        BigReal r(ctx);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(wider(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        if (mpfr_zero_p(b.v_)) {
            throw std::invalid_argument("BigReal: division by zero");
        }
        BigReal r(wider(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, long b) {
        BigReal r(a.ctx_);
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, long b) {
        BigReal r(a.ctx_);
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, long b) {
        BigReal r(a.ctx_);
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, long b) {
        if (b == 0) throw std::invalid_argument("BigReal: division by zero");
        BigReal r(a.ctx_);
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator+(long a, const BigReal& b) { return b + a; }
    friend BigReal operator-(long a, const BigReal& b) {
        BigReal r(b.ctx_);
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long a, const BigReal& b) {
        if (mpfr_zero_p(b.v_)) throw std::invalid_argument("BigReal: division by zero");
        BigReal r(b.ctx_);
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    BigReal operator-() const {
        BigReal r(ctx_);
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigReal& operator+=(const BigReal& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator-=(const BigReal& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator*=(const BigReal& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    /// Scientific notation with exactly `sig_digits` significant figures,
    /// round-to-nearest.
    std::string to_string(unsigned sig_digits) const {
        if (sig_digits < 1) sig_digits = 1;
        int n = mpfr_snprintf(nullptr, 0, "%.*Re", static_cast<int>(sig_digits) - 1, v_);
        std::vector<char> buf(static_cast<size_t>(n) + 1);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(sig_digits) - 1, v_);
        return std::string(buf.data());
    }

    /// %g-style rendering with `sig_digits` significant figures.
    std::string to_string_compact(unsigned sig_digits) const {
        if (sig_digits < 1) sig_digits = 1;
        int n = mpfr_snprintf(nullptr, 0, "%.*Rg", static_cast<int>(sig_digits), v_);
        std::vector<char> buf(static_cast<size_t>(n) + 1);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(sig_digits), v_);
        return std::string(buf.data());
    }

    std::string to_string() const { return to_string(ctx_.digits()); }

    /// One unit in the last place at this value's working precision;
    /// 2^(1-prec) for zero.
    BigReal ulp() const {
        BigReal r(ctx_);
        mpfr_exp_t e = is_zero() ? 1 : mpfr_get_exp(v_);
        mpfr_set_ui_2exp(r.v_, 1, e - mpfr_get_prec(v_), MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    static const PrecisionContext& wider(const BigReal& a, const BigReal& b) {
        return a.ctx_.prec_bits() >= b.ctx_.prec_bits() ? a.ctx_ : b.ctx_;
    }

    mpfr_t v_;
    PrecisionContext ctx_;
};

inline BigReal rational_to_real(const Rational& q, const PrecisionContext& ctx) { return BigReal(q, ctx); }

#define ZETASUM_UNARY_FN(name, mpfr_name)              \
    inline BigReal name(const BigReal& x) {            \
        BigReal r(x.context());                        \
        mpfr_name(r.raw(), x.raw(), MPFR_RNDN);        \
        return r;                                      \
    }

ZETASUM_UNARY_FN(abs, mpfr_abs)
ZETASUM_UNARY_FN(sqrt, mpfr_sqrt)
ZETASUM_UNARY_FN(exp, mpfr_exp)
ZETASUM_UNARY_FN(sin, mpfr_sin)
ZETASUM_UNARY_FN(cos, mpfr_cos)
ZETASUM_UNARY_FN(atan, mpfr_atan)

#undef ZETASUM_UNARY_FN

inline BigReal floor(const BigReal& x) {
    BigReal r(x.context());
    mpfr_rint(r.raw(), x.raw(), MPFR_RNDD);
    return r;
}

inline BigReal log(const BigReal& x) {
    if (x.sign() <= 0) throw std::domain_error("log: requires a positive argument");
    BigReal r(x.context());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& base, const BigReal& exponent) {
    BigReal r(base.context());
    mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& base, long exponent) {
    BigReal r(base.context());
    mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
    return r;
}

/// 10^e at context precision.
inline BigReal pow10(long e, const PrecisionContext& ctx) {
    BigReal ten(10, ctx);
    return pow(ten, e);
}

/// k^e for an unsigned integer base, e possibly negative.
inline BigReal pow_int(unsigned long base, long e, const PrecisionContext& ctx) {
    BigReal r(ctx);
    if (e >= 0) {
        mpfr_ui_pow_ui(r.raw(), base, static_cast<unsigned long>(e), MPFR_RNDN);
    } else {
        mpfr_ui_pow_ui(r.raw(), base, static_cast<unsigned long>(-e), MPFR_RNDN);
        mpfr_si_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    }
    return r;
}

/// |a - b| <= k ulp of the larger operand.
inline bool within_ulps(const BigReal& a, const BigReal& b, unsigned long k) {
    BigReal scale = abs(a) > abs(b) ? abs(a) : abs(b);
    return abs(a - b) <= scale.ulp() * static_cast<long>(k);
}

}  // namespace zetasum
