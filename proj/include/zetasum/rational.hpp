#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace zetasum {

/// Exact arbitrary-size fraction, always kept in lowest terms with a
/// positive denominator. Arithmetic never rounds; division by zero throws.
class Rational {
  public:
    Rational() { mpq_init(v_); }

    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }

    Rational(long num, long den) {
        if (den == 0) {
            throw std::invalid_argument("Rational: zero denominator");
        }
        mpq_init(v_);
        mpq_set_si(v_, num, den);
        mpq_canonicalize(v_);
    }

    /// Parses "n" or "n/d" in base 10.
    static Rational parse(const std::string& text) {
        Rational r;
        if (mpq_set_str(r.v_, text.c_str(), 10) != 0) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        }
        if (mpz_sgn(mpq_denref(r.v_)) == 0) {
            throw std::invalid_argument("Rational: zero denominator in '" + text + "'");
        }
        mpq_canonicalize(r.v_);
        return r;
    }

    /// Exact n! as a Rational (integer valued).
    static Rational factorial(unsigned long n) {
        Rational r;
        mpz_fac_ui(mpq_numref(r.v_), n);
        return r;
    }

    /// Exact binomial coefficient C(n, k).
    static Rational binomial(unsigned long n, unsigned long k) {
        Rational r;
        mpz_bin_uiui(mpq_numref(r.v_), n, k);
        return r;
    }

    /// Exact integer power base^exp (exp may be negative unless base is 0).
    static Rational pow(const Rational& base, long exp) {
        if (exp == 0) return Rational(1);
        if (base.is_zero() && exp < 0) {
            throw std::invalid_argument("Rational: zero to a negative power");
        }
        Rational r;
        unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
        mpz_pow_ui(mpq_numref(r.v_), mpq_numref(base.v_), e);
        mpz_pow_ui(mpq_denref(r.v_), mpq_denref(base.v_), e);
        if (exp < 0) mpq_inv(r.v_, r.v_);
        mpq_canonicalize(r.v_);
        return r;
    }

    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }

    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }

    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }

    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }

    ~Rational() { mpq_clear(v_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.v_, a.v_, b.v_);
        return r;
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.v_, a.v_, b.v_);
        return r;
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.v_, a.v_, b.v_);
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) {
            throw std::invalid_argument("Rational: division by zero");
        }
        Rational r;
        mpq_div(r.v_, a.v_, b.v_);
        return r;
    }

    Rational operator-() const {
        Rational r;
        mpq_neg(r.v_, v_);
        return r;
    }

    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    int sign() const { return mpq_sgn(v_); }

    Rational abs() const {
        Rational r;
        mpq_abs(r.v_, v_);
        return r;
    }

    std::string numerator_string() const { return mpz_string(mpq_numref(v_)); }
    std::string denominator_string() const { return mpz_string(mpq_denref(v_)); }

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, out.size() + 1);
        return out;
    }

    /// Fits-in-long check plus extraction, for callers that index by value.
    long to_long() const {
        if (!is_integer() || !mpz_fits_slong_p(mpq_numref(v_))) {
            throw std::invalid_argument("Rational: not representable as long");
        }
        return mpz_get_si(mpq_numref(v_));
    }

    const mpq_t& raw() const { return v_; }

  private:
    static std::string mpz_string(const mpz_t z) {
        char* s = mpz_get_str(nullptr, 10, z);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, out.size() + 1);
        return out;
    }

    mpq_t v_;
};

}  // namespace zetasum
