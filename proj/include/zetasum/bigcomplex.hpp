#pragma once

#include "zetasum/bigreal.hpp"

namespace zetasum {

/// Complex value with BigReal components. All operations compose the
/// underlying real operations, so the context error contract carries over
/// componentwise.
class BigComplex {
  public:
    explicit BigComplex(const PrecisionContext& ctx) : re_(ctx), im_(ctx) {}
    BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(const BigReal& re) : re_(re), im_(re.context()) {}

    const BigReal& re() const { return re_; }
    const BigReal& im() const { return im_; }
    const PrecisionContext& context() const { return re_.context(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.norm2();
        if (d.is_zero()) throw std::invalid_argument("BigComplex: division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
    }

    friend BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re_ * s, a.im_ * s}; }
    friend BigComplex operator*(const BigReal& s, const BigComplex& a) { return a * s; }
    friend BigComplex operator/(const BigComplex& a, long s) { return {a.re_ / s, a.im_ / s}; }

    BigComplex operator-() const { return {-re_, -im_}; }

    BigComplex& operator+=(const BigComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }

    BigComplex conj() const { return {re_, -im_}; }

    /// re^2 + im^2, composed exactly from BigReal operations.
    BigReal norm2() const { return re_ * re_ + im_ * im_; }

    BigReal abs() const { return sqrt(norm2()); }

    /// 1/z via the conjugate formula.
    BigComplex reciprocal() const {
        BigReal d = norm2();
        if (d.is_zero()) throw std::invalid_argument("BigComplex: reciprocal of zero");
        return {re_ / d, -im_ / d};
    }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  private:
    BigReal re_;
    BigReal im_;
};

inline BigComplex conj(const BigComplex& z) { return z.conj(); }

}  // namespace zetasum
