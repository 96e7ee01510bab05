#pragma once

#include <stdexcept>
#include <vector>

#include "zetasum/constants.hpp"
#include "zetasum/harmonic.hpp"

namespace zetasum {

/// Truncated Laurent series over BigReal with a finite principal part.
/// `max_deg` is the last degree whose coefficient is trustworthy; every
/// operation tracks that truncation order, and reading past it is an error
/// rather than a silent zero. Coefficients are stored densely from min_deg
/// to max_deg.
class LaurentSeries {
  public:
    LaurentSeries(int min_deg, int max_deg, const PrecisionContext& ctx)
        : min_deg_(min_deg), max_deg_(max_deg) {
        if (max_deg < min_deg) {
            throw std::invalid_argument("LaurentSeries: empty degree window");
        }
        coeffs_.assign(static_cast<size_t>(max_deg - min_deg + 1), BigReal(ctx));
    }

    int min_deg() const { return min_deg_; }
    int max_deg() const { return max_deg_; }
    const PrecisionContext& context() const { return coeffs_.front().context(); }

    const BigReal& coefficient(int k) const {
        check_window(k);
        return coeffs_[static_cast<size_t>(k - min_deg_)];
    }

    void set_coefficient(int k, const BigReal& v) {
        check_window(k);
        coeffs_[static_cast<size_t>(k - min_deg_)] = v;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, false);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return combine(a, b, true);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const BigReal& s) {
        LaurentSeries r = a;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

  private:
    void check_window(int k) const {
        if (k < min_deg_ || k > max_deg_) {
            throw std::invalid_argument("LaurentSeries: degree outside the valid window");
        }
    }

    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        int lo = a.min_deg_ < b.min_deg_ ? a.min_deg_ : b.min_deg_;
        int hi = a.max_deg_ < b.max_deg_ ? a.max_deg_ : b.max_deg_;
        if (hi < lo) throw std::invalid_argument("LaurentSeries: empty validity window in sum");
        LaurentSeries r(lo, hi, a.context());
        for (int d = lo; d <= hi; ++d) {
            BigReal v(a.context());
            if (d >= a.min_deg_ && d <= a.max_deg_) v += a.coefficient(d);
            if (d >= b.min_deg_ && d <= b.max_deg_) {
                if (subtract) {
                    v -= b.coefficient(d);
                } else {
                    v += b.coefficient(d);
                }
            }
            r.set_coefficient(d, v);
        }
        return r;
    }

    int min_deg_;
    int max_deg_;
    std::vector<BigReal> coeffs_;
};

/// Cauchy product. The result is valid only to min(M1 + m2, M2 + m1): past
/// that degree the convolution would need coefficients beyond a factor's
/// truncation order.
inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    int lo = a.min_deg() + b.min_deg();
    int hi_a = a.max_deg() + b.min_deg();
    int hi_b = b.max_deg() + a.min_deg();
    int hi = hi_a < hi_b ? hi_a : hi_b;
    if (hi < lo) throw std::invalid_argument("series_mul: empty validity window");
    LaurentSeries r(lo, hi, a.context());
    for (int d = lo; d <= hi; ++d) {
        BigReal acc(a.context());
        int i_lo = a.min_deg() > d - b.max_deg() ? a.min_deg() : d - b.max_deg();
        int i_hi = a.max_deg() < d - b.min_deg() ? a.max_deg() : d - b.min_deg();
        for (int i = i_lo; i <= i_hi; ++i) {
            acc += a.coefficient(i) * b.coefficient(d - i);
        }
        r.set_coefficient(d, acc);
    }
    return r;
}

/// a(-x): coefficient at degree k picks up (-1)^k.
inline LaurentSeries negate_argument(const LaurentSeries& a) {
    LaurentSeries r = a;
    for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
        if (d % 2 != 0) r.set_coefficient(d, -a.coefficient(d));
    }
    return r;
}

inline LaurentSeries derivative(const LaurentSeries& a) {
    LaurentSeries r(a.min_deg() - 1, a.max_deg() - 1, a.context());
    for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
        r.set_coefficient(d - 1, a.coefficient(d) * d);
    }
    return r;
}

inline LaurentSeries even_part(const LaurentSeries& a) {
    LaurentSeries r = a;
    for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
        if (d % 2 != 0) r.set_coefficient(d, BigReal(a.context()));
    }
    return r;
}

inline LaurentSeries odd_part(const LaurentSeries& a) {
    LaurentSeries r = a;
    for (int d = a.min_deg(); d <= a.max_deg(); ++d) {
        if (d % 2 == 0) r.set_coefficient(d, BigReal(a.context()));
    }
    return r;
}

/// Digamma around 0:  psi(x) = -1/x - gamma + sum_{n>=1} (-1)^(n-1) zeta(n+1) x^n.
/// (The first display in the source material labels this expansion psi'; it
/// is the expansion of psi itself - its derivative is the trigamma series.)
inline LaurentSeries psi_series(int order, const PrecisionContext& ctx) {
    if (order < 1) throw std::invalid_argument("psi_series: order must be >= 1");
    LaurentSeries s(-1, order, ctx);
    s.set_coefficient(-1, BigReal(-1, ctx));
    s.set_coefficient(0, -euler_gamma(ctx));
    for (int n = 1; n <= order; ++n) {
        BigReal c = zeta_int(n + 1, ctx);
        s.set_coefficient(n, n % 2 == 1 ? c : -c);
    }
    return s;
}

/// Trigamma around 0:  psi'(x) = 1/x^2 + sum_{n>=0} (-1)^n (n+1) zeta(n+2) x^n.
inline LaurentSeries trigamma_series(int order, const PrecisionContext& ctx) {
    if (order < 0) throw std::invalid_argument("trigamma_series: order must be >= 0");
    LaurentSeries s(-2, order, ctx);
    s.set_coefficient(-2, BigReal(1, ctx));
    for (int n = 0; n <= order; ++n) {
        BigReal c = (n + 1) * zeta_int(n + 2, ctx);
        s.set_coefficient(n, n % 2 == 0 ? c : -c);
    }
    return s;
}

/// psi(-n-x) in the local variable x:
///   1/x + H_n - gamma + sum_{k>=1} ((-1)^k H_n^(k+1) - zeta(k+1)) x^k.
inline LaurentSeries psi_near_negative_integer(unsigned long n, int order, const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("psi_near_negative_integer: n must be >= 1");
    if (order < 1) throw std::invalid_argument("psi_near_negative_integer: order must be >= 1");
    LaurentSeries s(-1, order, ctx);
    s.set_coefficient(-1, BigReal(1, ctx));
    s.set_coefficient(0, BigReal(harmonic(n, 1), ctx) - euler_gamma(ctx));
    for (int k = 1; k <= order; ++k) {
        BigReal h(harmonic(n, static_cast<unsigned>(k) + 1), ctx);
        if (k % 2 != 0) h = -h;
        s.set_coefficient(k, h - zeta_int(k + 1, ctx));
    }
    return s;
}

}  // namespace zetasum
