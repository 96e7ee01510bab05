#pragma once

#include "zetasum/bernoulli.hpp"
#include "zetasum/bigreal.hpp"

namespace zetasum::detail {

/// Result of an Euler-Maclaurin tail evaluation. `error_bound` is the
/// magnitude of the first omitted correction term; `converged` says whether
/// it fell below the requested target before the correction series started
/// to diverge. Callers react to !converged by enlarging the cutoff.
struct EmTail {
    BigReal value;
    BigReal error_bound;
    bool converged;
    unsigned terms_used;
};

/// sum_{k=M}^, k^(-s) for s > 1, via
///   M^(1-s)/(s-1) + M^(-s)/2 + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M^(-s-2j+1).
inline EmTail power_tail(const BigReal& s, unsigned long M, const BigReal& target,
                         unsigned max_terms = 64) {
    const PrecisionContext& ctx = s.context();
    BigReal m_real(static_cast<long>(M), ctx);
    BigReal inv_m2 = 1 / (m_real * m_real);

    BigReal value = pow(m_real, 1 - s) / (s - 1) + pow(m_real, -s) / 2;
    BigReal rising = s;                      // s(s+1)...(s+2j-2), starts at j=1
    BigReal mpow = pow(m_real, -s - 1);      // M^(-s-2j+1), starts at j=1
    BigReal prev_abs(ctx);
    EmTail out{value, BigReal(ctx), false, 0};

    for (unsigned j = 1; j <= max_terms; ++j) {
        BigReal term = BigReal(bernoulli(2 * j) / Rational::factorial(2 * j), ctx) * rising * mpow;
        BigReal mag = abs(term);
        if (j > 1 && mag > prev_abs) {
            // correction series started to diverge; stop before it does harm
            out.error_bound = mag;
            out.converged = mag < target;
            return out;
        }
        out.value += term;
        out.terms_used = j;
        if (mag < target) {
            out.error_bound = mag;
            out.converged = true;
            return out;
        }
        prev_abs = mag;
        rising *= (s + static_cast<long>(2 * j - 1)) * (s + static_cast<long>(2 * j));
        mpow *= inv_m2;
    }
    out.error_bound = prev_abs;
    return out;
}

inline EmTail power_tail(long s, unsigned long M, const BigReal& target,
                         const PrecisionContext& ctx, unsigned max_terms = 64) {
    return power_tail(BigReal(s, ctx), M, target, max_terms);
}

/// sum_{k=M}^, ln(k) k^(-s) for s > 1. The odd derivatives of
/// f(x) = ln(x) x^(-s) are x^(-s-m) (a_m ln x + b_m) with
/// a_{m+1} = -(s+m) a_m, b_{m+1} = a_m - (s+m) b_m.
inline EmTail log_power_tail(const BigReal& s, unsigned long M, const BigReal& target,
                             unsigned max_terms = 64) {
    const PrecisionContext& ctx = s.context();
    BigReal m_real(static_cast<long>(M), ctx);
    BigReal log_m = log(m_real);
    BigReal inv_m = 1 / m_real;
    BigReal sm1 = s - 1;

    BigReal value = pow(m_real, 1 - s) * (log_m / sm1 + 1 / (sm1 * sm1)) + log_m * pow(m_real, -s) / 2;

    BigReal a(1, ctx);
    BigReal b(ctx);
    BigReal mpow = pow(m_real, -s);  // tracks M^(-s-m) as m advances
    unsigned m = 0;
    BigReal prev_abs(ctx);
    EmTail out{value, BigReal(ctx), false, 0};

    for (unsigned j = 1; j <= max_terms; ++j) {
        while (m < 2 * j - 1) {
            BigReal a_next = -(s + static_cast<long>(m)) * a;
            b = a - (s + static_cast<long>(m)) * b;
            a = a_next;
            mpow *= inv_m;
            ++m;
        }
        BigReal deriv = mpow * (a * log_m + b);
        BigReal term = -BigReal(bernoulli(2 * j) / Rational::factorial(2 * j), ctx) * deriv;
        BigReal mag = abs(term);
        if (j > 1 && mag > prev_abs) {
            out.error_bound = mag;
            out.converged = mag < target;
            return out;
        }
        out.value += term;
        out.terms_used = j;
        if (mag < target) {
            out.error_bound = mag;
            out.converged = true;
            return out;
        }
        prev_abs = mag;
    }
    out.error_bound = prev_abs;
    return out;
}

}  // namespace zetasum::detail
