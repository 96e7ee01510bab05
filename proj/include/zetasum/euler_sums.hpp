#pragma once

#include <map>
#include <stdexcept>
#include <tuple>

#include "zetasum/constants.hpp"
#include "zetasum/euler_maclaurin.hpp"
#include "zetasum/harmonic.hpp"

namespace zetasum {

namespace detail {

inline constexpr unsigned long kEulerSumCutoffCap = 1ul << 20;

/// Tail sum_{k=N+1}^, H_k^(p) k^(-q) assembled from the asymptotic
/// expansion of the harmonic remainder composed with power (and, for p = 1,
/// log-power) Euler-Maclaurin tails. Reports convergence of the expansion so
/// the caller can enlarge N.
inline EmTail euler_sum_tail(unsigned p, const BigReal& q, unsigned long N, const BigReal& target,
                             const PrecisionContext& ctx) {
    unsigned max_terms = em_max_terms(ctx);
    BigReal sub_target = target / 4;
    EmTail out{BigReal(ctx), BigReal(ctx), false, 0};

    bool subtails_ok = true;
    auto ztail = [&](const BigReal& s) {
        EmTail t = power_tail(s, N + 1, sub_target, max_terms);
        subtails_ok = subtails_ok && t.converged;
        return t.value;
    };

    if (p == 1) {
        EmTail lt = log_power_tail(q, N + 1, sub_target, max_terms);
        if (!lt.converged) return out;
        out.value = lt.value + euler_gamma(ctx) * ztail(q) + ztail(q + 1) / 2;
        BigReal prev(ctx);
        for (unsigned j = 1; j <= max_terms; ++j) {
            Rational c = bernoulli(2 * j) / Rational(2 * static_cast<long>(j));
            BigReal term = -BigReal(c, ctx) * ztail(q + static_cast<long>(2 * j));
            BigReal mag = abs(term);
            if (j > 1 && mag > prev) {
                out.error_bound = mag;
                out.converged = subtails_ok && mag < target;
                return out;
            }
            out.value += term;
            out.terms_used = j;
            if (mag < target) {
                out.error_bound = mag;
                out.converged = subtails_ok;
                return out;
            }
            prev = mag;
        }
        return out;
    }

    // p >= 2:  H_k^(p) = zeta(p) - k^(1-p)/(p-1) + k^(-p)/2
    //          - sum_j B_{2j}/(2j)! p(p+1)...(p+2j-2) k^(-p-2j+1)
    long pl = static_cast<long>(p);
    out.value = zeta_int(pl, ctx) * ztail(q) - ztail(q + (pl - 1)) / (pl - 1) + ztail(q + pl) / 2;
    Rational rising(pl);  // p(p+1)...(p+2j-2)
    BigReal prev(ctx);
    for (unsigned j = 1; j <= max_terms; ++j) {
        Rational c = bernoulli(2 * j) / Rational::factorial(2 * j) * rising;
        BigReal term = -BigReal(c, ctx) * ztail(q + (pl + static_cast<long>(2 * j) - 1));
        BigReal mag = abs(term);
        if (j > 1 && mag > prev) {
            out.error_bound = mag;
            out.converged = subtails_ok && mag < target;
            return out;
        }
        out.value += term;
        out.terms_used = j;
        if (mag < target) {
            out.error_bound = mag;
            out.converged = subtails_ok;
            return out;
        }
        prev = mag;
        rising *= Rational(pl + 2 * static_cast<long>(j) - 1) * Rational(pl + 2 * static_cast<long>(j));
    }
    return out;
}

}  // namespace detail

/// Linear Euler sum S(p,q) = sum_{k>=1} H_k^(p) / k^q for integers p >= 1,
/// q >= 2: direct summation to an adaptive cutoff, then the Euler-Maclaurin
/// tail. The cutoff doubles from 64 and is capped at 2^20; a precision
/// request that would need more is an error rather than a silent shortfall.
inline BigReal euler_sum(unsigned p, long q, const PrecisionContext& ctx) {
    if (p < 1) throw std::invalid_argument("euler_sum: requires p >= 1");
    if (q < 2) throw std::domain_error("euler_sum: requires q >= 2");

    static detail::MemoTable<std::tuple<unsigned, long, unsigned, unsigned>> memo;
    return memo.get_or_compute({p, q, ctx.digits(), ctx.guard_digits()}, [&] {
        BigReal target = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()), ctx);
        BigReal q_real(q, ctx);

        unsigned long n = 64;
        detail::EmTail tail{BigReal(ctx), BigReal(ctx), false, 0};
        for (;; n *= 2) {
            if (n > detail::kEulerSumCutoffCap) {
                throw std::runtime_error("euler_sum: cutoff cap 2^20 exceeded; precision request too large");
            }
            tail = detail::euler_sum_tail(p, q_real, n, target, ctx);
            if (tail.converged) break;
        }

        BigReal partial(ctx);
        HarmonicStream h(p, ctx);
        for (unsigned long k = 1; k <= n; ++k) {
            partial += h.next().second * pow_int(k, -q, ctx);
        }
        return partial + tail.value;
    });
}

/// Exact formal value of psi^(k)(n) for k in {0,1,2} at a positive integer:
/// a rational part plus rational multiples of gamma, zeta(2), zeta(3).
struct PolygammaAtInteger {
    unsigned order;
    unsigned long n;
    Rational rational_part;
    Rational gamma_coeff;
    Rational zeta2_coeff;
    Rational zeta3_coeff;

    BigReal evaluate(const PrecisionContext& ctx) const {
        BigReal out(rational_part, ctx);
        if (!gamma_coeff.is_zero()) out += BigReal(gamma_coeff, ctx) * euler_gamma(ctx);
        if (!zeta2_coeff.is_zero()) out += BigReal(zeta2_coeff, ctx) * zeta_int(2, ctx);
        if (!zeta3_coeff.is_zero()) out += BigReal(zeta3_coeff, ctx) * zeta_int(3, ctx);
        return out;
    }
};

/// psi(n) = H_{n-1} - gamma, psi'(n) = zeta(2) - H_{n-1}^(2),
/// psi''(n) = -2 zeta(3) + 2 H_{n-1}^(3).
inline PolygammaAtInteger polygamma_at_integer(unsigned k, unsigned long n) {
    if (n < 1) throw std::invalid_argument("polygamma_at_integer: requires n >= 1");
    if (k > 2) throw std::invalid_argument("polygamma_at_integer: only orders 0, 1, 2 are supported");
    PolygammaAtInteger out{k, n, Rational(0), Rational(0), Rational(0), Rational(0)};
    switch (k) {
        case 0:
            out.rational_part = harmonic(n - 1, 1);
            out.gamma_coeff = Rational(-1);
            break;
        case 1:
            out.rational_part = -harmonic(n - 1, 2);
            out.zeta2_coeff = Rational(1);
            break;
        default:
            out.rational_part = Rational(2) * harmonic(n - 1, 3);
            out.zeta3_coeff = Rational(-2);
            break;
    }
    return out;
}

enum class ChiMode { closed_form, direct };

namespace detail {

inline void check_chi_strip(unsigned k, const BigReal& s) {
    bool ok = k == 0 ? s > BigReal(1, s.context()) : s > BigReal(0, s.context());
    if (!ok) {
        throw std::domain_error(k == 0 ? "chi: chi_0 requires s > 1" : "chi: chi_1/chi_2 require s > 0");
    }
}

/// Direct Dirichlet evaluation sum_n psi^(k)(n) n^(-s) with an adaptive
/// cutoff (never below min_cutoff; tests use that knob for refinement
/// self-checks).
inline BigReal chi_direct(unsigned k, const BigReal& s_in, const PrecisionContext& ctx,
                          unsigned long min_cutoff = 0) {
    BigReal s = s_in.rounded_to(ctx);
    check_chi_strip(k, s);
    BigReal target = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()), ctx);
    unsigned max_terms = em_max_terms(ctx);

    unsigned long n = 64;
    while (n < min_cutoff) n *= 2;

    for (;; n *= 2) {
        if (n > kEulerSumCutoffCap) {
            throw std::runtime_error("chi: cutoff cap 2^20 exceeded; precision request too large");
        }
        BigReal sub_target = target / 4;
        bool subtails_ok = true;
        auto ztail = [&](long shift) {
            EmTail t = power_tail(s + shift, n + 1, sub_target, max_terms);
            subtails_ok = subtails_ok && t.converged;
            return t.value;
        };

        // tail from the asymptotic expansion of psi^(k)
        BigReal tail(ctx);
        bool tail_ok = false;
        if (k == 0) {
            EmTail lt = log_power_tail(s, n + 1, sub_target, max_terms);
            if (!lt.converged) continue;
            tail = lt.value - ztail(1) / 2;
        } else if (k == 1) {
            tail = ztail(1) + ztail(2) / 2;
        } else {
            tail = -ztail(2) - ztail(3);
        }
        BigReal prev(ctx);
        for (unsigned j = 1; j <= max_terms; ++j) {
            Rational b = bernoulli(2 * j);
            BigReal term(ctx);
            if (k == 0) {
                term = -BigReal(b / Rational(2 * static_cast<long>(j)), ctx) *
                       ztail(static_cast<long>(2 * j));
            } else if (k == 1) {
                term = BigReal(b, ctx) * ztail(static_cast<long>(2 * j + 1));
            } else {
                term = -BigReal(b * Rational(2 * static_cast<long>(j) + 1), ctx) *
                       ztail(static_cast<long>(2 * j + 2));
            }
            BigReal mag = abs(term);
            if (j > 1 && mag > prev) {
                tail_ok = mag < target;
                break;
            }
            tail += term;
            if (mag < target) {
                tail_ok = true;
                break;
            }
            prev = mag;
        }
        if (!tail_ok || !subtails_ok) continue;

        // partial sum with exact-recurrence polygamma values
        BigReal partial(ctx);
        BigReal running(ctx);  // H_{m-1}^(k+1) as m advances
        BigReal base(ctx);
        if (k == 0) {
            base = -euler_gamma(ctx);
        } else if (k == 1) {
            base = zeta_int(2, ctx);
        } else {
            base = -2 * zeta_int(3, ctx);
        }
        for (unsigned long m = 1; m <= n; ++m) {
            BigReal psi_val = k == 2 ? base + 2 * running : (k == 1 ? base - running : base + running);
            partial += psi_val * pow(BigReal(static_cast<long>(m), ctx), -s);
            running += pow_int(m, -static_cast<long>(k + 1), ctx);
        }
        return partial + tail;
    }
}

}  // namespace detail

/// chi_k(s) = sum_n psi^(k)(n) n^(-s). closed_form expands through Euler
/// sums (integer s >= 2 only):
///   chi_0(s) = S(1,s) - gamma zeta(s) - zeta(s+1)
///   chi_1(s) = zeta(2) zeta(s) - S(2,s) + zeta(s+2)
///   chi_2(s) = -2 (zeta(3) zeta(s) - S(3,s) + zeta(s+3))
/// direct sums the Dirichlet series with an Euler-Maclaurin tail and accepts
/// real s inside the convergence strip.
inline BigReal chi(unsigned k, long s, const PrecisionContext& ctx, ChiMode mode) {
    if (k > 2) throw std::invalid_argument("chi: only k in {0,1,2} is supported");
    if (mode == ChiMode::direct) {
        return detail::chi_direct(k, BigReal(s, ctx), ctx);
    }
    if (s < 2) throw std::domain_error("chi: closed_form requires integer s >= 2");
    switch (k) {
        case 0:
            return euler_sum(1, s, ctx) - euler_gamma(ctx) * zeta_int(s, ctx) - zeta_int(s + 1, ctx);
        case 1:
            return zeta_int(2, ctx) * zeta_int(s, ctx) - euler_sum(2, s, ctx) + zeta_int(s + 2, ctx);
        default:
            return -2 * (zeta_int(3, ctx) * zeta_int(s, ctx) - euler_sum(3, s, ctx) + zeta_int(s + 3, ctx));
    }
}

inline BigReal chi(unsigned k, const BigReal& s, const PrecisionContext& ctx, ChiMode mode) {
    if (k > 2) throw std::invalid_argument("chi: only k in {0,1,2} is supported");
    if (mode == ChiMode::closed_form) {
        if (!s.is_integer()) {
            throw std::invalid_argument("chi: closed_form requires an integer argument");
        }
        return chi(k, s.to_long(), ctx, mode);
    }
    return detail::chi_direct(k, s, ctx);
}

}  // namespace zetasum
