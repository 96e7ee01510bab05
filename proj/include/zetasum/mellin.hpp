#pragma once

#include <functional>
#include <vector>

#include "zetasum/bigcomplex.hpp"
#include "zetasum/constants.hpp"
#include "zetasum/euler_sums.hpp"

namespace zetasum {

/// psi'(z) for complex z away from the non-positive integers: the recurrence
/// psi'(z) = 1/z^2 + psi'(z+1) walks z out to |z| >= R, then the asymptotic
/// expansion 1/z + 1/(2 z^2) + sum_k B_{2k} z^(-2k-1) finishes the job. R
/// scales with the requested digits so the divergent tail bottoms out well
/// below the target.
inline BigComplex trigamma_complex(const BigComplex& z, const PrecisionContext& ctx) {
    if (z.im().is_zero() && z.re().sign() <= 0 && z.re().is_integer()) {
        throw std::domain_error("trigamma_complex: pole at a non-positive integer");
    }
    unsigned wd = ctx.digits() + ctx.guard_digits();
    BigReal target = pow10(-static_cast<long>(wd), ctx);

    for (unsigned long radius = wd / 2 + 20;; radius *= 2) {
        BigReal r2(static_cast<long>(radius * radius), ctx);
        BigComplex w(z.re().rounded_to(ctx), z.im().rounded_to(ctx));
        BigComplex acc(ctx);
        while (w.norm2() < r2) {
            BigComplex inv = w.reciprocal();
            acc += inv * inv;
            w += BigComplex(BigReal(1, ctx));
        }

        BigComplex inv = w.reciprocal();
        BigComplex inv2 = inv * inv;
        BigComplex result = inv + inv2 / 2;
        BigComplex power = inv2 * inv;
        BigReal prev(ctx);
        bool converged = false;
        unsigned max_terms = 4 * radius;
        for (unsigned k = 1; k <= max_terms; ++k) {
            BigComplex term = BigReal(bernoulli(2 * k), ctx) * power;
            BigReal mag = sqrt(term.norm2());
            if (k > 1 && mag > prev) break;
            result += term;
            if (mag < target) {
                converged = true;
                break;
            }
            prev = mag;
            power *= inv2;
        }
        if (converged) return acc + result;
    }
}

namespace detail {

/// Regularized trigamma product for x <= 1/2, written so the 1/x^4
/// cancellation never happens numerically. With g(ix) the analytic part of
/// psi'(ix) around 0,
///   integrand = -2 h2(x)/x^2 + 2 zeta(2) h(x) + h(x)^2 + (Im g(ix))^2,
/// where h = Re g - zeta(2) = sum_{m>=1} (-1)^m (2m+1) zeta(2m+2) x^{2m} and
/// h2 drops h's m = 1 term.
inline BigReal integrand_series(const BigReal& x, const PrecisionContext& ctx) {
    PrecisionContext wide = ctx.elevated(8);
    BigReal xv = x.rounded_to(wide);
    BigReal x2 = xv * xv;
    BigReal target = pow10(-static_cast<long>(wide.digits() + wide.guard_digits()), wide);

    BigReal h(wide), h2(wide), img(wide);
    BigReal even_pow = x2;  // x^{2m}
    BigReal h2_target = target * x2;  // h2 is divided by x^2 downstream
    for (long m = 1;; ++m) {
        BigReal term = (2 * m + 1) * zeta_int(2 * m + 2, wide) * even_pow;
        if (m % 2 != 0) term = -term;
        h += term;
        if (m >= 2) h2 += term;
        BigReal odd = (2 * m) * zeta_int(2 * m + 1, wide) * even_pow / xv;
        if (m % 2 != 0) odd = -odd;
        img += odd;
        even_pow *= x2;
        if (abs(term) < h2_target && abs(odd) < target) break;
        if (m > 4000) throw std::runtime_error("integrand_series: no convergence (x too close to 1?)");
    }

    BigReal value = -2 * h2 / x2 + 2 * zeta_int(2, wide) * h + h * h + img * img;
    return value.rounded_to(ctx);
}

/// Same quantity through the recurrence/asymptotic trigamma path; the
/// product psi'(ix) psi'(-ix) = |psi'(ix)|^2 is real by construction.
inline BigReal integrand_trigamma(const BigReal& x, const PrecisionContext& ctx) {
    PrecisionContext wide = ctx.elevated(10);
    BigReal xv = x.rounded_to(wide);
    BigComplex tg = trigamma_complex(BigComplex(BigReal(wide), xv), wide);
    BigReal z2 = zeta_int(2, wide);
    BigReal value = tg.norm2() - pow(xv, -4) + 2 * z2 / (xv * xv) - z2 * z2 - 6 * zeta_int(4, wide);
    return value.rounded_to(ctx);
}

}  // namespace detail

/// |psi'(ix)|^2 - x^(-4) + 2 zeta(2) x^(-2) - zeta(2)^2 - 6 zeta(4) for
/// x > 0. Below x = 1/2 a cancellation-free series form takes over; above,
/// the complex trigamma evaluation at slightly elevated precision.
inline BigReal mellin_integrand(const BigReal& x, const PrecisionContext& ctx) {
    if (!(x.sign() > 0)) throw std::domain_error("mellin_integrand: requires x > 0");
    BigReal half = BigReal(1, ctx) / 2;
    return x <= half ? detail::integrand_series(x, ctx) : detail::integrand_trigamma(x, ctx);
}

namespace detail {

/// Gauss-Legendre nodes and weights of fixed order 16 at context precision,
/// by Newton iteration on P_16 from Chebyshev initial guesses.
struct GaussLegendre {
    std::vector<BigReal> nodes;    // in (-1, 1)
    std::vector<BigReal> weights;

    static const GaussLegendre& get(const PrecisionContext& ctx) {
        static std::mutex mu;
        static std::map<std::pair<unsigned, unsigned>, GaussLegendre> table;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(ctx.digits(), ctx.guard_digits());
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        return table.emplace(key, compute(ctx)).first->second;
    }

  private:
    static constexpr int kOrder = 16;

    // P_n(x) and P_n'(x) by the three-term recurrence.
    static std::pair<BigReal, BigReal> legendre(const BigReal& x, const PrecisionContext& ctx) {
        BigReal p0(1, ctx);
        BigReal p1 = x;
        for (long k = 2; k <= kOrder; ++k) {
            BigReal p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        BigReal d = kOrder * (x * p1 - p0) / (x * x - 1);
        return {p1, d};
    }

    static GaussLegendre compute(const PrecisionContext& ctx) {
        GaussLegendre g;
        BigReal tol = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()), ctx);
        for (int i = 0; i < kOrder; ++i) {
            BigReal x = cos(pi(ctx) * (4 * i + 3) / (4 * kOrder + 2));
            for (int iter = 0; iter < 200; ++iter) {
                auto [p, d] = legendre(x, ctx);
                BigReal dx = p / d;
                x -= dx;
                if (abs(dx) < tol) break;
            }
            auto [p, d] = legendre(x, ctx);
            (void)p;
            g.nodes.push_back(x);
            g.weights.push_back(2 / ((1 - x * x) * d * d));
        }
        return g;
    }
};

using Integrand = std::function<BigReal(const BigReal&)>;

inline BigReal gl_panel(const Integrand& f, const BigReal& a, const BigReal& b,
                        const PrecisionContext& ctx) {
    const GaussLegendre& g = GaussLegendre::get(ctx);
    BigReal mid = (a + b) / 2;
    BigReal half = (b - a) / 2;
    BigReal acc(ctx);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        acc += g.weights[i] * f(mid + half * g.nodes[i]);
    }
    return acc * half;
}

inline BigReal adaptive_panel(const Integrand& f, const BigReal& a, const BigReal& b,
                              const BigReal& whole, const BigReal& tol, int depth,
                              unsigned long& panels, const PrecisionContext& ctx) {
    BigReal mid = (a + b) / 2;
    BigReal left = gl_panel(f, a, mid, ctx);
    BigReal right = gl_panel(f, mid, b, ctx);
    ++panels;
    if (depth >= 48 || abs(left + right - whole) < tol) {
        return left + right;
    }
    BigReal half_tol = tol / 2;
    return adaptive_panel(f, a, mid, left, half_tol, depth + 1, panels, ctx) +
           adaptive_panel(f, mid, b, right, half_tol, depth + 1, panels, ctx);
}

inline BigReal integrate(const Integrand& f, const BigReal& a, const BigReal& b, const BigReal& tol,
                         unsigned long& panels, const PrecisionContext& ctx) {
    BigReal whole = gl_panel(f, a, b, ctx);
    ++panels;
    return adaptive_panel(f, a, b, whole, tol, 0, panels, ctx);
}

struct MellinLhsResult {
    BigReal value;
    BigReal error_estimate;
    unsigned long quad_intervals;
};

/// Rational coefficients of B(u)^2 where B(u) = u + sum_k (-1)^k B_{2k} u^{2k+1}
/// carries the imaginary part of the trigamma asymptotic at ix; used for the
/// analytic tail beyond tail_cut. a_{2j} of the integrand's large-x expansion
/// is (B^2)_{2j} - 3/4 [j=2] plus 2 zeta(2) [j=1].
inline Rational bsquared_coefficient(unsigned j) {
    auto b = [](unsigned idx) {  // coefficient of u^idx in B(u), idx odd
        if (idx == 1) return Rational(1);
        unsigned k = (idx - 1) / 2;
        Rational v = bernoulli(2 * k);
        return k % 2 == 0 ? v : -v;
    };
    Rational acc;
    for (unsigned i = 1; i + 1 <= 2 * j; i += 2) {
        unsigned l = 2 * j - i;
        if (l % 2 == 1) acc += b(i) * b(l);
    }
    return acc;
}

inline MellinLhsResult mellin_lhs_impl(const BigReal& s_in, const PrecisionContext& ctx,
                                       const BigReal& tail_cut, const BigReal& quad_tol) {
    BigReal s = s_in.rounded_to(ctx);
    if (!(s > BigReal(0, ctx)) || !(s < BigReal(2, ctx))) {
        throw std::domain_error("mellin_lhs: the transform exists only in the strip 0 < s < 2");
    }
    if (!(tail_cut > BigReal(2, ctx))) {
        throw std::invalid_argument("mellin_lhs: tail_cut must exceed 2");
    }

    Integrand f = [&](const BigReal& x) { return pow(x, -s - 1) * mellin_integrand(x, ctx); };

    MellinLhsResult out{BigReal(ctx), BigReal(ctx), 0};
    BigReal slice = quad_tol / 4;

    // [1, tail_cut] in octaves
    {
        std::vector<BigReal> cuts;
        BigReal lo(1, ctx);
        while (lo < tail_cut) {
            cuts.push_back(lo);
            lo = lo * 2;
        }
        cuts.push_back(tail_cut);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            BigReal hi = cuts[i + 1] < tail_cut ? cuts[i + 1] : tail_cut;
            out.value += integrate(f, cuts[i], hi, slice / static_cast<long>(cuts.size()), out.quad_intervals, ctx);
        }
    }

    // (head_cut, 1] by dyadic descent; the remaining head is O(x^{2-s})
    {
        BigReal hi(1, ctx);
        BigReal two(2, ctx);
        for (unsigned long j = 0; j < 500; ++j) {
            BigReal lo = hi / 2;
            out.value += integrate(f, lo, hi, slice / static_cast<long>((j + 1) * (j + 2)), out.quad_intervals, ctx);
            hi = lo;
            // bound C x^{2-s}/(2-s) for the rest, with C estimated at the cut
            BigReal c_est = abs(mellin_integrand(hi, ctx)) / (hi * hi);
            BigReal head_bound = 2 * c_est * pow(hi, two - s) / (two - s);
            if (head_bound < slice) {
                out.error_estimate += head_bound;
                break;
            }
        }
    }

    // analytic tail beyond tail_cut: constant term, then the x^{-2j} terms of
    // the integrand's large-x expansion
    {
        BigReal z2 = zeta_int(2, ctx);
        BigReal c0 = -(z2 * z2 + 6 * zeta_int(4, ctx));
        out.value += c0 * pow(tail_cut, -s) / s;
        constexpr unsigned kTailTerms = 6;
        for (unsigned j = 1; j <= kTailTerms; ++j) {
            BigReal a2j(bsquared_coefficient(j), ctx);
            if (j == 1) a2j += 2 * z2;
            if (j == 2) a2j -= BigReal(Rational(3, 4), ctx);
            out.value += a2j * pow(tail_cut, -s - static_cast<long>(2 * j)) / (s + static_cast<long>(2 * j));
        }
        BigReal omitted(bsquared_coefficient(kTailTerms + 1), ctx);
        out.error_estimate += abs(omitted) * pow(tail_cut, -s - static_cast<long>(2 * kTailTerms + 2)) /
                              (s + static_cast<long>(2 * kTailTerms + 2));
        out.error_estimate += quad_tol;
    }

    return out;
}

inline BigReal default_quad_tol(const PrecisionContext& ctx) {
    long e = static_cast<long>(ctx.digits()) * 2 / 5;
    if (e < 10) e = 10;
    if (e > 20) e = 20;
    return pow10(-e, ctx);
}

}  // namespace detail

/// Left side of the transform: adaptive quadrature of
/// x^(-s-1) * mellin_integrand(x) over (0, tail_cut] plus the analytic tail.
inline BigReal mellin_lhs(const BigReal& s, const PrecisionContext& ctx, const BigReal& tail_cut) {
    return detail::mellin_lhs_impl(s, ctx, tail_cut, detail::default_quad_tol(ctx)).value;
}

inline BigReal mellin_lhs(const BigReal& s, const PrecisionContext& ctx) {
    return mellin_lhs(s, ctx, BigReal(50, ctx));
}

/// Residue side of the transform: pi / sin(pi s / 2) times the
/// chi-combination, chi in direct mode since s is not an integer. The
/// orientation of the right-half-plane contour makes this
/// -((s+1) chi_1(s+2) - chi_2(s+1)): that sign is the one consistent with
/// the even-power expansion of the regularized product (the pole of the
/// integrand's Mellin transform at s = 2n has residue -(-1)^n c_{2n}), and
/// the quadrature confirms it across the strip.
inline BigReal mellin_rhs(const BigReal& s_in, const PrecisionContext& ctx) {
    BigReal s = s_in.rounded_to(ctx);
    if (!(s > BigReal(0, ctx)) || !(s < BigReal(2, ctx))) {
        throw std::domain_error("mellin_rhs: the transform exists only in the strip 0 < s < 2");
    }
    BigReal prefactor = pi(ctx) / sin(pi(ctx) * s / 2);
    BigReal chi1 = detail::chi_direct(1, s + 2, ctx);
    BigReal chi2 = detail::chi_direct(2, s + 1, ctx);
    return prefactor * (chi2 - (s + 1) * chi1);
}

/// One verified sample of the transform identity at s inside the strip.
struct MellinSample {
    BigReal s;
    BigReal lhs;
    BigReal rhs;
    BigReal abs_residual;
    unsigned long quad_intervals = 0;
    BigReal tail_cut;
    bool pass = false;
};

/// Residual threshold for the quadrature-based confirmation.
inline BigReal mellin_threshold(const PrecisionContext& ctx) { return pow10(-8, ctx); }

inline MellinSample mellin_verify(const BigReal& s, const PrecisionContext& ctx,
                                  const BigReal& tail_cut) {
    detail::MellinLhsResult lhs = detail::mellin_lhs_impl(s, ctx, tail_cut, detail::default_quad_tol(ctx));
    MellinSample sample{s.rounded_to(ctx), lhs.value, mellin_rhs(s, ctx), BigReal(ctx),
                        lhs.quad_intervals, tail_cut, false};
    sample.abs_residual = abs(sample.lhs - sample.rhs);
    sample.pass = sample.abs_residual < mellin_threshold(ctx);
    return sample;
}

inline MellinSample mellin_verify(const BigReal& s, const PrecisionContext& ctx) {
    return mellin_verify(s, ctx, BigReal(50, ctx));
}

}  // namespace zetasum
