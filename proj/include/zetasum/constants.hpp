#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "zetasum/bernoulli.hpp"
#include "zetasum/bigreal.hpp"
#include "zetasum/euler_maclaurin.hpp"

namespace zetasum {

namespace detail {

using ConstKey = std::pair<unsigned, unsigned>;  // (digits, guard_digits)

template <typename Key>
class MemoTable {
  public:
    template <typename Fn>
    BigReal get_or_compute(const Key& key, Fn&& fn) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        BigReal value = fn();
        std::lock_guard<std::mutex> lock(mu_);
        return table_.try_emplace(key, std::move(value)).first->second;
    }

  private:
    std::mutex mu_;
    std::map<Key, BigReal> table_;
};

inline ConstKey key_of(const PrecisionContext& ctx) { return {ctx.digits(), ctx.guard_digits()}; }

/// Taylor series for atan(1/m), m a small positive integer.
inline BigReal atan_inverse_int(unsigned long m, const PrecisionContext& ctx) {
    BigReal target = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()) - 3, ctx);
    BigReal t = 1 / BigReal(static_cast<long>(m), ctx);
    BigReal t2 = t * t;
    BigReal power = t;
    BigReal sum = t;
    for (unsigned long j = 1;; ++j) {
        power *= t2;
        BigReal term = power / static_cast<long>(2 * j + 1);
        if (j % 2 == 1) {
            sum -= term;
        } else {
            sum += term;
        }
        if (term < target) break;
        if (j > 2'000'000) throw std::runtime_error("atan series did not converge");
    }
    return sum;
}

inline unsigned em_max_terms(const PrecisionContext& ctx) {
    unsigned d = ctx.digits() + ctx.guard_digits();
    return d / 2 > 64 ? d / 2 : 64;
}

}  // namespace detail

/// pi by the Machin formula 16 atan(1/5) - 4 atan(1/239).
inline BigReal pi(const PrecisionContext& ctx) {
    static detail::MemoTable<detail::ConstKey> memo;
    return memo.get_or_compute(detail::key_of(ctx), [&] {
        return 16 * detail::atan_inverse_int(5, ctx) - 4 * detail::atan_inverse_int(239, ctx);
    });
}

/// Euler-Mascheroni constant via H_N - ln N - 1/(2N) + sum_k B_{2k}/(2k N^{2k}),
/// with N doubled until the first omitted correction is below the guard target.
inline BigReal euler_gamma(const PrecisionContext& ctx) {
    static detail::MemoTable<detail::ConstKey> memo;
    return memo.get_or_compute(detail::key_of(ctx), [&] {
        BigReal target = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()) - 2, ctx);
        unsigned max_terms = detail::em_max_terms(ctx);
        unsigned long n = ctx.digits() > 50 ? ctx.digits() : 50;

        for (;; n *= 2) {
            if (n > (1ul << 22)) throw std::runtime_error("euler_gamma: cutoff overflow");
            // probe: does the correction series reach the target at this N?
            BigReal n_real(static_cast<long>(n), ctx);
            BigReal inv_n2 = 1 / (n_real * n_real);
            BigReal npow = inv_n2;
            BigReal prev(ctx);
            bool ok = false;
            unsigned terms = 0;
            for (unsigned k = 1; k <= max_terms; ++k) {
                BigReal term = BigReal(bernoulli(2 * k) / Rational(2 * static_cast<long>(k)), ctx) * npow;
                BigReal mag = abs(term);
                if (k > 1 && mag > prev) break;
                terms = k;
                if (mag < target) {
                    ok = true;
                    break;
                }
                prev = mag;
                npow *= inv_n2;
            }
            if (!ok) continue;

            BigReal harmonic(ctx);
            for (unsigned long k = 1; k <= n; ++k) harmonic += 1 / BigReal(static_cast<long>(k), ctx);

            BigReal gamma = harmonic - log(n_real) - 1 / (2 * n_real);
            npow = inv_n2;
            for (unsigned k = 1; k <= terms; ++k) {
                gamma += BigReal(bernoulli(2 * k) / Rational(2 * static_cast<long>(k)), ctx) * npow;
                npow *= inv_n2;
            }
            return gamma;
        }
    });
}

/// zeta(sigma) for real sigma > 1 + 10^-3, by direct summation plus the
/// Euler-Maclaurin power tail. The cutoff doubles until the first omitted
/// correction is below 10^(-digits-guard).
inline BigReal zeta_real(const BigReal& sigma, const PrecisionContext& ctx) {
    BigReal lower = 1 + pow10(-3, ctx);
    if (!(sigma > lower)) {
        throw std::domain_error("zeta_real: requires sigma > 1 + 10^-3");
    }
    BigReal s = sigma.rounded_to(ctx);
    BigReal target = pow10(-static_cast<long>(ctx.digits() + ctx.guard_digits()), ctx);
    unsigned max_terms = detail::em_max_terms(ctx);

    unsigned long n = ctx.digits() > 50 ? ctx.digits() : 50;
    for (;; n *= 2) {
        if (n > (1ul << 22)) throw std::runtime_error("zeta_real: cutoff overflow");
        detail::EmTail tail = detail::power_tail(s, n, target, max_terms);
        if (!tail.converged) continue;
        BigReal partial(ctx);
        for (unsigned long k = 1; k < n; ++k) {
            partial += pow(BigReal(static_cast<long>(k), ctx), -s);
        }
        return partial + tail.value;
    }
}

/// zeta at an integer n >= 2. Even arguments use the Bernoulli relation
/// zeta(2m) = (-1)^(m-1) (2 pi)^(2m) B_{2m} / (2 (2m)!); odd arguments fall
/// through to the real-argument engine.
inline BigReal zeta_int(long n, const PrecisionContext& ctx) {
    if (n < 2) {
        throw std::invalid_argument("zeta_int: requires n >= 2 (no analytic continuation)");
    }
    static detail::MemoTable<std::tuple<long, unsigned, unsigned>> memo;
    return memo.get_or_compute({n, ctx.digits(), ctx.guard_digits()}, [&] {
        if (n % 2 == 0) {
            long m = n / 2;
            Rational coeff = bernoulli(static_cast<unsigned>(n)) / (Rational(2) * Rational::factorial(static_cast<unsigned long>(n)));
            if (m % 2 == 0) coeff = -coeff;
            return BigReal(coeff, ctx) * pow(2 * pi(ctx), n);
        }
        return zeta_real(BigReal(n, ctx), ctx);
    });
}

}  // namespace zetasum
