#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "zetasum/bigreal.hpp"
#include "zetasum/rational.hpp"

namespace zetasum {

namespace detail {

/// Divide-and-conquer exact sum of 1/l^k over [lo, hi]; keeps operand sizes
/// balanced so the gcd work stays subquadratic in n.
inline Rational harmonic_range(unsigned long lo, unsigned long hi, unsigned k) {
    if (lo == hi) {
        return Rational(1) / Rational::pow(Rational(static_cast<long>(lo)), static_cast<long>(k));
    }
    unsigned long mid = lo + (hi - lo) / 2;
    return harmonic_range(lo, mid, k) + harmonic_range(mid + 1, hi, k);
}

inline constexpr unsigned long kHarmonicExactLimit = 10'000;

}  // namespace detail

/// Exact generalized harmonic number H_n^(k) = sum_{l=1}^{n} l^(-k), with
/// H_0^(k) = 0. The exact path is capped at n = 10^4: beyond that the
/// denominators explode and the streaming BigReal path is the right tool.
inline Rational harmonic(unsigned long n, unsigned k) {
    if (k == 0) throw std::invalid_argument("harmonic: power k must be >= 1");
    if (n > detail::kHarmonicExactLimit) {
        throw std::invalid_argument("harmonic: exact path capped at n = 10^4; use harmonic_stream");
    }
    if (n == 0) return Rational(0);
    return detail::harmonic_range(1, n, k);
}

/// Incremental H_n^(k) in context precision: H_n = H_{n-1} + n^(-k).
/// The workhorse behind Euler-sum partial sums, where exact rationals
/// would blow up.
class HarmonicStream {
  public:
    HarmonicStream(unsigned k, const PrecisionContext& ctx) : k_(k), n_(0), value_(ctx) {
        if (k == 0) throw std::invalid_argument("HarmonicStream: power k must be >= 1");
    }

    /// Advances to the next index and returns (n, H_n^(k)).
    std::pair<unsigned long, BigReal> next() {
        ++n_;
        value_ += pow_int(n_, -static_cast<long>(k_), value_.context());
        return {n_, value_};
    }

    unsigned long n() const { return n_; }
    const BigReal& value() const { return value_; }

  private:
    unsigned k_;
    unsigned long n_;
    BigReal value_;
};

/// Materialized prefix sequence (1, H_1^(k)), ..., (n_max, H_{n_max}^(k)).
inline std::vector<std::pair<unsigned long, BigReal>> harmonic_stream(unsigned k, unsigned long n_max,
                                                                      const PrecisionContext& ctx) {
    if (n_max < 1) throw std::invalid_argument("harmonic_stream: n_max must be >= 1");
    HarmonicStream stream(k, ctx);
    std::vector<std::pair<unsigned long, BigReal>> out;
    out.reserve(n_max);
    for (unsigned long i = 0; i < n_max; ++i) out.push_back(stream.next());
    return out;
}

}  // namespace zetasum
