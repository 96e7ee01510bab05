#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetasum/euler_sums.hpp"
#include "zetasum/laurent.hpp"

namespace zetasum {

/// One multiplicative atom of a zeta expression: zeta(m) with m >= 2, the
/// Euler-Mascheroni constant, an integer power of pi, or an Euler sum S(p,q).
struct ZetaAtom {
    enum class Kind { zeta, gamma, pi_power, euler_sum };

    Kind kind;
    int a = 0;
    int b = 0;

    static ZetaAtom zeta(int m) {
        if (m < 2) throw std::invalid_argument("ZetaAtom: zeta argument must be >= 2");
        return {Kind::zeta, m, 0};
    }
    static ZetaAtom gamma() { return {Kind::gamma, 0, 0}; }
    static ZetaAtom pi_power(int j) {
        if (j < 1) throw std::invalid_argument("ZetaAtom: pi power must be >= 1");
        return {Kind::pi_power, j, 0};
    }
    static ZetaAtom sum(int p, int q) {
        if (p < 1 || q < 2) throw std::invalid_argument("ZetaAtom: S(p,q) needs p >= 1, q >= 2");
        return {Kind::euler_sum, p, q};
    }

    BigReal evaluate(const PrecisionContext& ctx) const {
        switch (kind) {
            case Kind::zeta:
                return zeta_int(a, ctx);
            case Kind::gamma:
                return euler_gamma(ctx);
            case Kind::pi_power:
                return pow(pi(ctx), static_cast<long>(a));
            default:
                return euler_sum(static_cast<unsigned>(a), b, ctx);
        }
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::zeta:
                return "zeta(" + std::to_string(a) + ")";
            case Kind::gamma:
                return "gamma";
            case Kind::pi_power:
                return a == 1 ? "pi" : "pi^" + std::to_string(a);
            default:
                return "S(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    }

    friend auto operator<=>(const ZetaAtom&, const ZetaAtom&) = default;
};

/// Rational-linear combination of products of atoms, kept in sorted
/// canonical form so structural equality is decidable and reports print a
/// faithful transcription of what is being evaluated.
class ZetaExpression {
  public:
    struct Term {
        Rational coeff;
        std::vector<ZetaAtom> factors;
    };

    ZetaExpression() = default;

    ZetaExpression& add(Rational coeff, std::vector<ZetaAtom> factors = {}) {
        terms_.push_back({std::move(coeff), std::move(factors)});
        canonicalize();
        return *this;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend ZetaExpression operator+(const ZetaExpression& x, const ZetaExpression& y) {
        ZetaExpression r = x;
        r.terms_.insert(r.terms_.end(), y.terms_.begin(), y.terms_.end());
        r.canonicalize();
        return r;
    }

    friend ZetaExpression operator-(const ZetaExpression& x, const ZetaExpression& y) {
        return x + (y * Rational(-1));
    }

    friend ZetaExpression operator*(const ZetaExpression& x, const Rational& c) {
        ZetaExpression r = x;
        for (auto& t : r.terms_) t.coeff *= c;
        r.canonicalize();
        return r;
    }
    friend ZetaExpression operator*(const Rational& c, const ZetaExpression& x) { return x * c; }

    friend ZetaExpression operator*(const ZetaExpression& x, const ZetaExpression& y) {
        ZetaExpression r;
        for (const auto& tx : x.terms_) {
            for (const auto& ty : y.terms_) {
                Term t;
                t.coeff = tx.coeff * ty.coeff;
                t.factors = tx.factors;
                t.factors.insert(t.factors.end(), ty.factors.begin(), ty.factors.end());
                r.terms_.push_back(std::move(t));
            }
        }
        r.canonicalize();
        return r;
    }

    friend bool operator==(const ZetaExpression& x, const ZetaExpression& y) {
        if (x.terms_.size() != y.terms_.size()) return false;
        for (size_t i = 0; i < x.terms_.size(); ++i) {
            if (x.terms_[i].coeff != y.terms_[i].coeff || x.terms_[i].factors != y.terms_[i].factors) {
                return false;
            }
        }
        return true;
    }

    /// Replaces every occurrence of `target` (with multiplicity) by `repl`.
    ZetaExpression substitute(const ZetaAtom& target, const ZetaExpression& repl) const {
        ZetaExpression out;
        for (const auto& t : terms_) {
            ZetaExpression piece;
            Term rest;
            rest.coeff = t.coeff;
            unsigned count = 0;
            for (const auto& f : t.factors) {
                if (f == target) {
                    ++count;
                } else {
                    rest.factors.push_back(f);
                }
            }
            piece.terms_.push_back(std::move(rest));
            piece.canonicalize();
            for (unsigned i = 0; i < count; ++i) piece = piece * repl;
            out.terms_.insert(out.terms_.end(), piece.terms_.begin(), piece.terms_.end());
        }
        out.canonicalize();
        return out;
    }

    BigReal evaluate(const PrecisionContext& ctx) const {
        BigReal acc(ctx);
        for (const auto& t : terms_) {
            BigReal prod(t.coeff, ctx);
            for (const auto& f : t.factors) prod *= f.evaluate(ctx);
            acc += prod;
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < terms_.size(); ++i) {
            const Term& t = terms_[i];
            Rational c = t.coeff;
            if (i == 0) {
                if (c.sign() < 0) {
                    out += "-";
                    c = -c;
                }
            } else {
                out += c.sign() < 0 ? " - " : " + ";
                if (c.sign() < 0) c = -c;
            }
            bool coeff_is_one = c == Rational(1) && !t.factors.empty();
            if (!coeff_is_one) out += c.to_string();
            for (size_t j = 0; j < t.factors.size(); ++j) {
                if (j > 0 || !coeff_is_one) out += "*";
                out += t.factors[j].to_string();
            }
        }
        return out;
    }

  private:
    void canonicalize() {
        for (auto& t : terms_) std::sort(t.factors.begin(), t.factors.end());
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return x.factors < y.factors; });
        std::vector<Term> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().factors == t.factors) {
                merged.back().coeff += t.coeff;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
        terms_ = std::move(merged);
    }

    std::vector<Term> terms_;
};

/// Outcome of checking one identity instance numerically.
struct VerificationReport {
    std::string identity_id;
    long n = 0;  // sweep index, or the degree for coefficient checks
    unsigned digits = 0;
    BigReal lhs;
    BigReal rhs;
    BigReal abs_residual;
    BigReal threshold;
    bool pass = false;
    long elapsed_ms = 0;
};

/// 10^(-4/5 * digits): comfortably above roundoff at working precision,
/// far below anything an incorrectly transcribed identity could reach.
inline BigReal default_threshold(const PrecisionContext& ctx) {
    return pow10(-static_cast<long>(ctx.digits() * 4 / 5), ctx);
}

enum class IdentityFamily { P1, P1a, P2, P3, P4, P5, Euler19, Eq11, Eq12, Eq23, Eq24, Eq25 };

struct Identity {
    std::string id;
    IdentityFamily family;
    long n = 0;
    ZetaExpression lhs;
    ZetaExpression rhs;
};

namespace detail {

inline ZetaExpression zexpr(Rational c, std::vector<ZetaAtom> factors = {}) {
    ZetaExpression e;
    e.add(std::move(c), std::move(factors));
    return e;
}

inline ZetaExpression chi0_expr(int s) {
    ZetaExpression e;
    e.add(Rational(1), {ZetaAtom::sum(1, s)});
    e.add(Rational(-1), {ZetaAtom::gamma(), ZetaAtom::zeta(s)});
    e.add(Rational(-1), {ZetaAtom::zeta(s + 1)});
    return e;
}

inline ZetaExpression chi1_expr(int s) {
    ZetaExpression e;
    e.add(Rational(1), {ZetaAtom::zeta(2), ZetaAtom::zeta(s)});
    e.add(Rational(-1), {ZetaAtom::sum(2, s)});
    e.add(Rational(1), {ZetaAtom::zeta(s + 2)});
    return e;
}

inline ZetaExpression chi2_expr(int s) {
    ZetaExpression e;
    e.add(Rational(-2), {ZetaAtom::zeta(3), ZetaAtom::zeta(s)});
    e.add(Rational(2), {ZetaAtom::sum(3, s)});
    e.add(Rational(-2), {ZetaAtom::zeta(s + 3)});
    return e;
}

}  // namespace detail

/// Exact formal transcription of the summation rules, with the printed
/// index ranges. Sweep families check their lower bound on n; the fixed
/// numbered equalities ignore n.
inline Identity build_identity(IdentityFamily family, long n = 0) {
    using detail::zexpr;
    auto Z = [](int m) { return ZetaAtom::zeta(m); };
    auto S = [](int p, int q) { return ZetaAtom::sum(p, q); };

    Identity out;
    out.family = family;
    out.n = n;

    auto require = [&](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("build_identity: ") + what);
    };

    switch (family) {
        case IdentityFamily::P1: {
            require(n >= 1, "P1 requires n >= 1");
            out.id = "p1";
            int nn = static_cast<int>(n);
            ZetaExpression lhs;
            for (int l = 1; l <= 2 * nn - 1; ++l) {
                Rational c(static_cast<long>(l + 1) * (2 * nn - l + 1));
                if (l % 2 != 0) c = -c;
                lhs.add(c, {Z(l + 2), Z(2 * nn - l + 2)});
            }
            ZetaExpression rhs;
            rhs.add(Rational(4), {Z(3), Z(2 * nn + 1)});
            rhs.add(Rational(-2 * (2L * nn + 1)), {S(2, 2 * nn + 2)});
            rhs.add(Rational(-4), {S(3, 2 * nn + 1)});
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::P1a: {
            require(n >= 2, "P1a requires n >= 2");
            out.id = "p1a";
            int nn = static_cast<int>(n);
            ZetaExpression lhs;
            for (int l = 2; l <= 2 * nn - 2; ++l) {
                Rational c(static_cast<long>(l + 1) * (2 * nn - l + 1));
                if (l % 2 != 0) c = -c;
                lhs.add(c, {Z(l + 2), Z(2 * nn - l + 2)});
            }
            ZetaExpression rhs;
            rhs.add(Rational(4 * (2L * nn + 1)), {Z(3), Z(2 * nn + 1)});
            rhs.add(Rational(-2 * (2L * nn + 1)), {S(2, 2 * nn + 2)});
            rhs.add(Rational(-4), {S(3, 2 * nn + 1)});
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::P2: {
            require(n >= 1, "P2 requires n >= 1");
            out.id = "p2";
            int nn = static_cast<int>(n);
            out.lhs = zexpr(Rational(2L * nn), {S(1, 2 * nn + 1)});
            ZetaExpression rhs;
            for (int l = 1; l <= 2 * nn - 1; ++l) {
                Rational c(static_cast<long>(2 * nn - l));
                if (l % 2 == 0) c = -c;  // (-1)^(l-1)
                rhs.add(c, {Z(l + 1), Z(2 * nn - l + 1)});
            }
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::P3: {
            require(n >= 1, "P3 requires n >= 1");
            out.id = "p3";
            int nn = static_cast<int>(n);
            ZetaExpression lhs;
            for (int l = 1; l <= 2 * nn - 1; ++l) {
                Rational c = Rational(static_cast<long>(2 * nn - l)) / Rational(nn);
                if (l % 2 != 0) c = -c;
                lhs.add(c, {Z(l + 1), Z(2 * nn - l + 1)});
            }
            ZetaExpression rhs;
            for (int k = 1; k <= 2 * nn - 1; ++k) {
                rhs.add(Rational(1), {Z(k + 1), Z(2 * nn + 1 - k)});
            }
            rhs.add(Rational(-(2L * nn + 3)), {Z(2 * nn + 2)});
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::P4: {
            require(n >= 1, "P4 requires n >= 1");
            out.id = "p4";
            int nn = static_cast<int>(n);
            ZetaExpression lhs;
            for (int l = 2; l <= 2 * nn - 1; ++l) {
                Rational c(static_cast<long>(2 * nn - l + 1));
                if (l % 2 == 0) c = -c;  // (-1)^(l-1)
                lhs.add(c, {Z(l + 1), Z(2 * nn - l + 2)});
            }
            ZetaExpression rhs;
            rhs.add(Rational(2L * nn + 1), {S(1, 2 * nn + 2)});
            rhs.add(Rational(2), {S(2, 2 * nn + 1)});
            rhs.add(Rational(-(2L * nn + 1)), {Z(2), Z(2 * nn + 1)});
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::P5: {
            require(n >= 2, "P5 requires n >= 2");
            out.id = "p5";
            int nn = static_cast<int>(n);
            out.lhs = zexpr(Rational(2), {S(1, nn)});
            ZetaExpression rhs;
            rhs.add(Rational(nn + 2L), {Z(nn + 1)});
            for (int k = 1; k <= nn - 2; ++k) {
                rhs.add(Rational(-1), {Z(nn - k), Z(k + 1)});
            }
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::Euler19: {
            require(n >= 2, "Euler19 requires m >= 2");
            out.id = "euler19";
            int m = static_cast<int>(n);
            ZetaExpression lhs;
            for (int k = 1; k <= m - 2; ++k) {
                lhs.add(Rational(1), {Z(k + 1), Z(m - k)});
            }
            ZetaExpression rhs;
            rhs.add(Rational(m + 2L), {Z(m + 1)});
            rhs.add(Rational(-2), {S(1, m)});
            out.lhs = lhs;
            out.rhs = rhs;
            break;
        }
        case IdentityFamily::Eq11:
            out.id = "eq11";
            out.n = 0;
            out.lhs = zexpr(Rational(3), {S(2, 4)}) + zexpr(Rational(2), {S(3, 3)});
            out.rhs = zexpr(Rational(4), {Z(3), Z(3)});
            break;
        case IdentityFamily::Eq12:
            out.id = "eq12";
            out.n = 0;
            out.lhs = zexpr(Rational(10), {S(2, 6)}) + zexpr(Rational(4), {S(3, 5)});
            out.rhs = zexpr(Rational(20), {Z(3), Z(5)}) + zexpr(Rational(-9), {Z(4), Z(4)});
            break;
        case IdentityFamily::Eq23:
            out.id = "eq23";
            out.n = 0;
            out.lhs = zexpr(Rational(3), {S(1, 4)}) + zexpr(Rational(2), {S(2, 3)});
            out.rhs = zexpr(Rational(3), {Z(2), Z(3)});
            break;
        case IdentityFamily::Eq24:
            out.id = "eq24";
            out.n = 0;
            out.lhs = zexpr(Rational(5), {S(1, 6)}) + zexpr(Rational(2), {S(2, 5)});
            out.rhs = zexpr(Rational(5), {Z(2), Z(5)}) + zexpr(Rational(-1), {Z(3), Z(4)});
            break;
        case IdentityFamily::Eq25:
            out.id = "eq25";
            out.n = 0;
            out.lhs = zexpr(Rational(2), {S(2, 3)});
            out.rhs = zexpr(Rational(6), {Z(2), Z(3)}) + zexpr(Rational(-9), {Z(5)});
            break;
    }
    return out;
}

/// Evaluates both sides and compares the residual against the threshold.
inline VerificationReport verify(const Identity& identity, const PrecisionContext& ctx,
                                 const BigReal& threshold) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport report{identity.id, identity.n, ctx.digits(), BigReal(ctx), BigReal(ctx),
                              BigReal(ctx),  threshold,  false,       0};
    try {
        report.lhs = identity.lhs.evaluate(ctx);
        report.rhs = identity.rhs.evaluate(ctx);
    } catch (const std::domain_error& e) {
        throw std::domain_error("while verifying " + identity.id + " (n=" + std::to_string(identity.n) +
                                "): " + e.what());
    }
    report.abs_residual = abs(report.lhs - report.rhs);
    report.pass = report.abs_residual < threshold;
    auto stop = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    return report;
}

inline VerificationReport verify(const Identity& identity, const PrecisionContext& ctx) {
    return verify(identity, ctx, default_threshold(ctx));
}

enum class Expansion { Eq7, Eq13, Eq14, Eq15, Eq16, Eq26 };

namespace detail {

/// Expected coefficient of x^d in the named expansion, as a formal
/// expression: the principal/constant terms come from the regularization and
/// the positive degrees from the chi-based right sides.
inline ZetaExpression expansion_expected(Expansion which, int d) {
    using detail::chi0_expr;
    using detail::chi1_expr;
    using detail::chi2_expr;
    ZetaExpression zero;
    switch (which) {
        case Expansion::Eq7: {
            if (d == -4) return zexpr(Rational(1));
            if (d == -2) return zexpr(Rational(2), {ZetaAtom::zeta(2)});
            if (d == 0) {
                return zexpr(Rational(1), {ZetaAtom::zeta(2), ZetaAtom::zeta(2)}) +
                       zexpr(Rational(6), {ZetaAtom::zeta(4)});
            }
            if (d > 0 && d % 2 == 0) {
                int nn = d / 2;
                return Rational(2L * (2 * nn + 1)) * chi1_expr(2 * nn + 2) -
                       Rational(2) * chi2_expr(2 * nn + 1);
            }
            return zero;
        }
        case Expansion::Eq13: {
            if (d == -3) return zexpr(Rational(2));
            if (d > 0 && d % 2 == 1) {
                int nn = (d + 1) / 2;
                return Rational(-4L * nn) * chi0_expr(2 * nn + 1);
            }
            return zero;
        }
        case Expansion::Eq14: {
            if (d == -2) return zexpr(Rational(-2), {ZetaAtom::gamma()});
            if (d == 0) {
                return zexpr(Rational(-2), {ZetaAtom::gamma(), ZetaAtom::zeta(2)}) +
                       zexpr(Rational(-6), {ZetaAtom::zeta(3)});
            }
            if (d > 0 && d % 2 == 0) {
                int nn = d / 2;
                return Rational(-4) * chi1_expr(2 * nn + 1) +
                       Rational(2L * (2 * nn + 1)) * chi0_expr(2 * nn + 2);
            }
            return zero;
        }
        case Expansion::Eq15:
        case Expansion::Eq16: {
            bool is15 = which == Expansion::Eq15;
            if (d == -3) return zexpr(Rational(is15 ? 1 : -1));
            if (d == -2) return zexpr(Rational(-1), {ZetaAtom::gamma()});
            if (d == 0) {
                return zexpr(Rational(-1), {ZetaAtom::gamma(), ZetaAtom::zeta(2)}) +
                       zexpr(Rational(-3), {ZetaAtom::zeta(3)});
            }
            if (d > 0 && d % 2 == 0) {
                int nn = d / 2;
                return Rational(-2) * chi1_expr(2 * nn + 1) +
                       Rational(2L * nn + 1) * chi0_expr(2 * nn + 2);
            }
            if (d > 0 && d % 2 == 1) {
                int nn = (d + 1) / 2;
                return Rational(is15 ? -2L * nn : 2L * nn) * chi0_expr(2 * nn + 1);
            }
            return zero;
        }
        default: {  // Eq26
            if (d == -2) return zexpr(Rational(1));
            if (d == -1) return zexpr(Rational(2), {ZetaAtom::gamma()});
            if (d == 0) {
                return zexpr(Rational(1), {ZetaAtom::gamma(), ZetaAtom::gamma()}) +
                       zexpr(Rational(-2), {ZetaAtom::zeta(2)});
            }
            if (d > 0) {
                Rational sign(d % 2 == 0 ? 1 : -1);
                ZetaExpression e;
                e.add(sign * Rational(d + 1L), {ZetaAtom::zeta(d + 2)});
                e.add(sign * Rational(2), {ZetaAtom::gamma(), ZetaAtom::zeta(d + 1)});
                e.add(sign * Rational(-2), {ZetaAtom::sum(1, d + 1)});
                return e;
            }
            return zero;
        }
    }
}

inline const char* expansion_id(Expansion which) {
    switch (which) {
        case Expansion::Eq7:
            return "eq7";
        case Expansion::Eq13:
            return "eq13";
        case Expansion::Eq14:
            return "eq14";
        case Expansion::Eq15:
            return "eq15";
        case Expansion::Eq16:
            return "eq16";
        default:
            return "eq26";
    }
}

/// Left side of the expansion as a Laurent product of the psi / trigamma
/// series, valid through `order`.
inline LaurentSeries expansion_product(Expansion which, int order, const PrecisionContext& ctx) {
    switch (which) {
        case Expansion::Eq7: {
            LaurentSeries t = trigamma_series(order + 2, ctx);
            return series_mul(t, negate_argument(t));
        }
        case Expansion::Eq13: {
            LaurentSeries t = trigamma_series(order + 1, ctx);
            LaurentSeries p = psi_series(order + 2, ctx);
            return series_mul(t, negate_argument(p)) - series_mul(p, negate_argument(t));
        }
        case Expansion::Eq14: {
            LaurentSeries t = trigamma_series(order + 1, ctx);
            LaurentSeries p = psi_series(order + 2, ctx);
            return series_mul(t, negate_argument(p)) + series_mul(p, negate_argument(t));
        }
        case Expansion::Eq15: {
            LaurentSeries t = trigamma_series(order + 1, ctx);
            LaurentSeries p = psi_series(order + 2, ctx);
            return series_mul(t, negate_argument(p));
        }
        case Expansion::Eq16: {
            LaurentSeries t = trigamma_series(order + 1, ctx);
            LaurentSeries p = psi_series(order + 2, ctx);
            return series_mul(p, negate_argument(t));
        }
        default: {
            LaurentSeries p = psi_series(order + 1, ctx);
            return series_mul(p, p);
        }
    }
}

}  // namespace detail

/// Builds the expansion's left side by Laurent products of the psi/trigamma
/// constructors and compares it degree by degree (principal part included)
/// against the chi-based right side evaluated in closed form.
inline std::vector<VerificationReport> coefficient_check(Expansion which, int order,
                                                         const PrecisionContext& ctx,
                                                         const BigReal& threshold) {
    if (order < 2) throw std::invalid_argument("coefficient_check: order must be >= 2");
    LaurentSeries lhs = detail::expansion_product(which, order, ctx);
    std::vector<VerificationReport> out;
    for (int d = lhs.min_deg(); d <= order; ++d) {
        auto start = std::chrono::steady_clock::now();
        BigReal lhs_c = lhs.coefficient(d);
        BigReal rhs_c = detail::expansion_expected(which, d).evaluate(ctx);
        VerificationReport r{detail::expansion_id(which),
                             d,
                             ctx.digits(),
                             lhs_c,
                             rhs_c,
                             abs(lhs_c - rhs_c),
                             threshold,
                             false,
                             0};
        r.pass = r.abs_residual < threshold;
        auto stop = std::chrono::steady_clock::now();
        r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<VerificationReport> coefficient_check(Expansion which, int order,
                                                         const PrecisionContext& ctx) {
    return coefficient_check(which, order, ctx, default_threshold(ctx));
}

}  // namespace zetasum
