#pragma once

#include <mutex>
#include <stdexcept>
#include <vector>

#include "zetasum/rational.hpp"

namespace zetasum {

namespace detail {

/// Shared table of B_0, B_1, B_2, ... (B_1 = -1/2), grown on demand under a
/// lock so parallel identity sweeps can share it.
class BernoulliCache {
  public:
    static BernoulliCache& instance() {
        static BernoulliCache cache;
        return cache;
    }

    Rational get(unsigned order) {
        std::lock_guard<std::mutex> lock(mu_);
        while (table_.size() <= order) {
            // Defining recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0 solved for B_m.
            unsigned m = static_cast<unsigned>(table_.size());
            Rational acc;
            for (unsigned j = 0; j < m; ++j) {
                acc += Rational::binomial(m + 1, j) * table_[j];
            }
            table_.push_back(-acc / Rational(static_cast<long>(m) + 1));
        }
        return table_[order];
    }

  private:
    BernoulliCache() {
        table_.push_back(Rational(1));
        table_.push_back(Rational(-1, 2));
    }

    std::mutex mu_;
    std::vector<Rational> table_;
};

/// B_order with no parity restriction (internal callers want B_1 and the
/// zero odd values during recurrence checks).
inline Rational bernoulli_any(unsigned order) { return BernoulliCache::instance().get(order); }

}  // namespace detail

/// Exact Bernoulli number B_order for even order (or order 1, giving -1/2).
/// Other odd orders are rejected: those values are identically zero and a
/// request for one is almost always an index bug.
inline Rational bernoulli(unsigned order) {
    if (order % 2 != 0 && order > 1) {
        throw std::invalid_argument("bernoulli: odd order > 1 requested (B_odd = 0 beyond B_1)");
    }
    return detail::bernoulli_any(order);
}

/// Materialized list of B_0, B_2, ..., B_{2K}.
struct BernoulliTable {
    std::vector<Rational> entries;

    static BernoulliTable up_to(unsigned max_even_order) {
        BernoulliTable t;
        for (unsigned k = 0; k <= max_even_order; k += 2) {
            t.entries.push_back(bernoulli(k));
        }
        return t;
    }
};

}  // namespace zetasum
