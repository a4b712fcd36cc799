#pragma once

#include <functional>

#include "qseries/series.hpp"

namespace qseries {

/* A family of series terms indexed by an integer. term(n, order_scaled)
 * returns the n-th summand exact up to the given order on its own lattice.
 * valuation_bound, when present, gives an exact lower bound on term(n)'s
 * lowest exponent; the engine then skips terms provably above the
 * truncation order and stops without guessing. Bounds must be convex along
 * each summation ray (all bounds in this library are quadratics with
 * positive leading coefficient). */
struct TermGenerator {
	std::function<QSeries(std::int64_t n, std::int64_t order_scaled)> term;
	std::function<Exponent(std::int64_t n)> valuation_bound; // optional
};

struct SumOptions {
	int window = 8; // consecutive no-support terms before heuristic stop
	std::int64_t index_cap = 1'000'000;
};

struct SumProvenance {
	bool heuristic = false; // true when any stop was window-based
	std::int64_t lo = 0;    // inclusive index range of evaluated terms
	std::int64_t hi = -1;   // empty range encoded as [0, -1]
};

struct SumResult {
	QSeries value;
	SumProvenance provenance;
};

/* Sum over n >= 0, truncated to order. With a valuation bound the engine
 * stops at the first index whose bound both exceeds the order and has
 * stopped decreasing (convexity then puts every later term above the
 * order); otherwise it stops after `window` consecutive terms with no
 * support at or below the order and marks the result heuristic.
 * ContractError if an evaluated term violates its bound or comes back with
 * too low an order; DivergenceError past index_cap. */
SumResult sum_unilateral(const TermGenerator &gen, std::int64_t scale,
                         std::int64_t order_scaled, const SumOptions &opts = {});

// Sum over n in Z: n = 0, +1, -1, +2, -2, ... with independent stopping per
// direction under the same rules.
SumResult sum_bilateral(const TermGenerator &gen, std::int64_t scale,
                        std::int64_t order_scaled, const SumOptions &opts = {});

} // namespace qseries
