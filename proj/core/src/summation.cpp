#include "qseries/summation.hpp"

#include <optional>

namespace qseries {

namespace {

/* Accumulates one ray n = start, start+dir, start+2*dir, ... into acc.
 * Returns the evaluated index range along the ray. */
struct RayState {
	std::optional<std::int64_t> first_eval;
	std::int64_t last_eval = 0;
	bool heuristic = false;
};

RayState run_ray(const TermGenerator &gen, std::int64_t start, std::int64_t dir, QSeries &acc,
                 std::int64_t scale, std::int64_t order_scaled, const SumOptions &opts) {
	if (!gen.term)
		throw UsageError("summation over an empty generator");
	RayState st;
	Exponent order(order_scaled, scale);
	std::optional<Exponent> prev_bound;
	int idle = 0;
	for (std::int64_t i = 0;; ++i) {
		if (i > opts.index_cap)
			throw DivergenceError("summation passed " + std::to_string(opts.index_cap) +
			                      " terms without terminating");
		std::int64_t n = start + dir * i;
		if (gen.valuation_bound) {
			Exponent vb = gen.valuation_bound(n);
			if (vb > order) {
				// Convex bound: once it exceeds the order without
				// decreasing, every later term lies above it too.
				if (prev_bound && vb >= *prev_bound)
					return st;
				prev_bound = vb;
				continue; // provably no support at or below order
			}
			prev_bound = vb;
			QSeries t = gen.term(n, order_scaled);
			if (t.order() < order)
				throw ContractError("term at index " + std::to_string(n) +
				                    " has order " + t.order().str() +
				                    ", below the requested " + order.str());
			if (!t.is_zero() && t.min_exp() < vb)
				throw ContractError("term at index " + std::to_string(n) +
				                    " has exponent " + t.min_exp().str() +
				                    " below its declared bound " + vb.str());
			if (!st.first_eval)
				st.first_eval = n;
			st.last_eval = n;
			acc = add(acc, t);
			continue;
		}
		QSeries t = gen.term(n, order_scaled);
		if (t.order() < order)
			throw ContractError("term at index " + std::to_string(n) + " has order " +
			                    t.order().str() + ", below the requested " + order.str());
		if (!st.first_eval)
			st.first_eval = n;
		st.last_eval = n;
		if (t.is_zero() || t.min_exp() > order) {
			if (++idle >= opts.window) {
				st.heuristic = true;
				return st;
			}
			continue;
		}
		idle = 0;
		acc = add(acc, t);
	}
}

} // namespace

SumResult sum_unilateral(const TermGenerator &gen, std::int64_t scale,
                         std::int64_t order_scaled, const SumOptions &opts) {
	QSeries acc = QSeries::zero(scale, order_scaled);
	RayState st = run_ray(gen, 0, 1, acc, scale, order_scaled, opts);
	SumProvenance prov;
	prov.heuristic = st.heuristic;
	if (st.first_eval) {
		prov.lo = *st.first_eval;
		prov.hi = st.last_eval;
	}
	return {std::move(acc), prov};
}

SumResult sum_bilateral(const TermGenerator &gen, std::int64_t scale,
                        std::int64_t order_scaled, const SumOptions &opts) {
	QSeries acc = QSeries::zero(scale, order_scaled);
	RayState pos = run_ray(gen, 0, 1, acc, scale, order_scaled, opts);
	RayState neg = run_ray(gen, -1, -1, acc, scale, order_scaled, opts);
	SumProvenance prov;
	prov.heuristic = pos.heuristic || neg.heuristic;
	if (pos.first_eval || neg.first_eval) {
		// The negative ray walks downward, so its last index is its low end.
		prov.lo = neg.first_eval ? neg.last_eval
		                         : *pos.first_eval;
		prov.hi = pos.first_eval ? pos.last_eval
		                         : *neg.first_eval;
	}
	return {std::move(acc), prov};
}

} // namespace qseries
