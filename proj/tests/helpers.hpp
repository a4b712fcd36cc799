#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include <qseries/series.hpp>

namespace qtest {

using namespace qseries;

// Series from (coefficient, scaled exponent position) pairs.
inline QSeries poly(std::initializer_list<std::pair<long, std::int64_t>> terms,
					std::int64_t scale, std::int64_t order_scaled) {
	std::vector<std::pair<Rational, Exponent>> v;
	v.reserve(terms.size());
	for (const auto &[c, e] : terms)
		v.emplace_back(Rational(c), Exponent(e, scale));
	return QSeries::from_terms(v, scale, order_scaled);
}

// Coefficient-wise equality up to the deepest order both operands reach.
inline bool same(const QSeries &a, const QSeries &b) {
	std::int64_t s = lcm64(a.scale(), b.scale());
	std::int64_t bound =
		std::min(a.order_scaled() * (s / a.scale()), b.order_scaled() * (s / b.scale()));
	return equal_up_to(a, b, Exponent(bound, s)).equal;
}

inline QSeries random_poly(std::mt19937_64 &rng, std::int64_t scale, std::int64_t order_scaled,
						   int terms = 6, std::int64_t max_exp = 8) {
	std::uniform_int_distribution<long> coeff(-3, 3);
	std::uniform_int_distribution<std::int64_t> expo(0, max_exp);
	std::vector<std::pair<Rational, Exponent>> v;
	for (int i = 0; i < terms; ++i) {
		long c = coeff(rng);
		if (c != 0)
			v.emplace_back(Rational(c), Exponent(expo(rng)));
	}
	return QSeries::from_terms(v, scale, order_scaled);
}

inline QSeries random_nonzero_poly(std::mt19937_64 &rng, std::int64_t scale,
								   std::int64_t order_scaled, int terms = 6,
								   std::int64_t max_exp = 8) {
	for (;;) {
		QSeries s = random_poly(rng, scale, order_scaled, terms, max_exp);
		if (!s.is_zero())
			return s;
	}
}

} // namespace qtest
