#include "qseries/factory.hpp"

#include <cassert>

namespace qseries {

std::string PochSpec::str() const {
	std::string base = base_exp == Exponent(1) ? "q" : "q^" + base_exp.str();
	std::string len = length ? std::to_string(*length) : "inf";
	return "(" + arg.str() + ";" + base + ")_" + len;
}

std::optional<std::int64_t> poch_vanishing_factor(const PochSpec &spec) {
	// Factor j is 1 - arg*q^(b*j); it vanishes only for arg an exact power
	// of q with coefficient one.
	if (!(spec.arg.coeff == Rational(1)))
		return std::nullopt;
	const Exponent &e = spec.arg.exp;
	const Exponent &b = spec.base_exp;
	if (spec.length && *spec.length < 0) {
		// Reciprocal factors 1 - arg*q^(-b*j), j = 1..-length.
		if (b.num == 0)
			return e == Exponent(0) ? std::optional<std::int64_t>(1) : std::nullopt;
		Exponent j = e / b;
		if (j.is_integer() && j.num >= 1 && j.num <= -*spec.length)
			return j.num;
		return std::nullopt;
	}
	if (b.num == 0) {
		if (!(e == Exponent(0)))
			return std::nullopt;
		return (!spec.length || *spec.length > 0) ? std::optional<std::int64_t>(0) : std::nullopt;
	}
	Exponent j = -e / b;
	if (!j.is_integer() || j.num < 0)
		return std::nullopt;
	if (spec.length && j.num >= *spec.length)
		return std::nullopt;
	return j.num;
}

Exponent poch_valuation(const PochSpec &spec) {
	if (poch_vanishing_factor(spec))
		throw ContractError("valuation of the vanishing factorial " + spec.str());
	const Exponent &e = spec.arg.exp;
	const Exponent &b = spec.base_exp;
	Exponent v(0);
	if (spec.length && *spec.length < 0) {
		for (std::int64_t j = 1; j <= -*spec.length; ++j) {
			Exponent g = e - Exponent(j) * b;
			if (g < Exponent(0))
				v = v - g;
		}
		return v;
	}
	if (!spec.length && !(b > Exponent(0)))
		throw DivergenceError("infinite product " + spec.str() + " with base exponent " +
		                      b.str());
	for (std::int64_t j = 0;; ++j) {
		if (spec.length && j >= *spec.length)
			break;
		Exponent g = e + Exponent(j) * b;
		if (g >= Exponent(0)) {
			if (!spec.length)
				break; // exponents only grow from here
		} else {
			v = v + g;
		}
	}
	return v;
}

QSeries pochhammer(const PochSpec &spec, std::int64_t scale, std::int64_t order_scaled,
                   FactorRole role) {
	const Exponent &e = spec.arg.exp;
	const Exponent &b = spec.base_exp;
	if (!spec.length && !(b > Exponent(0)))
		throw DivergenceError("infinite product " + spec.str() + " with base exponent " +
		                      b.str());
	std::int64_t s = lcm64(scale, lcm64(e.den, b.den));
	std::int64_t T = order_scaled * (s / scale);
	if (auto j = poch_vanishing_factor(spec)) {
		bool reciprocal = spec.length && *spec.length < 0;
		if (role == FactorRole::denominator || reciprocal)
			throw PoleError(spec.str() + ": factor at index " + std::to_string(*j) +
			                " vanishes");
		return QSeries::zero(s, T);
	}
	std::int64_t es = e.to_scaled(s);
	std::int64_t bs = b.to_scaled(s);
	const Rational c = -spec.arg.coeff;
	if (spec.length && *spec.length < 0) {
		QSeries acc = QSeries::constant(1, s, T);
		for (std::int64_t j = 1; j <= -*spec.length; ++j)
			acc = div_binomial(acc, c, Exponent(es - bs * j, s));
		return truncate(acc, Exponent(T, s));
	}
	// Padding: factors below q^0 cost order through the min-rule, so start
	// higher by exactly the total negative shift.
	std::int64_t pad = 0;
	for (std::int64_t j = 0;; ++j) {
		if (spec.length && j >= *spec.length)
			break;
		std::int64_t g = es + bs * j;
		if (g >= 0)
			break;
		pad -= g;
	}
	QSeries acc = QSeries::constant(1, s, T + pad);
	for (std::int64_t j = 0;; ++j) {
		if (spec.length && j >= *spec.length)
			break;
		std::int64_t g = es + bs * j;
		if (!spec.length && g > T + pad)
			break; // cannot touch any retained coefficient
		acc = mul_binomial(acc, c, Exponent(g, s));
	}
	return truncate(acc, Exponent(T, s));
}

QSeries pochhammer_multi(std::span<const Monomial> args, const Exponent &base_exp,
                         std::optional<std::int64_t> length, std::int64_t scale,
                         std::int64_t order_scaled, FactorRole role) {
	std::int64_t s = lcm64(scale, base_exp.den);
	for (const Monomial &x : args)
		s = lcm64(s, x.exp.den);
	std::int64_t T = order_scaled * (s / scale);
	std::vector<PochSpec> specs;
	specs.reserve(args.size());
	for (const Monomial &x : args)
		specs.push_back({x, base_exp, length});
	for (const PochSpec &spec : specs) {
		if (poch_vanishing_factor(spec)) {
			bool reciprocal = length && *length < 0;
			if (role == FactorRole::denominator || reciprocal)
				throw PoleError(spec.str() + ": vanishing factor");
			return QSeries::zero(s, T);
		}
	}
	// Each factor is computed deep enough that the min-rule across the
	// product still reaches T: factor i needs T minus everyone else's
	// negative valuation.
	std::int64_t V = 0;
	std::vector<std::int64_t> vals;
	vals.reserve(specs.size());
	for (const PochSpec &spec : specs) {
		std::int64_t v = poch_valuation(spec).to_scaled(s);
		vals.push_back(v);
		V += v;
	}
	QSeries acc = QSeries::constant(1, s, T - V);
	for (std::size_t i = 0; i < specs.size(); ++i)
		acc = mul(acc, pochhammer(specs[i], s, T - (V - vals[i]), role));
	return truncate(acc, Exponent(T, s));
}

QSeries qbinomial(std::int64_t n, std::int64_t k, std::int64_t scale, std::int64_t order_scaled) {
	if (n < 0)
		throw UsageError("qbinomial needs n >= 0");
	if (k < 0 || k > n)
		return QSeries::zero(scale, order_scaled);
	QSeries acc = QSeries::constant(1, scale, order_scaled);
	for (std::int64_t j = n - k + 1; j <= n; ++j)
		acc = mul_binomial(acc, -1, Exponent(j * scale, scale));
	for (std::int64_t j = 1; j <= k; ++j)
		acc = div_binomial(acc, -1, Exponent(j * scale, scale));
	return acc;
}

std::vector<QSeries> qbinomial_row(std::int64_t n, std::int64_t scale,
                                   std::int64_t order_scaled) {
	if (n < 0)
		throw UsageError("qbinomial_row needs n >= 0");
	std::vector<QSeries> row;
	row.reserve(static_cast<std::size_t>(n) + 1);
	row.push_back(QSeries::constant(1, scale, order_scaled));
	for (std::int64_t j = 0; j < n; ++j) {
		QSeries next = mul_binomial(row.back(), -1, Exponent((n - j) * scale, scale));
		next = div_binomial(next, -1, Exponent((j + 1) * scale, scale));
		row.push_back(std::move(next));
	}
	return row;
}

Monomial tau(std::int64_t r, std::int64_t n) {
	if (r < 1)
		throw UsageError("tau needs r >= 1");
	// n(n-1) is even for every integer n, so the exponent is integral.
	std::int64_t half = (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
	return Monomial(n % 2 == 0 ? 1 : -1, Exponent(r * half));
}

QSeries eulerq(std::int64_t scale, std::int64_t order_scaled) {
	return pochhammer(poch_inf(Monomial::q(1), 1), scale, order_scaled);
}

QSeries phi_neg_q(std::int64_t scale, std::int64_t order_scaled) {
	QSeries num = eulerq(scale, order_scaled);
	QSeries den = pochhammer(poch_inf(Monomial(-1, 1), 1), scale, order_scaled,
	                         FactorRole::denominator);
	return div(num, den);
}

QSeries psi_neg_q(std::int64_t scale, std::int64_t order_scaled) {
	QSeries num = pochhammer(poch_inf(Monomial::q(2), 2), scale, order_scaled);
	QSeries den = pochhammer(poch_inf(Monomial(-1, 1), 2), scale, order_scaled,
	                         FactorRole::denominator);
	return div(num, den);
}

QSeries triple_product_rhs(const Monomial &x, const Exponent &base_exp, std::int64_t scale,
                           std::int64_t order_scaled) {
	const Monomial args[] = {x, Monomial(Rational(1) / x.coeff, base_exp - x.exp),
	                         Monomial::q(base_exp)};
	return pochhammer_multi(args, base_exp, std::nullopt, scale, order_scaled);
}

} // namespace qseries
