#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

/* A single signed power c * q^e with exact rational coefficient and
 * exponent. Monomials carry Pochhammer arguments, the Bailey lemma
 * parameters and the tau weights; unlike a QSeries they are exact and
 * never truncated, so exponent bookkeeping through them is lossless. */
struct Monomial {
	Rational coeff;
	Exponent exp;

	Monomial(Rational c, Exponent e) : coeff(std::move(c)), exp(e) {
		if (coeff.is_zero())
			throw UsageError("monomial with zero coefficient");
	}

	static Monomial one() { return Monomial(1, 0); }
	static Monomial q(Exponent e = 1) { return Monomial(1, e); }

	Monomial inverse() const { return Monomial(Rational(1) / coeff, -exp); }
	// Integer power, any sign.
	Monomial pow(std::int64_t k) const;

	friend Monomial operator*(const Monomial &a, const Monomial &b) {
		return Monomial(a.coeff * b.coeff, a.exp + b.exp);
	}
	friend bool operator==(const Monomial &a, const Monomial &b) {
		return a.coeff == b.coeff && a.exp == b.exp;
	}

	bool is_one() const { return exp == Exponent(0) && coeff == Rational(1); }
	std::string str() const;
};

struct Comparison; // below

/* Truncated Laurent series in q on the exponent lattice (1/scale)Z.
 *
 * The window [min_exp, order] is in scaled units: the coefficient of
 * q^(e/scale) is tracked exactly for every min_exp <= e <= order, and the
 * series is a + O(q^((order+1)/scale)). order >= min_exp - 1; the empty
 * window is the zero series known to that order. Instances are immutable
 * values; every operation returns a fresh series whose order is propagated
 * soundly (never optimistically). */
class QSeries {
public:
	// Zero known up to and including order/scale.
	static QSeries zero(std::int64_t scale, std::int64_t order_scaled);
	static QSeries constant(const Rational &c, std::int64_t scale, std::int64_t order_scaled);
	// c * q^(exp/scale) + O(q^((order+1)/scale)); terms above the order are dropped.
	static QSeries from_terms(std::span<const std::pair<Rational, Exponent>> terms,
	                          std::int64_t scale, std::int64_t order_scaled);
	static QSeries from_monomial(const Monomial &m, std::int64_t scale, std::int64_t order_scaled);
	// Raw window constructor. coeffs[i] is the coefficient at min + i;
	// positions between the end of coeffs and the order are zero, so
	// coeffs.size() <= order - min + 1.
	QSeries(std::int64_t scale, std::int64_t min_exp_scaled, std::int64_t order_scaled,
	        std::vector<Rational> coeffs);

	std::int64_t scale() const { return scale_; }
	std::int64_t min_exp_scaled() const { return min_; }
	std::int64_t order_scaled() const { return order_; }
	Exponent min_exp() const { return Exponent(min_, scale_); }
	Exponent order() const { return Exponent(order_, scale_); }
	bool is_zero() const { return coeffs_.empty(); }

	// Coefficient at scaled lattice position e (0 outside the stored window);
	// OutOfRangeError above the order.
	const Rational &at_scaled(std::int64_t e) const;
	// Coefficient at a rational exponent: 0 if off-lattice or below the
	// window, OutOfRangeError above the order.
	const Rational &coefficient_at(const Exponent &e) const;

	std::span<const Rational> coeffs() const { return coeffs_; }

	std::string str() const; // "1 - q + 2*q^3 + ..." (see text.cpp)

private:
	std::int64_t scale_;
	std::int64_t min_;   // scaled; if coeffs_ empty, min_ == order_ + 1
	std::int64_t order_; // scaled
	std::vector<Rational> coeffs_;

	void normalize();
};

// --- arithmetic ------------------------------------------------------------

// Same series on the finer lattice new_scale (must be a multiple of scale()).
QSeries rescale(const QSeries &a, std::int64_t new_scale);

// Sum/difference; operands are rescaled to the lcm lattice and the result
// order is the minimum of the two.
QSeries add(const QSeries &a, const QSeries &b);
QSeries sub(const QSeries &a, const QSeries &b);
QSeries neg(const QSeries &a);

// Cauchy product; result order = min(order_a + min_b, order_b + min_a).
QSeries mul(const QSeries &a, const QSeries &b);

// Laurent quotient; b must have a nonzero coefficient somewhere in its
// window (else DivisionByZeroError).
QSeries div(const QSeries &a, const QSeries &b);

// a * m, exact: window and order shift by m's exponent.
QSeries shifted(const QSeries &a, const Monomial &m);
// a * c (c may be zero).
QSeries scaled(const QSeries &a, const Rational &c);

// a * (1 + c*q^e) and a / (1 + c*q^e). The binomial is exact, so unlike
// mul/div the order only moves by the exponent shift, never shrinks to the
// binomial's own window. The division runs in O(window) time. c*q^e == -1
// (the zero binomial) raises DivisionByZeroError in the division.
QSeries mul_binomial(const QSeries &a, const Rational &c, const Exponent &e);
QSeries div_binomial(const QSeries &a, const Rational &c, const Exponent &e);

// q -> q^m, m >= 1: exponents and order are multiplied by m.
QSeries substitute_base(const QSeries &a, std::int64_t m);

// Drop everything above the (rational) exponent bound; the order may only
// shrink. Bounds above the current order leave the series unchanged.
QSeries truncate(const QSeries &a, const Exponent &new_order);

QSeries operator+(const QSeries &a, const QSeries &b);
QSeries operator-(const QSeries &a, const QSeries &b);
QSeries operator*(const QSeries &a, const QSeries &b);
QSeries operator/(const QSeries &a, const QSeries &b);
QSeries operator-(const QSeries &a);

// --- comparison ------------------------------------------------------------

struct Mismatch {
	Exponent exponent;
	Rational lhs;
	Rational rhs;
};

struct Comparison {
	bool equal = false;
	std::optional<Mismatch> first_mismatch; // smallest disagreeing exponent
};

/* Coefficient-wise comparison of every exponent <= bound on the common
 * lattice. Verification never reports a bare boolean: on disagreement the
 * smallest mismatching exponent and both values come back. If either
 * operand's order is below the bound the answer is unknown and
 * InsufficientOrderError is raised instead. */
Comparison equal_up_to(const QSeries &a, const QSeries &b, const Exponent &bound);

} // namespace qseries
