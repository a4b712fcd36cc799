#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <string>

#include "qseries/errors.hpp"

namespace qseries {

/* Exact rational number, the coefficient field of every series in this
 * library. Stored in lowest terms with positive denominator; zero is 0/1.
 * Backed by GMP so coefficients never overflow and never round. */
class Rational {
public:
	Rational() : v_(0) {}
	Rational(long n) : v_(n) {} // NOLINT: implicit by design
	Rational(long num, long den) {
		if (den == 0)
			throw UsageError("rational with zero denominator");
		v_ = mpq_class(num, den);
		v_.canonicalize();
	}
	explicit Rational(const mpq_class &v) : v_(v) { v_.canonicalize(); }

	// Parses "p" or "p/r" with optional sign.
	static Rational parse(const std::string &text);

	bool is_zero() const { return sgn(v_) == 0; }
	bool is_integer() const { return v_.get_den() == 1; }
	int sign() const { return sgn(v_); }

	Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

	Rational &operator+=(const Rational &o) { v_ += o.v_; return *this; }
	Rational &operator-=(const Rational &o) { v_ -= o.v_; return *this; }
	Rational &operator*=(const Rational &o) { v_ *= o.v_; return *this; }
	Rational &operator/=(const Rational &o) {
		if (o.is_zero())
			throw DivisionByZeroError("rational division by zero");
		v_ /= o.v_;
		return *this;
	}

	friend Rational operator+(Rational a, const Rational &b) { return a += b; }
	friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

	friend bool operator==(const Rational &a, const Rational &b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
	friend bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }
	friend bool operator<(const Rational &a, const Rational &b) { return cmp(a.v_, b.v_) < 0; }

	// Exact decimal "p" or "p/r"; never a float.
	std::string str() const;

	const mpq_class &raw() const { return v_; }

private:
	struct already_canonical {};
	Rational(mpq_class v, already_canonical) : v_(std::move(v)) {}

	mpq_class v_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

/* Exponent on the lattice (1/s)Z: a small exact rational. Exponent
 * arithmetic stays in machine words (the exponents in play are bounded by
 * a few times the square of the summation range), unlike coefficients. */
struct Exponent {
	std::int64_t num = 0;
	std::int64_t den = 1; // > 0, gcd(num, den) = 1

	constexpr Exponent() = default;
	constexpr Exponent(std::int64_t n) : num(n), den(1) {} // NOLINT: implicit by design
	Exponent(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

	static Exponent parse(const std::string &text);

	bool is_integer() const { return den == 1; }

	friend Exponent operator+(const Exponent &a, const Exponent &b) {
		return Exponent(a.num * b.den + b.num * a.den, a.den * b.den);
	}
	friend Exponent operator-(const Exponent &a, const Exponent &b) {
		return Exponent(a.num * b.den - b.num * a.den, a.den * b.den);
	}
	Exponent operator-() const { Exponent e; e.num = -num; e.den = den; return e; }
	friend Exponent operator*(const Exponent &a, const Exponent &b) {
		return Exponent(a.num * b.num, a.den * b.den);
	}
	friend Exponent operator/(const Exponent &a, const Exponent &b) {
		if (b.num == 0)
			throw UsageError("exponent division by zero");
		return Exponent(a.num * b.den, a.den * b.num);
	}

	friend bool operator==(const Exponent &a, const Exponent &b) { return a.num == b.num && a.den == b.den; }
	friend bool operator!=(const Exponent &a, const Exponent &b) { return !(a == b); }
	friend bool operator<(const Exponent &a, const Exponent &b) { return a.num * b.den < b.num * a.den; }
	friend bool operator<=(const Exponent &a, const Exponent &b) { return a.num * b.den <= b.num * a.den; }
	friend bool operator>(const Exponent &a, const Exponent &b) { return b < a; }
	friend bool operator>=(const Exponent &a, const Exponent &b) { return b <= a; }

	// True iff the exponent lies on the lattice (1/scale)Z.
	bool on_lattice(std::int64_t scale) const { return scale % den == 0; }

	// Exact position on the lattice (1/scale)Z; LatticeError if off-lattice.
	std::int64_t to_scaled(std::int64_t scale) const;

	// Largest lattice position <= this exponent (for truncation bounds).
	std::int64_t to_scaled_floor(std::int64_t scale) const;

	// "k" or "p/r".
	std::string str() const;

private:
	void normalize();
};

std::ostream &operator<<(std::ostream &os, const Exponent &e);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
	// b > 0
	std::int64_t q = a / b;
	return (a % b != 0 && a < 0) ? q - 1 : q;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
	return a / std::gcd(a, b) * b;
}

} // namespace qseries
