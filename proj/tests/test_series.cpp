#include <doctest.h>

#include <random>

#include <qseries/series.hpp>

#include "helpers.hpp"

using namespace qseries;
using qtest::poly;
using qtest::random_nonzero_poly;
using qtest::random_poly;
using qtest::same;

TEST_CASE("monomials") {
	CHECK_THROWS_AS(Monomial(Rational(0), Exponent(1)), UsageError);
	Monomial m(2, Exponent(2));
	CHECK(m.pow(3) == Monomial(8, Exponent(6)));
	CHECK(m.pow(0) == Monomial::one());
	CHECK(Monomial(2, Exponent(1)).pow(-2) == Monomial(Rational(1, 4), Exponent(-2)));
	CHECK(m.inverse() == Monomial(Rational(1, 2), Exponent(-2)));
	CHECK(Monomial::one().is_one());
	CHECK((Monomial::q() * Monomial::q(Exponent(1, 2))) == Monomial(1, Exponent(3, 2)));
}

TEST_CASE("construction and coefficient access") {
	QSeries z = QSeries::zero(1, 5);
	CHECK(z.is_zero());
	CHECK(z.order_scaled() == 5);
	CHECK(z.min_exp_scaled() == 6);
	CHECK(QSeries::constant(Rational(0), 1, 5).is_zero());

	QSeries s = poly({{1, 0}, {-1, 1}, {1, 5}}, 1, 3); // q^5 above order: dropped
	CHECK(s.order_scaled() == 3);
	CHECK(s.coefficient_at(Exponent(0)) == Rational(1));
	CHECK(s.coefficient_at(Exponent(1)) == Rational(-1));
	CHECK(s.coefficient_at(Exponent(2)).is_zero());
	CHECK(s.coefficient_at(Exponent(-4)).is_zero());   // below the window
	CHECK(s.coefficient_at(Exponent(1, 2)).is_zero()); // off-lattice
	CHECK_THROWS_AS(s.coefficient_at(Exponent(4)), OutOfRangeError);
	CHECK_THROWS_AS(s.at_scaled(9), OutOfRangeError);

	CHECK(poly({{1, 2}, {1, 2}}, 1, 5).coefficient_at(Exponent(2)) == Rational(2));
	CHECK(QSeries::from_monomial(Monomial(-3, Exponent(1, 2)), 2, 6)
			  .coefficient_at(Exponent(1, 2)) == Rational(-3));
}

TEST_CASE("addition respects lattices and orders") {
	QSeries a = poly({{1, 0}, {1, 1}}, 1, 5);
	QSeries b = poly({{1, 1}}, 2, 10); // q^(1/2) known to q^5
	QSeries s = add(a, b);
	CHECK(s.scale() == 2);
	CHECK(s.order_scaled() == 10);
	CHECK(s.coefficient_at(Exponent(1, 2)) == Rational(1));
	CHECK(s.coefficient_at(Exponent(1)) == Rational(1));

	QSeries shorter = poly({{2, 0}}, 1, 3);
	CHECK(add(a, shorter).order_scaled() == 3);
	CHECK(same(sub(a, a), QSeries::zero(1, 5)));
	CHECK(same(neg(a), poly({{-1, 0}, {-1, 1}}, 1, 5)));
}

TEST_CASE("multiplication truncates soundly") {
	QSeries a = poly({{1, 0}, {1, 1}}, 1, 5);     // order 5, valuation 0
	QSeries b = poly({{1, 2}, {1, 3}}, 1, 3);     // order 3, valuation 2
	QSeries p = mul(a, b);
	CHECK(p.order_scaled() == 3); // min(5 + 2, 3 + 0)
	CHECK(same(p, poly({{1, 2}, {2, 3}}, 1, 3)));

	CHECK(same(mul(poly({{1, 0}, {-1, 1}}, 1, 8), poly({{1, 0}, {1, 1}}, 1, 8)),
			   poly({{1, 0}, {-1, 2}}, 1, 8)));
	CHECK(mul(a, QSeries::zero(1, 9)).is_zero());
}

TEST_CASE("division is exact to its stated order") {
	QSeries num = poly({{1, 0}, {-1, 2}}, 1, 10);
	QSeries den = poly({{1, 0}, {1, 1}}, 1, 10);
	QSeries quot = div(num, den);
	CHECK(quot.order_scaled() == 10);
	CHECK(same(quot, poly({{1, 0}, {-1, 1}}, 1, 10)));

	QSeries geo = div(QSeries::constant(1, 1, 10), poly({{1, 0}, {-1, 1}}, 1, 10));
	for (std::int64_t e = 0; e <= 10; ++e)
		CHECK(geo.at_scaled(e) == Rational(1));

	// Laurent divisor: order = (v_num - v_den) + min of the effective depths.
	QSeries lau = div(QSeries::constant(1, 1, 10), poly({{1, 2}, {-1, 3}}, 1, 10));
	CHECK(lau.min_exp_scaled() == -2);
	CHECK(lau.order_scaled() == 6);
	CHECK(lau.at_scaled(-2) == Rational(1));
	CHECK(lau.at_scaled(0) == Rational(1));

	CHECK_THROWS_AS(div(num, QSeries::zero(1, 10)), DivisionByZeroError);
}

TEST_CASE("division inverts multiplication") {
	std::mt19937_64 rng(12345);
	for (int trial = 0; trial < 25; ++trial) {
		QSeries a = random_nonzero_poly(rng, 1, 30);
		QSeries b = random_poly(rng, 1, 30);
		QSeries back = div(mul(a, b), a);
		CHECK(same(back, b));
	}
}

TEST_CASE("monomial shift and scalar multiples are exact") {
	QSeries s = poly({{1, 0}, {1, 2}}, 1, 5);
	QSeries sh = shifted(s, Monomial(2, Exponent(-3)));
	CHECK(sh.min_exp_scaled() == -3);
	CHECK(sh.order_scaled() == 2);
	CHECK(sh.coefficient_at(Exponent(-3)) == Rational(2));
	CHECK(sh.coefficient_at(Exponent(-1)) == Rational(2));

	QSeries half = scaled(s, Rational(1, 2));
	CHECK(half.coefficient_at(Exponent(2)) == Rational(1, 2));
	QSeries nil = scaled(s, Rational(0));
	CHECK(nil.is_zero());
	CHECK(nil.order_scaled() == 5);
}

TEST_CASE("binomial multiply and divide are mutually inverse at full order") {
	std::mt19937_64 rng(777);
	for (int trial = 0; trial < 25; ++trial) {
		QSeries s = random_poly(rng, 1, 20);
		Rational c(trial % 2 == 0 ? 1 : -2);
		Exponent e(1 + trial % 4);
		QSeries t = mul_binomial(s, c, e);
		CHECK(t.order_scaled() == s.order_scaled());
		CHECK(same(div_binomial(t, c, e), s));

		QSeries binom = poly({{1, 0}}, 1, 20);
		binom = add(binom, scaled(poly({{1, e.num}}, 1, 20), c));
		CHECK(same(div_binomial(s, c, e), div(s, binom)));
	}
	CHECK_THROWS_AS(div_binomial(poly({{1, 0}}, 1, 5), Rational(-1), Exponent(0)),
					DivisionByZeroError);
}

TEST_CASE("base substitution is a ring homomorphism") {
	CHECK(same(substitute_base(poly({{1, 0}, {-1, 1}}, 1, 4), 3),
			   poly({{1, 0}, {-1, 3}}, 1, 12)));
	std::mt19937_64 rng(31337);
	for (int trial = 0; trial < 10; ++trial) {
		QSeries a = random_poly(rng, 1, 20);
		QSeries b = random_poly(rng, 1, 20);
		CHECK(same(substitute_base(mul(a, b), 2),
				   mul(substitute_base(a, 2), substitute_base(b, 2))));
		CHECK(same(substitute_base(add(a, b), 2),
				   add(substitute_base(a, 2), substitute_base(b, 2))));
	}
	CHECK_THROWS_AS(substitute_base(poly({{1, 1}}, 1, 3), 0), UsageError);
}

TEST_CASE("rescaling refines the lattice and composes") {
	QSeries s = poly({{1, 0}, {2, 3}}, 1, 5);
	QSeries r = rescale(s, 3);
	CHECK(r.scale() == 3);
	CHECK(r.coefficient_at(Exponent(3)) == Rational(2));
	CHECK(r.order_scaled() == 15);
	CHECK(same(rescale(rescale(s, 2), 6), rescale(s, 6)));
	CHECK_THROWS_AS(rescale(rescale(s, 2), 3), LatticeError);
}

TEST_CASE("truncation only shrinks") {
	QSeries s = poly({{1, 0}, {1, 4}}, 1, 8);
	QSeries t = truncate(s, Exponent(2));
	CHECK(t.order_scaled() == 2);
	CHECK_THROWS_AS(t.coefficient_at(Exponent(4)), OutOfRangeError);
	CHECK(truncate(s, Exponent(100)).order_scaled() == 8);
	CHECK(truncate(s, Exponent(-1)).is_zero());
	// Rational bound lands on the lattice floor.
	CHECK(truncate(s, Exponent(5, 2)).order_scaled() == 2);
}

TEST_CASE("ring laws hold exactly") {
	std::mt19937_64 rng(2024);
	for (int trial = 0; trial < 20; ++trial) {
		QSeries a = random_poly(rng, 1, 25);
		QSeries b = random_poly(rng, 1, 25);
		QSeries c = random_poly(rng, 1, 25);
		CHECK(same(add(a, b), add(b, a)));
		CHECK(same(add(add(a, b), c), add(a, add(b, c))));
		CHECK(same(mul(a, b), mul(b, a)));
		CHECK(same(mul(mul(a, b), c), mul(a, mul(b, c))));
		CHECK(same(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
	}
}

TEST_CASE("operator sugar matches the named functions") {
	QSeries a = poly({{1, 0}, {1, 1}}, 1, 6);
	QSeries b = poly({{1, 0}, {-1, 1}}, 1, 6);
	CHECK(same(a * b, mul(a, b)));
	CHECK(same(a + b, add(a, b)));
	CHECK(same(a - b, sub(a, b)));
	CHECK(same(a / b, div(a, b)));
	CHECK(same(-a, neg(a)));
}

TEST_CASE("comparison reports the smallest disagreeing exponent") {
	QSeries a = poly({{1, 0}, {1, 1}, {3, 4}}, 1, 5);
	QSeries b = poly({{1, 0}, {2, 1}, {9, 5}}, 1, 5);
	Comparison c = equal_up_to(a, b, Exponent(5));
	REQUIRE_FALSE(c.equal);
	REQUIRE(c.first_mismatch.has_value());
	CHECK(c.first_mismatch->exponent == Exponent(1));
	CHECK(c.first_mismatch->lhs == Rational(1));
	CHECK(c.first_mismatch->rhs == Rational(2));

	CHECK(equal_up_to(a, a, Exponent(5)).equal);
	CHECK_THROWS_AS(equal_up_to(a, b, Exponent(6)), InsufficientOrderError);

	// Cross-lattice comparison happens on the common refinement.
	QSeries half = poly({{1, 0}, {1, 2}}, 2, 10);
	QSeries whole = poly({{1, 0}, {1, 1}}, 1, 5);
	CHECK(equal_up_to(half, whole, Exponent(5)).equal);
	Comparison d = equal_up_to(poly({{1, 0}, {1, 1}}, 2, 10), whole, Exponent(5));
	REQUIRE_FALSE(d.equal);
	CHECK(d.first_mismatch->exponent == Exponent(1, 2));
}

TEST_CASE("text round trip") {
	QSeries s = poly({{1, 0}, {-1, 1}, {2, 3}}, 1, 6);
	CHECK(s.str() == "1 - q + 2*q^3");
	CHECK(QSeries::zero(1, 4).str() == "0");
	CHECK(QSeries::from_monomial(Monomial(Rational(1, 2), Exponent(-1)), 1, 3).str() ==
		  "1/2*q^-1");
	CHECK(poly({{1, 1}}, 2, 4).str() == "q^1/2");
}
