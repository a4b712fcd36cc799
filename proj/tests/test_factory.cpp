#include <doctest.h>

#include <qseries/factory.hpp>

#include "helpers.hpp"

using namespace qseries;
using qtest::poly;
using qtest::same;

TEST_CASE("finite q-shifted factorials") {
	CHECK(same(pochhammer(poch_finite(Monomial::q(), 1, 2), 1, 10),
			   poly({{1, 0}, {-1, 1}, {-1, 2}, {1, 3}}, 1, 10)));
	CHECK(same(pochhammer(poch_finite(Monomial::q(), 1, 0), 1, 10),
			   QSeries::constant(1, 1, 10)));
	// (x;q)_1 = 1 - x
	CHECK(same(pochhammer(poch_finite(Monomial(2, Exponent(3)), 1, 1), 1, 10),
			   poly({{1, 0}, {-2, 3}}, 1, 10)));
}

TEST_CASE("negative length is the reciprocal shifted below the base point") {
	/* (-1;q)_{-2} = 1/((-q^{-2};q)_2) = q^3 - q^4 + q^7 - q^8 + ... */
	QSeries s = pochhammer(poch_finite(Monomial(-1, Exponent(0)), 1, -2), 1, 10);
	CHECK(same(s, poly({{1, 3}, {-1, 4}, {1, 7}, {-1, 8}}, 1, 10)));

	// (q;q)_{-m} hits the vanishing factor (1 - q q^{-1}): a pole.
	CHECK_THROWS_AS(pochhammer(poch_finite(Monomial::q(), 1, -1), 1, 10), PoleError);
}

TEST_CASE("vanishing factors: annihilation above the bar, poles below") {
	PochSpec ones = poch_finite(Monomial::one(), 1, 3);
	REQUIRE(poch_vanishing_factor(ones).has_value());
	CHECK(*poch_vanishing_factor(ones) == 0);
	CHECK(pochhammer(ones, 1, 10).is_zero());
	CHECK_THROWS_AS(pochhammer(ones, 1, 10, FactorRole::denominator), PoleError);

	PochSpec qinv = poch_inf(Monomial::q(Exponent(-2)), 1);
	REQUIRE(poch_vanishing_factor(qinv).has_value());
	CHECK(*poch_vanishing_factor(qinv) == 2);

	CHECK_FALSE(poch_vanishing_factor(poch_inf(Monomial::q(), 1)).has_value());
	CHECK_FALSE(poch_vanishing_factor(poch_finite(Monomial(-1, Exponent(0)), 1, 5)).has_value());
}

TEST_CASE("factorial valuations are exact") {
	CHECK(poch_valuation(poch_inf(Monomial::q(), 1)) == Exponent(0));
	// (q^{-2};q)_2 = (1-q^{-2})(1-q^{-1}): valuation -3.
	CHECK(poch_valuation(poch_finite(Monomial::q(Exponent(-2)), 1, 2)) == Exponent(-3));
	CHECK_THROWS_AS(poch_valuation(poch_finite(Monomial::one(), 1, 2)), ContractError);

	QSeries s = pochhammer(poch_finite(Monomial::q(Exponent(-2)), 1, 2), 1, 5);
	CHECK(s.min_exp() == Exponent(-3));
}

TEST_CASE("infinite products need increasing factor exponents") {
	CHECK_THROWS_AS(pochhammer(poch_inf(Monomial::q(), Exponent(0)), 1, 10), DivergenceError);
}

TEST_CASE("multi-argument factorials stay exact through negative dips") {
	std::vector<Monomial> args{Monomial::q(Exponent(-2)), Monomial::q(Exponent(-3))};
	QSeries multi = pochhammer_multi(args, 1, 2, 1, 10);
	QSeries a = pochhammer(poch_finite(args[0], 1, 2), 1, 24);
	QSeries b = pochhammer(poch_finite(args[1], 1, 2), 1, 24);
	CHECK(equal_up_to(multi, truncate(mul(a, b), Exponent(10)), Exponent(10)).equal);
	CHECK(multi.order_scaled() == 10);
}

TEST_CASE("q-binomial coefficients") {
	CHECK(same(qbinomial(2, 1, 1, 10), poly({{1, 0}, {1, 1}}, 1, 10)));
	CHECK(same(qbinomial(4, 2, 1, 10), poly({{1, 0}, {1, 1}, {2, 2}, {1, 3}, {1, 4}}, 1, 10)));
	CHECK(qbinomial(3, -1, 1, 10).is_zero());
	CHECK(qbinomial(3, 4, 1, 10).is_zero());
	CHECK(same(qbinomial(7, 3, 1, 40), qbinomial(7, 4, 1, 40)));

	for (std::int64_t n = 1; n <= 8; ++n)
		for (std::int64_t k = 0; k <= n; ++k) {
			QSeries lhs = qbinomial(n, k, 1, 60);
			QSeries rhs = add(qbinomial(n - 1, k - 1, 1, 60),
							  shifted(qbinomial(n - 1, k, 1, 60), Monomial::q(Exponent(k))));
			CHECK(same(lhs, rhs));
		}

	std::vector<QSeries> row = qbinomial_row(6, 1, 30);
	REQUIRE(row.size() == 7);
	for (std::int64_t k = 0; k <= 6; ++k)
		CHECK(same(row[static_cast<std::size_t>(k)], qbinomial(6, k, 1, 30)));
}

TEST_CASE("tau weights") {
	CHECK(tau(3, -1) == Monomial(-1, Exponent(3)));
	CHECK(tau(1, 0) == Monomial::one());
	CHECK(tau(2, 3) == Monomial(-1, Exponent(6)));
	CHECK(tau(1, 4) == Monomial(1, Exponent(6)));
}

TEST_CASE("classical theta evaluations") {
	CHECK(same(eulerq(1, 7), poly({{1, 0}, {-1, 1}, {-1, 2}, {1, 5}, {1, 7}}, 1, 7)));
	CHECK(same(phi_neg_q(1, 10), poly({{1, 0}, {-2, 1}, {2, 4}, {-2, 9}}, 1, 10)));
	CHECK(same(psi_neg_q(1, 11), poly({{1, 0}, {-1, 1}, {-1, 3}, {1, 6}, {1, 10}}, 1, 11)));

	// Generalized pentagonal support to order 26.
	QSeries e = eulerq(1, 26);
	CHECK(same(e, poly({{1, 0}, {-1, 1}, {-1, 2}, {1, 5}, {1, 7}, {-1, 12}, {-1, 15},
						{1, 22}, {1, 26}}, 1, 26)));
}

TEST_CASE("triple product closed form") {
	// (q, q^2, q^3; q^3)_inf covers every residue: equal to (q;q)_inf.
	CHECK(same(triple_product_rhs(Monomial::q(), 3, 1, 40), eulerq(1, 40)));
	// A vanishing factor collapses the whole product.
	CHECK(triple_product_rhs(Monomial::one(), 3, 1, 20).is_zero());
	CHECK(triple_product_rhs(Monomial::q(Exponent(3)), 3, 1, 20).is_zero());
}
