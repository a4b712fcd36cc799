#include <doctest.h>

#include <random>
#include <vector>

#include <qseries/bailey.hpp>

#include "helpers.hpp"

using namespace qseries;
using qtest::poly;
using qtest::same;

TEST_CASE("H at small arguments") {
	CHECK(h_series(0, 1, 25).is_zero());
	CHECK(same(h_series(1, 1, 30), eulerq(1, 30)));
	CHECK(same(h_series(2, 1, 30), shifted(eulerq(1, 31), Monomial::q(Exponent(-1)))));
	for (std::int64_t n = 1; n <= 5; ++n)
		CHECK(same(h_series(-n, 1, 25), neg(h_series(n, 1, 25))));
}

TEST_CASE("the two-term Laurent factor of H") {
	CHECK(same(h_ratio(1, 1, 10), QSeries::constant(1, 1, 10)));
	CHECK(same(h_ratio(2, 1, 10), poly({{1, -1}}, 1, 10)));
	CHECK(same(h_ratio(3, 1, 10), poly({{1, -2}, {-1, -1}}, 1, 10)));
	CHECK(same(h_ratio(5, 1, 10), poly({{-1, -5}}, 1, 10)));
	CHECK(h_ratio(0, 1, 10).is_zero());
}

TEST_CASE("closed form of H matches the bilateral sum") {
	for (std::int64_t n = -7; n <= 7; ++n)
		CHECK(equal_up_to(h_series(n, 1, 25), h_closed(n, 1, 25), Exponent(25)).equal);
	// Exponents stay integral even on a refined lattice.
	QSeries fine = h_closed(5, 2, 60);
	CHECK(fine.min_exp().is_integer());
	CHECK(fine.min_exp() == h_valuation(5));
}

TEST_CASE("valuations of H are exact where H is nonzero") {
	for (std::int64_t n : {1, 2, 3, 4, 5, 7, 8, -1, -4}) {
		QSeries h = h_series(n, 1, 30);
		REQUIRE_FALSE(h.is_zero());
		CHECK(h.min_exp() == h_valuation(n));
	}
}

TEST_CASE("the tau-h pair at small indices") {
	BaileyPair pair = new_pair();
	CHECK(pair.a.is_one());
	CHECK(pair.base == 1);
	CHECK(pair.alpha(0, 20).is_zero());
	CHECK(pair.beta(0, 20).is_zero());
	CHECK(same(pair.alpha(1, 40), neg(mul_binomial(eulerq(1, 40), -1, 1))));
	CHECK(same(pair.beta(1, 40), neg(div_binomial(eulerq(1, 40), -1, 2))));
	for (std::int64_t n = 1; n <= 5; ++n) {
		QSeries b = pair.beta(n, 30);
		CHECK(b.min_exp() == pair.beta_valuation(n));
		CHECK(pair.beta_valuation(n) == Exponent(n * (n - 1)));
		CHECK(pair.alpha(n, 30).min_exp() == pair.alpha_valuation(n));
	}
}

TEST_CASE("the defining relation holds for the tau-h pair") {
	BaileyPair pair = new_pair();
	for (std::int64_t n = 0; n <= 6; ++n)
		CHECK(equal_up_to(pair.beta(n, 40),
						  beta_from_alpha(pair.alpha, pair.a, n, 1, 40), Exponent(40))
				  .equal);
}

TEST_CASE("inversion recovers alpha from beta") {
	BaileyPair pair = new_pair();
	for (std::int64_t n = 0; n <= 5; ++n)
		CHECK(equal_up_to(pair.alpha(n, 40),
						  alpha_from_beta(pair.beta, pair.a, n, 1, 40), Exponent(40))
				  .equal);
}

TEST_CASE("round trip through the transform on random polynomial pairs") {
	std::mt19937_64 rng(2718);
	std::uniform_int_distribution<long> coeff(-3, 3);
	std::uniform_int_distribution<std::int64_t> expo(0, 4);
	const std::vector<Monomial> as{Monomial::q(), Monomial::q(Exponent(2)),
								   Monomial(-1, Exponent(1))};
	for (int trial = 0; trial < 8; ++trial) {
		const Monomial &a = as[static_cast<std::size_t>(trial) % as.size()];
		std::vector<std::vector<std::pair<Rational, Exponent>>> betas(5);
		for (auto &terms : betas)
			for (int i = 0; i < 4; ++i) {
				long c = coeff(rng);
				if (c != 0)
					terms.emplace_back(Rational(c), Exponent(expo(rng)));
			}
		auto beta = [&betas](std::int64_t k, std::int64_t oq) {
			return QSeries::from_terms(betas[static_cast<std::size_t>(k)], 1, oq);
		};
		auto alpha = [&beta, &a](std::int64_t k, std::int64_t oq) {
			return alpha_from_beta(beta, a, k, 1, oq);
		};
		std::int64_t n = trial % 5;
		CHECK(equal_up_to(beta_from_alpha(alpha, a, n, 1, 50), beta(n, 50), Exponent(50))
				  .equal);
	}
}

TEST_CASE("a q-power a that collides with the factorial base is a pole") {
	BaileyPair pair = new_pair();
	CHECK_THROWS_AS(beta_from_alpha(pair.alpha, Monomial::q(Exponent(-3)), 3, 1, 20),
					PoleError);
}

TEST_CASE("pair verification reports") {
	VerificationReport rep = verify_pair(new_pair(), 4, 1, 40);
	CHECK(rep.passed());
	CHECK(rep.id == "pair:tau-h");
	CHECK(rep.params.at("n_max") == "4");

	BaileyPair broken = new_pair();
	broken.beta = [](std::int64_t n, std::int64_t oq) {
		return QSeries::from_monomial(Monomial(1, Exponent(n)), 1, oq);
	};
	broken.beta_valuation = [](std::int64_t n) { return Exponent(n); };
	VerificationReport bad = verify_pair(broken, 3, 1, 30);
	CHECK(bad.status == VerifyStatus::mismatch);
	CHECK(bad.first_mismatch.has_value());
	CHECK(bad.params.count("n") == 1);
	CHECK(bad.params.count("side") == 1);
}

TEST_CASE("rebasing stretches generators and valuations") {
	BaileyPair pair = new_pair();
	BaileyPair wide = rebased(pair, 2);
	CHECK(wide.base == 2);
	CHECK(wide.a.is_one());
	CHECK(same(wide.beta(3, 40), substitute_base(pair.beta(3, 20), 2)));
	CHECK(same(wide.alpha(2, 40), substitute_base(pair.alpha(2, 20), 2)));
	CHECK(wide.beta_valuation(3) == Exponent(12));
	CHECK_THROWS_AS(rebased(pair, 0), UsageError);
}

TEST_CASE("lemma sides agree for admissible specializations") {
	BaileyPair pair = new_pair();
	struct Case {
		ParamValue x, y;
	};
	const Case cases[] = {
		{ParamValue::of(Monomial(-1, Exponent(0))), ParamValue::infinity()},
		{ParamValue::of(Monomial(-1, Exponent(1))), ParamValue::infinity()},
		{ParamValue::of(Monomial(-1, Exponent(0))), ParamValue::of(Monomial(-1, Exponent(0)))},
		{ParamValue::infinity(), ParamValue::infinity()},
	};
	for (const Case &c : cases) {
		Sides s = bailey_lemma_sides(pair, c.x, c.y, 1, 30);
		CHECK(s.heuristic_sums == 0);
		CHECK(equal_up_to(s.lhs, s.rhs, Exponent(30)).equal);
	}
}

TEST_CASE("inadmissible lemma parameters are rejected eagerly") {
	BaileyPair pair = new_pair();
	CHECK_THROWS_AS(bailey_lemma_sides(pair, ParamValue::of(Monomial::q()),
									   ParamValue::infinity(), 1, 20),
					PoleError);
	// x*y = q^2 makes (q/xy;q)_inf vanish at its second factor.
	CHECK_THROWS_AS(bailey_lemma_sides(pair, ParamValue::of(Monomial::q(Exponent(3))),
									   ParamValue::of(Monomial::q(Exponent(-2))), 1, 20),
					PoleError);
}

TEST_CASE("specialization transforms hold for the tau-h pair") {
	BaileyPair pair = new_pair();
	Sides a1 = transform_a1(pair, 1, 40);
	CHECK(a1.heuristic_sums == 0);
	CHECK(equal_up_to(a1.lhs, a1.rhs, Exponent(40)).equal);

	Sides a2 = transform_a2(rebased(pair, 2), 1, 40);
	CHECK(a2.heuristic_sums == 0);
	CHECK(equal_up_to(a2.lhs, a2.rhs, Exponent(40)).equal);

	Sides a3 = transform_a3(pair, 1, 40);
	CHECK(a3.heuristic_sums == 0);
	CHECK(equal_up_to(a3.lhs, a3.rhs, Exponent(40)).equal);
}

TEST_CASE("the truncated transform closes at every m") {
	BaileyPair pair = new_pair();
	Sides m0 = truncated_transform(pair, 0, 1, 20);
	CHECK(m0.lhs.is_zero());
	CHECK(m0.rhs.is_zero());

	// At m = 1 both sides collapse to alpha_1 = (q - 1)(q;q)_inf.
	Sides m1 = truncated_transform(pair, 1, 1, 30);
	QSeries alpha1 = neg(mul_binomial(eulerq(1, 30), -1, Exponent(1)));
	CHECK(same(m1.lhs, alpha1));
	CHECK(same(m1.rhs, alpha1));

	for (std::int64_t m : {2, 3, 5}) {
		Sides s = truncated_transform(pair, m, 1, 60);
		CHECK(equal_up_to(s.lhs, s.rhs, Exponent(60)).equal);
	}
}
