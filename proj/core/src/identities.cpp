#include "qseries/identities.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "qseries/bailey.hpp"
#include "qseries/factory.hpp"
#include "qseries/summation.hpp"
#include "assembly.hpp"

namespace qseries {

namespace {

using assembly::divide_built;
using assembly::kills_base_power;
using assembly::poch_factor;
using assembly::poch_val_int;
using assembly::product_exact;
using assembly::SeriesFactor;
using assembly::sign_pow;
using assembly::slater_slice;
using assembly::SlaterSlice;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::int64_t kNoUpperBound = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kNoLowerBound = std::numeric_limits<std::int64_t>::min();

QSeries run_sum(bool bilateral, const TermGenerator &gen, std::int64_t scale,
                std::int64_t order_scaled, VerifyContext &ctx) {
	SumResult r = bilateral ? sum_bilateral(gen, scale, order_scaled)
	                        : sum_unilateral(gen, scale, order_scaled);
	if (r.provenance.heuristic)
		++ctx.heuristic_sums;
	return r.value;
}

std::int64_t window_dip(const QSeries &a) {
	return a.is_zero() ? 0 : std::min<std::int64_t>(0, a.min_exp_scaled());
}

// --- Rogers-Ramanujan --------------------------------------------------------

QSeries rr_sum_side(std::int64_t shift, std::int64_t order_scaled, VerifyContext &ctx) {
	/* sum_{n>=0} q^(n^2 + shift*n) / (q;q)_n */
	TermGenerator g{
	    [shift](std::int64_t n, std::int64_t t) {
		    std::vector<SeriesFactor> fs;
		    fs.push_back(poch_factor(poch_finite(Monomial::q(), 1, n), FactorRole::denominator, 1));
		    return product_exact(fs, Monomial::q(Exponent(n * n + shift * n)), 1, t);
	    },
	    [shift](std::int64_t n) { return Exponent(n * n + shift * n); }};
	return run_sum(false, g, 1, order_scaled, ctx);
}

QSeries rr_product_side(std::int64_t e1, std::int64_t e2, std::int64_t order_scaled) {
	/* 1 / ((q^e1, q^e2; q^5)_inf) */
	std::vector<Monomial> args{Monomial::q(Exponent(e1)), Monomial::q(Exponent(e2))};
	return divide_built(
	    QSeries::constant(1, 1, order_scaled),
	    [&args](std::int64_t t) {
		    return pochhammer_multi(args, Exponent(5), std::nullopt, 1, t, FactorRole::denominator);
	    },
	    1, order_scaled);
}

// --- triple product ----------------------------------------------------------

struct JtpCase {
	Monomial x;
	std::int64_t base;
};

JtpCase jtp_case(const Params &p) {
	std::string c = p.get("case");
	if (c == "q:3")
		return {Monomial::q(), 3};
	if (c == "q^2:5")
		return {Monomial::q(Exponent(2)), 5};
	if (c == "-q:2")
		return {Monomial(-1, Exponent(1)), 2};
	if (c == "-1:1")
		return {Monomial(-1, Exponent(0)), 1};
	throw UsageError("unknown case " + c);
}

// --- main theorem ------------------------------------------------------------

std::pair<ParamValue, ParamValue> xy_case(const Params &p) {
	std::string c = p.get("xy");
	if (c == "-1,inf")
		return {ParamValue::of(Monomial(-1, Exponent(0))), ParamValue::infinity()};
	if (c == "-q,inf")
		return {ParamValue::of(Monomial(-1, Exponent(1))), ParamValue::infinity()};
	if (c == "-1,-1")
		return {ParamValue::of(Monomial(-1, Exponent(0))), ParamValue::of(Monomial(-1, Exponent(0)))};
	if (c == "inf,inf")
		return {ParamValue::infinity(), ParamValue::infinity()};
	throw UsageError("unknown xy case " + c);
}

void require_admissible(const ParamValue &x, const ParamValue &y) {
	if (!x.is_infinity() && kills_base_power(x.mono(), 1))
		throw PoleError("(q/x;q) factors vanish at x = " + x.mono().str());
	if (!y.is_infinity() && kills_base_power(y.mono(), 1))
		throw PoleError("(q/y;q) factors vanish at y = " + y.mono().str());
	if (!x.is_infinity() && !y.is_infinity() && kills_base_power(x.mono() * y.mono(), 1))
		throw PoleError("(q/xy;q)_inf vanishes at xy = " + (x.mono() * y.mono()).str());
}

QSeries main_theorem_lhs(const ParamValue &x, const ParamValue &y, std::int64_t order_scaled,
                         VerifyContext &ctx) {
	/* sum_{n>=0} (x,y;q)_n/(q;q)_{2n} (1/xy)^n (q^n - 1) q^(n^2) */
	require_admissible(x, y);
	TermGenerator g{
	    [&x, &y](std::int64_t n, std::int64_t t) {
		    SlaterSlice sx = slater_slice(x, n, 1, 1, false);
		    SlaterSlice sy = slater_slice(y, n, 1, 1, false);
		    if (sx.zero || sy.zero)
			    return QSeries::zero(1, t);
		    std::vector<SeriesFactor> fs = sx.fs;
		    fs.insert(fs.end(), sy.fs.begin(), sy.fs.end());
		    fs.push_back(poch_factor(poch_finite(Monomial::q(), 1, 2 * n), FactorRole::denominator, 1));
		    Monomial m = sx.mono * sy.mono * Monomial::q(Exponent(n * n));
		    QSeries p = product_exact(fs, m, 1, t);
		    return neg(mul_binomial(p, -1, Exponent(n)));
	    },
	    [&x, &y](std::int64_t n) {
		    SlaterSlice sx = slater_slice(x, n, 1, 1, false);
		    SlaterSlice sy = slater_slice(y, n, 1, 1, false);
		    return sx.vb + sy.vb + Exponent(n * n);
	    }};
	return run_sum(false, g, 1, order_scaled, ctx);
}

QSeries main_theorem_rhs(const ParamValue &x, const ParamValue &y, std::int64_t order_scaled,
                         VerifyContext &ctx) {
	/* ((q/x, q/y;q)_inf / ((q, q/xy;q)_inf)) (S1 - S2 - T1 + T2), where the
	 * S/T pieces are bilateral sums over lengths 3n, 3n, 3n+1, 3n+2 with
	 * exponents 3n^2+2n, 3n^2+n, 3n^2+4n+1, 3n^2+5n+2. */
	require_admissible(x, y);
	std::vector<SeriesFactor> pfs;
	if (!x.is_infinity())
		pfs.push_back(poch_factor(poch_inf(Monomial::q() * x.mono().inverse(), 1),
		                          FactorRole::numerator, 1));
	if (!y.is_infinity())
		pfs.push_back(poch_factor(poch_inf(Monomial::q() * y.mono().inverse(), 1),
		                          FactorRole::numerator, 1));
	pfs.push_back(poch_factor(poch_inf(Monomial::q(), 1), FactorRole::denominator, 1));
	if (!x.is_infinity() && !y.is_infinity())
		pfs.push_back(poch_factor(poch_inf(Monomial::q() * (x.mono() * y.mono()).inverse(), 1),
		                          FactorRole::denominator, 1));
	Exponent vpre(0);
	for (const SeriesFactor &f : pfs)
		vpre = vpre + f.val;
	std::int64_t tbr = order_scaled - std::min<std::int64_t>(0, vpre.to_scaled_floor(1));

	auto piece = [&](std::int64_t resid, auto expfn) {
		TermGenerator g{
		    [&x, &y, resid, expfn](std::int64_t n, std::int64_t t) {
			    std::int64_t len = 3 * n + resid;
			    SlaterSlice sx = slater_slice(x, len, 1, 1, true);
			    SlaterSlice sy = slater_slice(y, len, 1, 1, true);
			    if (sx.zero || sy.zero)
				    return QSeries::zero(1, t);
			    std::vector<SeriesFactor> fs = sx.fs;
			    fs.insert(fs.end(), sy.fs.begin(), sy.fs.end());
			    Monomial m = sx.mono * sy.mono * Monomial::q(Exponent(expfn(n)));
			    return product_exact(fs, m, 1, t);
		    },
		    [&x, &y, resid, expfn](std::int64_t n) {
			    std::int64_t len = 3 * n + resid;
			    SlaterSlice sx = slater_slice(x, len, 1, 1, true);
			    SlaterSlice sy = slater_slice(y, len, 1, 1, true);
			    return sx.vb + sy.vb + Exponent(expfn(n));
		    }};
		return run_sum(true, g, 1, tbr, ctx);
	};
	QSeries s1 = piece(0, [](std::int64_t n) { return 3 * n * n + 2 * n; });
	QSeries s2 = piece(0, [](std::int64_t n) { return 3 * n * n + n; });
	QSeries t1 = piece(1, [](std::int64_t n) { return 3 * n * n + 4 * n + 1; });
	QSeries t2 = piece(2, [](std::int64_t n) { return 3 * n * n + 5 * n + 2; });
	QSeries bracket = add(sub(sub(s1, s2), t1), t2);

	std::int64_t dip = window_dip(bracket);
	QSeries pre = product_exact(pfs, Monomial::one(), 1, order_scaled - dip);
	return truncate(mul(pre, bracket), Exponent(order_scaled));
}

// --- modulus 30 / 24 / 15 sum sides ------------------------------------------

QSeries mod30_sum_side(int sigma, std::int64_t order_scaled, VerifyContext &ctx) {
	/* sum_{n>=0} (-s)^n (sq;q^2)_n / (q^2;q^2)_{2n} (q^(2n) - 1) q^(3n^2-2n) */
	TermGenerator g{
	    [sigma](std::int64_t n, std::int64_t t) {
		    std::vector<SeriesFactor> fs;
		    fs.push_back(poch_factor(poch_finite(Monomial(sigma, Exponent(1)), Exponent(2), n),
		                             FactorRole::numerator, 1));
		    fs.push_back(poch_factor(poch_finite(Monomial::q(Exponent(2)), Exponent(2), 2 * n),
		                             FactorRole::denominator, 1));
		    Monomial m(sigma == 1 ? sign_pow(n) : Rational(1), Exponent(3 * n * n - 2 * n));
		    QSeries p = product_exact(fs, m, 1, t);
		    return neg(mul_binomial(p, -1, Exponent(2 * n)));
	    },
	    [](std::int64_t n) { return Exponent(3 * n * n - 2 * n); }};
	return run_sum(false, g, 1, order_scaled, ctx);
}

QSeries mod24_lhs(std::int64_t order_scaled, VerifyContext &ctx) {
	/* (q;q)_inf sum_{n>=1} q^(2n^2-n) / ((1+q^n)(q;q)_{2n-1}) */
	TermGenerator g{
	    [](std::int64_t n, std::int64_t t) {
		    if (n == 0)
			    return QSeries::zero(1, t);
		    std::vector<SeriesFactor> fs;
		    fs.push_back(poch_factor(poch_finite(Monomial::q(), 1, 2 * n - 1),
		                             FactorRole::denominator, 1));
		    QSeries p = product_exact(fs, Monomial::q(Exponent(2 * n * n - n)), 1, t);
		    return div_binomial(p, 1, Exponent(n));
	    },
	    [](std::int64_t n) { return Exponent(n == 0 ? 0 : 2 * n * n - n); }};
	QSeries s = run_sum(false, g, 1, order_scaled, ctx);
	std::int64_t dip = window_dip(s);
	return truncate(mul(eulerq(1, order_scaled - dip), s), Exponent(order_scaled));
}

QSeries mod24_rhs(std::int64_t order_scaled) {
	/* (-q^10,-q^14,q^24;q^24)_inf - (-q^11,-q^13,q^24;q^24)_inf
	 * + q (-q^5,-q^19,q^24;q^24)_inf - q^2 (-q^2,-q^22,q^24;q^24)_inf */
	auto tp = [](std::int64_t e, std::int64_t t) {
		return triple_product_rhs(Monomial(-1, Exponent(e)), Exponent(24), 1, t);
	};
	QSeries out = sub(tp(10, order_scaled), tp(11, order_scaled));
	out = add(out, shifted(tp(5, order_scaled - 1), Monomial::q(Exponent(1))));
	return sub(out, shifted(tp(2, order_scaled - 2), Monomial::q(Exponent(2))));
}

QSeries mod15_lhs(std::int64_t order_scaled, VerifyContext &ctx) {
	/* sum_{n>=1} ((-q;q)_{n-1} / (q;q)_{2n-1}) q^((3n^2-n)/2) / (1+q^n), on
	 * the half-integer lattice */
	TermGenerator g{
	    [](std::int64_t n, std::int64_t t) {
		    if (n == 0)
			    return QSeries::zero(2, t);
		    std::vector<SeriesFactor> fs;
		    fs.push_back(poch_factor(poch_finite(Monomial(-1, Exponent(1)), 1, n - 1),
		                             FactorRole::numerator, 2));
		    fs.push_back(poch_factor(poch_finite(Monomial::q(), 1, 2 * n - 1),
		                             FactorRole::denominator, 2));
		    QSeries p = product_exact(fs, Monomial::q(Exponent(3 * n * n - n, 2)), 2, t);
		    return div_binomial(p, 1, Exponent(n));
	    },
	    [](std::int64_t n) { return n == 0 ? Exponent(0) : Exponent(3 * n * n - n, 2); }};
	return run_sum(false, g, 2, order_scaled, ctx);
}

QSeries mod15_rhs(std::int64_t order_scaled, VerifyContext &ctx) {
	/* (1/phi(-q)) [ -sum_{n in Z} ((1-q^(3n))/(1+q^(3n))) q^((15n^2+n)/2)
	 *               +sum_{n in Z} ((1-q^(3n+1))/(1+q^(3n+1))) q^((15n^2+11n)/2+1) ],
	 * each summand taken literally (the n=0 term of the first sum is 0/2). */
	auto ratio_term = [](std::int64_t m, const Exponent &e, std::int64_t t) {
		const std::pair<Rational, Exponent> ts[] = {{Rational(1), e},
		                                            {Rational(-1), e + Exponent(m)}};
		QSeries numer = QSeries::from_terms(ts, 2, t);
		return div_binomial(numer, 1, Exponent(m));
	};
	TermGenerator g1{
	    [&ratio_term](std::int64_t n, std::int64_t t) {
		    return ratio_term(3 * n, Exponent(15 * n * n + n, 2), t);
	    },
	    [](std::int64_t n) { return Exponent(15 * n * n + n, 2); }};
	TermGenerator g2{
	    [&ratio_term](std::int64_t n, std::int64_t t) {
		    return ratio_term(3 * n + 1, Exponent(15 * n * n + 11 * n + 2, 2), t);
	    },
	    [](std::int64_t n) { return Exponent(15 * n * n + 11 * n + 2, 2); }};
	QSeries b1 = run_sum(true, g1, 2, order_scaled, ctx);
	QSeries b2 = run_sum(true, g2, 2, order_scaled, ctx);
	return divide_built(
	    sub(b2, b1), [](std::int64_t t) { return phi_neg_q(2, t); }, 2, order_scaled);
}

// --- builders shared by several entries --------------------------------------

QSeries pentagonal_gen_lhs(std::int64_t n, std::int64_t order_scaled, VerifyContext &ctx) {
	/* sum_{k in Z} tau_3(k) (q^-k, q^k; q)_n q^k; the summand vanishes for
	 * 0 <= k <= n-1 and -(n-1) <= k <= 0. */
	TermGenerator g{
	    [n](std::int64_t k, std::int64_t t) {
		    PochSpec pm = poch_finite(Monomial::q(Exponent(-k)), 1, n);
		    PochSpec pp = poch_finite(Monomial::q(Exponent(k)), 1, n);
		    if (poch_vanishing_factor(pm) || poch_vanishing_factor(pp))
			    return QSeries::zero(1, t);
		    std::vector<SeriesFactor> fs;
		    fs.push_back(poch_factor(pm, FactorRole::numerator, 1));
		    fs.push_back(poch_factor(pp, FactorRole::numerator, 1));
		    return product_exact(fs, tau(3, k) * Monomial::q(Exponent(k)), 1, t);
	    },
	    [n](std::int64_t k) {
		    return Exponent(3 * k * (k - 1) / 2 + k + poch_val_int(-k, n) + poch_val_int(k, n));
	    }};
	return run_sum(true, g, 1, order_scaled, ctx);
}

QSeries euler_shifted(std::int64_t exp, std::int64_t order_scaled) {
	// (q;q)_inf q^exp
	return shifted(eulerq(1, order_scaled - exp), Monomial::q(Exponent(exp)));
}

QSeries key_finite_lhs(std::int64_t n, std::int64_t order_scaled) {
	/* sum_{k=0..n} [2n, n+k]_q tau(k)(1-q^k) H(k); k=0 contributes nothing */
	QSeries acc = QSeries::zero(1, order_scaled);
	for (std::int64_t k = 1; k <= n; ++k) {
		std::vector<SeriesFactor> fs;
		fs.push_back({[n, k](std::int64_t t) { return qbinomial(2 * n, n + k, 1, t); },
		              Exponent(0)});
		fs.push_back({[k](std::int64_t t) { return h_series(k, 1, t); }, h_valuation(k)});
		QSeries term = product_exact(fs, tau(1, k), 1, order_scaled);
		acc = add(acc, mul_binomial(term, -1, Exponent(k)));
	}
	return acc;
}

QSeries h_inverse_rhs(std::int64_t n, std::int64_t order_scaled) {
	/* (q;q)_inf sum_{k=0..n} (-1)^(k+1) ((q^(2k);q)_{n-k}/(q;q)_{n-k})
	 * ((1+q^n)/(1+q^k)) q^(k(3k-1)/2 - nk); the k=0 summand vanishes with
	 * (q^0;q)_n for n >= 1. */
	QSeries acc = QSeries::zero(1, order_scaled);
	for (std::int64_t k = 1; k <= n; ++k) {
		std::vector<SeriesFactor> fs;
		fs.push_back(poch_factor(poch_finite(Monomial::q(Exponent(2 * k)), 1, n - k),
		                         FactorRole::numerator, 1));
		fs.push_back(poch_factor(poch_finite(Monomial::q(), 1, n - k),
		                         FactorRole::denominator, 1));
		Monomial m(sign_pow(k + 1), Exponent(k * (3 * k - 1) / 2 - n * k));
		QSeries term = product_exact(fs, m, 1, order_scaled);
		term = mul_binomial(term, 1, Exponent(n));
		term = div_binomial(term, 1, Exponent(k));
		acc = add(acc, term);
	}
	std::int64_t dip = window_dip(acc);
	return truncate(mul(eulerq(1, order_scaled - dip), acc), Exponent(order_scaled));
}

QSeries truncated_sum_lhs(std::int64_t m, std::int64_t order_scaled) {
	/* sum_{n=0..m} (q^n - 1) q^(n(n-1)) tau(n-m) (q^(m-n+1);q)_{2n} / (q;q)_{2n} */
	QSeries acc = QSeries::zero(1, order_scaled);
	for (std::int64_t n = 1; n <= m; ++n) {
		QSeries p =
		    pochhammer(poch_finite(Monomial::q(Exponent(m - n + 1)), 1, 2 * n), 1, order_scaled);
		p = shifted(p, Monomial(sign_pow(n - m),
		                        Exponent(n * (n - 1) + (n - m) * (n - m - 1) / 2)));
		p = neg(mul_binomial(p, -1, Exponent(n)));
		for (std::int64_t j = 1; j <= 2 * n; ++j)
			p = div_binomial(p, -1, Exponent(j));
		acc = add(acc, truncate(p, Exponent(order_scaled)));
	}
	return acc;
}

QSeries truncated_sum_rhs(std::int64_t m, std::int64_t order_scaled) {
	/* (1-q^L) q^(3L^2+L)      for m = 3L
	 * (q^(2L+1)-1) q^(3L^2+2L) for m = 3L+1
	 * (1-q^(L+1)) q^(3L^2+4L+1) for m = 3L+2 */
	std::int64_t L = m / 3, r = m % 3;
	std::vector<std::pair<Rational, Exponent>> ts;
	if (r == 0)
		ts = {{Rational(1), Exponent(3 * L * L + L)}, {Rational(-1), Exponent(3 * L * L + 2 * L)}};
	else if (r == 1)
		ts = {{Rational(1), Exponent(3 * L * L + 4 * L + 1)},
		      {Rational(-1), Exponent(3 * L * L + 2 * L)}};
	else
		ts = {{Rational(1), Exponent(3 * L * L + 4 * L + 1)},
		      {Rational(-1), Exponent(3 * L * L + 5 * L + 2)}};
	return QSeries::from_terms(ts, 1, order_scaled);
}

std::vector<Identity> make_registry() {
	std::vector<Identity> out;

	out.push_back(Identity{
	    "rr1",
	    "sum_{n>=0} q^(n^2)/(q;q)_n = 1/((q,q^4;q^5)_inf)",
	    1,
	    5,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return rr_sum_side(0, t, ctx); },
	    [](const Params &, std::int64_t t, VerifyContext &) { return rr_product_side(1, 4, t); }});

	out.push_back(Identity{
	    "rr2",
	    "sum_{n>=0} q^(n(n+1))/(q;q)_n = 1/((q^2,q^3;q^5)_inf)",
	    1,
	    5,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return rr_sum_side(1, t, ctx); },
	    [](const Params &, std::int64_t t, VerifyContext &) { return rr_product_side(2, 3, t); }});

	out.push_back(Identity{
	    "jacobi-triple",
	    "sum_{n in Z} (-1)^n q^(b n(n-1)/2) x^n = (x, q^b/x, q^b; q^b)_inf",
	    1,
	    10,
	    ChoiceSet{"case", {"q:3", "q^2:5", "-q:2", "-1:1"}},
	    [](const Params &p, std::int64_t t, VerifyContext &ctx) {
		    JtpCase c = jtp_case(p);
		    TermGenerator g{
		        [&c](std::int64_t n, std::int64_t tt) {
			        return QSeries::from_monomial(tau(c.base, n) * c.x.pow(n), 1, tt);
		        },
		        [&c](std::int64_t n) { return tau(c.base, n).exp + c.x.exp * Exponent(n); }};
		    return run_sum(true, g, 1, t, ctx);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    JtpCase c = jtp_case(p);
		    return triple_product_rhs(c.x, Exponent(c.base), 1, t);
	    }});

	out.push_back(Identity{
	    "pentagonal-gen",
	    "sum_{k in Z} tau_3(k) (q^-k, q^k; q)_n q^k = (q;q)_inf q^(n(n-1))",
	    1,
	    10,
	    IntRange{"n", 0, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &ctx) {
		    return pentagonal_gen_lhs(p.get_int("n"), t, ctx);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    std::int64_t n = p.get_int("n");
		    return euler_shifted(n * (n - 1), t);
	    }});

	out.push_back(Identity{
	    "h-closed",
	    "H(n) = sum_{k in Z} tau_3(k)(1-q^k) q^((1+n)k) equals (q;q)_inf times "
	    "the two-term Laurent factor picked by n mod 3",
	    1,
	    10,
	    IntRange{"n", kNoLowerBound, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return h_series(p.get_int("n"), 1, t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return h_closed(p.get_int("n"), 1, t);
	    }});

	out.push_back(Identity{
	    "h-antisym",
	    "H(-n) = -H(n)",
	    1,
	    10,
	    IntRange{"n", kNoLowerBound, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return h_series(-p.get_int("n"), 1, t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return neg(h_series(p.get_int("n"), 1, t));
	    }});

	out.push_back(Identity{
	    "key-finite",
	    "sum_{k=0..n} [2n, n+k]_q tau(k)(1-q^k) H(k) = (q;q)_inf (q^n - 1) q^(n(n-1))",
	    1,
	    10,
	    IntRange{"n", 0, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return key_finite_lhs(p.get_int("n"), t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    std::int64_t n = p.get_int("n");
		    if (n == 0)
			    return QSeries::zero(1, t);
		    return neg(mul_binomial(euler_shifted(n * (n - 1), t), -1, Exponent(n)));
	    }});

	out.push_back(Identity{
	    "bailey-pair-new",
	    "the tau-h pair satisfies beta_n = sum_{k=0..n} alpha_k/((q;q)_{n-k}(q;q)_{n+k})",
	    1,
	    10,
	    IntRange{"n", 0, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return new_pair().beta(p.get_int("n"), t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    BaileyPair pair = new_pair();
		    return beta_from_alpha(pair.alpha, Monomial::one(), p.get_int("n"), 1, t);
	    }});

	out.push_back(Identity{
	    "h-inverse",
	    "H(n) = (q;q)_inf sum_{k=0..n} (-1)^(k+1) ((q^(2k);q)_{n-k}/(q;q)_{n-k}) "
	    "((1+q^n)/(1+q^k)) q^(k(3k-1)/2 - nk), n >= 1",
	    1,
	    10,
	    IntRange{"n", 1, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return h_series(p.get_int("n"), 1, t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return h_inverse_rhs(p.get_int("n"), t);
	    }});

	out.push_back(Identity{
	    "main-theorem",
	    "sum_{n>=0} (x,y;q)_n/(q;q)_{2n} (1/xy)^n (q^n-1) q^(n^2) = "
	    "((q/x,q/y;q)_inf/((q,q/xy;q)_inf)) (S1 - S2 - T1 + T2)",
	    1,
	    20,
	    ChoiceSet{"xy", {"-1,inf", "-q,inf", "-1,-1", "inf,inf"}},
	    [](const Params &p, std::int64_t t, VerifyContext &ctx) {
		    auto [x, y] = xy_case(p);
		    return main_theorem_lhs(x, y, t, ctx);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &ctx) {
		    auto [x, y] = xy_case(p);
		    return main_theorem_rhs(x, y, t, ctx);
	    }});

	out.push_back(Identity{
	    "mod30-plus",
	    "sum_{n>=0} (-1)^n (q;q^2)_n/(q^2;q^2)_{2n} (q^(2n)-1) q^(3n^2-2n) equals "
	    "its modulus-30 product side",
	    1,
	    120,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return mod30_sum_side(1, t, ctx); },
	    [](const Params &, std::int64_t t, VerifyContext &) {
		    return product_side_mod30(1, 1, t);
	    }});

	out.push_back(Identity{
	    "mod30-minus",
	    "sum_{n>=0} (-q;q^2)_n/(q^2;q^2)_{2n} (q^(2n)-1) q^(3n^2-2n) equals "
	    "its modulus-30 product side",
	    1,
	    120,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) {
		    return mod30_sum_side(-1, t, ctx);
	    },
	    [](const Params &, std::int64_t t, VerifyContext &) {
		    return product_side_mod30(-1, 1, t);
	    }});

	out.push_back(Identity{
	    "mod30-psi",
	    "the minus-sign modulus-30 sum equals ((q^30;q^30)_inf/psi(-q)) "
	    "[(-q^17,-q^13;q^30)_inf - (-q^11,-q^19;q^30)_inf - q(-q^7,-q^23;q^30)_inf "
	    "+ q^3(-q,-q^29;q^30)_inf]",
	    1,
	    30,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) {
		    return mod30_sum_side(-1, t, ctx);
	    },
	    [](const Params &, std::int64_t t, VerifyContext &) {
		    auto pairm = [](std::int64_t e1, std::int64_t e2, std::int64_t tt) {
			    std::vector<Monomial> args{Monomial(-1, Exponent(e1)), Monomial(-1, Exponent(e2))};
			    return pochhammer_multi(args, Exponent(30), std::nullopt, 1, tt);
		    };
		    QSeries br = sub(pairm(17, 13, t), pairm(11, 19, t));
		    br = sub(br, shifted(pairm(7, 23, t - 1), Monomial::q(Exponent(1))));
		    br = add(br, shifted(pairm(1, 29, t - 3), Monomial::q(Exponent(3))));
		    std::vector<SeriesFactor> pfs;
		    pfs.push_back(poch_factor(poch_inf(Monomial::q(Exponent(30)), Exponent(30)),
		                              FactorRole::numerator, 1));
		    pfs.push_back(assembly::reciprocal(
		        [](std::int64_t tt) { return psi_neg_q(1, tt); }, Exponent(0), 1));
		    std::int64_t dip = window_dip(br);
		    QSeries pre = product_exact(pfs, Monomial::one(), 1, t - dip);
		    return truncate(mul(pre, br), Exponent(t));
	    }});

	out.push_back(Identity{
	    "mod24",
	    "(q;q)_inf sum_{n>=1} q^(2n^2-n)/((1+q^n)(q;q)_{2n-1}) = "
	    "(-q^10,-q^14,q^24;q^24)_inf - (-q^11,-q^13,q^24;q^24)_inf "
	    "+ q(-q^5,-q^19,q^24;q^24)_inf - q^2(-q^2,-q^22,q^24;q^24)_inf",
	    1,
	    24,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return mod24_lhs(t, ctx); },
	    [](const Params &, std::int64_t t, VerifyContext &) { return mod24_rhs(t); }});

	out.push_back(Identity{
	    "mod15",
	    "sum_{n>=1} ((-q;q)_{n-1}/(q;q)_{2n-1}) q^((3n^2-n)/2)/(1+q^n) equals a "
	    "bilateral theta combination over phi(-q)",
	    2,
	    15,
	    NoParams{},
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return mod15_lhs(t, ctx); },
	    [](const Params &, std::int64_t t, VerifyContext &ctx) { return mod15_rhs(t, ctx); }});

	out.push_back(Identity{
	    "truncated-sum",
	    "sum_{n=0..m} (q^n-1) q^(n(n-1)) tau(n-m) (q^(m-n+1);q)_{2n}/(q;q)_{2n} "
	    "equals the two-term polynomial picked by m mod 3",
	    1,
	    10,
	    IntRange{"m", 0, kNoUpperBound},
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return truncated_sum_lhs(p.get_int("m"), t);
	    },
	    [](const Params &p, std::int64_t t, VerifyContext &) {
		    return truncated_sum_rhs(p.get_int("m"), t);
	    }});

	return out;
}

void validate_params(const Identity &ident, const Params &p) {
	std::visit(
	    overloaded{
	        [&](const NoParams &) {
		        if (!p.raw().empty())
			        throw UsageError(ident.id + " takes no parameters");
	        },
	        [&](const IntRange &r) {
		        if (p.raw().size() != 1 || !p.has(r.name))
			        throw UsageError(ident.id + " takes exactly the integer parameter " + r.name);
		        std::int64_t v = p.get_int(r.name);
		        if (v < r.lo || v > r.hi) {
			        std::string span =
			            (r.hi == kNoUpperBound)
			                ? (">= " + std::to_string(r.lo))
			                : ("in [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
			        throw UsageError(ident.id + " needs " + r.name + " " + span);
		        }
	        },
	        [&](const ChoiceSet &c) {
		        if (p.raw().size() != 1 || !p.has(c.name))
			        throw UsageError(ident.id + " takes exactly the parameter " + c.name);
		        std::string v = p.get(c.name);
		        if (std::find(c.values.begin(), c.values.end(), v) == c.values.end()) {
			        std::string all;
			        for (const std::string &cand : c.values)
				        all += (all.empty() ? "" : ", ") + cand;
			        throw UsageError(ident.id + ": " + c.name + "=" + v + " is not one of " + all);
		        }
	        }},
	    ident.space);
}

} // namespace

std::int64_t Params::get_int(const std::string &key) const {
	std::string v = get(key);
	std::int64_t out = 0;
	auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
	if (ec != std::errc() || p != v.data() + v.size())
		throw UsageError("parameter " + key + "=" + v + " is not an integer");
	return out;
}

std::string Params::get(const std::string &key) const {
	auto it = kv_.find(key);
	if (it == kv_.end())
		throw UsageError("missing parameter " + key);
	return it->second;
}

const std::vector<Identity> &registry() {
	static const std::vector<Identity> r = make_registry();
	return r;
}

const Identity *find_identity(const std::string &id) {
	for (const Identity &ident : registry())
		if (ident.id == id)
			return &ident;
	return nullptr;
}

std::vector<Params> enumerate_params(const Identity &ident, const Caps &caps) {
	std::vector<Params> out;
	std::visit(overloaded{
	               [&](const NoParams &) { out.emplace_back(); },
	               [&](const IntRange &r) {
		               std::int64_t lo = std::max(r.lo, -caps.range_cap);
		               std::int64_t hi = std::min(r.hi, caps.range_cap);
		               for (std::int64_t v = lo; v <= hi; ++v)
			               out.push_back(Params(
			                   std::map<std::string, std::string>{{r.name, std::to_string(v)}}));
	               },
	               [&](const ChoiceSet &c) {
		               for (const std::string &v : c.values)
			               out.push_back(Params(
			                   std::map<std::string, std::string>{{c.name, v}}));
	               }},
	           ident.space);
	return out;
}

VerificationReport verify(const Identity &ident, const Params &params, std::int64_t order_q) {
	validate_params(ident, params);
	if (order_q < 0)
		throw UsageError("negative order");
	std::int64_t oq = std::max(order_q, ident.min_order);
	VerificationReport rep;
	rep.id = ident.id;
	rep.params = params.raw();
	rep.order = oq;
	rep.scale = ident.scale;
	auto t0 = std::chrono::steady_clock::now();
	try {
		VerifyContext ctx;
		std::int64_t t = oq * ident.scale;
		QSeries lhs = ident.lhs(params, t, ctx);
		QSeries rhs = ident.rhs(params, t, ctx);
		rep.heuristic_sums = ctx.heuristic_sums;
		Comparison c = equal_up_to(lhs, rhs, Exponent(t, ident.scale));
		rep.status = c.equal ? VerifyStatus::pass : VerifyStatus::mismatch;
		rep.first_mismatch = c.first_mismatch;
	} catch (const Error &e) {
		rep.status = VerifyStatus::error;
		rep.message = e.what();
	}
	rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
	                     std::chrono::steady_clock::now() - t0)
	                     .count();
	return rep;
}

std::vector<VerificationReport> verify_all(std::int64_t order_q, int jobs, const Caps &caps) {
	struct Task {
		const Identity *ident;
		Params params;
	};
	std::vector<Task> tasks;
	for (const Identity &ident : registry())
		for (Params &p : enumerate_params(ident, caps))
			tasks.push_back(Task{&ident, std::move(p)});
	std::vector<VerificationReport> out(tasks.size());
	auto run = [&](std::size_t i) { out[i] = verify(*tasks[i].ident, tasks[i].params, order_q); };
	std::size_t workers = std::min<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs),
	                                            tasks.size());
	if (workers <= 1) {
		for (std::size_t i = 0; i < tasks.size(); ++i)
			run(i);
	} else {
		std::atomic<std::size_t> next{0};
		std::vector<std::thread> pool;
		pool.reserve(workers);
		for (std::size_t w = 0; w < workers; ++w)
			pool.emplace_back([&] {
				for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
					run(i);
			});
		for (std::thread &th : pool)
			th.join();
	}
	return out;
}

QSeries product_side_mod30(int sign, std::int64_t scale, std::int64_t order_scaled) {
	Rational s(sign);
	auto tp = [&](std::int64_t e, std::int64_t t) {
		return triple_product_rhs(Monomial(s, Exponent(e)), Exponent(30), scale, t);
	};
	std::int64_t u = scale; // lattice units per whole power of q
	QSeries br = sub(tp(13, order_scaled), tp(11, order_scaled));
	br = add(br, scaled(shifted(tp(7, order_scaled - u), Monomial::q(Exponent(1))), s));
	br = sub(br, scaled(shifted(tp(1, order_scaled - 3 * u), Monomial::q(Exponent(3))), s));
	std::vector<SeriesFactor> pfs;
	pfs.push_back(poch_factor(poch_inf(Monomial(s, Exponent(1)), Exponent(2)),
	                          FactorRole::numerator, scale));
	pfs.push_back(poch_factor(poch_inf(Monomial::q(Exponent(2)), Exponent(2)),
	                          FactorRole::denominator, scale));
	std::int64_t dip = window_dip(br);
	QSeries pre = product_exact(pfs, Monomial::one(), scale, order_scaled - dip);
	return truncate(mul(pre, br), Exponent(order_scaled, scale));
}

const char *to_string(VerifyStatus s) {
	switch (s) {
	case VerifyStatus::pass:
		return "pass";
	case VerifyStatus::mismatch:
		return "mismatch";
	case VerifyStatus::error:
		return "error";
	}
	return "unknown";
}

nlohmann::json report_to_json(const VerificationReport &r) {
	nlohmann::json j;
	j["identity"] = r.id;
	j["params"] = r.params;
	j["order"] = r.order;
	j["scale"] = r.scale;
	j["status"] = to_string(r.status);
	if (r.first_mismatch)
		j["first_mismatch"] = nlohmann::json{{"exponent", r.first_mismatch->exponent.str()},
		                                     {"lhs", r.first_mismatch->lhs.str()},
		                                     {"rhs", r.first_mismatch->rhs.str()}};
	else
		j["first_mismatch"] = nullptr;
	j["heuristic_sums"] = r.heuristic_sums;
	j["elapsed_ms"] = r.elapsed_ms;
	if (!r.message.empty())
		j["message"] = r.message;
	return j;
}

std::string report_line(const VerificationReport &r) {
	std::ostringstream os;
	os << std::left << std::setw(8) << to_string(r.status) << ' ' << r.id;
	for (const auto &[k, v] : r.params)
		os << ' ' << k << '=' << v;
	os << " order=" << r.order;
	if (r.scale != 1)
		os << " scale=" << r.scale;
	if (r.heuristic_sums != 0)
		os << " heuristic_sums=" << r.heuristic_sums;
	if (r.first_mismatch)
		os << " first mismatch at q^" << r.first_mismatch->exponent.str()
		   << ": lhs=" << r.first_mismatch->lhs.str() << " rhs=" << r.first_mismatch->rhs.str();
	if (!r.message.empty())
		os << " (" << r.message << ')';
	return os.str();
}

} // namespace qseries
