#include "qseries/bailey.hpp"

#include <chrono>
#include <vector>

#include "assembly.hpp"

namespace qseries {

namespace {

using assembly::ceil_div;
using assembly::divide_built;
using assembly::kills_base_power;
using assembly::kVanishedBound;
using assembly::poch_factor;
using assembly::product_exact;
using assembly::SeriesFactor;
using assembly::sign_pow;
using assembly::slater_slice;
using assembly::SlaterSlice;

constexpr std::int64_t kQ = 1;

std::int64_t half_even(std::int64_t t) {
	if (t % 2 != 0)
		throw LatticeError("closed form produced a half-integer exponent");
	return t / 2;
}

SeriesFactor generator_factor(const std::function<QSeries(std::int64_t, std::int64_t)> &gen,
                              std::int64_t n, std::int64_t scale, const Exponent &val) {
	return {[&gen, n, scale](std::int64_t t) { return gen(n, ceil_div(t, scale)); }, val};
}

Exponent alpha_val(const BaileyPair &pair, std::int64_t n) {
	return pair.alpha_valuation ? pair.alpha_valuation(n) : Exponent(0);
}

Exponent beta_val(const BaileyPair &pair, std::int64_t n) {
	return pair.beta_valuation ? pair.beta_valuation(n) : Exponent(0);
}

} // namespace

QSeries h_series(std::int64_t n, std::int64_t scale, std::int64_t order_scaled) {
	TermGenerator gen;
	gen.term = [n, scale](std::int64_t k, std::int64_t t) {
		Monomial lead = tau(3, k) * Monomial::q(Exponent((1 + n) * k));
		std::vector<std::pair<Rational, Exponent>> terms;
		terms.emplace_back(lead.coeff, lead.exp);
		terms.emplace_back(-lead.coeff, lead.exp + Exponent(k));
		return QSeries::from_terms(terms, scale, t);
	};
	gen.valuation_bound = [n](std::int64_t k) {
		return Exponent(3 * k * (k - 1) / 2 + (1 + n) * k + std::min<std::int64_t>(0, k));
	};
	return sum_bilateral(gen, scale, order_scaled).value;
}

QSeries h_ratio(std::int64_t n, std::int64_t scale, std::int64_t order_scaled) {
	const std::int64_t L = floor_div(n, 3);
	const std::int64_t r = n - 3 * L;
	const Rational c = sign_pow(L);
	std::vector<std::pair<Rational, Exponent>> terms;
	if (r == 0) {
		if (L != 0) {
			const std::int64_t e = -half_even(L * (3 * L + 1));
			terms.emplace_back(c, Exponent(e + L));
			terms.emplace_back(-c, Exponent(e));
		}
	} else if (r == 1) {
		terms.emplace_back(c, Exponent(-half_even(L * (3 * L + 1))));
	} else {
		terms.emplace_back(c, Exponent(-half_even((3 * L + 2) * (L + 1))));
	}
	return QSeries::from_terms(terms, scale, order_scaled);
}

Exponent h_valuation(std::int64_t n) {
	const std::int64_t L = floor_div(n, 3);
	const std::int64_t r = n - 3 * L;
	if (r == 0)
		return Exponent(-L * (3 * L + 1) / 2 + std::min<std::int64_t>(L, 0));
	if (r == 1)
		return Exponent(-L * (3 * L + 1) / 2);
	return Exponent(-(3 * L + 2) * (L + 1) / 2);
}

QSeries h_closed(std::int64_t n, std::int64_t scale, std::int64_t order_scaled) {
	std::vector<SeriesFactor> fs;
	fs.push_back({[scale](std::int64_t t) { return eulerq(scale, t); }, Exponent(0)});
	fs.push_back({[n, scale](std::int64_t t) { return h_ratio(n, scale, t); }, h_valuation(n)});
	return product_exact(fs, Monomial::one(), scale, order_scaled);
}

BaileyPair new_pair() {
	BaileyPair p;
	p.label = "tau-h";
	p.alpha = [](std::int64_t n, std::int64_t order_q) {
		if (n < 0)
			throw UsageError("alpha_n needs n >= 0");
		if (n == 0)
			return QSeries::zero(kQ, order_q);
		const std::int64_t texp = n * (n - 1) / 2;
		QSeries h = h_closed(n, kQ, order_q - texp);
		return shifted(mul_binomial(h, Rational(-1), Exponent(n)), tau(1, n));
	};
	p.beta = [](std::int64_t n, std::int64_t order_q) {
		if (n < 0)
			throw UsageError("beta_n needs n >= 0");
		if (n == 0)
			return QSeries::zero(kQ, order_q);
		const std::int64_t bexp = n * (n - 1);
		QSeries e = neg(mul_binomial(eulerq(kQ, order_q - bexp), Rational(-1), Exponent(n)));
		for (std::int64_t j = 1; j <= 2 * n; ++j)
			e = div_binomial(e, Rational(-1), Exponent(j));
		return shifted(e, Monomial::q(Exponent(bexp)));
	};
	p.alpha_valuation = [](std::int64_t n) {
		if (n <= 0)
			return Exponent(0);
		return Exponent(n * (n - 1) / 2) + h_valuation(n);
	};
	p.beta_valuation = [](std::int64_t n) { return Exponent(n <= 0 ? 0 : n * (n - 1)); };
	return p;
}

BaileyPair rebased(const BaileyPair &pair, std::int64_t m) {
	if (m < 1)
		throw UsageError("rebasing needs m >= 1");
	BaileyPair p;
	p.a = Monomial(pair.a.coeff, pair.a.exp * Exponent(m));
	p.base = pair.base * m;
	p.label = pair.label + (m == 1 ? "" : "*" + std::to_string(m));
	p.alpha = [inner = pair.alpha, m](std::int64_t n, std::int64_t order_q) {
		return substitute_base(inner(n, ceil_div(order_q, m)), m);
	};
	p.beta = [inner = pair.beta, m](std::int64_t n, std::int64_t order_q) {
		return substitute_base(inner(n, ceil_div(order_q, m)), m);
	};
	if (pair.alpha_valuation)
		p.alpha_valuation = [inner = pair.alpha_valuation, m](std::int64_t n) {
			return inner(n) * Exponent(m);
		};
	if (pair.beta_valuation)
		p.beta_valuation = [inner = pair.beta_valuation, m](std::int64_t n) {
			return inner(n) * Exponent(m);
		};
	return p;
}

QSeries beta_from_alpha(const std::function<QSeries(std::int64_t, std::int64_t)> &alpha,
                        const Monomial &a, std::int64_t n, std::int64_t scale,
                        std::int64_t order_scaled) {
	if (n < 0)
		throw UsageError("beta_n needs n >= 0");
	const std::int64_t s = lcm64(scale, a.exp.den);
	const std::int64_t T = order_scaled * (s / scale);
	const Monomial q1 = Monomial::q(Exponent(1));
	const Monomial aq = a * q1;
	for (std::int64_t k = 0; k <= n; ++k) {
		PochSpec spec = poch_finite(aq, Exponent(1), n + k);
		if (auto j = poch_vanishing_factor(spec))
			throw PoleError(spec.str() + " vanishes at factor " + std::to_string(*j) +
			                " for k = " + std::to_string(k));
	}
	QSeries acc = QSeries::zero(s, T);
	for (std::int64_t k = 0; k <= n; ++k) {
		std::vector<SeriesFactor> fs;
		fs.push_back(generator_factor(alpha, k, s, Exponent(0)));
		fs.push_back(poch_factor(poch_finite(q1, Exponent(1), n - k), FactorRole::denominator, s));
		fs.push_back(poch_factor(poch_finite(aq, Exponent(1), n + k), FactorRole::denominator, s));
		acc = add(acc, product_exact(fs, Monomial::one(), s, T));
	}
	return acc;
}

QSeries alpha_from_beta(const std::function<QSeries(std::int64_t, std::int64_t)> &beta,
                        const Monomial &a, std::int64_t n, std::int64_t scale,
                        std::int64_t order_scaled) {
	if (n < 0)
		throw UsageError("alpha_n needs n >= 0");
	const std::int64_t s = lcm64(scale, a.exp.den);
	const std::int64_t T = order_scaled * (s / scale);
	const Monomial q1 = Monomial::q(Exponent(1));
	if (a.is_one()) {
		if (n == 0)
			return beta(0, ceil_div(T, s));
		QSeries acc = QSeries::zero(s, T);
		for (std::int64_t k = 0; k <= n; ++k) {
			std::vector<SeriesFactor> fs;
			fs.push_back(generator_factor(beta, k, s, Exponent(0)));
			fs.push_back(poch_factor(poch_finite(q1, Exponent(1), n + k - 1), FactorRole::numerator, s));
			fs.push_back(poch_factor(poch_finite(q1, Exponent(1), n - k), FactorRole::denominator, s));
			acc = add(acc, product_exact(fs, tau(1, n - k), s, T));
		}
		return mul_binomial(acc, Rational(-1), Exponent(2 * n));
	}
	for (std::int64_t k = 0; k <= n; ++k) {
		PochSpec spec = poch_finite(a, Exponent(1), n + k);
		if (auto j = poch_vanishing_factor(spec))
			throw PoleError(spec.str() + " vanishes at factor " + std::to_string(*j) +
			                " for k = " + std::to_string(k));
	}
	/* Multiplying by (1 - a q^{2n}) can only lower the order when its
	 * exponent is negative, so pad the sum first. */
	const std::int64_t es = a.exp.to_scaled(s) + 2 * n * s;
	const std::int64_t Tacc = T - std::min<std::int64_t>(0, es);
	QSeries acc = QSeries::zero(s, Tacc);
	for (std::int64_t k = 0; k <= n; ++k) {
		std::vector<SeriesFactor> fs;
		fs.push_back(generator_factor(beta, k, s, Exponent(0)));
		fs.push_back(poch_factor(poch_finite(a, Exponent(1), n + k), FactorRole::numerator, s));
		fs.push_back(poch_factor(poch_finite(q1, Exponent(1), n - k), FactorRole::denominator, s));
		acc = add(acc, product_exact(fs, tau(1, n - k), s, Tacc));
	}
	QSeries num = mul_binomial(acc, -a.coeff, a.exp + Exponent(2 * n));
	return truncate(div_binomial(num, -a.coeff, a.exp), Exponent(T, s));
}

VerificationReport verify_pair(const BaileyPair &pair, std::int64_t n_max, std::int64_t scale,
                               std::int64_t order_scaled) {
	VerificationReport rep;
	rep.id = "pair:" + (pair.label.empty() ? std::string("unnamed") : pair.label);
	rep.scale = scale;
	rep.order = floor_div(order_scaled, scale);
	rep.params["n_max"] = std::to_string(n_max);
	const Exponent bound(order_scaled, scale);
	const std::int64_t Tq = ceil_div(order_scaled, scale);
	const auto t0 = std::chrono::steady_clock::now();
	try {
		rep.status = VerifyStatus::pass;
		for (std::int64_t n = 0; n <= n_max; ++n) {
			Comparison cb = equal_up_to(pair.beta(n, Tq),
			                            beta_from_alpha(pair.alpha, pair.a, n, scale, order_scaled),
			                            bound);
			if (!cb.equal) {
				rep.status = VerifyStatus::mismatch;
				rep.params["n"] = std::to_string(n);
				rep.params["side"] = "beta";
				rep.first_mismatch = cb.first_mismatch;
				break;
			}
			Comparison ca = equal_up_to(pair.alpha(n, Tq),
			                            alpha_from_beta(pair.beta, pair.a, n, scale, order_scaled),
			                            bound);
			if (!ca.equal) {
				rep.status = VerifyStatus::mismatch;
				rep.params["n"] = std::to_string(n);
				rep.params["side"] = "alpha";
				rep.first_mismatch = ca.first_mismatch;
				break;
			}
		}
	} catch (const Error &e) {
		rep.status = VerifyStatus::error;
		rep.message = e.what();
	}
	rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
	                     std::chrono::steady_clock::now() - t0)
	                     .count();
	return rep;
}

Sides bailey_lemma_sides(const BaileyPair &pair, const ParamValue &x, const ParamValue &y,
                         std::int64_t scale, std::int64_t order_scaled) {
	if (!pair.a.is_one())
		throw UsageError("the lemma is implemented for a = 1 only");
	const std::int64_t B = pair.base;
	const Exponent b(B);
	const std::int64_t s = scale;
	const std::int64_t T = order_scaled;
	const Monomial qB = Monomial::q(b);

	if (!x.is_infinity() && kills_base_power(x.mono(), B))
		throw PoleError("(q/x;q)_n vanishes: x is a positive power of the base");
	if (!y.is_infinity() && kills_base_power(y.mono(), B))
		throw PoleError("(q/y;q)_n vanishes: y is a positive power of the base");
	if (!x.is_infinity() && !y.is_infinity() && kills_base_power(x.mono() * y.mono(), B))
		throw PoleError("(q/xy;q)_inf vanishes: xy is a positive power of the base");

	int heuristic = 0;

	TermGenerator lg;
	lg.term = [&](std::int64_t n, std::int64_t t) {
		SlaterSlice px = slater_slice(x, n, B, s, true);
		SlaterSlice py = slater_slice(y, n, B, s, true);
		if (px.zero || py.zero)
			return QSeries::zero(s, t);
		std::vector<SeriesFactor> fs = std::move(px.fs);
		for (SeriesFactor &f : py.fs)
			fs.push_back(std::move(f));
		fs.push_back(generator_factor(pair.alpha, n, s, alpha_val(pair, n)));
		return product_exact(fs, px.mono * py.mono * qB.pow(n), s, t);
	};
	if (pair.alpha_valuation)
		lg.valuation_bound = [&](std::int64_t n) {
			SlaterSlice px = slater_slice(x, n, B, s, true);
			SlaterSlice py = slater_slice(y, n, B, s, true);
			if (px.zero || py.zero)
				return kVanishedBound;
			return px.vb + py.vb + Exponent(B * n) + pair.alpha_valuation(n);
		};
	SumResult lhs = sum_unilateral(lg, s, T);
	heuristic += lhs.provenance.heuristic ? 1 : 0;

	std::vector<SeriesFactor> pfs;
	pfs.push_back(poch_factor(poch_inf(qB, b), FactorRole::numerator, s));
	if (!x.is_infinity() && !y.is_infinity())
		pfs.push_back(poch_factor(poch_inf(qB * (x.mono() * y.mono()).inverse(), b),
		                          FactorRole::numerator, s));
	if (!x.is_infinity())
		pfs.push_back(poch_factor(poch_inf(qB * x.mono().inverse(), b), FactorRole::denominator, s));
	if (!y.is_infinity())
		pfs.push_back(poch_factor(poch_inf(qB * y.mono().inverse(), b), FactorRole::denominator, s));
	Exponent vpre(0);
	for (const SeriesFactor &f : pfs)
		vpre = vpre + f.val;

	TermGenerator rg;
	rg.term = [&](std::int64_t n, std::int64_t t) {
		SlaterSlice px = slater_slice(x, n, B, s, false);
		SlaterSlice py = slater_slice(y, n, B, s, false);
		if (px.zero || py.zero)
			return QSeries::zero(s, t);
		std::vector<SeriesFactor> fs = std::move(px.fs);
		for (SeriesFactor &f : py.fs)
			fs.push_back(std::move(f));
		fs.push_back(generator_factor(pair.beta, n, s, beta_val(pair, n)));
		return product_exact(fs, px.mono * py.mono * qB.pow(n), s, t);
	};
	if (pair.beta_valuation)
		rg.valuation_bound = [&](std::int64_t n) {
			SlaterSlice px = slater_slice(x, n, B, s, false);
			SlaterSlice py = slater_slice(y, n, B, s, false);
			if (px.zero || py.zero)
				return kVanishedBound;
			return px.vb + py.vb + Exponent(B * n) + pair.beta_valuation(n);
		};
	const std::int64_t Ts = T - std::min<std::int64_t>(0, vpre.to_scaled_floor(s));
	SumResult rsum = sum_unilateral(rg, s, Ts);
	heuristic += rsum.provenance.heuristic ? 1 : 0;

	const std::int64_t dip =
	    rsum.value.is_zero() ? 0 : std::min<std::int64_t>(0, rsum.value.min_exp_scaled());
	QSeries prefactor = product_exact(pfs, Monomial::one(), s, T - dip);

	Sides out{truncate(lhs.value, Exponent(T, s)),
	          truncate(mul(prefactor, rsum.value), Exponent(T, s)), heuristic};
	return out;
}

Sides transform_a1(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled) {
	const std::int64_t s = scale;
	int heuristic = 0;

	TermGenerator lg;
	lg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs{generator_factor(pair.beta, n, s, beta_val(pair, n))};
		return product_exact(fs, Monomial::q(Exponent(n * n)), s, t);
	};
	if (pair.beta_valuation)
		lg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * n) + pair.beta_valuation(n);
		};
	SumResult lhs = sum_unilateral(lg, s, order_scaled);
	heuristic += lhs.provenance.heuristic ? 1 : 0;

	TermGenerator rg;
	rg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs{generator_factor(pair.alpha, n, s, alpha_val(pair, n))};
		return product_exact(fs, Monomial::q(Exponent(n * n)), s, t);
	};
	if (pair.alpha_valuation)
		rg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * n) + pair.alpha_valuation(n);
		};
	SumResult rsum = sum_unilateral(rg, s, order_scaled);
	heuristic += rsum.provenance.heuristic ? 1 : 0;

	Sides out{truncate(lhs.value, Exponent(order_scaled, s)),
	          divide_built(rsum.value, [s](std::int64_t t) { return eulerq(s, t); }, s,
	                       order_scaled),
	          heuristic};
	return out;
}

Sides transform_a2(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled) {
	const std::int64_t s = scale;
	int heuristic = 0;
	const Monomial mq(Rational(-1), Exponent(1));

	TermGenerator lg;
	lg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs;
		fs.push_back(poch_factor(poch_finite(mq, Exponent(2), n), FactorRole::numerator, s));
		fs.push_back(generator_factor(pair.beta, n, s, beta_val(pair, n)));
		return product_exact(fs, Monomial::q(Exponent(n * n)), s, t);
	};
	if (pair.beta_valuation)
		lg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * n) + pair.beta_valuation(n);
		};
	SumResult lhs = sum_unilateral(lg, s, order_scaled);
	heuristic += lhs.provenance.heuristic ? 1 : 0;

	TermGenerator rg;
	rg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs{generator_factor(pair.alpha, n, s, alpha_val(pair, n))};
		return product_exact(fs, Monomial::q(Exponent(n * n)), s, t);
	};
	if (pair.alpha_valuation)
		rg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * n) + pair.alpha_valuation(n);
		};
	SumResult rsum = sum_unilateral(rg, s, order_scaled);
	heuristic += rsum.provenance.heuristic ? 1 : 0;

	Sides out{truncate(lhs.value, Exponent(order_scaled, s)),
	          divide_built(rsum.value, [s](std::int64_t t) { return psi_neg_q(s, t); }, s,
	                       order_scaled),
	          heuristic};
	return out;
}

Sides transform_a3(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled) {
	const std::int64_t s = scale;
	int heuristic = 0;
	const Monomial mone(Rational(-1), Exponent(0));

	TermGenerator lg;
	lg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs;
		fs.push_back(poch_factor(poch_finite(mone, Exponent(1), n), FactorRole::numerator, s));
		fs.push_back(generator_factor(pair.beta, n, s, beta_val(pair, n)));
		return product_exact(fs, Monomial::q(Exponent(n * (n + 1) / 2)), s, t);
	};
	if (pair.beta_valuation)
		lg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * (n + 1) / 2) + pair.beta_valuation(n);
		};
	SumResult lhs = sum_unilateral(lg, s, order_scaled);
	heuristic += lhs.provenance.heuristic ? 1 : 0;

	TermGenerator rg;
	rg.term = [&](std::int64_t n, std::int64_t t) {
		std::vector<SeriesFactor> fs{generator_factor(pair.alpha, n, s, alpha_val(pair, n))};
		QSeries p = product_exact(fs, Monomial::q(Exponent(n * (n + 1) / 2)), s, t);
		return div_binomial(p, Rational(1), Exponent(n));
	};
	if (pair.alpha_valuation)
		rg.valuation_bound = [&](std::int64_t n) {
			return Exponent(n * (n + 1) / 2) + pair.alpha_valuation(n);
		};
	SumResult rsum = sum_unilateral(rg, s, order_scaled);
	heuristic += rsum.provenance.heuristic ? 1 : 0;

	Sides out{truncate(lhs.value, Exponent(order_scaled, s)),
	          scaled(divide_built(rsum.value, [s](std::int64_t t) { return phi_neg_q(s, t); },
	                              s, order_scaled),
	                 Rational(2)),
	          heuristic};
	return out;
}

Sides truncated_transform(const BaileyPair &pair, std::int64_t m, std::int64_t scale,
                          std::int64_t order_scaled) {
	if (m < 0)
		throw UsageError("the truncated transform needs m >= 0");
	const std::int64_t s = scale;
	const std::int64_t T = order_scaled;
	const std::int64_t Tq = ceil_div(T, s);
	const Monomial q1 = Monomial::q(Exponent(1));
	const Monomial aq = pair.a * q1;

	QSeries rhs = QSeries::zero(s, T);
	for (std::int64_t n = 0; n <= m; ++n)
		rhs = add(rhs, pair.alpha(n, Tq));

	/* Prefactor (aq;q)_m (-1)^m q^{m(m+1)/2} / (q;q)_m. A vanishing
	 * (aq;q)_m annihilates the whole left side. */
	PochSpec pre_num = poch_finite(aq, Exponent(1), m);
	if (poch_vanishing_factor(pre_num)) {
		Sides out{QSeries::zero(s, T), truncate(rhs, Exponent(T, s)), 0};
		return out;
	}
	std::vector<SeriesFactor> cfs;
	cfs.push_back(poch_factor(pre_num, FactorRole::numerator, s));
	cfs.push_back(poch_factor(poch_finite(q1, Exponent(1), m), FactorRole::denominator, s));
	const Monomial cmono(sign_pow(m), Exponent(m * (m + 1) / 2));
	Exponent vpre = cmono.exp;
	for (const SeriesFactor &f : cfs)
		vpre = vpre + f.val;

	const std::int64_t Tsum = T - std::min<std::int64_t>(0, vpre.to_scaled_floor(s));
	QSeries sum = QSeries::zero(s, Tsum);
	for (std::int64_t n = 0; n <= m; ++n) {
		PochSpec inner = poch_finite(aq * q1.pow(m), Exponent(1), n);
		if (poch_vanishing_factor(inner))
			continue;
		std::vector<SeriesFactor> fs;
		fs.push_back(poch_factor(poch_finite(q1.pow(-m), Exponent(1), n), FactorRole::numerator, s));
		fs.push_back(poch_factor(inner, FactorRole::numerator, s));
		fs.push_back(generator_factor(pair.beta, n, s, beta_val(pair, n)));
		sum = add(sum, product_exact(fs, Monomial::one(), s, Tsum));
	}

	const std::int64_t dip = sum.is_zero() ? 0 : std::min<std::int64_t>(0, sum.min_exp_scaled());
	QSeries prefactor = product_exact(cfs, cmono, s, T - dip);

	Sides out{truncate(mul(prefactor, sum), Exponent(T, s)), truncate(rhs, Exponent(T, s)), 0};
	return out;
}

} // namespace qseries
