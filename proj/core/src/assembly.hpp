#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qseries/bailey.hpp"
#include "qseries/factory.hpp"
#include "qseries/series.hpp"

/* Internal helpers for assembling products of series factors whose
 * valuations are known, so that every term of every sum comes out exact to
 * the requested order despite the min-rule of mul/div. Not installed. */

namespace qseries::assembly {

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
	return floor_div(a + b - 1, b);
}

inline Rational sign_pow(std::int64_t n) {
	return n % 2 == 0 ? Rational(1) : Rational(-1);
}

// Valuation of (q^e;q)_n for n >= 0: sum over j < n of min(0, e+j).
inline std::int64_t poch_val_int(std::int64_t e, std::int64_t n) {
	if (n <= 0 || e >= 0)
		return 0;
	std::int64_t m = std::min(n, -e);
	return m * e + m * (m - 1) / 2;
}

/* Bound reported for a summand that is identically zero; compares above
 * any reachable order (but small enough that cross-multiplied Exponent
 * comparisons cannot overflow), so the ray stops there. Only sound when
 * vanishing is permanent along the ray, as it is for a fixed (x;q)_n
 * factor with growing n. */
const Exponent kVanishedBound(std::int64_t(1) << 50);

/* One multiplicative factor: build(order_scaled) must return a series
 * whose order is at least order_scaled on the ambient scale (finer
 * lattices and higher orders are fine), and val must be a sound lower
 * bound on its valuation (exact for reciprocal factors). */
struct SeriesFactor {
	std::function<QSeries(std::int64_t order_scaled)> build;
	Exponent val;
};

/* mono * prod(factors), exact up to order_scaled on the given scale. Each
 * factor is built deep enough to survive everyone else's negative
 * valuation, mirroring the padding rule of pochhammer_multi. */
inline QSeries product_exact(std::span<const SeriesFactor> factors, const Monomial &mono,
                             std::int64_t scale, std::int64_t order_scaled) {
	if (factors.empty())
		return QSeries::from_monomial(mono, scale, order_scaled);
	std::vector<std::int64_t> vals;
	vals.reserve(factors.size());
	std::int64_t V = mono.exp.to_scaled_floor(scale);
	for (const SeriesFactor &f : factors) {
		vals.push_back(f.val.to_scaled_floor(scale));
		V += vals.back();
	}
	// Valuations are exact, so a total above the order means the whole
	// product lives beyond the window.
	if (V > order_scaled)
		return QSeries::zero(scale, order_scaled);
	QSeries acc = QSeries::constant(1, scale, order_scaled - V);
	for (std::size_t i = 0; i < factors.size(); ++i)
		acc = mul(acc, factors[i].build(order_scaled - (V - vals[i])));
	acc = shifted(acc, mono);
	return truncate(acc, Exponent(order_scaled, scale));
}

// 1 / build(.), where vb is the divisor's exact valuation.
inline SeriesFactor reciprocal(std::function<QSeries(std::int64_t)> build, const Exponent &vb,
                               std::int64_t scale) {
	std::int64_t v = vb.to_scaled(scale);
	return {[build = std::move(build), v, scale](std::int64_t t) {
		        if (t < -v)
			        return QSeries::zero(scale, t);
		        QSeries den = build(t + 2 * v);
		        return div(QSeries::constant(1, scale, t + v), den);
	        },
	        -vb};
}

inline SeriesFactor poch_factor(PochSpec spec, FactorRole role, std::int64_t scale) {
	Exponent v = poch_valuation(spec);
	if (role == FactorRole::denominator)
		return reciprocal(
		    [spec = std::move(spec), scale](std::int64_t t) {
			    return pochhammer(spec, scale, t, FactorRole::denominator);
		    },
		    v, scale);
	return {[spec = std::move(spec), scale](std::int64_t t) {
		        return pochhammer(spec, scale, t);
	        },
	        v};
}

// series / divisor with the divisor built only as deep as the dividend's
// window requires; the divisor must have valuation 0.
inline QSeries divide_built(const QSeries &num,
                            const std::function<QSeries(std::int64_t)> &den_build,
                            std::int64_t scale, std::int64_t order_scaled) {
	std::int64_t dip = num.is_zero() ? 0 : std::min<std::int64_t>(0, num.min_exp_scaled());
	QSeries den = den_build(order_scaled - dip);
	return truncate(div(num, den), Exponent(order_scaled, scale));
}

/* The x-dependent slice of one Slater-type summand of length len (possibly
 * negative): series factors, an exact monomial multiplier x^{-len}, and a
 * valuation bound for the whole slice. with_denominator adds the
 * 1/(q^B/x;q^B)_len part. zero marks a summand annihilated by a vanishing
 * factor; a vanishing factor in pole position throws instead. The
 * x -> infinity limit is the single monomial tau_B(len). */
struct SlaterSlice {
	std::vector<SeriesFactor> fs;
	Monomial mono = Monomial::one();
	Exponent vb = Exponent(0);
	bool zero = false;
};

inline SlaterSlice slater_slice(const ParamValue &x, std::int64_t len, std::int64_t base,
                                std::int64_t scale, bool with_denominator) {
	SlaterSlice out;
	if (x.is_infinity()) {
		out.mono = tau(base, len);
		out.vb = out.mono.exp;
		return out;
	}
	const Monomial &xm = x.mono();
	const Exponent b(base);
	PochSpec num = poch_finite(xm, b, len);
	if (auto j = poch_vanishing_factor(num)) {
		if (len < 0)
			throw PoleError(num.str() + " has a vanishing reciprocal factor " + std::to_string(*j));
		out.zero = true;
		out.vb = kVanishedBound;
		return out;
	}
	out.mono = xm.pow(-len);
	out.vb = poch_valuation(num) + out.mono.exp;
	out.fs.push_back(poch_factor(num, FactorRole::numerator, scale));
	if (with_denominator) {
		PochSpec den = poch_finite(Monomial::q(b) * xm.inverse(), b, len);
		if (auto j = poch_vanishing_factor(den)) {
			if (len >= 0)
				throw PoleError(den.str() + " vanishes at factor " + std::to_string(*j));
			out.zero = true; // 1/(q/x;q)_len with len < 0 is a vanishing product
			out.vb = kVanishedBound;
			return out;
		}
		SeriesFactor rf = poch_factor(den, FactorRole::denominator, scale);
		out.vb = out.vb + rf.val;
		out.fs.push_back(std::move(rf));
	}
	return out;
}

// x = q^{jB} with unit coefficient makes the factor 1 - (q^B/x) q^{B(j-1)}
// of (q^B/x;q^B)_* vanish identically.
inline bool kills_base_power(const Monomial &m, std::int64_t base) {
	return m.coeff == Rational(1) && m.exp.den == 1 && m.exp.num >= base &&
	       m.exp.num % base == 0;
}

} // namespace qseries::assembly
