#include "qseries/series.hpp"

#include <algorithm>
#include <cassert>

namespace qseries {

namespace {
const Rational kZero{};
} // namespace

Monomial Monomial::pow(std::int64_t k) const {
	if (k == 0)
		return Monomial::one();
	Monomial base = k < 0 ? inverse() : *this;
	std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
	mpz_class num, den;
	mpz_pow_ui(num.get_mpz_t(), base.coeff.raw().get_num().get_mpz_t(), e);
	mpz_pow_ui(den.get_mpz_t(), base.coeff.raw().get_den().get_mpz_t(), e);
	Exponent exp_out = base.exp;
	exp_out.num *= static_cast<std::int64_t>(e);
	Exponent norm(exp_out.num, exp_out.den);
	return Monomial(Rational(mpq_class(num) / mpq_class(den)), norm);
}

std::string Monomial::str() const {
	if (exp == Exponent(0))
		return coeff.str();
	std::string p = exp == Exponent(1) ? "q" : "q^" + exp.str();
	if (coeff == Rational(1))
		return p;
	if (coeff == Rational(-1))
		return "-" + p;
	return coeff.str() + "*" + p;
}

QSeries::QSeries(std::int64_t scale, std::int64_t min_exp_scaled, std::int64_t order_scaled,
                 std::vector<Rational> coeffs)
    : scale_(scale), min_(min_exp_scaled), order_(order_scaled), coeffs_(std::move(coeffs)) {
	if (scale_ < 1)
		throw UsageError("series scale must be >= 1");
	if (order_ < min_ - 1)
		throw UsageError("series order below its window");
	if (static_cast<std::int64_t>(coeffs_.size()) > order_ - min_ + 1)
		throw UsageError("series coefficients overflow the window");
	normalize();
}

QSeries QSeries::zero(std::int64_t scale, std::int64_t order_scaled) {
	return QSeries(scale, order_scaled + 1, order_scaled, {});
}

QSeries QSeries::constant(const Rational &c, std::int64_t scale, std::int64_t order_scaled) {
	if (c.is_zero() || order_scaled < 0)
		return zero(scale, order_scaled);
	return QSeries(scale, 0, order_scaled,
	               [&] {
		               std::vector<Rational> v(static_cast<std::size_t>(order_scaled) + 1);
		               v[0] = c;
		               return v;
	               }());
}

QSeries QSeries::from_terms(std::span<const std::pair<Rational, Exponent>> terms,
                            std::int64_t scale, std::int64_t order_scaled) {
	std::int64_t lo = order_scaled + 1;
	std::vector<std::pair<std::int64_t, Rational>> placed;
	placed.reserve(terms.size());
	for (const auto &[c, e] : terms) {
		if (c.is_zero())
			continue;
		std::int64_t pos = e.to_scaled(scale);
		if (pos > order_scaled)
			continue; // above truncation: contributes nothing retained
		placed.emplace_back(pos, c);
		lo = std::min(lo, pos);
	}
	if (placed.empty())
		return zero(scale, order_scaled);
	std::vector<Rational> v(static_cast<std::size_t>(order_scaled - lo + 1));
	for (const auto &[pos, c] : placed)
		v[static_cast<std::size_t>(pos - lo)] += c;
	return QSeries(scale, lo, order_scaled, std::move(v));
}

QSeries QSeries::from_monomial(const Monomial &m, std::int64_t scale, std::int64_t order_scaled) {
	const std::pair<Rational, Exponent> t[] = {{m.coeff, m.exp}};
	return from_terms(t, scale, order_scaled);
}

/* Canonical form: no leading zeros (min_exp is the true valuation when the
 * series is nonzero) and no trailing zero storage (positions between the
 * stored span and the order are implicitly zero). The order never moves. */
void QSeries::normalize() {
	std::size_t lead = 0;
	while (lead < coeffs_.size() && coeffs_[lead].is_zero())
		++lead;
	if (lead == coeffs_.size()) {
		coeffs_.clear();
		min_ = order_ + 1;
		return;
	}
	std::size_t last = coeffs_.size() - 1;
	while (coeffs_[last].is_zero())
		--last;
	if (lead > 0) {
		coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
		min_ += static_cast<std::int64_t>(lead);
		last -= lead;
	}
	coeffs_.resize(last + 1);
}

const Rational &QSeries::at_scaled(std::int64_t e) const {
	if (e > order_)
		throw OutOfRangeError("coefficient at " + Exponent(e, scale_).str() +
		                      " is beyond the truncation order " + order().str());
	if (e < min_ || e >= min_ + static_cast<std::int64_t>(coeffs_.size()))
		return kZero;
	return coeffs_[static_cast<std::size_t>(e - min_)];
}

const Rational &QSeries::coefficient_at(const Exponent &e) const {
	if (e > order())
		throw OutOfRangeError("coefficient at " + e.str() +
		                      " is beyond the truncation order " + order().str());
	if (!e.on_lattice(scale_))
		return kZero; // off-lattice but within range: exactly zero
	return at_scaled(e.to_scaled(scale_));
}

QSeries rescale(const QSeries &a, std::int64_t new_scale) {
	if (new_scale == a.scale())
		return a;
	if (new_scale < a.scale() || new_scale % a.scale() != 0)
		throw LatticeError("cannot rescale a series on (1/" + std::to_string(a.scale()) +
		                   ")Z to (1/" + std::to_string(new_scale) + ")Z");
	std::int64_t k = new_scale / a.scale();
	if (a.is_zero())
		return QSeries::zero(new_scale, a.order_scaled() * k);
	std::int64_t span = static_cast<std::int64_t>(a.coeffs().size());
	std::vector<Rational> v(static_cast<std::size_t>((span - 1) * k + 1));
	for (std::int64_t i = 0; i < span; ++i)
		v[static_cast<std::size_t>(i * k)] = a.coeffs()[static_cast<std::size_t>(i)];
	return QSeries(new_scale, a.min_exp_scaled() * k, a.order_scaled() * k, std::move(v));
}

namespace {

struct Aligned {
	QSeries a;
	QSeries b;
};

Aligned align(const QSeries &a, const QSeries &b) {
	std::int64_t s = lcm64(a.scale(), b.scale());
	return {rescale(a, s), rescale(b, s)};
}

QSeries add_aligned(const QSeries &a, const QSeries &b, bool negate_b) {
	std::int64_t order = std::min(a.order_scaled(), b.order_scaled());
	std::int64_t lo = std::min(a.min_exp_scaled(), b.min_exp_scaled());
	if (lo > order)
		return QSeries::zero(a.scale(), order);
	std::vector<Rational> v(static_cast<std::size_t>(order - lo + 1));
	auto pour = [&](const QSeries &s, bool negate) {
		std::int64_t n = static_cast<std::int64_t>(s.coeffs().size());
		for (std::int64_t i = 0; i < n; ++i) {
			std::int64_t e = s.min_exp_scaled() + i;
			if (e > order)
				break;
			const Rational &c = s.coeffs()[static_cast<std::size_t>(i)];
			if (negate)
				v[static_cast<std::size_t>(e - lo)] -= c;
			else
				v[static_cast<std::size_t>(e - lo)] += c;
		}
	};
	pour(a, false);
	pour(b, negate_b);
	return QSeries(a.scale(), lo, order, std::move(v));
}

} // namespace

QSeries add(const QSeries &a, const QSeries &b) {
	auto [x, y] = align(a, b);
	return add_aligned(x, y, false);
}

QSeries sub(const QSeries &a, const QSeries &b) {
	auto [x, y] = align(a, b);
	return add_aligned(x, y, true);
}

QSeries neg(const QSeries &a) {
	return scaled(a, Rational(-1));
}

QSeries mul(const QSeries &a, const QSeries &b) {
	auto [x, y] = align(a, b);
	// Sound truncation: the unknown tails of either factor start at
	// order+1, so the product is exact only below min(Na+vb, Nb+va).
	std::int64_t order = std::min(x.order_scaled() + y.min_exp_scaled(),
	                              y.order_scaled() + x.min_exp_scaled());
	std::int64_t lo = x.min_exp_scaled() + y.min_exp_scaled();
	if (x.is_zero() || y.is_zero() || lo > order)
		return QSeries::zero(x.scale(), std::max(order, lo - 1));
	std::vector<Rational> v(static_cast<std::size_t>(order - lo + 1));
	std::int64_t na = static_cast<std::int64_t>(x.coeffs().size());
	std::int64_t nb = static_cast<std::int64_t>(y.coeffs().size());
	for (std::int64_t i = 0; i < na; ++i) {
		const Rational &ca = x.coeffs()[static_cast<std::size_t>(i)];
		if (ca.is_zero())
			continue;
		std::int64_t base = x.min_exp_scaled() + i + y.min_exp_scaled() - lo;
		if (base > order - lo)
			break;
		std::int64_t jmax = std::min(nb - 1, order - lo - base);
		for (std::int64_t j = 0; j <= jmax; ++j) {
			const Rational &cb = y.coeffs()[static_cast<std::size_t>(j)];
			if (!cb.is_zero())
				v[static_cast<std::size_t>(base + j)] += ca * cb;
		}
	}
	return QSeries(x.scale(), lo, order, std::move(v));
}

QSeries div(const QSeries &a, const QSeries &b) {
	auto [x, y] = align(a, b);
	if (y.is_zero())
		throw DivisionByZeroError("division by a series that is zero up to its order " +
		                          y.order().str());
	std::int64_t vb = y.min_exp_scaled(); // valuation of the divisor
	if (x.is_zero())
		return QSeries::zero(x.scale(), x.order_scaled() - vb);
	std::int64_t va = x.min_exp_scaled();
	// Quotient coefficient j needs a up to va+j and b up to vb+j.
	std::int64_t steps = std::min(x.order_scaled() - va, y.order_scaled() - vb);
	std::int64_t lo = va - vb;
	std::vector<Rational> r(static_cast<std::size_t>(steps) + 1);
	// Nonzero divisor entries beyond the leading one, as (offset, coeff).
	std::vector<std::pair<std::int64_t, const Rational *>> bnz;
	for (std::size_t j = 1; j < y.coeffs().size(); ++j)
		if (!y.coeffs()[j].is_zero())
			bnz.emplace_back(static_cast<std::int64_t>(j), &y.coeffs()[j]);
	const Rational &lead = y.coeffs()[0];
	for (std::int64_t j = 0; j <= steps; ++j) {
		Rational acc = x.at_scaled(va + j);
		for (const auto &[off, c] : bnz) {
			if (off > j)
				break;
			acc -= *c * r[static_cast<std::size_t>(j - off)];
		}
		r[static_cast<std::size_t>(j)] = acc / lead;
	}
	return QSeries(x.scale(), lo, lo + steps, std::move(r));
}

QSeries shifted(const QSeries &a, const Monomial &m) {
	std::int64_t s = lcm64(a.scale(), m.exp.den);
	QSeries x = rescale(a, s);
	std::int64_t g = m.exp.to_scaled(s);
	std::vector<Rational> v(x.coeffs().begin(), x.coeffs().end());
	if (!(m.coeff == Rational(1)))
		for (auto &c : v)
			c *= m.coeff;
	std::int64_t lo = x.is_zero() ? x.order_scaled() + g + 1 : x.min_exp_scaled() + g;
	return QSeries(s, lo, x.order_scaled() + g, std::move(v));
}

QSeries scaled(const QSeries &a, const Rational &c) {
	if (c.is_zero())
		return QSeries::zero(a.scale(), a.order_scaled());
	std::vector<Rational> v(a.coeffs().begin(), a.coeffs().end());
	for (auto &x : v)
		x *= c;
	return QSeries(a.scale(), a.is_zero() ? a.order_scaled() + 1 : a.min_exp_scaled(),
	               a.order_scaled(), std::move(v));
}

QSeries mul_binomial(const QSeries &a, const Rational &c, const Exponent &e) {
	if (c.is_zero())
		return a;
	std::int64_t s = lcm64(a.scale(), e.den);
	QSeries x = rescale(a, s);
	std::int64_t g = e.to_scaled(s);
	std::int64_t order = x.order_scaled() + std::min<std::int64_t>(0, g);
	if (x.is_zero())
		return QSeries::zero(s, order);
	std::int64_t lo = x.min_exp_scaled() + std::min<std::int64_t>(0, g);
	std::int64_t hi_store = std::min(order, x.min_exp_scaled() +
	                                            static_cast<std::int64_t>(x.coeffs().size()) - 1 +
	                                            std::max<std::int64_t>(0, g));
	std::vector<Rational> v(static_cast<std::size_t>(hi_store - lo + 1));
	std::int64_t n = static_cast<std::int64_t>(x.coeffs().size());
	for (std::int64_t i = 0; i < n; ++i) {
		const Rational &ca = x.coeffs()[static_cast<std::size_t>(i)];
		if (ca.is_zero())
			continue;
		std::int64_t pos = x.min_exp_scaled() + i;
		if (pos <= order)
			v[static_cast<std::size_t>(pos - lo)] += ca;
		if (pos + g <= order)
			v[static_cast<std::size_t>(pos + g - lo)] += c * ca;
	}
	return QSeries(s, lo, order, std::move(v));
}

QSeries div_binomial(const QSeries &a, const Rational &c, const Exponent &e) {
	if (c.is_zero())
		return a;
	std::int64_t s = lcm64(a.scale(), e.den);
	QSeries x = rescale(a, s);
	std::int64_t g = e.to_scaled(s);
	if (g == 0) {
		Rational d = Rational(1) + c;
		if (d.is_zero())
			throw DivisionByZeroError("division by the zero binomial 1 + (-1)");
		return scaled(x, Rational(1) / d);
	}
	if (g < 0) {
		// 1 + c*q^g = c*q^g * (1 + (1/c)*q^(-g)); peel the leading monomial.
		Rational cinv = Rational(1) / c;
		Exponent ge(-g, s);
		return div_binomial(shifted(x, Monomial(cinv, Exponent(-g, s))), cinv, ge);
	}
	if (x.is_zero())
		return x;
	// (1 + c*q^g) * r = x  =>  r_i = x_i - c * r_{i-g}; the divisor is exact,
	// so the order is preserved.
	std::int64_t lo = x.min_exp_scaled();
	std::int64_t order = x.order_scaled();
	std::vector<Rational> r(static_cast<std::size_t>(order - lo + 1));
	for (std::int64_t i = 0; i <= order - lo; ++i) {
		Rational acc = x.at_scaled(lo + i);
		if (i >= g && !r[static_cast<std::size_t>(i - g)].is_zero())
			acc -= c * r[static_cast<std::size_t>(i - g)];
		r[static_cast<std::size_t>(i)] = std::move(acc);
	}
	return QSeries(s, lo, order, std::move(r));
}

QSeries substitute_base(const QSeries &a, std::int64_t m) {
	if (m < 1)
		throw UsageError("substitute_base requires m >= 1");
	if (m == 1)
		return a;
	if (a.is_zero())
		return QSeries::zero(a.scale(), a.order_scaled() * m);
	std::int64_t span = static_cast<std::int64_t>(a.coeffs().size());
	std::vector<Rational> v(static_cast<std::size_t>((span - 1) * m + 1));
	for (std::int64_t i = 0; i < span; ++i)
		v[static_cast<std::size_t>(i * m)] = a.coeffs()[static_cast<std::size_t>(i)];
	return QSeries(a.scale(), a.min_exp_scaled() * m, a.order_scaled() * m, std::move(v));
}

QSeries truncate(const QSeries &a, const Exponent &new_order) {
	std::int64_t no = new_order.to_scaled_floor(a.scale());
	if (no >= a.order_scaled())
		return a;
	if (a.is_zero() || no < a.min_exp_scaled())
		return QSeries::zero(a.scale(), no);
	std::vector<Rational> v(a.coeffs().begin(),
	                        a.coeffs().begin() +
	                            std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(a.coeffs().size()),
	                                                     static_cast<std::ptrdiff_t>(no - a.min_exp_scaled() + 1)));
	return QSeries(a.scale(), a.min_exp_scaled(), no, std::move(v));
}

QSeries operator+(const QSeries &a, const QSeries &b) { return add(a, b); }
QSeries operator-(const QSeries &a, const QSeries &b) { return sub(a, b); }
QSeries operator*(const QSeries &a, const QSeries &b) { return mul(a, b); }
QSeries operator/(const QSeries &a, const QSeries &b) { return div(a, b); }
QSeries operator-(const QSeries &a) { return neg(a); }

Comparison equal_up_to(const QSeries &a, const QSeries &b, const Exponent &bound) {
	if (a.order() < bound || b.order() < bound)
		throw InsufficientOrderError(
		    "comparison up to " + bound.str() + " needs orders >= " + bound.str() +
		    ", have " + a.order().str() + " and " + b.order().str());
	auto [x, y] = align(a, b);
	std::int64_t hi = bound.to_scaled_floor(x.scale());
	std::int64_t lo = std::min(x.min_exp_scaled(), y.min_exp_scaled());
	for (std::int64_t e = lo; e <= hi; ++e) {
		const Rational &ca = x.at_scaled(e);
		const Rational &cb = y.at_scaled(e);
		if (!(ca == cb))
			return {false, Mismatch{Exponent(e, x.scale()), ca, cb}};
	}
	return {true, std::nullopt};
}

} // namespace qseries
