#include "qseries/dsl.hpp"

#include <map>

#include "qseries/factory.hpp"
#include "qseries/summation.hpp"

namespace qseries::dsl {

namespace {

using Env = std::map<std::string, std::int64_t>;

std::string at(const Node &n) {
	return std::to_string(n.line) + ":" + std::to_string(n.col) + ": ";
}

std::int64_t small_int(const Rational &r, const Node &n, const char *what) {
	if (!r.is_integer())
		throw UsageError(at(n) + std::string(what) + " must be an integer, got " + r.str());
	const mpz_class &num = r.raw().get_num();
	if (!num.fits_slong_p())
		throw UsageError(at(n) + std::string(what) + " is out of range");
	return num.get_si();
}

Exponent to_exponent(const Rational &r, const Node &n) {
	const mpz_class &num = r.raw().get_num();
	const mpz_class &den = r.raw().get_den();
	if (!num.fits_slong_p() || !den.fits_slong_p())
		throw UsageError(at(n) + "exponent " + r.str() + " is out of range");
	return Exponent(num.get_si(), den.get_si());
}

class Evaluator {
public:
	Evaluator(std::int64_t scale, const EvalLimits &limits) : scale_(scale) {
		opts_.window = limits.window;
		opts_.index_cap = limits.index_cap;
	}

	QSeries series(const Node &n, const Env &env, std::int64_t t);

	int heuristic_sums() const { return heuristic_sums_; }

private:
	std::int64_t scale_;
	SumOptions opts_;
	int heuristic_sums_ = 0;

	Rational scalar(const Node &n, const Env &env);
	std::int64_t scalar_int(const Node &n, const Env &env, const char *what) {
		return small_int(scalar(n, env), n, what);
	}
	Monomial monomial(const Node &n, const Env &env);
	Monomial monomial_pow(const Monomial &base, const Rational &x, const Node &n);
	QSeries binary_retry(const Node &n, const Env &env, std::int64_t t, bool is_div);
	QSeries series_pow(const Node &n, const Env &env, std::int64_t t);
	QSeries call(const Node &n, const Env &env, std::int64_t t);
	QSeries summation(const Node &n, const Env &env, std::int64_t t, bool bilateral);

	QSeries checked_sum(const TermGenerator &gen, std::int64_t t, bool bilateral) {
		SumResult r = bilateral ? sum_bilateral(gen, scale_, t, opts_)
		                        : sum_unilateral(gen, scale_, t, opts_);
		if (r.provenance.heuristic)
			++heuristic_sums_;
		return r.value;
	}
};

Rational rat_pow(const Rational &base, std::int64_t e, const Node &n) {
	if (e < 0) {
		if (base.is_zero())
			throw UsageError(at(n) + "zero raised to a negative power");
		return Rational(1) / rat_pow(base, -e, n);
	}
	if (e > 1'000'000)
		throw UsageError(at(n) + "scalar exponent too large");
	Rational acc(1);
	Rational b = base;
	while (e > 0) {
		if (e & 1)
			acc *= b;
		e >>= 1;
		if (e > 0)
			b *= b;
	}
	return acc;
}

Rational Evaluator::scalar(const Node &n, const Env &env) {
	switch (n.kind) {
	case NodeKind::rational:
		return n.value;
	case NodeKind::var: {
		auto it = env.find(n.name);
		if (it == env.end())
			throw UsageError(at(n) + "unbound identifier " + n.name);
		return Rational(it->second);
	}
	case NodeKind::qvar:
		throw UsageError(at(n) + "q cannot appear in an integer expression");
	case NodeKind::infinity:
		throw UsageError(at(n) + "inf is only meaningful as a sum bound or length");
	case NodeKind::add:
		return scalar(*n.kids[0], env) + scalar(*n.kids[1], env);
	case NodeKind::sub:
		return scalar(*n.kids[0], env) - scalar(*n.kids[1], env);
	case NodeKind::mul:
		return scalar(*n.kids[0], env) * scalar(*n.kids[1], env);
	case NodeKind::div: {
		Rational d = scalar(*n.kids[1], env);
		if (d.is_zero())
			throw UsageError(at(n) + "division by zero in an integer expression");
		return scalar(*n.kids[0], env) / d;
	}
	case NodeKind::neg:
		return -scalar(*n.kids[0], env);
	case NodeKind::pow: {
		Rational b = scalar(*n.kids[0], env);
		std::int64_t e = scalar_int(*n.kids[1], env, "a scalar exponent");
		return rat_pow(b, e, n);
	}
	case NodeKind::call:
		throw UsageError(at(n) + n.name + "(...) cannot appear in an integer expression");
	}
	throw UsageError(at(n) + "malformed expression");
}

Monomial Evaluator::monomial_pow(const Monomial &base, const Rational &x, const Node &n) {
	if (x.is_integer())
		return base.pow(small_int(x, n, "the power"));
	if (base.coeff == Rational(1))
		return Monomial(1, base.exp * to_exponent(x, n));
	throw UsageError(at(n) + "fractional power of a term with coefficient " + base.coeff.str());
}

Monomial Evaluator::monomial(const Node &n, const Env &env) {
	switch (n.kind) {
	case NodeKind::rational:
		if (n.value.is_zero())
			throw UsageError(at(n) + "zero is not a valid term here");
		return Monomial(n.value, Exponent(0));
	case NodeKind::qvar:
		return Monomial::q();
	case NodeKind::var: {
		Rational v = scalar(n, env);
		if (v.is_zero())
			throw UsageError(at(n) + n.name + " = 0 is not a valid term here");
		return Monomial(v, Exponent(0));
	}
	case NodeKind::neg: {
		Monomial m = monomial(*n.kids[0], env);
		return Monomial(-m.coeff, m.exp);
	}
	case NodeKind::mul:
		return monomial(*n.kids[0], env) * monomial(*n.kids[1], env);
	case NodeKind::div:
		return monomial(*n.kids[0], env) * monomial(*n.kids[1], env).inverse();
	case NodeKind::pow:
		return monomial_pow(monomial(*n.kids[0], env), scalar(*n.kids[1], env), n);
	default:
		throw UsageError(at(n) + "expected a single term c*q^e");
	}
}

QSeries Evaluator::binary_retry(const Node &n, const Env &env, std::int64_t t, bool is_div) {
	/* Operands carry no valuation bounds, so a product or quotient can come
	 * back shallower than requested when windows dip below q^0; re-evaluate
	 * deeper by the observed deficit (the operands' valuations are fixed, so
	 * one or two rounds settle it). */
	std::int64_t ta = t, tb = t;
	for (int attempt = 0;; ++attempt) {
		QSeries a = series(*n.kids[0], env, ta);
		QSeries b = series(*n.kids[1], env, tb);
		if (is_div && b.is_zero())
			throw DivisionByZeroError(at(n) + "division by a series that is zero to order " +
			                          b.order().str());
		QSeries r = is_div ? div(a, b) : mul(a, b);
		if (r.order_scaled() >= t)
			return truncate(r, Exponent(t, scale_));
		if (attempt >= 2)
			throw InsufficientOrderError(at(n) + "result order fell short of the request");
		std::int64_t d = t - r.order_scaled();
		ta += d;
		tb += d;
	}
}

QSeries Evaluator::series_pow(const Node &n, const Env &env, std::int64_t t) {
	Rational x = scalar(*n.kids[1], env);
	bool is_monomial = true;
	Monomial base = Monomial::one();
	try {
		base = monomial(*n.kids[0], env);
	} catch (const Error &) {
		is_monomial = false;
	}
	if (is_monomial)
		return QSeries::from_monomial(monomial_pow(base, x, n), scale_, t);
	std::int64_t k = small_int(x, n, "the power of a non-monomial base");
	if (k == 0)
		return QSeries::constant(1, scale_, t);
	std::int64_t kk = k < 0 ? -k : k;
	std::int64_t extra = 0;
	for (int attempt = 0;; ++attempt) {
		QSeries a = series(*n.kids[0], env, t + extra);
		QSeries r = a;
		for (std::int64_t i = 1; i < kk; ++i)
			r = mul(r, a);
		if (k < 0) {
			if (r.is_zero())
				throw DivisionByZeroError(at(n) +
				                          "negative power of a series that is zero to its order");
			r = div(QSeries::constant(1, scale_, r.order_scaled()), r);
		}
		if (r.order_scaled() >= t)
			return truncate(r, Exponent(t, scale_));
		if (attempt >= 2)
			throw InsufficientOrderError(at(n) + "result order fell short of the request");
		extra += t - r.order_scaled();
	}
}

QSeries Evaluator::summation(const Node &n, const Env &env, std::int64_t t, bool bilateral) {
	const Node &v = *n.kids[0];
	const Node &body = *n.kids[bilateral ? 1 : 3];
	if (bilateral) {
		TermGenerator g{[this, &v, &body, &env](std::int64_t i, std::int64_t tt) {
			                Env e2 = env;
			                e2[v.name] = i;
			                return series(body, e2, tt);
		                },
		                nullptr};
		return checked_sum(g, t, true);
	}
	std::int64_t lo = scalar_int(*n.kids[1], env, "the lower bound");
	if (n.kids[2]->kind == NodeKind::infinity) {
		TermGenerator g{[this, &v, &body, &env, lo](std::int64_t i, std::int64_t tt) {
			                Env e2 = env;
			                e2[v.name] = lo + i;
			                return series(body, e2, tt);
		                },
		                nullptr};
		return checked_sum(g, t, false);
	}
	std::int64_t hi = scalar_int(*n.kids[2], env, "the upper bound");
	QSeries acc = QSeries::zero(scale_, t);
	Env e2 = env;
	for (std::int64_t i = lo; i <= hi; ++i) {
		e2[v.name] = i;
		acc = add(acc, series(body, e2, t));
	}
	return acc;
}

QSeries Evaluator::call(const Node &n, const Env &env, std::int64_t t) {
	const std::string &f = n.name;
	auto arity = [&](std::size_t want) {
		if (n.kids.size() != want)
			throw UsageError(at(n) + f + " takes " + std::to_string(want) + " argument(s), got " +
			                 std::to_string(n.kids.size()));
	};
	auto base_exp = [&](const Node &arg) {
		Exponent b = to_exponent(scalar(arg, env), arg);
		if (!(Exponent(0) < b))
			throw UsageError(at(arg) + "the base exponent must be positive");
		return b;
	};
	if (f == "sum") {
		return summation(n, env, t, false);
	}
	if (f == "bsum") {
		return summation(n, env, t, true);
	}
	if (f == "poch") {
		arity(3);
		Monomial arg = monomial(*n.kids[0], env);
		Exponent b = base_exp(*n.kids[1]);
		std::optional<std::int64_t> len;
		if (n.kids[2]->kind != NodeKind::infinity)
			len = scalar_int(*n.kids[2], env, "the length");
		return pochhammer(PochSpec{arg, b, len}, scale_, t);
	}
	if (f == "pochinf") {
		arity(2);
		Monomial arg = monomial(*n.kids[0], env);
		return pochhammer(poch_inf(arg, base_exp(*n.kids[1])), scale_, t);
	}
	if (f == "qbin") {
		arity(2);
		std::int64_t nn = scalar_int(*n.kids[0], env, "the binomial's n");
		std::int64_t kk = scalar_int(*n.kids[1], env, "the binomial's k");
		return qbinomial(nn, kk, scale_, t);
	}
	if (f == "tau") {
		arity(2);
		std::int64_t r = scalar_int(*n.kids[0], env, "the tau weight");
		std::int64_t nn = scalar_int(*n.kids[1], env, "the tau index");
		return QSeries::from_monomial(tau(r, nn), scale_, t);
	}
	if (f == "jtp") {
		arity(2);
		Monomial arg = monomial(*n.kids[0], env);
		return triple_product_rhs(arg, base_exp(*n.kids[1]), scale_, t);
	}
	if (f == "eulerq") {
		arity(0);
		return eulerq(scale_, t);
	}
	if (f == "phi") {
		arity(0);
		return phi_neg_q(scale_, t);
	}
	if (f == "psi") {
		arity(0);
		return psi_neg_q(scale_, t);
	}
	throw UsageError(at(n) + "unknown function " + f);
}

QSeries Evaluator::series(const Node &n, const Env &env, std::int64_t t) {
	switch (n.kind) {
	case NodeKind::rational:
		return QSeries::constant(n.value, scale_, t);
	case NodeKind::qvar:
		return QSeries::from_monomial(Monomial::q(), scale_, t);
	case NodeKind::var: {
		auto it = env.find(n.name);
		if (it == env.end())
			throw UsageError(at(n) + "unbound identifier " + n.name);
		return QSeries::constant(Rational(it->second), scale_, t);
	}
	case NodeKind::infinity:
		throw UsageError(at(n) + "inf is only meaningful as a sum bound or length");
	case NodeKind::add:
		return add(series(*n.kids[0], env, t), series(*n.kids[1], env, t));
	case NodeKind::sub:
		return sub(series(*n.kids[0], env, t), series(*n.kids[1], env, t));
	case NodeKind::neg:
		return neg(series(*n.kids[0], env, t));
	case NodeKind::mul:
		return binary_retry(n, env, t, false);
	case NodeKind::div:
		return binary_retry(n, env, t, true);
	case NodeKind::pow:
		return series_pow(n, env, t);
	case NodeKind::call:
		return call(n, env, t);
	}
	throw UsageError(at(n) + "malformed expression");
}

} // namespace

EvalResult eval(const Ast &ast, std::int64_t order_q, std::int64_t scale,
                const EvalLimits &limits) {
	if (!ast.root)
		throw UsageError("empty expression");
	if (scale < 1)
		throw UsageError("the lattice scale must be at least 1");
	if (order_q < 0)
		throw UsageError("negative order");
	Evaluator ev(scale, limits);
	QSeries v = ev.series(*ast.root, Env{}, order_q * scale);
	return EvalResult{std::move(v), ev.heuristic_sums()};
}

} // namespace qseries::dsl
