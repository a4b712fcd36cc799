#pragma once

#include <functional>
#include <utility>

#include "qseries/factory.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"
#include "qseries/summation.hpp"

namespace qseries {

/* A Slater-lemma parameter: either a monomial value for x or y, or the
 * formal limit x -> infinity. */
class ParamValue {
public:
	static ParamValue infinity() { return ParamValue(std::nullopt); }
	static ParamValue of(Monomial m) { return ParamValue(std::move(m)); }

	bool is_infinity() const { return !m_.has_value(); }
	const Monomial &mono() const {
		if (!m_)
			throw UsageError("reading the monomial of an infinite parameter");
		return *m_;
	}
	std::string str() const { return m_ ? m_->str() : "inf"; }

private:
	explicit ParamValue(std::optional<Monomial> m) : m_(std::move(m)) {}
	std::optional<Monomial> m_;
};

/* A Bailey pair relative to a: generators for alpha_n and beta_n, each
 * exact to any requested order, plus optional exact valuation bounds that
 * let the summation engine stop without heuristics. base records the
 * exponent stretch applied by rebased() (1 means base q).
 *
 * Generators take the requested order in whole powers of q and may return
 * series of any order at least that deep; all pairs here live on the
 * integer exponent lattice. */
struct BaileyPair {
	Monomial a = Monomial::one();
	std::string label;
	std::int64_t base = 1;
	std::function<QSeries(std::int64_t n, std::int64_t order_q)> alpha;
	std::function<QSeries(std::int64_t n, std::int64_t order_q)> beta;
	std::function<Exponent(std::int64_t n)> alpha_valuation;
	std::function<Exponent(std::int64_t n)> beta_valuation;
};

/* H(n) = sum over k in Z of tau_3(k)(1-q^k)q^((1+n)k), evaluated
 * bilaterally with its exact quadratic valuation bound. */
QSeries h_series(std::int64_t n, std::int64_t scale, std::int64_t order_scaled);

// H(n)/(q;q)_inf: an exact Laurent polynomial of at most two terms,
// picked by n mod 3.
QSeries h_ratio(std::int64_t n, std::int64_t scale, std::int64_t order_scaled);

// The closed form of H(n): h_ratio(n) * (q;q)_inf.
QSeries h_closed(std::int64_t n, std::int64_t scale, std::int64_t order_scaled);

// Exact valuation of H(n) for n not divisible by... any n with H(n) != 0;
// returns the case formula's exponent (a safe lower bound also at n = 0).
Exponent h_valuation(std::int64_t n);

/* The pair alpha_n = tau(n)(1-q^n)H(n), beta_n = (q;q)_inf (q^n-1)
 * tau^2(n)/(q;q)_{2n}, relative to a = 1, with exact valuation bounds. */
BaileyPair new_pair();

// Same pair with q -> q^m applied to every generator (e.g. m = 2 feeds
// transform_a2); valuation bounds are stretched accordingly.
BaileyPair rebased(const BaileyPair &pair, std::int64_t m);

/* beta_n = sum_{k=0..n} alpha_k / ((q;q)_{n-k} (aq;q)_{n+k}). PoleError if
 * some (aq;q)_{n+k} vanishes. Generators are assumed not to dip below q^0;
 * if one does, the result's order comes up short and the caller's order
 * checks fail loudly rather than silently. */
QSeries beta_from_alpha(const std::function<QSeries(std::int64_t, std::int64_t)> &alpha,
                        const Monomial &a, std::int64_t n, std::int64_t scale,
                        std::int64_t order_scaled);

/* alpha_n = ((1-aq^{2n})/(1-a)) sum_{k=0..n} tau(n-k) (a;q)_{n+k}/(q;q)_{n-k}
 * beta_k. At a = 1 the removable (1-a) singularity is taken in the
 * cancelled form alpha_0 = beta_0,
 * alpha_n = (1-q^{2n}) sum_k tau(n-k) (q;q)_{n+k-1}/(q;q)_{n-k} beta_k. */
QSeries alpha_from_beta(const std::function<QSeries(std::int64_t, std::int64_t)> &beta,
                        const Monomial &a, std::int64_t n, std::int64_t scale,
                        std::int64_t order_scaled);

/* Checks the defining relation and the inversion round-trip for
 * n = 0..n_max at the given order; failures land in the report with the
 * offending n and the first mismatching exponent. */
VerificationReport verify_pair(const BaileyPair &pair, std::int64_t n_max, std::int64_t scale,
                               std::int64_t order_scaled);

struct Sides {
	QSeries lhs;
	QSeries rhs;
	int heuristic_sums = 0;
};

/* Both sides of the Bailey lemma at a = 1:
 *   sum_{n>=0} (x,y;q)_n / ((q/x,q/y;q)_n) (q/xy)^n alpha_n
 *   = ((q,q/xy;q)_inf / ((q/x,q/y;q)_inf)) sum_{n>=0} (x,y;q)_n (q/xy)^n beta_n.
 * Infinite x or y is handled by the limit rules (x;q)_n x^{-n} -> tau(n),
 * (q/x;q)_* -> 1, (q/xy;q)_* -> 1. Parameters making any denominator or
 * prefactor factor vanish identically (x = q^j with unit coefficient,
 * xy = q^{j+1}) are rejected eagerly with a PoleError naming the factor. */
Sides bailey_lemma_sides(const BaileyPair &pair, const ParamValue &x, const ParamValue &y,
                         std::int64_t scale, std::int64_t order_scaled);

/* The three a = 1 specializations:
 *   a1: sum q^{n^2} beta_n            = (1/(q;q)_inf) sum q^{n^2} alpha_n
 *   a2: sum q^{n^2} (-q;q^2)_n beta_n = (1/psi(-q))   sum q^{n^2} alpha_n
 *       (pair must be supplied in base q^2, e.g. rebased(new_pair(), 2))
 *   a3: sum q^{n(n+1)/2} (-1;q)_n beta_n
 *       = (2/phi(-q)) sum q^{n(n+1)/2}/(1+q^n) alpha_n. */
Sides transform_a1(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled);
Sides transform_a2(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled);
Sides transform_a3(const BaileyPair &pair, std::int64_t scale, std::int64_t order_scaled);

/* The truncated transform: for m >= 0,
 *   ((aq;q)_m (-1)^m q^{m(m+1)/2} / (q;q)_m)
 *     sum_{n=0..m} (q^{-m}, aq^{1+m};q)_n beta_n = sum_{n=0..m} alpha_n.
 * Both sides are finite sums. */
Sides truncated_transform(const BaileyPair &pair, std::int64_t m, std::int64_t scale,
                          std::int64_t order_scaled);

} // namespace qseries
