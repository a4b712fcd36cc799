#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

/* One q-shifted factorial (x; q^b)_m: argument monomial x, base exponent
 * b > 0 (b = 1 for base q, 2 for base q^2, ...), and length m which is any
 * integer or infinity (nullopt). Negative length is the reciprocal
 * (x;q)_{-m} = 1 / ((x q^{-bm}; q^b)_m. */
struct PochSpec {
	Monomial arg;
	Exponent base_exp;
	std::optional<std::int64_t> length;

	std::string str() const; // "(x;q^b)_m" for error messages
};

inline PochSpec poch_finite(Monomial arg, Exponent base_exp, std::int64_t m) {
	return {std::move(arg), base_exp, m};
}
inline PochSpec poch_inf(Monomial arg, Exponent base_exp) {
	return {std::move(arg), base_exp, std::nullopt};
}

/* Whether the factorial sits above or below the fraction bar decides what a
 * vanishing factor means: a numerator annihilates (zero series), a
 * denominator is a pole. */
enum class FactorRole { numerator, denominator };

// Index j >= 0 (infinite/nonnegative length) or j >= 1 (negative length,
// reciprocal factor) of the first identically-zero factor, if any.
std::optional<std::int64_t> poch_vanishing_factor(const PochSpec &spec);

// Exact valuation (minimal exponent) of the factorial; ContractError if it
// vanishes. Finite even for infinite length since b > 0.
Exponent poch_valuation(const PochSpec &spec);

/* Exact truncated expansion of (x;q^b)_m on the lattice
 * (1/lcm(scale, exponent denominators))Z. Every factor is an exact
 * binomial, so the order never shrinks below the request. DivergenceError
 * for infinite length with b <= 0; PoleError for a vanishing factor in
 * denominator position (or in the reciprocal of a negative length). */
QSeries pochhammer(const PochSpec &spec, std::int64_t scale, std::int64_t order_scaled,
                   FactorRole role = FactorRole::numerator);

// Product of (arg;q^b)_m over args, with cross-factor order padding so the
// result is exact up to order_scaled even when factors dip below q^0.
QSeries pochhammer_multi(std::span<const Monomial> args, const Exponent &base_exp,
                         std::optional<std::int64_t> length, std::int64_t scale,
                         std::int64_t order_scaled, FactorRole role = FactorRole::numerator);

/* [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}), a polynomial of degree
 * k(n-k) when 0 <= k <= n, and the zero series for k < 0 or k > n. */
QSeries qbinomial(std::int64_t n, std::int64_t k, std::int64_t scale, std::int64_t order_scaled);

// All of [n choose 0..n]_q via the ratio recurrence
// [n choose j+1] = [n choose j] * (1 - q^(n-j)) / (1 - q^(j+1)),
// one exact binomial multiply and divide per step.
std::vector<QSeries> qbinomial_row(std::int64_t n, std::int64_t scale, std::int64_t order_scaled);

// tau_r(n) = (-1)^n q^(r n(n-1)/2), kept exact as a monomial.
Monomial tau(std::int64_t r, std::int64_t n);

// (q;q)_infinity.
QSeries eulerq(std::int64_t scale, std::int64_t order_scaled);

// phi(-q) = (q;q)_inf / (-q;q)_inf and psi(-q) = (q^2;q^2)_inf / (-q;q^2)_inf.
QSeries phi_neg_q(std::int64_t scale, std::int64_t order_scaled);
QSeries psi_neg_q(std::int64_t scale, std::int64_t order_scaled);

/* (x, q^b/x, q^b; q^b)_inf, the product side of the triple product
 * identity. A vanishing factor yields the zero series, never an error. */
QSeries triple_product_rhs(const Monomial &x, const Exponent &base_exp, std::int64_t scale,
                           std::int64_t order_scaled);

} // namespace qseries
