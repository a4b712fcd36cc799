#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries::dsl {

/* Expression language over truncated q-series:
 *
 *   expr     := term (("+"|"-") term)*
 *   term     := factor (("*"|"/") factor)*
 *   factor   := ("-")? atom ("^" exponent)?
 *   atom     := RATIONAL | "q" | IDENT | "(" expr ")" | call
 *   exponent := ("-")? ( "(" intexpr ")" | RATIONAL | IDENT )
 *   intexpr  := integer/rational arithmetic over literals and bound
 *               variables with + - * / ^ and parentheses
 *   call     := IDENT "(" args ")"
 *
 * Calls: poch(arg, baseExp, len|inf), pochinf(arg, baseExp), qbin(n, k),
 * tau(r, n), jtp(arg, baseExp), eulerq(), phi(), psi(),
 * sum(var, lo, hi|inf, body), bsum(var, body). RATIONAL is "3" or "1/2";
 * whitespace is insignificant. */

enum class NodeKind {
	rational,
	qvar,
	var,
	infinity,
	add,
	sub,
	mul,
	div,
	neg,
	pow,
	call,
};

struct Node {
	NodeKind kind;
	int line = 0;
	int col = 0;
	Rational value;   // rational
	std::string name; // var and call nodes
	std::vector<std::shared_ptr<const Node>> kids;
};

struct Ast {
	std::shared_ptr<const Node> root;
};

// Lexical or syntax problem; what() is "line:col: message".
class ParseError : public Error {
public:
	ParseError(int line, int col, const std::string &msg)
	    : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
	      line(line),
	      col(col) {}

	int line;
	int col;
};

Ast parse(const std::string &text);

struct EvalLimits {
	std::int64_t index_cap = 10'000; // summation guard, far below the library default
	int window = 8;
};

struct EvalResult {
	QSeries value;
	int heuristic_sums = 0; // infinite sums stopped by the window heuristic
};

/* Evaluates a closed expression exactly to order_q whole powers of q on the
 * lattice (1/scale)Z. Syntax gives no valuation bounds, so infinite sums
 * stop on the window heuristic and are counted in the result. Errors carry
 * "line:col:" positions where one is known: unbound identifiers, arity and
 * argument-shape problems, off-lattice exponents, poles, division by a
 * vanishing series, and the index cap. */
EvalResult eval(const Ast &ast, std::int64_t order_q, std::int64_t scale,
                const EvalLimits &limits = {});

} // namespace qseries::dsl
