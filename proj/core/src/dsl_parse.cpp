#include "qseries/dsl.hpp"

#include <cctype>

namespace qseries::dsl {

namespace {

struct Token {
	enum Kind { number, ident, punct, end } kind = end;
	std::string text;
	int line = 1;
	int col = 1;
};

std::string show(const Token &t) {
	if (t.kind == Token::end)
		return "end of input";
	return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string &text) {
	std::vector<Token> out;
	int line = 1, col = 1;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t j = 0; j < n; ++j, ++i) {
			if (text[i] == '\n') {
				++line;
				col = 1;
			} else {
				++col;
			}
		}
	};
	while (i < text.size()) {
		char c = text[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		Token t;
		t.line = line;
		t.col = col;
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
				++j;
			// '/' continues the literal only when a denominator digit follows;
			// otherwise it is the division operator.
			if (j + 1 < text.size() && text[j] == '/' &&
			    std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
				++j;
				while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
					++j;
			}
			t.kind = Token::number;
			t.text = text.substr(i, j - i);
			advance(j - i);
		} else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
			                           text[j] == '_'))
				++j;
			t.kind = Token::ident;
			t.text = text.substr(i, j - i);
			advance(j - i);
		} else if (std::string("+-*/^(),").find(c) != std::string::npos) {
			t.kind = Token::punct;
			t.text = std::string(1, c);
			advance(1);
		} else {
			throw ParseError(line, col, std::string("unexpected character '") + c + "'");
		}
		out.push_back(std::move(t));
	}
	Token e;
	e.kind = Token::end;
	e.line = line;
	e.col = col;
	out.push_back(e);
	return out;
}

using NodePtr = std::shared_ptr<const Node>;

std::shared_ptr<Node> make(NodeKind kind, const Token &at) {
	auto n = std::make_shared<Node>();
	n->kind = kind;
	n->line = at.line;
	n->col = at.col;
	return n;
}

NodePtr make2(NodeKind kind, const Token &at, NodePtr a, NodePtr b) {
	auto n = make(kind, at);
	n->kids = {std::move(a), std::move(b)};
	return n;
}

class Parser {
public:
	explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

	Ast run() {
		NodePtr e = expr();
		if (!at_end())
			throw ParseError(peek().line, peek().col,
			                 "expected end of input, '+', '-', '*', '/' or ')', got " +
			                     show(peek()));
		return Ast{std::move(e)};
	}

private:
	std::vector<Token> toks_;
	std::size_t pos_ = 0;

	const Token &peek() const { return toks_[pos_]; }
	const Token &get() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
	bool at_end() const { return peek().kind == Token::end; }

	bool is_punct(const char *p) const {
		return peek().kind == Token::punct && peek().text == p;
	}
	bool eat(const char *p) {
		if (!is_punct(p))
			return false;
		get();
		return true;
	}
	void expect(const char *p, const char *where) {
		if (!eat(p))
			throw ParseError(peek().line, peek().col,
			                 std::string("expected '") + p + "' " + where + ", got " +
			                     show(peek()));
	}

	NodePtr expr() {
		NodePtr a = term();
		for (;;) {
			Token op = peek();
			if (eat("+"))
				a = make2(NodeKind::add, op, std::move(a), term());
			else if (eat("-"))
				a = make2(NodeKind::sub, op, std::move(a), term());
			else
				return a;
		}
	}

	NodePtr term() {
		NodePtr a = factor();
		for (;;) {
			Token op = peek();
			if (eat("*"))
				a = make2(NodeKind::mul, op, std::move(a), factor());
			else if (eat("/"))
				a = make2(NodeKind::div, op, std::move(a), factor());
			else
				return a;
		}
	}

	NodePtr factor() {
		Token lead = peek();
		bool negated = eat("-");
		NodePtr a = atom();
		Token caret = peek();
		if (eat("^")) {
			a = make2(NodeKind::pow, caret, std::move(a), exponent());
		}
		if (negated) {
			auto n = make(NodeKind::neg, lead);
			n->kids = {std::move(a)};
			return n;
		}
		return a;
	}

	NodePtr exponent() {
		Token lead = peek();
		bool negated = eat("-");
		NodePtr e;
		if (eat("(")) {
			e = intexpr();
			expect(")", "after the exponent expression");
		} else if (peek().kind == Token::number) {
			e = literal(get());
		} else if (peek().kind == Token::ident) {
			e = ident_leaf(get());
		} else {
			throw ParseError(peek().line, peek().col,
			                 "expected an exponent: '(', a rational or an identifier, got " +
			                     show(peek()));
		}
		if (negated) {
			auto n = make(NodeKind::neg, lead);
			n->kids = {std::move(e)};
			return n;
		}
		return e;
	}

	// Exponent sub-language: scalar arithmetic only, no calls.
	NodePtr intexpr() {
		NodePtr a = interm();
		for (;;) {
			Token op = peek();
			if (eat("+"))
				a = make2(NodeKind::add, op, std::move(a), interm());
			else if (eat("-"))
				a = make2(NodeKind::sub, op, std::move(a), interm());
			else
				return a;
		}
	}

	NodePtr interm() {
		NodePtr a = infactor();
		for (;;) {
			Token op = peek();
			if (eat("*"))
				a = make2(NodeKind::mul, op, std::move(a), infactor());
			else if (eat("/"))
				a = make2(NodeKind::div, op, std::move(a), infactor());
			else
				return a;
		}
	}

	NodePtr infactor() {
		Token lead = peek();
		bool negated = eat("-");
		NodePtr a = inatom();
		Token caret = peek();
		if (eat("^"))
			a = make2(NodeKind::pow, caret, std::move(a), infactor());
		if (negated) {
			auto n = make(NodeKind::neg, lead);
			n->kids = {std::move(a)};
			return n;
		}
		return a;
	}

	NodePtr inatom() {
		if (eat("(")) {
			NodePtr e = intexpr();
			expect(")", "in the exponent expression");
			return e;
		}
		if (peek().kind == Token::number)
			return literal(get());
		if (peek().kind == Token::ident)
			return ident_leaf(get());
		throw ParseError(peek().line, peek().col,
		                 "expected a rational, an identifier or '(' in the exponent, got " +
		                     show(peek()));
	}

	NodePtr atom() {
		if (peek().kind == Token::number)
			return literal(get());
		if (eat("(")) {
			NodePtr e = expr();
			expect(")", "to close the parenthesized expression");
			return e;
		}
		if (peek().kind == Token::ident) {
			Token id = get();
			if (is_punct("("))
				return call(id);
			return ident_leaf(id);
		}
		throw ParseError(peek().line, peek().col,
		                 "expected an expression: a rational, 'q', an identifier, '(' or a "
		                 "call, got " +
		                     show(peek()));
	}

	NodePtr literal(const Token &t) {
		auto n = make(NodeKind::rational, t);
		n->value = Rational::parse(t.text);
		return n;
	}

	NodePtr ident_leaf(const Token &t) {
		if (t.text == "q")
			return make(NodeKind::qvar, t);
		if (t.text == "inf")
			return make(NodeKind::infinity, t);
		auto n = make(NodeKind::var, t);
		n->name = t.text;
		return n;
	}

	NodePtr binder(const char *fn) {
		if (peek().kind != Token::ident)
			throw ParseError(peek().line, peek().col,
			                 std::string(fn) + " needs a variable name first, got " +
			                     show(peek()));
		Token v = get();
		if (v.text == "q" || v.text == "inf")
			throw ParseError(v.line, v.col, "'" + v.text + "' is reserved and cannot be bound");
		auto n = make(NodeKind::var, v);
		n->name = v.text;
		return n;
	}

	NodePtr call(const Token &id) {
		auto n = std::make_shared<Node>();
		n->kind = NodeKind::call;
		n->line = id.line;
		n->col = id.col;
		n->name = id.text;
		expect("(", "to open the argument list");
		if (id.text == "sum") {
			n->kids.push_back(binder("sum"));
			expect(",", "after the sum variable");
			n->kids.push_back(expr());
			expect(",", "after the lower bound");
			n->kids.push_back(expr());
			expect(",", "after the upper bound");
			n->kids.push_back(expr());
			expect(")", "to close sum(...)");
			return n;
		}
		if (id.text == "bsum") {
			n->kids.push_back(binder("bsum"));
			expect(",", "after the bsum variable");
			n->kids.push_back(expr());
			expect(")", "to close bsum(...)");
			return n;
		}
		if (!is_punct(")")) {
			n->kids.push_back(expr());
			while (eat(","))
				n->kids.push_back(expr());
		}
		expect(")", "to close the argument list");
		return n;
	}
};

} // namespace

Ast parse(const std::string &text) {
	Parser p(lex(text));
	return p.run();
}

} // namespace qseries::dsl
