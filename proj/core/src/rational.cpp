#include "qseries/rational.hpp"

#include <ostream>

namespace qseries {

Rational Rational::parse(const std::string &text) {
	if (text.empty())
		throw UsageError("empty rational literal");
	mpq_class v;
	if (v.set_str(text, 10) != 0)
		throw UsageError("bad rational literal '" + text + "'");
	if (v.get_den() == 0)
		throw UsageError("rational with zero denominator: '" + text + "'");
	v.canonicalize();
	return Rational(v);
}

std::string Rational::str() const {
	return v_.get_str();
}

std::ostream &operator<<(std::ostream &os, const Rational &r) {
	return os << r.str();
}

void Exponent::normalize() {
	if (den == 0)
		throw UsageError("exponent with zero denominator");
	if (den < 0) {
		num = -num;
		den = -den;
	}
	std::int64_t g = std::gcd(num < 0 ? -num : num, den);
	if (g > 1) {
		num /= g;
		den /= g;
	}
	if (num == 0)
		den = 1;
}

Exponent Exponent::parse(const std::string &text) {
	auto slash = text.find('/');
	try {
		if (slash == std::string::npos)
			return Exponent(std::stoll(text));
		return Exponent(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
	} catch (const std::logic_error &) {
		throw UsageError("bad exponent literal '" + text + "'");
	}
}

std::int64_t Exponent::to_scaled(std::int64_t scale) const {
	if (scale % den != 0)
		throw LatticeError("exponent " + str() + " is not on the lattice (1/" +
		                   std::to_string(scale) + ")Z");
	return num * (scale / den);
}

std::int64_t Exponent::to_scaled_floor(std::int64_t scale) const {
	return floor_div(num * scale, den);
}

std::string Exponent::str() const {
	if (den == 1)
		return std::to_string(num);
	return std::to_string(num) + "/" + std::to_string(den);
}

std::ostream &operator<<(std::ostream &os, const Exponent &e) {
	return os << e.str();
}

} // namespace qseries
