#include "qseries/text.hpp"

namespace qseries {

namespace {

std::string term_text(const Rational &mag, const Exponent &e) {
	if (e == Exponent(0))
		return mag.str();
	std::string p = e == Exponent(1) ? "q" : "q^" + e.str();
	if (mag == Rational(1))
		return p;
	return mag.str() + "*" + p;
}

} // namespace

std::string to_text(const QSeries &a) {
	if (a.is_zero())
		return "0";
	std::string out;
	std::int64_t n = static_cast<std::int64_t>(a.coeffs().size());
	for (std::int64_t i = 0; i < n; ++i) {
		const Rational &c = a.coeffs()[static_cast<std::size_t>(i)];
		if (c.is_zero())
			continue;
		bool negative = c.sign() < 0;
		if (out.empty())
			out = negative ? "-" : "";
		else
			out += negative ? " - " : " + ";
		out += term_text(negative ? -c : c, Exponent(a.min_exp_scaled() + i, a.scale()));
	}
	return out;
}

std::string QSeries::str() const {
	return to_text(*this);
}

nlohmann::json to_json(const QSeries &a) {
	nlohmann::json coeffs = nlohmann::json::array();
	for (std::int64_t e = a.min_exp_scaled(); e <= a.order_scaled(); ++e)
		coeffs.push_back(a.at_scaled(e).str());
	return nlohmann::json{{"scale", a.scale()},
	                      {"min_exp", a.min_exp().str()},
	                      {"order", a.order().str()},
	                      {"coeffs", std::move(coeffs)}};
}

std::string to_json_text(const QSeries &a) {
	return to_json(a).dump();
}

} // namespace qseries
