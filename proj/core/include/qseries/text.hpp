#pragma once

#include <string>

#include <json.hpp>

#include "qseries/series.hpp"

namespace qseries {

/* Human-readable polynomial text: "1 - q + 2*q^3", coefficients as "p/r",
 * exponents as "k" or "k/2". The output is valid DSL input, so for
 * polynomial values parse(to_text(x)) evaluates back to x. */
std::string to_text(const QSeries &a);

/* Dense JSON value {"scale": int, "min_exp": "k", "order": "k", "coeffs":
 * ["c", ...]} with one coefficient string per lattice position from min_exp
 * to order. Exact strings only, never floats; used by the CLI json format
 * and the golden files. */
nlohmann::json to_json(const QSeries &a);

std::string to_json_text(const QSeries &a);

} // namespace qseries
