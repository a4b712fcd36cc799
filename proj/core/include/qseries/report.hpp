#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "qseries/series.hpp"

namespace qseries {

enum class VerifyStatus { pass, mismatch, error };

const char *to_string(VerifyStatus s);

/* Outcome of one verification run. A mismatch always carries the smallest
 * disagreeing exponent with both coefficients; an error carries a message.
 * heuristic_sums counts summations that stopped on the window heuristic
 * instead of an exact valuation bound. */
struct VerificationReport {
	std::string id;
	std::map<std::string, std::string> params;
	std::int64_t order = 0; // q-units actually verified
	std::int64_t scale = 1;
	VerifyStatus status = VerifyStatus::error;
	std::optional<Mismatch> first_mismatch;
	int heuristic_sums = 0;
	std::string message;
	std::int64_t elapsed_ms = 0;

	bool passed() const { return status == VerifyStatus::pass; }
};

// {"identity", "params", "order", "scale", "status", "first_mismatch",
//  "heuristic_sums", "elapsed_ms"}; exact strings for all coefficients.
nlohmann::json report_to_json(const VerificationReport &r);

// One-line "pass  mod24 order=100" style summary. Deliberately carries no
// timing so identical runs emit identical bytes.
std::string report_line(const VerificationReport &r);

} // namespace qseries
