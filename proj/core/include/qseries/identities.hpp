#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

/* Verification parameters arrive as strings (e.g. from --param k=v); typed
 * accessors parse on demand and throw UsageError on garbage. */
class Params {
public:
	Params() = default;
	explicit Params(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

	bool has(const std::string &key) const { return kv_.count(key) != 0; }
	std::int64_t get_int(const std::string &key) const;
	std::string get(const std::string &key) const;
	const std::map<std::string, std::string> &raw() const { return kv_; }

private:
	std::map<std::string, std::string> kv_;
};

struct NoParams {};
struct IntRange {
	std::string name;
	std::int64_t lo = 0;
	std::int64_t hi = 0;
};
struct ChoiceSet {
	std::string name;
	std::vector<std::string> values;
};
using ParamSpace = std::variant<NoParams, IntRange, ChoiceSet>;

// Clamp applied to integer families during enumeration; a configuration
// knob, not part of any identity's definition.
struct Caps {
	std::int64_t range_cap = 30;
};

// Collects summation provenance while a side is built.
struct VerifyContext {
	int heuristic_sums = 0;
};

using SideBuilder =
    std::function<QSeries(const Params &, std::int64_t order_scaled, VerifyContext &)>;

/* One verifiable equation: two side builders over the same parameter
 * space, a lattice scale, and the smallest order at which the comparison
 * is considered non-vacuous (verification always runs at least that
 * deep). Builders receive the order in scaled lattice units and must
 * return series exact to it. */
struct Identity {
	std::string id;
	std::string description;
	std::int64_t scale = 1;
	std::int64_t min_order = 10;
	ParamSpace space;
	SideBuilder lhs;
	SideBuilder rhs;
};

const std::vector<Identity> &registry();

// nullptr when the id is unknown.
const Identity *find_identity(const std::string &id);

// All parameter assignments of the identity's space, clamped by caps, in
// deterministic order.
std::vector<Params> enumerate_params(const Identity &ident, const Caps &caps);

/* Builds both sides at max(order_q, min_order) q-units on the identity's
 * lattice and compares coefficients exactly. Parameters outside the
 * declared space throw UsageError; failures during the build (poles,
 * insufficient order) come back as error-status reports. */
VerificationReport verify(const Identity &ident, const Params &params, std::int64_t order_q);

// Every registry entry over its capped parameter space. Results are in
// registry-then-parameter order regardless of the number of worker
// threads.
std::vector<VerificationReport> verify_all(std::int64_t order_q, int jobs, const Caps &caps = {});

/* (sq;q^2)_inf/(q^2;q^2)_inf times the four-theta bracket of the
 * modulus-30 product sides, s = +1 or -1:
 *   (sq^13,sq^17,q^30;q^30)_inf - (sq^11,sq^19,q^30;q^30)_inf
 *   + sq (sq^7,sq^23,q^30;q^30)_inf - sq^3 (sq,sq^29,q^30;q^30)_inf. */
QSeries product_side_mod30(int sign, std::int64_t scale, std::int64_t order_scaled);

} // namespace qseries
