#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <string>

#include <qseries/identities.hpp>
#include <qseries/rational.hpp>
#include <qseries/series.hpp>
#include <qseries/text.hpp>

#include "helpers.hpp"

// Frozen expansions generated by golden_gen. Every registry entry must have
// one; the left side must reproduce it byte for byte and the identity must
// still verify at the recorded order.
TEST_CASE("golden: registry matches the frozen expansions") {
	namespace fs = std::filesystem;
	using namespace qseries;

	fs::path dir = QSERIES_GOLDEN_DIR;
	const auto &reg = registry();
	REQUIRE(!reg.empty());

	for (const Identity &ident : reg) {
		CAPTURE(ident.id);
		fs::path file = dir / (ident.id + ".json");
		REQUIRE_MESSAGE(fs::exists(file), "missing golden file, run golden_gen");

		std::ifstream in(file);
		nlohmann::json doc = nlohmann::json::parse(in);
		CHECK(doc["identity"] == ident.id);
		CHECK(doc["scale"] == ident.scale);

		std::map<std::string, std::string> pm;
		for (const auto &[k, v] : doc["params"].items())
			pm[k] = v.get<std::string>();
		Params params{pm};
		auto order_q = doc["order_q"].get<std::int64_t>();

		VerifyContext ctx;
		QSeries lhs = truncate(ident.lhs(params, order_q * ident.scale, ctx),
		                       Exponent(order_q, 1));
		CHECK(ctx.heuristic_sums == 0);
		CHECK(to_json(lhs) == doc["series"]);

		auto rep = verify(ident, params, order_q);
		CHECK(rep.passed());
		CHECK(rep.order == order_q);
	}
}
