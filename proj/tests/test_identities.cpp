#include <doctest.h>

#include <map>
#include <string>

#include <qseries/factory.hpp>
#include <qseries/identities.hpp>

#include "helpers.hpp"

using namespace qseries;
using qtest::same;

namespace {

Params one_param(const std::string &k, const std::string &v) {
	return Params(std::map<std::string, std::string>{{k, v}});
}

VerificationReport run(const std::string &id, const Params &p, std::int64_t order) {
	const Identity *ident = find_identity(id);
	REQUIRE(ident != nullptr);
	return verify(*ident, p, order);
}

} // namespace

TEST_CASE("registry lookups") {
	CHECK(registry().size() == 16);
	CHECK(find_identity("rr1") != nullptr);
	CHECK(find_identity("mod30-plus") != nullptr);
	CHECK(find_identity("nope") == nullptr);
}

TEST_CASE("parameter enumeration respects caps and domains") {
	Caps caps;
	caps.range_cap = 3;
	auto h = enumerate_params(*find_identity("h-closed"), caps);
	REQUIRE(h.size() == 7); // -3 .. 3
	CHECK(h.front().get_int("n") == -3);
	CHECK(h.back().get_int("n") == 3);

	auto p = enumerate_params(*find_identity("pentagonal-gen"), caps);
	REQUIRE(p.size() == 4); // 0 .. 3
	CHECK(p.front().get_int("n") == 0);

	auto hi = enumerate_params(*find_identity("h-inverse"), caps);
	REQUIRE(hi.size() == 3); // domain starts at 1
	CHECK(hi.front().get_int("n") == 1);

	CHECK(enumerate_params(*find_identity("rr1"), caps).size() == 1);
	CHECK(enumerate_params(*find_identity("jacobi-triple"), caps).size() == 4);
}

TEST_CASE("bad parameters are usage errors, not mismatches") {
	CHECK_THROWS_AS(run("rr1", one_param("n", "1"), 20), UsageError);
	CHECK_THROWS_AS(run("pentagonal-gen", Params(), 20), UsageError);
	CHECK_THROWS_AS(run("pentagonal-gen", one_param("n", "-1"), 20), UsageError);
	CHECK_THROWS_AS(run("pentagonal-gen", one_param("n", "x"), 20), UsageError);
	CHECK_THROWS_AS(run("pentagonal-gen", one_param("m", "1"), 20), UsageError);
	CHECK_THROWS_AS(run("jacobi-triple", one_param("case", "q:4"), 20), UsageError);
	CHECK_THROWS_AS(run("h-inverse", one_param("n", "0"), 20), UsageError);
	const Identity *rr1 = find_identity("rr1");
	CHECK_THROWS_AS(verify(*rr1, Params(), -1), UsageError);
}

TEST_CASE("every identity passes at a modest order") {
	CHECK(run("rr1", Params(), 30).passed());
	CHECK(run("rr2", Params(), 30).passed());
	for (const char *c : {"q:3", "q^2:5", "-q:2", "-1:1"})
		CHECK(run("jacobi-triple", one_param("case", c), 30).passed());
	for (int n : {0, 1, 2, 5})
		CHECK(run("pentagonal-gen", one_param("n", std::to_string(n)), 25).passed());
	for (int n : {-6, -1, 0, 1, 2, 7})
		CHECK(run("h-closed", one_param("n", std::to_string(n)), 25).passed());
	for (int n : {-4, 0, 3})
		CHECK(run("h-antisym", one_param("n", std::to_string(n)), 25).passed());
	for (int n : {0, 1, 2, 4})
		CHECK(run("key-finite", one_param("n", std::to_string(n)), 25).passed());
	for (int n : {0, 1, 3, 5})
		CHECK(run("bailey-pair-new", one_param("n", std::to_string(n)), 25).passed());
	for (int n : {1, 2, 5})
		CHECK(run("h-inverse", one_param("n", std::to_string(n)), 25).passed());
	for (const char *c : {"-1,inf", "-q,inf", "-1,-1", "inf,inf"})
		CHECK(run("main-theorem", one_param("xy", c), 25).passed());
	for (int m : {0, 1, 2, 3, 7})
		CHECK(run("truncated-sum", one_param("m", std::to_string(m)), 20).passed());
	CHECK(run("mod24", Params(), 30).passed());
	CHECK(run("mod15", Params(), 30).passed());
	CHECK(run("mod30-psi", Params(), 30).passed());
}

TEST_CASE("verification runs at least at the registered floor") {
	VerificationReport rep = run("mod24", Params(), 0);
	CHECK(rep.passed());
	CHECK(rep.order == 24); // floor kicks in
	VerificationReport deep = run("rr1", Params(), 35);
	CHECK(deep.order == 35);
	CHECK(run("mod15", Params(), 0).scale == 2);
}

TEST_CASE("no registered identity needs heuristic summation") {
	for (const char *id : {"rr1", "jacobi-triple", "mod24", "mod15", "mod30-psi"}) {
		const Identity *ident = find_identity(id);
		Params p;
		if (id == std::string("jacobi-triple"))
			p = one_param("case", "q:3");
		VerificationReport rep = verify(*ident, p, 20);
		CHECK(rep.heuristic_sums == 0);
	}
}

TEST_CASE("an injected sign error surfaces as exactly one mismatch") {
	const Identity *real = find_identity("mod30-plus");
	REQUIRE(real != nullptr);
	Identity tampered = *real;
	tampered.min_order = 10;
	tampered.rhs = [inner = real->rhs](const Params &p, std::int64_t t, VerifyContext &ctx) {
		return neg(inner(p, t, ctx));
	};
	VerificationReport rep = verify(tampered, Params(), 10);
	CHECK(rep.status == VerifyStatus::mismatch);
	REQUIRE(rep.first_mismatch.has_value());
	CHECK(rep.first_mismatch->lhs == -rep.first_mismatch->rhs);

	// The genuine entry still passes at the same order.
	CHECK(verify(*real, Params(), 10).passed());
}

TEST_CASE("build failures come back as error reports with messages") {
	Identity throwing{"throwing",
					  "always fails to build",
					  1,
					  5,
					  NoParams{},
					  [](const Params &, std::int64_t t, VerifyContext &) {
						  return QSeries::zero(1, t);
					  },
					  [](const Params &, std::int64_t, VerifyContext &) -> QSeries {
						  throw PoleError("synthetic pole");
					  }};
	VerificationReport rep = verify(throwing, Params(), 5);
	CHECK(rep.status == VerifyStatus::error);
	CHECK(rep.message == "synthetic pole");
	CHECK_FALSE(rep.passed());
}

TEST_CASE("verify-all is deterministic across thread counts") {
	Caps caps;
	caps.range_cap = 2;
	auto seq = verify_all(12, 1, caps);
	auto par = verify_all(12, 4, caps);
	REQUIRE(seq.size() == par.size());
	CHECK(seq.size() > 16); // parametric families expand
	for (std::size_t i = 0; i < seq.size(); ++i) {
		CHECK(seq[i].id == par[i].id);
		CHECK(seq[i].params == par[i].params);
		CHECK(seq[i].status == par[i].status);
		CHECK(report_line(seq[i]) == report_line(par[i]));
	}
	for (const auto &r : seq) {
		CHECK(r.passed());
		CHECK(r.heuristic_sums == 0);
	}
}

TEST_CASE("reports serialize with exact strings") {
	VerificationReport rep = run("mod15", Params(), 15);
	nlohmann::json j = report_to_json(rep);
	CHECK(j["identity"] == "mod15");
	CHECK(j["status"] == "pass");
	CHECK(j["scale"] == 2);
	CHECK(j["first_mismatch"].is_null());
	CHECK(j["heuristic_sums"] == 0);
	CHECK(j.contains("elapsed_ms"));

	std::string line = report_line(rep);
	CHECK(line.find("pass") == 0);
	CHECK(line.find("mod15") != std::string::npos);
	CHECK(line.find("order=15") != std::string::npos);
	CHECK(line.find("ms") == std::string::npos); // timing never leaks into lines

	VerificationReport bad;
	bad.id = "x";
	bad.status = VerifyStatus::mismatch;
	bad.first_mismatch = Mismatch{Exponent(3, 2), Rational(1, 2), Rational(-7)};
	nlohmann::json jb = report_to_json(bad);
	CHECK(jb["first_mismatch"]["exponent"] == "3/2");
	CHECK(jb["first_mismatch"]["lhs"] == "1/2");
	CHECK(jb["first_mismatch"]["rhs"] == "-7");
	CHECK(report_line(bad).find("q^3/2") != std::string::npos);
}

TEST_CASE("pentagonal generalization degenerates to the number theorem at n = 0") {
	const Identity *ident = find_identity("pentagonal-gen");
	VerifyContext ctx;
	QSeries lhs = ident->lhs(one_param("n", "0"), 26, ctx);
	CHECK(same(lhs, eulerq(1, 26)));
}

TEST_CASE("truncated sums really are polynomials of bounded degree") {
	const Identity *ident = find_identity("truncated-sum");
	VerifyContext ctx;
	for (std::int64_t m : {1, 2, 3, 4, 5}) {
		std::int64_t deg = 0;
		for (std::int64_t n = 0; n <= m; ++n)
			deg = std::max(deg, 2 * n * (m - n) + n * (n - 1) +
									(n - m) * (n - m - 1) / 2);
		QSeries lhs = ident->lhs(one_param("m", std::to_string(m)), deg + 25, ctx);
		QSeries rhs = ident->rhs(one_param("m", std::to_string(m)), deg + 25, ctx);
		CHECK(lhs.order_scaled() >= deg);
		if (!lhs.is_zero()) {
			CHECK(lhs.min_exp_scaled() >= 0);
			std::int64_t top = lhs.min_exp_scaled() +
							   static_cast<std::int64_t>(lhs.coeffs().size()) - 1;
			CHECK(top <= deg);
		}
		CHECK(equal_up_to(lhs, rhs, Exponent(deg + 25)).equal);
	}
}

TEST_CASE("the modulus-30 bracket assembles on either sign") {
	QSeries plus = product_side_mod30(1, 1, 40);
	QSeries minus = product_side_mod30(-1, 1, 40);
	CHECK_FALSE(plus.is_zero());
	CHECK_FALSE(minus.is_zero());
	CHECK_FALSE(same(plus, minus));
}
