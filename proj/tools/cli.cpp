#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <qseries/dsl.hpp>
#include <qseries/errors.hpp>
#include <qseries/identities.hpp>
#include <qseries/rational.hpp>
#include <qseries/report.hpp>
#include <qseries/series.hpp>
#include <qseries/text.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qseries::cli {

namespace {

std::string space_str(const ParamSpace &space) {
	struct Visitor {
		std::string operator()(const NoParams &) const { return "-"; }
		std::string operator()(const IntRange &r) const {
			constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
			constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
			std::ostringstream os;
			if (r.lo == kMin && r.hi == kMax)
				os << r.name << " in Z";
			else if (r.hi == kMax)
				os << r.name << " >= " << r.lo;
			else if (r.lo == kMin)
				os << r.name << " <= " << r.hi;
			else
				os << r.name << " in [" << r.lo << ", " << r.hi << "]";
			return os.str();
		}
		std::string operator()(const ChoiceSet &c) const {
			std::ostringstream os;
			os << c.name << " in {";
			for (std::size_t i = 0; i < c.values.size(); ++i) {
				if (i)
					os << ", ";
				os << c.values[i];
			}
			os << "}";
			return os.str();
		}
	};
	return std::visit(Visitor{}, space);
}

int cmd_list(std::ostream &out) {
	const auto &reg = registry();
	std::size_t idw = 2, spw = 6;
	std::vector<std::string> spaces;
	spaces.reserve(reg.size());
	for (const auto &ident : reg) {
		spaces.push_back(space_str(ident.space));
		idw = std::max(idw, ident.id.size());
		spw = std::max(spw, spaces.back().size());
	}
	out << std::left << std::setw(static_cast<int>(idw + 2)) << "id"
		<< std::setw(static_cast<int>(spw + 2)) << "params" << "statement\n";
	for (std::size_t i = 0; i < reg.size(); ++i)
		out << std::left << std::setw(static_cast<int>(idw + 2)) << reg[i].id
			<< std::setw(static_cast<int>(spw + 2)) << spaces[i] << reg[i].description
			<< "\n";
	return 0;
}

Params parse_params(const std::vector<std::string> &kvs) {
	std::map<std::string, std::string> kv;
	for (const auto &s : kvs) {
		auto eq = s.find('=');
		if (eq == std::string::npos || eq == 0)
			throw UsageError("--param expects key=value, got '" + s + "'");
		std::string key = s.substr(0, eq);
		if (!kv.emplace(key, s.substr(eq + 1)).second)
			throw UsageError("duplicate parameter '" + key + "'");
	}
	return Params(std::move(kv));
}

nlohmann::json summary_json(const std::vector<VerificationReport> &reports,
							std::int64_t order) {
	std::int64_t pass = 0, mismatch = 0, error = 0, heur = 0;
	for (const auto &r : reports) {
		switch (r.status) {
		case VerifyStatus::pass: ++pass; break;
		case VerifyStatus::mismatch: ++mismatch; break;
		case VerifyStatus::error: ++error; break;
		}
		heur += r.heuristic_sums;
	}
	return nlohmann::json{{"total", reports.size()},
						  {"pass", pass},
						  {"mismatch", mismatch},
						  {"error", error},
						  {"heuristic_sums", heur},
						  {"order", order}};
}

int verify_exit_code(const std::vector<VerificationReport> &reports, bool allow_heuristic,
					 std::ostream &err) {
	bool any_mismatch = false, any_error = false;
	std::int64_t heur = 0;
	for (const auto &r : reports) {
		any_mismatch = any_mismatch || r.status == VerifyStatus::mismatch;
		any_error = any_error || r.status == VerifyStatus::error;
		heur += r.heuristic_sums;
	}
	if (any_mismatch)
		return 1;
	if (any_error)
		return 3;
	if (heur > 0 && !allow_heuristic) {
		err << "error: " << heur
			<< " summation(s) stopped heuristically; rerun with --allow-heuristic to accept\n";
		return 3;
	}
	return 0;
}

int cmd_verify(const std::string &id, std::int64_t order,
			   const std::vector<std::string> &kvs, bool as_json, bool allow_heuristic,
			   std::ostream &out, std::ostream &err) {
	const Identity *ident = find_identity(id);
	if (!ident)
		throw UsageError("unknown identity '" + id + "' (see `list`)");
	VerificationReport rep = verify(*ident, parse_params(kvs), order);
	if (as_json)
		out << report_to_json(rep).dump(2) << "\n";
	else
		out << report_line(rep) << "\n";
	return verify_exit_code({rep}, allow_heuristic, err);
}

int cmd_verify_all(std::int64_t order, int jobs, std::int64_t cap,
				   const std::string &json_path, bool allow_heuristic, std::ostream &out,
				   std::ostream &err) {
	Caps caps;
	caps.range_cap = cap;
	std::vector<VerificationReport> reports = verify_all(order, jobs, caps);
	for (const auto &r : reports)
		out << report_line(r) << "\n";
	nlohmann::json summary = summary_json(reports, order);
	out << "summary: total=" << summary["total"] << " pass=" << summary["pass"]
		<< " mismatch=" << summary["mismatch"] << " error=" << summary["error"] << "\n";
	if (!json_path.empty()) {
		/* Timings vary run to run, so they are zeroed here: the file must be
		 * byte-identical for identical inputs whatever the job count. */
		nlohmann::json arr = nlohmann::json::array();
		for (VerificationReport r : reports) {
			r.elapsed_ms = 0;
			arr.push_back(report_to_json(r));
		}
		std::ofstream f(json_path, std::ios::binary);
		if (!f)
			throw UsageError("cannot open '" + json_path + "' for writing");
		f << nlohmann::json{{"reports", arr}, {"summary", summary}}.dump(2) << "\n";
	}
	return verify_exit_code(reports, allow_heuristic, err);
}

dsl::EvalResult eval_expr(const std::string &text, std::int64_t order, std::int64_t scale,
						  bool no_heuristic) {
	dsl::Ast ast = dsl::parse(text);
	dsl::EvalResult r = dsl::eval(ast, order, scale);
	if (no_heuristic && r.heuristic_sums > 0)
		throw ContractError(std::to_string(r.heuristic_sums) +
							" summation(s) stopped heuristically and --no-heuristic is set");
	return r;
}

int cmd_expand(const std::string &expr, std::int64_t order, std::int64_t scale,
			   const std::string &format, bool no_heuristic, std::ostream &out) {
	dsl::EvalResult r = eval_expr(expr, order, scale, no_heuristic);
	if (format == "json") {
		nlohmann::json doc = to_json(r.value);
		doc["heuristic_sums"] = r.heuristic_sums;
		out << doc.dump(2) << "\n";
	} else {
		out << r.value.str() << "\n";
	}
	return 0;
}

int cmd_coeff(const std::string &expr, const std::string &at, std::int64_t scale,
			  bool no_heuristic, std::ostream &out) {
	Exponent e = Exponent::parse(at);
	std::int64_t order = std::max<std::int64_t>(0, floor_div(e.num + e.den - 1, e.den));
	dsl::EvalResult r = eval_expr(expr, order, scale, no_heuristic);
	out << r.value.coefficient_at(e).str() << "\n";
	return 0;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
	CLI::App app{"exact truncated q-series engine and identity verifier"};
	app.name("qseries");
	app.require_subcommand(1);

	auto *list_cmd = app.add_subcommand("list", "show the identity registry");

	std::string id;
	std::int64_t order = 100;
	std::vector<std::string> kvs;
	bool as_json = false;
	bool allow_heuristic = false;
	auto *verify_cmd = app.add_subcommand("verify", "verify one identity");
	verify_cmd->add_option("id", id, "registry identifier")->required();
	verify_cmd->add_option("--order", order, "truncation order in whole powers of q");
	verify_cmd->add_option("--param", kvs, "parameter as key=value (repeatable)");
	verify_cmd->add_flag("--json", as_json, "emit the report as JSON on stdout");
	verify_cmd->add_flag("--allow-heuristic", allow_heuristic,
						 "accept summations without a valuation bound");

	int jobs = 1;
	std::int64_t cap = 30;
	std::string json_path;
	auto *all_cmd = app.add_subcommand("verify-all", "verify every registry entry");
	all_cmd->add_option("--order", order, "truncation order in whole powers of q");
	all_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
	all_cmd->add_option("--cap", cap, "bound for unbounded integer parameter ranges")
		->check(CLI::NonNegativeNumber);
	all_cmd->add_option("--json", json_path, "also write a JSON report to this path");
	all_cmd->add_flag("--allow-heuristic", allow_heuristic,
					  "accept summations without a valuation bound");

	std::string expr;
	std::int64_t scale = 1;
	std::string format = "text";
	bool no_heuristic = false;
	auto *expand_cmd = app.add_subcommand("expand", "evaluate an expression to a series");
	expand_cmd->add_option("expr", expr, "expression source text")->required();
	expand_cmd->add_option("--order", order, "truncation order in whole powers of q")
		->required();
	expand_cmd->add_option("--scale", scale, "exponent lattice denominator")
		->check(CLI::PositiveNumber);
	expand_cmd->add_option("--format", format, "output style")
		->check(CLI::IsMember({"text", "json"}));
	expand_cmd->add_flag("--no-heuristic", no_heuristic,
						 "fail if any summation stops heuristically");

	std::string at;
	auto *coeff_cmd = app.add_subcommand("coeff", "extract one exact coefficient");
	coeff_cmd->add_option("expr", expr, "expression source text")->required();
	coeff_cmd->add_option("--at", at, "exponent, integer or n/d")->required();
	coeff_cmd->add_option("--scale", scale, "exponent lattice denominator")
		->check(CLI::PositiveNumber);
	coeff_cmd->add_flag("--no-heuristic", no_heuristic,
						"fail if any summation stops heuristically");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		app.exit(e, out, err);
		return 0;
	} catch (const CLI::CallForAllHelp &e) {
		app.exit(e, out, err);
		return 0;
	} catch (const CLI::ParseError &e) {
		app.exit(e, out, err);
		return 2;
	}

	try {
		if (app.got_subcommand(list_cmd))
			return cmd_list(out);
		if (app.got_subcommand(verify_cmd)) {
			if (order < 0)
				throw UsageError("--order must be nonnegative");
			return cmd_verify(id, order, kvs, as_json, allow_heuristic, out, err);
		}
		if (app.got_subcommand(all_cmd)) {
			if (order < 0)
				throw UsageError("--order must be nonnegative");
			return cmd_verify_all(order, jobs, cap, json_path, allow_heuristic, out, err);
		}
		if (app.got_subcommand(expand_cmd)) {
			if (order < 0)
				throw UsageError("--order must be nonnegative");
			return cmd_expand(expr, order, scale, format, no_heuristic, out);
		}
		if (app.got_subcommand(coeff_cmd))
			return cmd_coeff(expr, at, scale, no_heuristic, out);
	} catch (const dsl::ParseError &e) {
		err << "parse error: " << e.what() << "\n";
		return 2;
	} catch (const UsageError &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const Error &e) {
		err << "error: " << e.what() << "\n";
		return 3;
	}
	return 2;
}

} // namespace qseries::cli
