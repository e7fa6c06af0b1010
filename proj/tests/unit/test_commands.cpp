#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <string>

#include "abconvex/commands.hpp"

using namespace abconvex;
using Json = nlohmann::json;

namespace {

const std::filesystem::path kFixtures = ABCONVEX_FIXTURE_DIR;

struct Outcome {
  Json json;
  int code;
};

Outcome run(const std::string& command, const std::string& fixture, std::initializer_list<std::pair<std::string, std::string>> args = {}) {
  CommandOptions opt;
  opt.command = command;
  opt.instance = kFixtures / fixture;
  for (const auto& [key, value] : args) {
    if (key == "function") opt.function = value;
    else if (key == "mapping") opt.mapping = value;
    else if (key == "subset") opt.subset = value;
    else if (key == "site-function") opt.site_function = value;
    else if (key == "min") opt.only_min = true;
    else if (key == "max") opt.only_max = true;
    else if (key == "seed") opt.seed = std::stoull(value);
  }
  const CommandResult r = run_command(opt);
  return {Json::parse(r.json), r.exit_code};
}

const std::string kLine = "example_line.json";
const std::string kMetric = "line_metric.json";

}  // namespace

TEST_CASE("alpha and gamma on the line fixture") {
  const Outcome a = run("alpha", kLine, {{"mapping", "M"}, {"subset", "S"}, {"site-function", "f"}});
  CHECK(a.code == kExitSuccess);
  CHECK(a.json["command"] == "alpha");
  CHECK(a.json["result"]["values"] == Json::parse("[-2, -1, 0, 1, 2]"));
  const Outcome g = run("gamma", kLine, {{"mapping", "M"}, {"subset", "S"}, {"function", "f_on_S"}});
  CHECK(g.code == kExitSuccess);
  CHECK(g.json["result"]["values"] == Json::parse("[2, 1, 0, 1, 2]"));
}

TEST_CASE("transforms in both directions") {
  const Outcome f = run("transform", kLine, {{"function", "f_on_S"}});
  CHECK(f.json["result"]["over"] == "Y");
  CHECK(f.json["result"]["values"] == Json::parse("[0, 0]"));
  const Outcome g = run("transform", kLine, {{"function", "g"}});
  CHECK(g.json["result"]["over"] == "X");
  CHECK(g.json["result"]["values"] == Json::parse("[2, 1, 0, 1, 2]"));
  const Outcome h = run("convexify", kLine, {{"function", "half"}});
  CHECK(h.json["result"]["values"] == Json::parse("[0, -1, 0, 1, 2]"));
  CHECK(h.json["result"]["is_c_convex"] == false);
  const Outcome d = run("subdiff", kLine, {{"function", "abs"}});
  CHECK(d.json["result"]["pairs"].size() == 6);
}

TEST_CASE("predicates report witnesses and exit 0") {
  const Outcome bad = run("check-monotone", kLine, {{"mapping", "T_bad"}});
  CHECK(bad.code == kExitSuccess);
  CHECK(bad.json["result"]["monotone"] == false);
  CHECK(bad.json["result"]["cyclically_monotone"] == false);
  CHECK(bad.json["result"]["witness"]["cyclic_sum"] == -4);
  const Outcome good = run("check-monotone", kLine, {{"mapping", "M"}});
  CHECK(good.json["result"]["cyclically_monotone"] == true);
  CHECK(good.json["result"]["witness"].is_null());
}

TEST_CASE("rockafellar") {
  const Outcome r = run("rockafellar", kLine, {{"mapping", "M"}});
  CHECK(r.code == kExitSuccess);
  REQUIRE(r.json["result"]["antiderivatives"].size() == 3);
  CHECK(r.json["result"]["antiderivatives"][0]["site"] == "0");
  CHECK(r.json["result"]["antiderivatives"][0]["values"] == Json::parse("[-2, -1, 0, 1, 2]"));
  const Outcome bad = run("rockafellar", kLine, {{"mapping", "T_bad"}});
  CHECK(bad.code == kExitDomainError);
  CHECK(bad.json["error"]["kind"] == "domain");
  CHECK(bad.json["error"]["code"] == "not_cyclically_monotone");
  CHECK(bad.json["error"]["witness"]["pairs"].size() >= 2);
}

TEST_CASE("membership") {
  const Outcome abs = run("member", kLine, {{"function", "abs"}, {"mapping", "M"}, {"subset", "S"}, {"site-function", "f"}});
  CHECK(abs.json["result"]["member"] == true);
  CHECK(abs.json["result"]["sandwich"] == true);
  const Outcome half = run("member", kLine, {{"function", "half"}, {"mapping", "M"}, {"subset", "S"}, {"site-function", "f"}});
  CHECK(half.json["result"]["member"] == false);
  CHECK(half.json["result"]["witness"]["reason"] == "not_c_convex");
  const Outcome shifted =
      run("member", kLine, {{"function", "shifted"}, {"mapping", "M"}, {"subset", "S"}, {"site-function", "f"}});
  CHECK(shifted.json["result"]["witness"]["reason"] == "site_mismatch");
  CHECK(shifted.json["result"]["sandwich"] == false);
  const Outcome missing = run("member", kLine, {{"function", "abs"}, {"mapping", "M"}});
  CHECK(missing.code == kExitInputError);
  CHECK(missing.json["error"]["code"] == "missing_argument");
}

TEST_CASE("lip-extend") {
  const Outcome lo = run("lip-extend", kMetric, {{"function", "f"}, {"min", ""}});
  CHECK(lo.code == kExitSuccess);
  CHECK(lo.json["result"]["min"][1] == 0);
  CHECK_FALSE(lo.json["result"].contains("max"));
  const Outcome both = run("lip-extend", kMetric, {{"function", "f"}, {"subset", "S"}});
  CHECK(both.json["result"]["max"][1] == 1);
  const Outcome wrong = run("lip-extend", kLine, {{"function", "f"}});
  CHECK(wrong.code == kExitInputError);
  CHECK(wrong.json["error"]["code"] == "metric_required");
  const Outcome conflict = run("lip-extend", kMetric, {{"function", "f"}, {"min", ""}, {"max", ""}});
  CHECK(conflict.json["error"]["code"] == "conflicting_flags");
}

TEST_CASE("fitzpatrick rows") {
  const Outcome f = run("fitzpatrick", kLine, {{"mapping", "M"}});
  CHECK(f.code == kExitSuccess);
  const Json& rows = f.json["result"]["values"];
  CHECK(f.json["result"]["rows"] == "X");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == Json::parse("[-2, -2]"));
  CHECK(rows[4] == Json::parse("[2, 2]"));
}

TEST_CASE("verify") {
  const Outcome v = run("verify", kLine, {{"mapping", "M"}, {"function", "f"}, {"subset", "S"}, {"seed", "3"}});
  CHECK(v.code == kExitSuccess);
  CHECK(v.json["result"]["all_passed"] == true);
  for (const Json& check : v.json["result"]["checks"]) CHECK(check["status"] != "fail");
  const Outcome m = run("verify", kMetric, {{"mapping", "I"}, {"function", "dist0"}, {"subset", "S"}});
  CHECK(m.code == kExitSuccess);
  bool saw_lipschitz = false;
  for (const Json& check : m.json["result"]["checks"]) saw_lipschitz = saw_lipschitz || check["name"] == "lipschitz_four_way";
  CHECK(saw_lipschitz);
}

TEST_CASE("input errors exit 2") {
  const Outcome absent = run("alpha", "absent.json");
  CHECK(absent.code == kExitInputError);
  CHECK(absent.json["error"]["code"] == "unreadable_instance");
  const Outcome unknown = run("alpha", kLine, {{"mapping", "nope"}, {"site-function", "f"}});
  CHECK(unknown.code == kExitInputError);
  CHECK(unknown.json["error"]["code"] == "unknown_mapping");
  const Outcome command = run("frobnicate", kLine);
  CHECK(command.json["error"]["code"] == "unknown_command");
}

TEST_CASE("anchors are checked against the mapping") {
  const Outcome bad = run("alpha", kLine, {{"mapping", "M"}, {"subset", "S"}, {"site-function", "shifted"}});
  CHECK(bad.code == kExitSuccess);
  const Outcome neg = run("alpha", kLine, {{"mapping", "T_bad"}, {"site-function", "abs"}});
  CHECK(neg.code == kExitDomainError);
}

TEST_CASE("outputs are deterministic") {
  CommandOptions opt;
  opt.command = "verify";
  opt.instance = kFixtures / kLine;
  opt.mapping = "M";
  opt.function = "f";
  opt.subset = "S";
  opt.seed = 99;
  CHECK(run_command(opt).json == run_command(opt).json);
}
