#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const char* bin = std::getenv("WCL_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "WCL_BIN must point at the wcl binary");
  std::string cmd = std::string("\"") + bin + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

using nlohmann::json;

const std::string kFieldOk =
    R"('{"level":1,"components":{"1":{"terms":[{"index":{},"coeff":"1"}]},"2":{"terms":[{"index":{"1":1},"coeff":"1"}]}}}')";
// constant components keep the pathwise density square-integrable, so the
// 4-sigma Monte Carlo gate is stable at modest sample counts
const std::string kFieldConst =
    R"('{"level":1,"components":{"1":{"terms":[{"index":{},"coeff":"1"}]},"2":{"terms":[{"index":{},"coeff":"-1/2"}]}}}')";
const std::string kFieldAnticipating =
    R"('{"level":1,"components":{"1":{"terms":[{"index":{"1":1},"coeff":"1"}]}}}')";

}  // namespace

TEST_CASE("parse subcommand emits canonical JSON") {
  Run r = run_cli("parse --expr \"xi1*xi1\"");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["terms"].size() == 2);
  CHECK(j["terms"][0]["index"].empty());
  CHECK(j["terms"][0]["coeff"] == "1");
  CHECK(j["terms"][1]["index"]["1"] == 2);
}

TEST_CASE("exit code contract") {
  // 0: identity verified
  CHECK(run_cli("verify cm --f \"xi1^2\" --theta \"e1\"").code == 0);
  // 1: verification failure (anticipating probe behind the override flag)
  CHECK(run_cli("verify ln --f \"xi1^2\" --n 1 --allow-anticipating --z " +
                kFieldAnticipating)
            .code == 1);
  // 2: usage errors
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify cm --theta \"e1\"").code == 2);
  CHECK(run_cli("verify mg --f \"xi1\"").code == 2);
  // 3: malformed expression
  CHECK(run_cli("verify cm --f \"xi1 +\" --theta \"e1\"").code == 3);
  CHECK(run_cli("parse --expr \"H(2\"").code == 3);
  // 4: anticipating field without the override
  CHECK(run_cli("verify ln --f \"xi1^2\" --n 1 --z " + kFieldAnticipating).code == 4);
  CHECK(run_cli("verify mg --f \"xi1\" --z " + kFieldAnticipating).code == 4);
}

TEST_CASE("verify subcommands succeed on known-good instances") {
  Run cm = run_cli("verify cm --f \"xi1*xi1 + 2*H(3,2)\" --theta \"1/2*e1 - e2\"");
  CHECK(cm.code == 0);
  json j = json::parse(cm.out);
  CHECK(j["pass"] == true);
  CHECK(j["identity"] == "cm");
  CHECK(j["lhs"] == j["rhs"]);

  CHECK(run_cli("verify adjoint --f \"xi1^2\" --g \"xi1\" --theta \"e1\"").code == 0);
  CHECK(run_cli("verify mg --f \"xi1*xi2\" --z " + kFieldOk).code == 0);
  CHECK(run_cli("verify ln --f \"xi1*xi2\" --n 1 --z " + kFieldOk).code == 0);
  CHECK(run_cli("verify density --f \"xi1*xi2\" --z " + kFieldOk).code == 0);
}

TEST_CASE("nilpotency check distinguishes fields by exit code") {
  Run good = run_cli("check nilpotent --z " + kFieldOk);
  CHECK(good.code == 0);
  CHECK(json::parse(good.out)["nilpotent"] == true);

  Run bad = run_cli("check nilpotent --z " + kFieldAnticipating);
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["nilpotent"] == false);
}

TEST_CASE("monte carlo subcommands") {
  Run cm = run_cli("mc cm --f \"xi1^2\" --theta \"e1\" --count 40000 --seed 5 --level 1");
  CHECK(cm.code == 0);
  json j = json::parse(cm.out);
  CHECK(j["pass"] == true);
  CHECK(j["exact"]["pass"] == true);

  CHECK(run_cli("mc mg --f \"xi1*xi2\" --count 40000 --seed 5 --level 1 --z " + kFieldConst)
            .code == 0);
}

TEST_CASE("gen output pipes back into verify") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Run g = run_cli("gen --kind cm --seed " + std::to_string(seed) +
                    " --degree 3 --coords 3");
    REQUIRE(g.code == 0);
    json inst = json::parse(g.out);
    Run v = run_cli("verify cm --f \"" + inst["f"].get<std::string>() + "\" --theta \"" +
                    inst["theta"].get<std::string>() + "\"");
    CHECK(v.code == 0);
  }

  Run g = run_cli("gen --kind mg --seed 9 --level 1 --degree 2");
  REQUIRE(g.code == 0);
  json inst = json::parse(g.out);
  Run v = run_cli("verify mg --f \"" + inst["f"].get<std::string>() + "\" --z '" +
                  inst["z"].dump() + "'");
  CHECK(v.code == 0);

  Run gp = run_cli("gen --kind ln --anticipating --seed 1");
  REQUIRE(gp.code == 0);
  json probe = json::parse(gp.out);
  Run vp = run_cli("verify ln --f \"" + probe["f"].get<std::string>() + "\" --n " +
                   std::to_string(probe["n"].get<int>()) + " --allow-anticipating --z '" +
                   probe["z"].dump() + "'");
  CHECK(vp.code == 1);
}

TEST_CASE("gen is deterministic in the seed") {
  Run a = run_cli("gen --kind mg --seed 77 --level 1");
  Run b = run_cli("gen --kind mg --seed 77 --level 1");
  Run c = run_cli("gen --kind mg --seed 78 --level 1");
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("output file and table format") {
  std::string path = "cli_report_tmp.json";
  Run r = run_cli("--out " + path + " verify cm --f \"xi1\" --theta \"e1\"");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  json j = json::parse(in);
  CHECK(j["pass"] == true);
  std::remove(path.c_str());

  Run t = run_cli("--format table verify cm --f \"xi1\" --theta \"e1\"");
  CHECK(t.code == 0);
  CHECK(t.out.find("pass=yes") != std::string::npos);
}
