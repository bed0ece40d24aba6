#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "cli.hpp"

using json = nlohmann::json;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = pfk3::cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

json call_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  Out r = call(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

void check_envelope(const json& j) {
  REQUIRE(j.is_object());
  CHECK(j.size() == 4);
  CHECK(j.at("command").is_string());
  CHECK(j.at("inputs").is_object());
  CHECK(j.at("result").is_object());
  REQUIRE(j.at("timings").is_object());
  CHECK(j.at("timings").at("total_ms").is_number_integer());
}

void check_ode_schema(const json& r) {
  REQUIRE(r.at("order").is_number_integer());
  REQUIRE(r.at("coefficients").is_array());
  CHECK(r.at("coefficients").size() == r.at("order").get<size_t>() + 1);
  for (const auto& c : r.at("coefficients")) {
    CHECK(c.size() == 2);
    CHECK(c.at("num").is_string());
    CHECK(c.at("den").is_string());
  }
  CHECK(r.at("normalized") == true);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pf curve JSON document") {
    json j = call_json({"pf", "curve", "--g2", "1/192", "--g3", "(864*t-1)/13824", "--var", "t"});
    check_envelope(j);
    CHECK(j["command"] == "pf curve");
    CHECK(j["inputs"]["g2"] == "1/192");
    check_ode_schema(j["result"]);
    const json& c = j["result"]["coefficients"];
    CHECK(c[0]["num"] == "60");
    CHECK(c[1]["num"] == "864*t - 1");
    CHECK(c[2]["num"] == "432*t^2 - t");
    for (const auto& x : c) CHECK(x["den"] == "1");
  }

  TEST_CASE("ODE-valued commands share the schema") {
    check_ode_schema(call_json({"ode", "tensor", "--p", "0", "--q", "-2/t^2"})["result"]);
    check_ode_schema(call_json({"pf", "k3", "--j1", "t", "--j2", "t^2 + 1"})["result"]);
    check_ode_schema(call_json({"geom", "toric-curve"})["result"]);
  }

  TEST_CASE("determinism") {
    std::vector<std::vector<std::string>> jobs = {
        {"--format", "json", "modular", "param", "--n", "3"},
        {"--format", "json", "ode", "box", "--j", "(t^3 + 2)/(t - 1)"},
        {"--format", "json", "gb", "compute", "--gens", "x^2 - y; y^2 - 1", "--vars", "x,y"},
        {"modular", "psi", "--n", "2"},
        {"--format", "latex", "pf", "curve", "--g2", "t", "--g3", "t^2 + 1"},
    };
    for (const auto& args : jobs) {
      Out a = call(args), b = call(args);
      CHECK(a.code == b.code);
      if (a.out.rfind("{", 0) == 0) {
        json ja = json::parse(a.out), jb = json::parse(b.out);
        ja.erase("timings");
        jb.erase("timings");
        CHECK(ja.dump() == jb.dump());
      } else {
        CHECK(a.out == b.out);
      }
    }
  }

  TEST_CASE("exit codes") {
    CHECK(call({"modular", "check-master", "--n", "2"}).out == "PASS\n");
    CHECK(call({"modular", "check-master", "--j1", "t", "--j2", "t^2 + 1"}).code == 1);
    CHECK(call({"geom", "beauville", "--drop-term"}).code == 1);
    CHECK(call({}).code == 2);
    CHECK(call({"pf", "curve", "--g2", "t +", "--g3", "1"}).code == 2);
    CHECK(call({"pf", "curve", "--g2", "t", "--g3", "u"}).code == 2);
    CHECK(call({"--format", "xml", "modular", "psi", "--n", "2"}).code == 2);
    CHECK(call({"pf", "curve", "--g2", "t", "--g3", "t^2 + 1", "--max-order", "1"}).code == 3);
    CHECK(call({"pf", "k3", "--j1", "t", "--j2", "t^2 + 1", "--max-order", "3"}).code == 3);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("text and latex output") {
    Out s = call({"ode", "schwarzian", "--j", "t^2"});
    CHECK(s.out == "schwarzian: -3/(2*t^2)\n");
    Out l = call({"--format", "latex", "ode", "schwarzian", "--j", "t^2"});
    CHECK(l.out.find("\\frac") != std::string::npos);
    Out g = call({"gb", "member", "--gens", "x^2 - y; y^2 - 1", "--vars", "x,y", "--poly", "x^4 - 1"});
    CHECK(g.code == 0);
    CHECK(g.out.rfind("member: yes", 0) == 0);
  }

  TEST_CASE("verify suite subset") {
    json j = call_json({"verify", "suite", "--only", "9,10"});
    REQUIRE(j["result"]["criteria"].size() == 2);
    CHECK(j["result"]["criteria"][0]["id"] == 9);
    CHECK(j["result"]["pass"] == true);
  }
}
