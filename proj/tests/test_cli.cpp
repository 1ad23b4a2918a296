#include "doctest.h"

#include "cubiclab/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Result
{
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args)
{
  std::ostringstream out, err;
  const int code = cubiclab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args)
{
  args.push_back("--json");
  const auto r = call(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

} // namespace

TEST_CASE("documented examples")
{
  auto j = call_json({"eval", "--k", "5", "--form", "F", "--point", "0,0,1"});
  CHECK(j["op"] == "eval");
  CHECK(j["outputs"]["value"].get<double>() == -1.0);
  for (const char* key : {"op", "inputs", "outputs", "residuals", "warnings"})
    CHECK(j.contains(key));

  j = call_json({"siblings", "--kprime", "1", "--allow-boundary"});
  const auto s = j["outputs"]["siblings"].get<std::vector<double>>();
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0] + 2) < 1e-12);
  CHECK(std::abs(s[1] + 2) < 1e-12);
  CHECK(std::abs(s[2] - 1) < 1e-12);

  const auto r = call({"eval", "--k", "1", "--form", "F", "--point", "1,1,1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("DegenerateParameter") != std::string::npos);
  const auto rj = call({"eval", "--k", "1", "--form", "F", "--point", "1,1,1", "--json"});
  CHECK(rj.code == 1);
  CHECK(json::parse(rj.out)["error"]["name"] == "DegenerateParameter");
}

TEST_CASE("rationals and tolerance overrides")
{
  const auto j = call_json({"--tol", "on_curve_abs=1e-10", "steinian", "--k", "5", "--point", "1,-1,0"});
  const auto a = j["outputs"]["alpha"].get<std::vector<double>>();
  CHECK(a[0] == doctest::Approx(0.625));
  CHECK(j["inputs"]["tol"]["on_curve_abs"] == "1e-10");
  const auto g = call_json({"eval", "--k", "-2", "--form", "G", "--a", "1/3,1/3,1", "--point", "0,0,1"});
  CHECK(g["outputs"]["value"].get<double>() == doctest::Approx(-1.0 / 3).epsilon(1e-14));
}

TEST_CASE("argument errors exit with 2")
{
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"eval", "--k", "5", "--point", "1,2"}).code == 2);
  CHECK(call({"eval", "--k", "x", "--point", "1,2,3"}).code == 2);
  CHECK(call({"eval", "--k", "5", "--point", "1,2,3", "--bogus"}).code == 2);
  CHECK(call({"eval", "--k", "5", "--point", "1/0,2,3"}).code == 2);
  CHECK(call({"--tol", "nonsense=1", "eval", "--k", "5", "--point", "1,2,3"}).code == 2);
  CHECK(call({"enumerate", "--k", "5", "--region", "blob"}).code == 2);
  CHECK(call({"eval", "--help"}).code == 0);
}

TEST_CASE("domain errors exit with 1 and name the error")
{
  auto r = call({"pole", "--k", "5", "--l", "1,-1,0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("HypothesisFailed") != std::string::npos);
  r = call({"steinian", "--k", "5", "--point", "0,0,1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("NotOnHessian") != std::string::npos);
  r = call({"classify-fermat", "--a", "1,-1,0"});
  CHECK(r.err.find("AtInfinity") != std::string::npos);
}

TEST_CASE("JSON outputs round-trip through their echoed inputs")
{
  const std::vector<std::vector<std::string>> cases{
      {"eval", "--k", "5", "--form", "H", "--point", "1/3,1/3,1"},
      {"hessian", "--k", "-3"},
      {"components", "--k", "5"},
      {"zeros", "--k", "5", "--a", "-1,3,1"},
      {"classify-fermat", "--a", "0.5,3,1"},
      {"km2", "--mu", "1/4", "--samples", "60"},
      {"lambda-bound", "--k", "5", "--e", "0,0,1"},
      {"pole", "--k", "2", "--l", "1,1,1"},
      {"enumerate", "--k", "5", "--region", "component:BOUNDED_POSITIVE", "--bound", "6", "--range", "1,200"},
      {"two-torsion", "--k", "-1"},
      {"group", "--k", "5", "--p", "1,-1,0", "--q", "0,1,0"},
  };
  for (const auto& args : cases) {
    CAPTURE(args[0]);
    const json first = call_json(args);
    std::vector<std::string> again{first["op"].get<std::string>()};
    for (const auto& [key, v] : first["inputs"].items()) {
      if (key == "tol")
        continue;
      again.push_back("--" + key);
      if (!v.is_boolean())
        again.push_back(v.get<std::string>());
    }
    const json second = call_json(again);
    CHECK(second["outputs"] == first["outputs"]);
    CHECK(second["residuals"] == first["residuals"]);
  }
}

TEST_CASE("figures and verify")
{
  const std::string path = "cli_test_fig1.svg";
  const auto j = call_json({"figure", "--preset", "fig1", "--out", path});
  std::ifstream f(path, std::ios::binary);
  const std::string svg((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(svg.size() == j["outputs"]["bytes"].get<std::size_t>());
  CHECK(svg.find("<svg") != std::string::npos);
  std::remove(path.c_str());
  const auto text = call({"figure", "--preset", "fig1"});
  CHECK(text.out == svg + (svg.back() == '\n' ? "" : "\n"));

  const auto a = call({"verify", "--suite", "8", "--seed", "11"});
  const auto b = call({"verify", "--suite", "8", "--seed", "11"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("PASS 8 ", 0) == 0);
  const auto list = call_json({"verify", "--suite", "list"});
  CHECK(list["outputs"]["criteria"].size() == 14);
  CHECK(call({"verify", "--suite", "15"}).code == 2);
}
