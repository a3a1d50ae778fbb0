#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "vlab/harness/registry.hpp"

using namespace vlab;
using namespace vlab::harness;
namespace fs = std::filesystem;

TEST_CASE("default configs validate for every identity") {
  for (const auto& info : identities()) {
    const SuiteConfig c = default_config(info.id);
    CHECK(c.identity == info.id);
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(info.anchor.empty());
  }
  CHECK(identities().size() == 15);
  CHECK_THROWS_AS(find_identity("nope"), std::invalid_argument);
}

TEST_CASE("config validation") {
  SuiteConfig c = default_config("borel_pompeiu");
  c.resolutions = {32, 16};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.resolutions = {4, 16};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.resolutions = {16};
  CHECK_NOTHROW(c.validate());
  c.tol.interior_relative = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = default_config("borel_pompeiu");
  c.margin = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("config JSON round trip and hash") {
  SuiteConfig c = default_config("scalar_bp");
  c.profile.lambda = {0.5, -0.3, 0.8};
  c.resolutions = {12, 24};
  c.seed = 7;
  const SuiteConfig back = apply_json(default_config("scalar_bp"), c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.hash() == c.hash());
  CHECK(c.hash() != default_config("scalar_bp").hash());
  CHECK_THROWS_AS(apply_json(c, Json{{"unknown_key", 1}}), std::invalid_argument);
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("config file loading") {
  const fs::path p = fs::temp_directory_path() / "vlab_test_config.json";
  std::ofstream(p) << R"({"resolutions": [10, 20], "tolerances": {"interior_relative": 0.1}})";
  const SuiteConfig c = load_config(p.string(), "hodge");
  CHECK(c.resolutions == std::vector<int>{10, 20});
  CHECK(c.tol.interior_relative == 0.1);
  CHECK(c.identity == "hodge");
  fs::remove(p);
}

TEST_CASE("named profiles") {
  for (const char* n : {"exp_z", "exp_xyz", "constant", "linear_z"}) {
    CHECK_NOTHROW(make_profile(named_profile(n)));
  }
  CHECK_THROWS(named_profile("bogus"));
  CHECK(make_profile(named_profile("constant")).value({0.3, 0.3, 0.3}) == 2.0);
}

TEST_CASE("convergence series order") {
  const auto s = convergence_series("e", {16, 32}, {4e-3, 1e-3});
  REQUIRE(s.rows.size() == 2);
  CHECK_FALSE(s.rows[0].order);
  const double expect = std::log(4.0) / std::log(unit_spacing(16) / unit_spacing(32));
  CHECK(*s.rows[1].order == doctest::Approx(expect));
  const auto sat = convergence_series("e", {16, 32}, {1e-13, 2e-13});
  CHECK(sat.rows[1].saturated);
  CHECK_FALSE(sat.rows[1].order);
}

TEST_CASE("report criteria and output files") {
  CheckReport r;
  r.identity = "unit";
  r.config = default_config("hodge");
  r.require("small", 1e-3, "<=", 1e-2);
  CHECK(r.passed());
  r.require("nan", std::nan(""), "<=", 1.0);
  CHECK_FALSE(r.passed());
  r.set_metric("m", 2.5);
  CHECK(r.metric("m") == 2.5);
  CHECK_THROWS(r.metric("missing"));
  r.points.push_back({Region::interior, {0.5, 0.5, 0.5}, 1.0, 1.0, 0.0});
  r.convergence.push_back(convergence_series("e", {16, 32}, {4e-3, 1e-3}));

  const fs::path dir = fs::temp_directory_path() / "vlab_test_report";
  fs::remove_all(dir);
  r.write(dir.string());
  for (const char* f : {"report.json", "errors.csv", "convergence.csv"}) CHECK(fs::exists(dir / f));
  std::ifstream is(dir / "report.json");
  const Json j = Json::parse(is);
  CHECK(j["identity"] == "unit");
  CHECK(j["passed"] == false);
  fs::remove_all(dir);
}

TEST_CASE("run_check captures failures") {
  SuiteConfig c = default_config("main_vekua");
  c.profile = named_profile("exp_xyz");
  const CheckReport r = run_check(c);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.failure.empty());

  SuiteConfig one = default_config("borel_pompeiu");
  one.resolutions = {16};
  CHECK_THROWS_AS(convergence_study(one), std::invalid_argument);
}

TEST_CASE("algebra check passes and is deterministic") {
  const CheckReport a = run_check(default_config("algebra"));
  const CheckReport b = run_check(default_config("algebra"));
  CHECK(a.passed());
  CHECK(a.to_json()["criteria"] == b.to_json()["criteria"]);
}
