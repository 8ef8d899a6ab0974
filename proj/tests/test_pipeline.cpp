#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horoball/pipeline.hpp"

using namespace horoball;

namespace {

std::vector<FixtureSpec> shipped() { return load_fixtures(HOROBALL_FIXTURES); }

FixtureSpec by_name(const std::string& name) {
  for (auto& f : shipped())
    if (f.name == name) return f;
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("fixture table parses") {
  auto fixtures = shipped();
  CHECK(fixtures.size() == 9);
  for (const auto& f : fixtures) {
    CHECK(!f.name.empty());
    CHECK(!f.source.empty());
    CHECK(!f.expect.empty());
  }
}

TEST_CASE("fixture defaults") {
  FixtureSpec f = fixture_from_json(Json{{"name", "t"}, {"group", "Z"}});
  CHECK(f.kind == "group");
  CHECK(f.radii == std::vector<int>{4});
  CHECK(f.config.horizon_or_default() == 16);
  CHECK(f.config.window == 2);
}

TEST_CASE("config validation") {
  RunConfig bad;
  bad.radius = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.radius = 4;
  bad.horizon = 5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("line fixtures pass") {
  for (const char* name : {"01-Z", "02-Z-jumps", "03-Dinf", "04-ZxC3"}) {
    CAPTURE(name);
    FixtureResult result = run_fixture(by_name(name));
    CHECK(result.error.empty());
    for (const auto& c : result.checks) {
      CAPTURE(c.name);
      CAPTURE(c.expected.dump());
      CAPTURE(c.actual.dump());
      CHECK(c.pass);
    }
    CHECK(result.pass);
  }
}

TEST_CASE("grove fixture passes") {
  FixtureResult result = run_fixture(by_name("09-grove-K4"));
  CAPTURE(result.error);
  for (const auto& c : result.checks) {
    CAPTURE(c.name);
    CAPTURE(c.expected.dump());
    CAPTURE(c.actual.dump());
    CHECK(c.pass);
  }
  CHECK(result.pass);
}

TEST_CASE("a broken fixture is reported, not fatal") {
  FixtureSpec bad;
  bad.name = "bad";
  bad.kind = "group";
  bad.config.group = "nonsense";
  bad.radii = {2};
  VerifyReport report = run_pipeline({bad, by_name("01-Z")});
  CHECK(report.fixtures.size() == 2);
  CHECK_FALSE(report.pass);
  CHECK_FALSE(report.fixtures[1].pass);  // sorted by name: "bad" after "01-Z"
  CHECK(!report.fixtures[1].error.empty());
  CHECK(report.fixtures[0].pass);
}

TEST_CASE("failing expectations fail the fixture") {
  FixtureSpec f = by_name("01-Z");
  f.expect["annulus_count"] = 3;  // wrong on purpose
  FixtureResult result = run_fixture(f);
  CHECK_FALSE(result.pass);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  std::vector<FixtureSpec> subset = {by_name("01-Z"), by_name("03-Dinf"),
                                     by_name("09-grove-K4")};
  const std::string a = report_to_json(run_pipeline(subset, 1)).dump(2);
  const std::string b = report_to_json(run_pipeline(subset, 1)).dump(2);
  const std::string c = report_to_json(run_pipeline(subset, 3)).dump(2);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("missing fixture file is a config error") {
  CHECK_THROWS_AS(load_fixtures("/no/such/file.json"), ConfigError);
}
