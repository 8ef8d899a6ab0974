#pragma once

// The verify pipeline: runs the full chain (ball, annulus boundary, ray
// enumeration, classification, orbits, character, sphere bound) on each
// fixture of an expectation table and compares against the recorded values.
// Reports are deterministic: identical configuration gives identical bytes.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horoball/action.hpp"
#include "horoball/boundary.hpp"
#include "horoball/graph.hpp"

namespace horoball {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string group = "Z";
  std::vector<std::string> gen_words;
  int radius = 4;
  int horizon = -1;           // default 3r + 4
  int window = 2;
  int stability_window = -1;  // default 2r + 2
  int max_norm = 3;
  int diagnostic_shells = 3;
  size_t element_cap = 20'000'000;
  size_t action_cap = 64;     // skip orbit work when the surrogate has more functions
  uint64_t seed = 0;          // reserved for sampling-based probes

  int horizon_or_default() const { return horizon > 0 ? horizon : 3 * radius + 4; }
  void validate() const;
};

struct FixtureSpec {
  std::string name;
  std::string kind = "group";  // "group" or "grove"
  RunConfig config;
  std::vector<int> radii;      // group fixtures may sweep several radii
  GroveSpec grove;
  Json expect;                 // expectation table entries
  Json probe;                  // optional injectivity probe configuration
  std::string source;          // where the expected numbers come from
};

std::vector<FixtureSpec> load_fixtures(const std::string& path);
FixtureSpec fixture_from_json(const Json& j);

struct CheckResult {
  std::string name;
  Json expected;
  Json actual;
  bool pass = false;
};

struct FixtureResult {
  std::string name;
  Json config;  // full configuration echo for reproducibility
  std::vector<CheckResult> checks;
  std::string error;  // non-empty when the fixture aborted
  bool pass = false;
};

struct VerifyReport {
  std::vector<FixtureResult> fixtures;  // sorted by fixture name
  bool pass = false;
};

FixtureResult run_fixture(const FixtureSpec& fixture);
VerifyReport run_pipeline(const std::vector<FixtureSpec>& fixtures, int jobs = 1);

Json report_to_json(const VerifyReport& report);

// Emission helpers shared with the command line tool.
Json boundary_to_json(const BoundaryApprox& boundary, bool include_values = true);
Json graph_boundary_to_json(const GraphBoundary& boundary, bool include_values = true);
Json orbits_to_json(const OrbitReport& orbits, const Ball& ball);
Json character_to_json(const CharacterReport& report, const Ball& ball);
Json probe_to_json(const InjectivityProbe& probe);
Json sphere_bound_to_json(const SphereBoundReport& report);

}  // namespace horoball
