#include "horoball/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>

namespace horoball {

void RunConfig::validate() const {
  if (radius < 1 || window < 1 || max_norm < 1 || diagnostic_shells < 1)
    throw ConfigError("all numeric knobs must be >= 1");
  if (horizon_or_default() < radius + window + 1)
    throw ConfigError("horizon must be >= radius + window + 1");
}

std::vector<FixtureSpec> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture table '" + path + "'");
  Json table;
  try {
    table = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("fixture table is not valid JSON: ") + e.what());
  }
  std::vector<FixtureSpec> out;
  for (const auto& j : table.at("fixtures")) out.push_back(fixture_from_json(j));
  return out;
}

FixtureSpec fixture_from_json(const Json& j) {
  FixtureSpec f;
  f.name = j.at("name").get<std::string>();
  f.kind = j.value("kind", "group");
  f.expect = j.value("expect", Json::object());
  f.probe = j.value("probe", Json::object());
  f.source = j.value("source", "");

  if (f.kind == "group") {
    f.config.group = j.at("group").get<std::string>();
    f.config.gen_words = j.value("gens", std::vector<std::string>{});
    if (j.contains("radii"))
      f.radii = j.at("radii").get<std::vector<int>>();
    else
      f.radii = {j.value("radius", 4)};
    f.config.radius = f.radii.front();
    f.config.horizon = j.value("horizon", -1);
    f.config.window = j.value("window", 2);
    f.config.stability_window = j.value("stability_window", -1);
    f.config.max_norm = j.value("max_norm", 3);
    f.config.element_cap = j.value("element_cap", size_t{20'000'000});
    f.config.action_cap = j.value("action_cap", size_t{64});
  } else if (f.kind == "grove") {
    const std::string fam = j.value("family", "complete");
    if (fam == "complete")
      f.grove.family = BlockFamily::Complete;
    else if (fam == "path")
      f.grove.family = BlockFamily::Path;
    else if (fam == "cycle")
      f.grove.family = BlockFamily::Cycle;
    else
      throw ConfigError("unknown grove family '" + fam + "'");
    f.grove.sizes = j.at("sizes").get<std::vector<int>>();
    f.grove.blocks = j.at("blocks").get<int>();
    f.radii = {j.value("radius", 3)};
    f.config.radius = f.radii.front();
    f.config.horizon = j.value("horizon", -1);
    f.config.window = j.value("window", 2);
    f.config.stability_window = j.value("stability_window", -1);
  } else {
    throw ConfigError("unknown fixture kind '" + f.kind + "'");
  }
  return f;
}

namespace {

void add_check(FixtureResult& result, const std::string& name, Json expected,
               Json actual) {
  const bool pass = expected == actual;
  result.checks.push_back({name, std::move(expected), std::move(actual), pass});
}

// Compares against the expectation when present; always records the actual.
void check_expected(FixtureResult& result, const Json& expect, const std::string& key,
                    Json actual, const std::string& label) {
  if (expect.contains(key)) {
    add_check(result, label, expect.at(key), std::move(actual));
  } else {
    result.checks.push_back({label + " (informational)", Json(), std::move(actual), true});
  }
}

std::string radius_label(const std::string& base, int r) {
  return base + "@r=" + std::to_string(r);
}

Json pick(const Json& maybe_array, size_t i) {
  if (maybe_array.is_array()) return maybe_array.at(i);
  return maybe_array;
}

void run_group_fixture(const FixtureSpec& fixture, FixtureResult& result) {
  const RunConfig& cfg = fixture.config;
  cfg.validate();
  auto group = make_group(parse_group_spec(cfg.group));
  GeneratingSet gens = symmetrize_generators(group, cfg.gen_words);
  BallPtr ball = Ball::grow(group, gens, cfg.horizon_or_default(), cfg.element_cap);

  std::vector<size_t> annulus_counts;
  for (size_t ri = 0; ri < fixture.radii.size(); ++ri) {
    const int r = fixture.radii[ri];
    const int stability =
        cfg.stability_window > 0 ? cfg.stability_window : default_stability_window(r);

    BoundaryApprox annulus =
        annulus_boundary_approx(ball, r, cfg.window, cfg.diagnostic_shells);
    annulus_counts.push_back(annulus.functions.size());
    if (fixture.expect.contains("annulus_count") || fixture.expect.contains("annulus_counts")) {
      const char* key =
          fixture.expect.contains("annulus_count") ? "annulus_count" : "annulus_counts";
      add_check(result, radius_label("annulus_count", r),
                pick(fixture.expect.at(key), ri), annulus.functions.size());
    }
    check_expected(result, fixture.expect, "stabilized", annulus.stabilized,
                   radius_label("stabilized", r));

    BoundaryApprox busemann =
        enumerate_busemann_points(ball, r, ball->radius() - r, stability);
    if (fixture.expect.contains("busemann_certified"))
      add_check(result, radius_label("busemann_certified", r),
                pick(fixture.expect.at("busemann_certified"), ri),
                busemann.certified_count());

    ClassifyReport classify = classify_boundary(annulus, busemann);
    check_expected(result, fixture.expect, "unmatched", classify.unmatched.size(),
                   radius_label("unmatched", r));

    SphereBoundReport bound = sphere_bound_check(
        ball->sphere_sizes(), busemann.certified_count(), cfg.diagnostic_shells);
    check_expected(result, fixture.expect, "sphere_bound_ok", bound.ok,
                   radius_label("sphere_bound_ok", r));
  }

  if (fixture.expect.value("strictly_increasing", false)) {
    bool increasing = true;
    for (size_t i = 1; i < annulus_counts.size(); ++i)
      if (annulus_counts[i] <= annulus_counts[i - 1]) increasing = false;
    add_check(result, "annulus_counts strictly increasing (infinite-boundary evidence)",
              true, increasing);
  }

  // Action-side checks run at the primary radius with an extended collar.
  const int r = fixture.radii.front();
  const int r_ext = r + cfg.max_norm;
  if (ball->radius() >= r_ext + cfg.window + 1) {
    BoundaryApprox extended =
        annulus_boundary_approx(ball, r_ext, cfg.window, cfg.diagnostic_shells);
    if (extended.functions.size() > cfg.action_cap) {
      result.checks.push_back({"action stage skipped: " +
                                   std::to_string(extended.functions.size()) +
                                   " surrogate functions exceed the cap",
                               Json(), Json(extended.functions.size()), true});
      return;
    }
    OrbitReport orbits = compute_orbits(extended, gens, r, cfg.max_norm);
    check_expected(result, fixture.expect, "finite_orbit", orbits.closed, "finite_orbit");
    if (fixture.expect.contains("orbit_sizes")) {
      std::vector<size_t> sizes;
      for (const auto& orbit : orbits.orbits) sizes.push_back(orbit.size());
      std::sort(sizes.begin(), sizes.end());
      add_check(result, "orbit_sizes", fixture.expect.at("orbit_sizes"), sizes);
    }

    std::vector<uint32_t> kernel = action_kernel_sample(extended, r, orbits.max_norm);
    std::vector<uint32_t> fsample = f_subgroup_sample(extended, r, orbits.max_norm);
    check_expected(result, fixture.expect, "kernel_sample_size", kernel.size(),
                   "kernel_sample_size");
    check_expected(result, fixture.expect, "f_sample_size", fsample.size(),
                   "f_sample_size");

    if (orbits.closed && !orbits.orbits.empty()) {
      CharacterReport character =
          extract_character(extended, orbits, orbits.orbits.front().front());
      check_expected(result, fixture.expect, "homomorphism", character.homomorphism,
                     "character homomorphism");
      check_expected(result, fixture.expect, "character_witness",
                     character.witness.has_value(), "character witness found");
      if (character.witness) {
        const Element& w = ball->element(*character.witness);
        const std::string word = word_labels(*ball, geodesic_to(*ball, w));
        check_expected(result, fixture.expect, "witness_word", word, "witness word");
        const auto& h = extended.functions[character.function_index].fn;
        check_expected(result, fixture.expect, "witness_value", h.at(*character.witness),
                       "witness value");
        add_check(result, "witness realizes h(y) = -|y|", true,
                  h.at(*character.witness) == -ball->dist(*character.witness));

        PowerCheck power = power_geodesic_check(ball, w, h.negated());
        add_check(result, "power word lengths |x^t| = t|x|", true, power.ok);
      }

      if (fixture.probe.contains("x_word")) {
        const std::string x_word = fixture.probe.at("x_word").get<std::string>();
        const Element x = group->evaluate_word(x_word);
        std::vector<std::string> ext_words = cfg.gen_words;
        ext_words.push_back(x_word);
        GeneratingSet ext_gens = symmetrize_generators(group, ext_words);
        InjectivityProbe probe = kernel_injectivity_probe(
            ball, fsample, x, ext_gens, fixture.probe.value("radius", 2),
            fixture.probe.value("horizon", 10), cfg.stability_window);
        add_check(result, "kernel bound |ker| <= |busemann(U)|",
                  fixture.probe.value("expect_bound", true), probe.bound_holds);
        add_check(result, "distinct limits per kernel element",
                  fixture.probe.value("expect_all_distinct", true),
                  probe.distinct_limits == fsample.size());
      }
    }
  }
}

void run_grove_fixture(const FixtureSpec& fixture, FixtureResult& result) {
  const RunConfig& cfg = fixture.config;
  const int r = fixture.radii.front();
  const int horizon = cfg.horizon > 0 ? cfg.horizon : 3 * r + 4;
  Graph grove = build_grove(fixture.grove);
  GraphBoundary boundary = graph_boundary(grove, r, horizon, cfg.window);

  check_expected(result, fixture.expect, "boundary_count", boundary.functions.size(),
                 "boundary_count");
  check_expected(result, fixture.expect, "stabilized", boundary.stabilized, "stabilized");

  std::vector<uint32_t> spine(horizon + 1);
  for (int t = 0; t <= horizon; ++t) spine[t] = static_cast<uint32_t>(t);
  GraphRayLimit spine_limit = graph_ray_limit(grove, spine, r, cfg.stability_window);
  const bool matched =
      spine_limit.certified &&
      std::find(boundary.functions.begin(), boundary.functions.end(), spine_limit.values) !=
          boundary.functions.end();
  check_expected(result, fixture.expect, "spine_matched", matched, "spine ray matches");

  GraphBall ball = graph_ball(grove, horizon);
  SphereBoundReport bound =
      sphere_bound_check(ball.sphere_sizes(), spine_limit.certified ? 1 : 0, 3);
  check_expected(result, fixture.expect, "sphere_bound_ok", bound.ok, "sphere_bound_ok");
}

}  // namespace

FixtureResult run_fixture(const FixtureSpec& fixture) {
  FixtureResult result;
  result.name = fixture.name;
  result.config["kind"] = fixture.kind;
  if (fixture.kind == "group") {
    result.config["group"] = fixture.config.group;
    result.config["gens"] = fixture.config.gen_words;
    result.config["radii"] = fixture.radii;
    result.config["horizon"] = fixture.config.horizon_or_default();
    result.config["window"] = fixture.config.window;
    result.config["stability_window"] =
        fixture.config.stability_window > 0
            ? fixture.config.stability_window
            : default_stability_window(fixture.radii.front());
    result.config["max_norm"] = fixture.config.max_norm;
  } else {
    result.config["blocks"] = fixture.grove.blocks;
    result.config["sizes"] = fixture.grove.sizes;
    result.config["radius"] = fixture.radii.front();
    result.config["horizon"] = fixture.config.horizon;
    result.config["window"] = fixture.config.window;
  }
  try {
    if (fixture.kind == "group")
      run_group_fixture(fixture, result);
    else
      run_grove_fixture(fixture, result);
  } catch (const Error& e) {
    result.error = e.what();
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.pass = result.error.empty();
  for (const auto& c : result.checks) result.pass = result.pass && c.pass;
  return result;
}

VerifyReport run_pipeline(const std::vector<FixtureSpec>& fixtures, int jobs) {
  VerifyReport report;
  if (jobs <= 1) {
    for (const auto& f : fixtures) report.fixtures.push_back(run_fixture(f));
  } else {
    std::vector<std::future<FixtureResult>> futures;
    for (const auto& f : fixtures)
      futures.push_back(std::async(std::launch::async, [&f] { return run_fixture(f); }));
    for (auto& fut : futures) report.fixtures.push_back(fut.get());
  }
  std::sort(report.fixtures.begin(), report.fixtures.end(),
            [](const FixtureResult& a, const FixtureResult& b) { return a.name < b.name; });
  report.pass = true;
  for (const auto& f : report.fixtures) report.pass = report.pass && f.pass;
  return report;
}

Json report_to_json(const VerifyReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["fixtures"] = Json::array();
  for (const auto& f : report.fixtures) {
    Json jf;
    jf["name"] = f.name;
    jf["pass"] = f.pass;
    jf["config"] = f.config;
    if (!f.error.empty()) jf["error"] = f.error;
    jf["checks"] = Json::array();
    for (const auto& c : f.checks) {
      Json jc;
      jc["check"] = c.name;
      if (!c.expected.is_null()) jc["expected"] = c.expected;
      jc["actual"] = c.actual;
      jc["pass"] = c.pass;
      jf["checks"].push_back(std::move(jc));
    }
    j["fixtures"].push_back(std::move(jf));
  }
  return j;
}

Json boundary_to_json(const BoundaryApprox& boundary, bool include_values) {
  Json j;
  j["radius"] = boundary.radius;
  j["horizon"] = boundary.horizon;
  j["window"] = boundary.window;
  j["function_count"] = boundary.functions.size();
  j["certified_count"] = boundary.certified_count();
  j["annulus_counts"] = boundary.annulus_counts;
  j["stabilized"] = boundary.stabilized;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(boundary.set_hash()));
  j["set_hash"] = hash;
  if (include_values) {
    j["functions"] = Json::array();
    for (const auto& f : boundary.functions) {
      Json jf;
      jf["values"] = f.fn.values();
      jf["provenance"] = f.provenance == Provenance::Annulus ? "annulus" : "ray-limit";
      jf["certified"] = f.certified;
      j["functions"].push_back(std::move(jf));
    }
  }
  return j;
}

Json graph_boundary_to_json(const GraphBoundary& boundary, bool include_values) {
  Json j;
  j["radius"] = boundary.radius;
  j["horizon"] = boundary.horizon;
  j["window"] = boundary.window;
  j["function_count"] = boundary.functions.size();
  j["annulus_counts"] = boundary.annulus_counts;
  j["stabilized"] = boundary.stabilized;
  if (include_values) j["functions"] = boundary.functions;
  return j;
}

Json orbits_to_json(const OrbitReport& orbits, const Ball& ball) {
  Json j;
  j["radius"] = orbits.radius;
  j["max_norm"] = orbits.max_norm;
  j["finite_orbit"] = orbits.closed;
  j["permutation_action"] = orbits.permutation;
  j["max_closed_radius"] = orbits.max_closed_radius;
  j["orbit_sizes"] = Json::array();
  for (const auto& orbit : orbits.orbits) j["orbit_sizes"].push_back(orbit.size());
  j["stabilizer_sample_norms"] = Json::array();
  for (const auto& stab : orbits.stabilizer) {
    Json norms = Json::array();
    for (uint32_t x : stab) norms.push_back(ball.dist(x));
    j["stabilizer_sample_norms"].push_back(std::move(norms));
  }
  return j;
}

Json character_to_json(const CharacterReport& report, const Ball& ball) {
  Json j;
  j["function_index"] = report.function_index;
  j["stabilizer_sample_size"] = report.stabilizer.size();
  j["pairs_checked"] = report.pairs_checked;
  j["pairs_failed"] = report.pairs_failed;
  j["homomorphism"] = report.homomorphism;
  if (report.witness) {
    j["witness_word"] =
        word_labels(ball, geodesic_to(ball, ball.element(*report.witness)));
    j["witness_norm"] = ball.dist(*report.witness);
  } else {
    j["witness_word"] = nullptr;
  }
  j["psi"] = Json::array();
  for (size_t i = 0; i < report.stabilizer.size(); ++i) {
    Json row;
    row["element"] =
        word_labels(ball, geodesic_to(ball, ball.element(report.stabilizer[i])));
    row["values"] = report.psi[i];
    j["psi"].push_back(std::move(row));
  }
  return j;
}

Json probe_to_json(const InjectivityProbe& probe) {
  Json j;
  j["kernel_sample_size"] = probe.entries.size();
  j["distinct_limits"] = probe.distinct_limits;
  j["busemann_estimate"] = probe.busemann_estimate;
  j["bound_holds"] = probe.bound_holds;
  j["entries"] = Json::array();
  for (const auto& e : probe.entries) {
    Json je;
    je["g"] = e.word;
    je["equal_to_base"] = e.equal_to_base;
    je["certified"] = e.certified;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

Json sphere_bound_to_json(const SphereBoundReport& report) {
  Json j;
  j["certified"] = report.certified;
  j["min_sphere"] = report.min_sphere;
  j["max_sphere"] = report.max_sphere;
  j["ok"] = report.ok;
  j["linear_growth"] = report.linear_growth;
  if (report.linear_growth) j["growth_constant"] = report.growth_constant;
  return j;
}

}  // namespace horoball
