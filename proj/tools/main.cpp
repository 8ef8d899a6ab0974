// Command line front end: balls, boundary approximations, ray enumeration,
// orbits, characters, groves, and the verify pipeline.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "horoball/pipeline.hpp"

namespace {

using namespace horoball;

struct CliOptions {
  RunConfig config;
  int depth = -1;
  std::string out;
  std::string format = "json";
  std::string fixtures = "share/fixtures.json";
  std::string input;
  std::string config_file;
  int jobs = 1;
  // grove knobs
  std::string family = "complete";
  std::vector<int> sizes = {4};
  int blocks = 24;
};

// --config file values fill in anything the flags did not set explicitly.
void merge_config_file(CliOptions& opt, const std::vector<std::string>& set_flags) {
  std::ifstream in(opt.config_file);
  if (!in) throw ConfigError("cannot open config file '" + opt.config_file + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  auto untouched = [&](const std::string& flag) {
    return std::find(set_flags.begin(), set_flags.end(), flag) == set_flags.end();
  };
  if (untouched("--group")) opt.config.group = j.value("group", opt.config.group);
  if (untouched("--gen")) opt.config.gen_words = j.value("gens", opt.config.gen_words);
  if (untouched("--radius")) opt.config.radius = j.value("radius", opt.config.radius);
  if (untouched("--horizon")) opt.config.horizon = j.value("horizon", opt.config.horizon);
  if (untouched("--window")) opt.config.window = j.value("window", opt.config.window);
  if (untouched("--stability-window"))
    opt.config.stability_window = j.value("stability_window", opt.config.stability_window);
  if (untouched("--max-norm")) opt.config.max_norm = j.value("max_norm", opt.config.max_norm);
  if (untouched("--shells"))
    opt.config.diagnostic_shells = j.value("shells", opt.config.diagnostic_shells);
  if (untouched("--cap")) opt.config.element_cap = j.value("element_cap", opt.config.element_cap);
}

void emit(const CliOptions& opt, const Json& j, const std::string& csv = "") {
  std::string text = opt.format == "csv" && !csv.empty() ? csv : j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw ConfigError("cannot write '" + opt.out + "'");
    f << text;
  }
}

std::pair<BallPtr, GeneratingSet> build_ball(const CliOptions& opt) {
  auto group = make_group(parse_group_spec(opt.config.group));
  GeneratingSet gens = symmetrize_generators(group, opt.config.gen_words);
  BallPtr ball =
      Ball::grow(group, gens, opt.config.horizon_or_default(), opt.config.element_cap);
  return {ball, gens};
}

Json config_echo(const CliOptions& opt) {
  Json j;
  j["group"] = opt.config.group;
  j["generators"] = opt.config.gen_words;
  j["radius"] = opt.config.radius;
  j["horizon"] = opt.config.horizon_or_default();
  j["window"] = opt.config.window;
  return j;
}

int cmd_ball(const CliOptions& opt) {
  auto [ball, gens] = build_ball(opt);
  Json j;
  j["group"] = ball->group().name();
  j["generators"] = gens.labels;
  j["r_max"] = ball->radius();
  j["sphere_sizes"] = ball->sphere_sizes();
  j["element_count"] = ball->size();
  std::string csv = "r,sphere_size\n";
  const auto sizes = ball->sphere_sizes();
  for (size_t r = 0; r < sizes.size(); ++r)
    csv += std::to_string(r) + "," + std::to_string(sizes[r]) + "\n";
  emit(opt, j, csv);
  return 0;
}

int cmd_boundary(const CliOptions& opt) {
  opt.config.validate();
  auto [ball, gens] = build_ball(opt);
  BoundaryApprox annulus = annulus_boundary_approx(
      ball, opt.config.radius, opt.config.window, opt.config.diagnostic_shells);
  Json j = config_echo(opt);
  j.update(boundary_to_json(annulus));
  std::string csv = "shell,distinct_functions\n";
  for (size_t i = 0; i < annulus.annulus_counts.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(annulus.annulus_counts[i]) + "\n";
  emit(opt, j, csv);
  return 0;
}

int cmd_rays(const CliOptions& opt) {
  opt.config.validate();
  auto [ball, gens] = build_ball(opt);
  const int depth =
      opt.depth > 0 ? opt.depth : ball->radius() - opt.config.radius;
  BoundaryApprox busemann = enumerate_busemann_points(ball, opt.config.radius, depth,
                                                      opt.config.stability_window);
  BoundaryApprox annulus = annulus_boundary_approx(
      ball, opt.config.radius, opt.config.window, opt.config.diagnostic_shells);
  ClassifyReport classify = classify_boundary(annulus, busemann);
  Json j = config_echo(opt);
  j["depth"] = depth;
  j.update(boundary_to_json(busemann));
  j["annulus_matched"] = classify.matched;
  j["annulus_unmatched"] = classify.unmatched.size();
  emit(opt, j);
  return 0;
}

std::pair<BoundaryApprox, OrbitReport> orbit_stage(const CliOptions& opt,
                                                   const BallPtr& ball,
                                                   const GeneratingSet& gens) {
  const int r_ext = opt.config.radius + opt.config.max_norm;
  BoundaryApprox extended =
      annulus_boundary_approx(ball, r_ext, opt.config.window, opt.config.diagnostic_shells);
  OrbitReport orbits = compute_orbits(extended, gens, opt.config.radius, opt.config.max_norm);
  return {std::move(extended), std::move(orbits)};
}

int cmd_orbits(const CliOptions& opt) {
  opt.config.validate();
  auto [ball, gens] = build_ball(opt);
  auto [extended, orbits] = orbit_stage(opt, ball, gens);
  Json j = config_echo(opt);
  j["max_norm"] = opt.config.max_norm;
  j.update(orbits_to_json(orbits, *ball));
  j["kernel_sample_size"] =
      action_kernel_sample(extended, opt.config.radius, orbits.max_norm).size();
  j["f_sample_size"] =
      f_subgroup_sample(extended, opt.config.radius, orbits.max_norm).size();
  emit(opt, j);
  return 0;
}

int cmd_character(const CliOptions& opt) {
  opt.config.validate();
  auto [ball, gens] = build_ball(opt);
  auto [extended, orbits] = orbit_stage(opt, ball, gens);
  if (!orbits.closed)
    throw NoFiniteOrbit("function set is not action-closed at radius " +
                        std::to_string(opt.config.radius));
  CharacterReport character =
      extract_character(extended, orbits, orbits.orbits.front().front());
  Json j = config_echo(opt);
  j.update(character_to_json(character, *ball));
  emit(opt, j);
  return 0;
}

int cmd_grove(const CliOptions& opt) {
  GroveSpec spec;
  if (opt.family == "complete")
    spec.family = BlockFamily::Complete;
  else if (opt.family == "path")
    spec.family = BlockFamily::Path;
  else if (opt.family == "cycle")
    spec.family = BlockFamily::Cycle;
  else
    throw ConfigError("unknown family '" + opt.family + "'");
  spec.sizes = opt.sizes;
  spec.blocks = opt.blocks;
  Graph grove = build_grove(spec);

  const int r = opt.config.radius;
  const int horizon =
      opt.config.horizon > 0 ? opt.config.horizon : std::min(3 * r + 4, opt.blocks - 1);
  GraphBoundary boundary = graph_boundary(grove, r, horizon, opt.config.window);

  std::vector<uint32_t> spine(horizon + 1);
  for (int t = 0; t <= horizon; ++t) spine[t] = static_cast<uint32_t>(t);
  GraphRayLimit spine_limit =
      graph_ray_limit(grove, spine, r, opt.config.stability_window);

  Json j;
  j["family"] = opt.family;
  j["blocks"] = opt.blocks;
  j["sizes"] = opt.sizes;
  j["vertices"] = grove.vertex_count;
  j.update(graph_boundary_to_json(boundary));
  j["spine_certified"] = spine_limit.certified;
  j["spine_matched"] =
      std::find(boundary.functions.begin(), boundary.functions.end(),
                spine_limit.values) != boundary.functions.end();
  GraphBall ball = graph_ball(grove, horizon);
  j["sphere_bound"] = sphere_bound_to_json(
      sphere_bound_check(ball.sphere_sizes(), spine_limit.certified ? 1 : 0, 3));
  std::string csv = "shell,distinct_functions\n";
  for (size_t i = 0; i < boundary.annulus_counts.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(boundary.annulus_counts[i]) + "\n";
  emit(opt, j, csv);
  return 0;
}

int cmd_graph_boundary(const CliOptions& opt) {
  std::ifstream in(opt.input);
  if (!in) throw ConfigError("cannot open '" + opt.input + "'");
  Graph graph = read_edge_list(in);
  GraphBoundary boundary =
      graph_boundary(graph, opt.config.radius,
                     opt.config.horizon > 0 ? opt.config.horizon : 3 * opt.config.radius + 4,
                     opt.config.window);
  Json j;
  j["input"] = opt.input;
  j["vertices"] = graph.vertex_count;
  j["base"] = graph.base;
  j.update(graph_boundary_to_json(boundary));
  std::string csv = "shell,distinct_functions\n";
  for (size_t i = 0; i < boundary.annulus_counts.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(boundary.annulus_counts[i]) + "\n";
  emit(opt, j, csv);
  return 0;
}

int cmd_verify(const CliOptions& opt) {
  VerifyReport report = run_pipeline(load_fixtures(opt.fixtures), opt.jobs);
  emit(opt, report_to_json(report));
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-radius horofunction boundary toolkit"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", opt.config.group, "group spec: Z, Z^2, Dinf, Heis, F2, Z x C3");
    cmd->add_option("--gen", opt.config.gen_words, "extra generator word (repeatable)");
    cmd->add_option("--radius", opt.config.radius, "restriction radius r");
    cmd->add_option("--horizon", opt.config.horizon, "ball radius (default 3r + 4)");
    cmd->add_option("--window", opt.config.window, "annulus width w");
    cmd->add_option("--stability-window", opt.config.stability_window,
                    "steps of constancy certifying a limit value (default 2r + 2)");
    cmd->add_option("--max-norm", opt.config.max_norm, "norm bound for samples");
    cmd->add_option("--shells", opt.config.diagnostic_shells,
                    "annuli compared in the stabilization report");
    cmd->add_option("--cap", opt.config.element_cap, "ball element cap");
    cmd->add_option("--seed", opt.config.seed, "reserved for sampling-based probes");
    cmd->add_option("--config", opt.config_file, "JSON file with the same knobs");
    cmd->add_option("--out", opt.out, "write the report here instead of stdout");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* ball = app.add_subcommand("ball", "grow a ball and report sphere sizes");
  add_common(ball);
  auto* boundary = app.add_subcommand("boundary", "annulus boundary approximation");
  add_common(boundary);
  auto* rays = app.add_subcommand("rays", "enumerate certified ray limits");
  add_common(rays);
  rays->add_option("--depth", opt.depth, "geodesic walk depth (default horizon - r)");
  auto* orbits = app.add_subcommand("orbits", "orbit structure of the boundary");
  add_common(orbits);
  auto* character = app.add_subcommand("character", "virtual character extraction");
  add_common(character);
  auto* grove = app.add_subcommand("grove", "grove graph boundary");
  add_common(grove);
  grove->add_option("--family", opt.family, "complete, path or cycle");
  grove->add_option("--sizes", opt.sizes, "block sizes (one value broadcasts)");
  grove->add_option("--blocks", opt.blocks, "number of spine vertices");
  auto* graphb = app.add_subcommand("graph-boundary", "boundary of an edge-list graph");
  add_common(graphb);
  graphb->add_option("--input", opt.input, "edge list file, '#base v' sets the base")
      ->required();
  auto* verify = app.add_subcommand("verify", "run the fixture expectation table");
  add_common(verify);
  verify->add_option("--fixtures", opt.fixtures, "fixture table (JSON)");
  verify->add_option("--jobs", opt.jobs, "fixtures run concurrently");

  try {
    app.parse(argc, argv);
    if (!opt.config_file.empty()) {
      CLI::App* sub = app.get_subcommands().front();
      std::vector<std::string> set_flags;
      for (const char* f : {"--group", "--gen", "--radius", "--horizon", "--window",
                            "--stability-window", "--max-norm", "--shells", "--cap"})
        if (sub->count(f) > 0) set_flags.push_back(f);
      merge_config_file(opt, set_flags);
    }
    if (ball->parsed()) return cmd_ball(opt);
    if (boundary->parsed()) return cmd_boundary(opt);
    if (rays->parsed()) return cmd_rays(opt);
    if (orbits->parsed()) return cmd_orbits(opt);
    if (character->parsed()) return cmd_character(opt);
    if (grove->parsed()) return cmd_grove(opt);
    if (graphb->parsed()) return cmd_graph_boundary(opt);
    if (verify->parsed()) return cmd_verify(opt);
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << (e.get_exit_code() == 0 ? "" : "error: ") << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind) {
      case ErrorKind::Config:
        return 2;
      case ErrorKind::Resource:
        return 3;
      case ErrorKind::Domain:
        return 1;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
