#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "horoball/action.hpp"
#include "oracles.hpp"

using namespace horoball;

namespace {

BallPtr make_ball(const std::string& spec, int r,
                  const std::vector<std::string>& words = {}) {
  auto g = make_group(parse_group_spec(spec));
  return Ball::grow(g, symmetrize_generators(g, words), r);
}

Element random_ball_element(const Ball& ball, int max_norm, std::mt19937& rng) {
  std::uniform_int_distribution<uint32_t> pick(0, ball.ball_size(max_norm) - 1);
  return ball.element(pick(rng));
}

}  // namespace

TEST_CASE("acting by the identity changes nothing") {
  auto ball = make_ball("Z", 12);
  RestrictedFunction h = busemann_restriction(ball, Element{{5}}, 3);
  RestrictedFunction moved = act_on_function(ball->group().identity(), h, 3);
  CHECK(moved == h);
}

TEST_CASE("equivariance instance on Z") {
  auto ball = make_ball("Z", 12);
  RestrictedFunction h = busemann_restriction(ball, Element{{5}}, 3);
  RestrictedFunction moved = act_on_function(Element{{1}}, h, 2);
  CHECK(moved == busemann_restriction(ball, Element{{6}}, 2));
}

TEST_CASE("limit functions can be fixed points") {
  auto ball = make_ball("Z", 12);
  BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
  REQUIRE(b.functions.size() == 2);
  for (const auto& f : b.functions) {
    RestrictedFunction moved = act_on_function(Element{{1}}, f.fn, 3);
    CHECK(moved == f.fn.truncated(3));
  }
}

TEST_CASE("radius bookkeeping is explicit") {
  auto ball = make_ball("Z", 12);
  RestrictedFunction h = busemann_restriction(ball, Element{{5}}, 3);
  CHECK_THROWS_AS(act_on_function(Element{{2}}, h, 2), DomainTooSmall);
  CHECK_THROWS_AS(act_on_function(Element{{1}}, h, 3), DomainTooSmall);
}

TEST_CASE("equivariance x.b_y = b_xy on random pairs") {
  std::mt19937 rng(23);
  for (const char* spec : {"Z", "Dinf", "Z^2", "Heis", "F2", "Z x C3"}) {
    CAPTURE(spec);
    auto ball = make_ball(spec, 9);
    const int r = 2;
    for (int trial = 0; trial < 200; ++trial) {
      Element x = random_ball_element(*ball, 3, rng);
      Element y = random_ball_element(*ball, 3, rng);
      const int nx = ball->norm_of(x);
      RestrictedFunction by = busemann_restriction(ball, y, r + nx);
      RestrictedFunction lhs = act_on_function(x, by, r);
      RestrictedFunction rhs = busemann_restriction(ball, ball->group().mul(x, y), r);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("action law (xy).h = x.(y.h)") {
  std::mt19937 rng(29);
  for (const char* spec : {"Z", "Dinf", "Z^2"}) {
    CAPTURE(spec);
    auto ball = make_ball(spec, 14);
    BoundaryApprox b = annulus_boundary_approx(ball, 6, 2);
    const int r = 2;
    for (int trial = 0; trial < 50; ++trial) {
      Element x = random_ball_element(*ball, 2, rng);
      Element y = random_ball_element(*ball, 2, rng);
      const int nx = ball->norm_of(x);
      for (const auto& f : b.functions) {
        RestrictedFunction via_product =
            act_on_function(ball->group().mul(x, y), f.fn, r);
        RestrictedFunction stepwise =
            act_on_function(x, act_on_function(y, f.fn, r + nx), r);
        CHECK(via_product == stepwise);
      }
    }
  }
}

TEST_CASE("orbit structure of Z standard") {
  auto ball = make_ball("Z", 18);
  BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 4, 3);
  CHECK(orbits.closed);
  CHECK(orbits.permutation);
  CHECK(orbits.max_closed_radius == 4);
  REQUIRE(orbits.orbits.size() == 2);
  CHECK(orbits.orbits[0].size() == 1);
  CHECK(orbits.orbits[1].size() == 1);
  // translations fix both ends: the whole sample stabilizes
  for (const auto& stab : orbits.stabilizer) CHECK(stab.size() == ball->ball_size(3));
}

TEST_CASE("orbit structure of Dinf: reflections swap the ends") {
  auto ball = make_ball("Dinf", 18);
  BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 4, 3);
  CHECK(orbits.closed);
  CHECK(orbits.permutation);
  REQUIRE(orbits.orbits.size() == 1);
  CHECK(orbits.orbits[0].size() == 2);
  // the generator action transposes the two functions
  for (const auto& row : orbits.gen_action) CHECK(row == std::vector<int32_t>{1, 0});
}

TEST_CASE("orbit structure of Z with jumps: parity pairs per end") {
  auto ball = make_ball("Z", 18, {"aa"});
  BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 4, 3);
  CHECK(orbits.closed);
  REQUIRE(orbits.orbits.size() == 2);
  CHECK(orbits.orbits[0].size() == 2);
  CHECK(orbits.orbits[1].size() == 2);
}

TEST_CASE("kernel and F samples") {
  SUBCASE("Z: every small translation fixes both ends") {
    auto ball = make_ball("Z", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
    auto kernel = action_kernel_sample(ext, 4, 3);
    CHECK(kernel.size() == 7);  // {-3..3}
    auto fs = f_subgroup_sample(ext, 4, 3);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == 0);  // identity only
  }
  SUBCASE("Dinf: reflections are excluded") {
    auto ball = make_ball("Dinf", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 6, 2);
    auto kernel = action_kernel_sample(ext, 4, 2);
    REQUIRE(kernel.size() == 3);
    CHECK(ball->element(kernel[0]) == ball->group().identity());
    std::set<std::vector<int64_t>> members;
    for (uint32_t i : kernel) members.insert(ball->element(i).v);
    CHECK(members.contains({1, -1}));  // ab
    CHECK(members.contains({1, 1}));   // ba
    CHECK(f_subgroup_sample(ext, 4, 2).size() == 1);
  }
  SUBCASE("Z x C3: the torsion fibre is exactly F") {
    auto ball = make_ball("Z x C3", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
    auto kernel = action_kernel_sample(ext, 4, 3);
    CHECK(kernel.size() == ball->ball_size(3));  // everything fixes both ends
    auto fs = f_subgroup_sample(ext, 4, 3);
    REQUIRE(fs.size() == 3);
    std::set<std::vector<int64_t>> members;
    for (uint32_t i : fs) members.insert(ball->element(i).v);
    CHECK(members ==
          std::set<std::vector<int64_t>>{{0, 0}, {1, 0}, {2, 0}});
  }
  SUBCASE("domain bookkeeping") {
    auto ball = make_ball("Z", 10);
    BoundaryApprox ext = annulus_boundary_approx(ball, 4, 2);
    CHECK_THROWS_AS(action_kernel_sample(ext, 4, 3), DomainTooSmall);
  }
}

TEST_CASE("character extraction on Z") {
  auto ball = make_ball("Z", 18);
  BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 4, 3);
  CharacterReport ch = extract_character(ext, orbits, 0);
  CHECK(ch.homomorphism);
  CHECK(ch.pairs_checked > 0);
  CHECK(ch.pairs_failed == 0);
  REQUIRE(ch.witness.has_value());
  const Element w = ball->element(*ch.witness);
  CHECK(ext.functions[0].fn.at(*ch.witness) == -ball->dist(*ch.witness));
  CHECK(ball->dist(*ch.witness) == 1);
  // psi rows follow the sorted function order; the two ends negate each other
  for (size_t i = 0; i < ch.stabilizer.size(); ++i) {
    REQUIRE(ch.psi[i].size() == 2);
    CHECK(ch.psi[i][0] == -ch.psi[i][1]);
  }
  (void)w;
}

TEST_CASE("character extraction on Dinf finds the spine translation") {
  auto ball = make_ball("Dinf", 18);
  BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 4, 3);
  CharacterReport ch = extract_character(ext, orbits, 0);
  CHECK(ch.homomorphism);
  REQUIRE(ch.witness.has_value());
  const Element w = ball->element(*ch.witness);
  CHECK(ball->dist(*ch.witness) == 2);
  CHECK(ext.functions[0].fn.at(*ch.witness) == -2);
  // the witness is one of the two unit translations; the deterministic scan
  // yields ab = (+1,-1)
  CHECK(w == Element{{1, -1}});
}

TEST_CASE("character additivity on the Z^2 corner function") {
  // the SW corner limit y1 + y2 appears in the annulus once the shell norms
  // clear 2 * radius, and sorts first; it is additive everywhere
  auto ball = make_ball("Z^2", 18);
  BoundaryApprox ext = annulus_boundary_approx(ball, 4, 2);
  std::vector<int64_t> corner;
  for (uint32_t i = 0; i < ball->ball_size(4); ++i)
    corner.push_back(ball->element(i).v[0] + ball->element(i).v[1]);
  REQUIRE(ext.functions[0].fn.values() == corner);

  OrbitReport orbits = compute_orbits(ext, ball->gens(), 2, 2);
  CHECK(orbits.closed);
  CharacterReport ch = extract_character(ext, orbits, 0);
  CHECK(ch.homomorphism);
  CHECK(ch.pairs_failed == 0);
  // linear functions are stabilized by every translation in range
  CHECK(ch.stabilizer.size() == ball->ball_size(orbits.max_norm));
}

TEST_CASE("no finite orbit, no character") {
  auto ball = make_ball("F2", 10);
  BoundaryApprox ext = annulus_boundary_approx(ball, 3, 2);
  OrbitReport orbits = compute_orbits(ext, ball->gens(), 2, 1);
  CHECK_FALSE(orbits.permutation);
  if (!orbits.closed)
    CHECK_THROWS_AS(extract_character(ext, orbits, 0), NoFiniteOrbit);
}

TEST_CASE("power word lengths and the periodic ray") {
  SUBCASE("Z, x = +1") {
    auto ball = make_ball("Z", 12);
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    // pick the end with h(+1) = -1, negate it for the check
    const RestrictedFunction* h = nullptr;
    for (const auto& f : b.functions)
      if (f.fn.at(Element{{1}}) == -1) h = &f.fn;
    REQUIRE(h);
    PowerCheck pc = power_geodesic_check(ball, Element{{1}}, h->negated());
    CHECK(pc.ok);
    CHECK(pc.powers_checked == 12);
    CHECK(pc.ray.period.size() == 1);
    RayLimit lim = ray_limit(ball, pc.ray, 3, -1);
    CHECK(lim.certified);
    CHECK(lim.fn.values() == h->truncated(3).values());
  }
  SUBCASE("Dinf, x = ab has |x^t| = 2t") {
    auto ball = make_ball("Dinf", 12);
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    const Element ab = ball->group().evaluate_word("ab");
    const RestrictedFunction* h = nullptr;
    for (const auto& f : b.functions)
      if (f.fn.at(ab) == -2) h = &f.fn;
    REQUIRE(h);
    PowerCheck pc = power_geodesic_check(ball, ab, h->negated());
    CHECK(pc.ok);
    CHECK(pc.powers_checked == 6);
    CHECK(pc.ray.period.size() == 2);  // alternating word
    CHECK(verify_geodesic(*ball, geodesic_to(*ball, ball->group().evaluate_word("ababab"))));
  }
  SUBCASE("Z with jumps, x = +2 steps the even ray") {
    auto ball = make_ball("Z", 12, {"aa"});
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    const RestrictedFunction* h = nullptr;
    for (const auto& f : b.functions)
      if (f.fn.at(Element{{2}}) == -1 && f.fn.at(Element{{1}}) == 0) h = &f.fn;
    REQUIRE(h);  // the floor class
    PowerCheck pc = power_geodesic_check(ball, Element{{2}}, h->negated());
    CHECK(pc.ok);
    CHECK(pc.powers_checked == 12);  // |2t| = t here
  }
  SUBCASE("precondition h(x) = |x| is enforced") {
    auto ball = make_ball("Z", 12);
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    const RestrictedFunction& h = b.functions[1].fn;  // h(y) = -y, so h(+1) != 1
    REQUIRE(h.at(Element{{1}}) == -1);
    CHECK_THROWS_AS(power_geodesic_check(ball, Element{{1}}, h),
                    PreconditionFailed);
  }
}

TEST_CASE("psi tables") {
  SUBCASE("Z standard") {
    auto ball = make_ball("Z", 12);
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    CHECK(psi_map(b, Element{{0}}) == std::vector<int64_t>{0, 0});
    // sorted order puts y -> y first
    CHECK(psi_map(b, Element{{3}}) == std::vector<int64_t>{3, -3});
    CHECK_THROWS_AS(psi_map(b, Element{{7}}), OutOfDomain);
  }
  SUBCASE("Z with jumps at x = +3") {
    auto ball = make_ball("Z", 14, {"aa"});
    BoundaryApprox b = annulus_boundary_approx(ball, 4, 2);
    REQUIRE(b.functions.size() == 4);
    auto psi = psi_map(b, Element{{3}});
    std::multiset<int64_t> values(psi.begin(), psi.end());
    CHECK(values == std::multiset<int64_t>{-2, -1, 1, 2});
  }
  SUBCASE("psi is additive on the kernel sample") {
    auto ball = make_ball("Z x C3", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
    auto kernel = action_kernel_sample(ext, 4, 3);
    const Group& g = ball->group();
    for (uint32_t xi : kernel)
      for (uint32_t yi : kernel) {
        Element xy = g.mul(ball->element(xi), ball->element(yi));
        auto idx = ball->find(xy);
        if (!idx || ball->dist(*idx) > 3) continue;
        auto px = psi_map(ext, ball->element(xi));
        auto py = psi_map(ext, ball->element(yi));
        auto pxy = psi_map(ext, xy);
        for (size_t k = 0; k < px.size(); ++k) CHECK(pxy[k] == px[k] + py[k]);
      }
  }
}

TEST_CASE("kernel injectivity probe") {
  SUBCASE("Z x C3 with x = aa separates the torsion fibre") {
    auto ball = make_ball("Z x C3", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
    auto fs = f_subgroup_sample(ext, 4, 3);
    REQUIRE(fs.size() == 3);
    auto group = ball->group_ptr();
    const Element x = group->evaluate_word("aa");
    GeneratingSet ext_gens = symmetrize_generators(group, {"aa"});
    InjectivityProbe probe = kernel_injectivity_probe(ball, fs, x, ext_gens, 2, 14);
    CHECK(probe.distinct_limits == 3);
    CHECK(probe.busemann_estimate >= 3);
    CHECK(probe.bound_holds);
    // the identity row is the base ray itself
    CHECK(probe.entries[0].equal_to_base);
    size_t equal = 0;
    for (const auto& e : probe.entries) equal += e.equal_to_base ? 1 : 0;
    CHECK(equal == 1);
  }
  SUBCASE("Dinf has a trivial F, the probe is vacuous") {
    auto ball = make_ball("Dinf", 18);
    BoundaryApprox ext = annulus_boundary_approx(ball, 7, 2);
    auto fs = f_subgroup_sample(ext, 4, 3);
    REQUIRE(fs.size() == 1);
    auto group = ball->group_ptr();
    const Element x = group->evaluate_word("ab");
    GeneratingSet ext_gens = symmetrize_generators(group, {"ab"});
    InjectivityProbe probe = kernel_injectivity_probe(ball, fs, x, ext_gens, 2, 14);
    CHECK(probe.distinct_limits == 1);
    CHECK(probe.bound_holds);
  }
}
