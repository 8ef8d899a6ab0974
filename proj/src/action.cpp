#include "horoball/action.hpp"

#include <algorithm>
#include <map>

namespace horoball {

RestrictedFunction act_on_function(const Element& x, const RestrictedFunction& h, int r) {
  const Ball& ball = h.ball();
  const Group& g = ball.group();
  const int nx = ball.norm_of(x);
  if (h.radius() < r + nx)
    throw DomainTooSmall("acting by |x| = " + std::to_string(nx) +
                         " needs the source on B_" + std::to_string(r + nx));
  const Element xinv = g.inverse(x);
  const int64_t shift = h.at(xinv);
  const uint32_t nr = ball.ball_size(r);
  std::vector<int64_t> values(nr);
  for (uint32_t y = 0; y < nr; ++y)
    values[y] = h.at(g.mul(xinv, ball.element(y))) - shift;
  return RestrictedFunction(h.ball_ptr(), r, std::move(values));
}

namespace {

// Index of the boundary function matching `values` at `radius`, or -1.
int32_t match_at_radius(const BoundaryApprox& boundary, int radius,
                        const std::vector<int64_t>& values) {
  const uint32_t n = boundary.ball->ball_size(radius);
  for (size_t i = 0; i < boundary.functions.size(); ++i) {
    const auto& cand = boundary.functions[i].fn.values();
    if (std::equal(values.begin(), values.begin() + n, cand.begin())) {
      return static_cast<int32_t>(i);
    }
  }
  return -1;
}

std::vector<std::vector<int32_t>> action_table(const BoundaryApprox& boundary,
                                               const GeneratingSet& gens, int radius) {
  std::vector<std::vector<int32_t>> table(gens.size());
  for (size_t s = 0; s < gens.size(); ++s) {
    table[s].resize(boundary.functions.size(), -1);
    for (size_t i = 0; i < boundary.functions.size(); ++i) {
      RestrictedFunction moved =
          act_on_function(gens.members[s], boundary.functions[i].fn, radius);
      table[s][i] = match_at_radius(boundary, radius, moved.values());
    }
  }
  return table;
}

}  // namespace

OrbitReport compute_orbits(const BoundaryApprox& boundary, const GeneratingSet& gens,
                           int radius, int max_norm) {
  int max_gen_norm = 0;
  for (const auto& s : gens.members)
    max_gen_norm = std::max(max_gen_norm, boundary.ball->norm_of(s));
  if (boundary.radius < radius + max_gen_norm)
    throw DomainTooSmall("orbit matching at radius " + std::to_string(radius) +
                         " needs functions on B_" + std::to_string(radius + max_gen_norm));

  OrbitReport rep;
  rep.radius = radius;
  rep.max_norm = max_norm;
  rep.gen_action = action_table(boundary, gens, radius);

  rep.closed = true;
  for (const auto& row : rep.gen_action)
    for (int32_t target : row)
      if (target < 0) rep.closed = false;

  rep.permutation = rep.closed;
  for (const auto& row : rep.gen_action) {
    std::vector<bool> hit(boundary.functions.size(), false);
    for (int32_t target : row) {
      if (target < 0 || hit[target]) {
        rep.permutation = false;
        break;
      }
      hit[target] = true;
    }
  }

  rep.max_closed_radius = -1;
  for (int rho = radius; rho >= 0 && rep.max_closed_radius < 0; --rho) {
    bool closed = true;
    for (size_t s = 0; s < gens.size() && closed; ++s)
      for (size_t i = 0; i < boundary.functions.size() && closed; ++i) {
        RestrictedFunction moved =
            act_on_function(gens.members[s], boundary.functions[i].fn, rho);
        if (match_at_radius(boundary, rho, moved.values()) < 0) closed = false;
      }
    if (closed) rep.max_closed_radius = rho;
  }

  // Orbits: connected components of the (partial) generator action.
  const size_t n = boundary.functions.size();
  std::vector<int32_t> comp(n, -1);
  for (size_t seed = 0; seed < n; ++seed) {
    if (comp[seed] >= 0) continue;
    const int32_t id = static_cast<int32_t>(rep.orbits.size());
    std::vector<size_t> orbit{seed};
    comp[seed] = id;
    for (size_t k = 0; k < orbit.size(); ++k)
      for (const auto& row : rep.gen_action) {
        const int32_t to = row[orbit[k]];
        if (to >= 0 && comp[to] < 0) {
          comp[to] = id;
          orbit.push_back(static_cast<size_t>(to));
        }
      }
    std::sort(orbit.begin(), orbit.end());
    rep.orbits.push_back(std::move(orbit));
  }

  // Stabilizer sample of each orbit representative (its smallest member),
  // clamped to the norm the domain can verify.
  rep.max_norm = std::min(max_norm, boundary.radius - radius);
  const Ball& ball = *boundary.ball;
  for (const auto& orbit : rep.orbits) {
    const RestrictedFunction& h = boundary.functions[orbit.front()].fn;
    std::vector<uint32_t> stab;
    for (uint32_t x = 0; x < ball.ball_size(rep.max_norm); ++x) {
      RestrictedFunction moved = act_on_function(ball.element(x), h, radius);
      if (std::equal(moved.values().begin(), moved.values().end(), h.values().begin()))
        stab.push_back(x);
    }
    rep.stabilizer.push_back(std::move(stab));
  }
  return rep;
}

std::vector<uint32_t> action_kernel_sample(const BoundaryApprox& boundary, int radius,
                                           int max_norm) {
  if (boundary.radius < radius + max_norm)
    throw DomainTooSmall("kernel sample at norm " + std::to_string(max_norm) +
                         " needs functions on B_" + std::to_string(radius + max_norm));
  const Ball& ball = *boundary.ball;
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < ball.ball_size(max_norm); ++x) {
    bool fixes_all = true;
    for (const auto& f : boundary.functions) {
      RestrictedFunction moved = act_on_function(ball.element(x), f.fn, radius);
      if (!std::equal(moved.values().begin(), moved.values().end(),
                      f.fn.values().begin())) {
        fixes_all = false;
        break;
      }
    }
    if (fixes_all) out.push_back(x);
  }
  return out;
}

std::vector<uint32_t> f_subgroup_sample(const BoundaryApprox& boundary, int radius,
                                        int max_norm) {
  std::vector<uint32_t> out;
  for (uint32_t x : action_kernel_sample(boundary, radius, max_norm)) {
    bool vanishes = true;
    for (const auto& f : boundary.functions)
      if (f.fn.at(x) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) out.push_back(x);
  }
  return out;
}

CharacterReport extract_character(const BoundaryApprox& boundary, const OrbitReport& orbits,
                                  size_t function_index) {
  const auto orbit_of = [&]() -> const std::vector<size_t>* {
    for (const auto& orbit : orbits.orbits)
      for (size_t i : orbit)
        if (i == function_index) return &orbit;
    return nullptr;
  }();
  if (!orbit_of) throw NoFiniteOrbit("function is not part of the orbit report");
  if (!orbits.closed)
    throw NoFiniteOrbit("the function set is not action-closed at radius " +
                        std::to_string(orbits.radius));

  const Ball& ball = *boundary.ball;
  const Group& g = ball.group();
  const RestrictedFunction& h = boundary.functions[function_index].fn;

  CharacterReport rep;
  rep.function_index = function_index;

  // Stabilizer of h itself (not just the orbit representative).
  for (uint32_t x = 0; x < ball.ball_size(orbits.max_norm); ++x) {
    RestrictedFunction moved = act_on_function(ball.element(x), h, orbits.radius);
    if (std::equal(moved.values().begin(), moved.values().end(), h.values().begin()))
      rep.stabilizer.push_back(x);
  }

  for (uint32_t xi : rep.stabilizer) {
    for (uint32_t yi : rep.stabilizer) {
      Element xy = g.mul(ball.element(xi), ball.element(yi));
      auto idx = ball.find(xy);
      if (!idx || *idx >= h.values().size()) continue;
      ++rep.pairs_checked;
      if (h.at(*idx) != h.at(xi) + h.at(yi)) ++rep.pairs_failed;
    }
  }
  rep.homomorphism = rep.pairs_checked > 0 && rep.pairs_failed == 0;

  // Witness scan in ball order = increasing norm with canonical tie-break.
  for (uint32_t y : rep.stabilizer) {
    if (y == 0) continue;
    if (h.at(y) == -ball.dist(y)) {
      rep.witness = y;
      break;
    }
  }

  for (uint32_t x : rep.stabilizer) rep.psi.push_back(psi_map(boundary, ball.element(x)));
  return rep;
}

std::vector<int64_t> psi_map(const BoundaryApprox& boundary, const Element& x) {
  const Ball& ball = *boundary.ball;
  auto idx = ball.find(x);
  if (!idx || *idx >= ball.ball_size(boundary.radius))
    throw OutOfDomain("psi needs |x| within the restriction radius");
  std::vector<int64_t> out;
  out.reserve(boundary.functions.size());
  for (const auto& f : boundary.functions) out.push_back(f.fn.at(*idx));
  return out;
}

PowerCheck power_geodesic_check(const BallPtr& ball, const Element& x,
                                const RestrictedFunction& h) {
  const Group& g = ball->group();
  h.check_invariants();  // 1-Lipschitz, h(1) = 0, integer floor
  const int m = ball->norm_of(x);
  if (m == 0) throw PreconditionFailed("x must not be the identity");
  if (h.at(x) != m)
    throw PreconditionFailed("h(x) = " + std::to_string(h.at(x)) + " but |x| = " +
                             std::to_string(m));

  PowerCheck out;
  Element power = x;
  for (int t = 1; t * m <= ball->radius(); ++t) {
    if (ball->norm_of(power) != t * m)
      throw PreconditionFailed("|x^" + std::to_string(t) + "| != " + std::to_string(t) +
                               "|x|, h cannot be a homomorphism on <x>");
    out.powers_checked = t;
    if ((t + 1) * m <= ball->radius()) power = g.mul(power, x);
  }

  GenWord word = geodesic_to(*ball, x);
  GenWord repeated;
  while (repeated.size() + word.size() <= static_cast<size_t>(ball->radius()))
    repeated.insert(repeated.end(), word.begin(), word.end());
  if (!verify_geodesic(*ball, repeated))
    throw PreconditionFailed("periodic word fails the geodesic equation");
  out.ray = periodic_ray(*ball, g.identity(), word);
  out.ok = true;
  return out;
}

InjectivityProbe kernel_injectivity_probe(const BallPtr& base_ball,
                                          const std::vector<uint32_t>& kernel_sample,
                                          const Element& x,
                                          const GeneratingSet& gens_extended, int r,
                                          int horizon, int stability_window) {
  const Group& g = base_ball->group();
  BallPtr ext_ball = Ball::grow(base_ball->group_ptr(), gens_extended, horizon);

  // x must be a single step in the extended graph.
  if (ext_ball->norm_of(x) != 1)
    throw PreconditionFailed("x is not a generator of the extended set");
  const GenWord xword = geodesic_to(*ext_ball, x);

  InjectivityProbe probe;
  std::map<std::vector<int64_t>, size_t> limits;

  RayLimit base = ray_limit(ext_ball, periodic_ray(*ext_ball, g.identity(), xword), r,
                            stability_window);
  for (uint32_t gi : kernel_sample) {
    const Element& elt = base_ball->element(gi);
    RayLimit lim = ray_limit(ext_ball, periodic_ray(*ext_ball, elt, xword), r,
                             stability_window);
    limits.try_emplace(lim.fn.values(), limits.size());
    probe.entries.push_back({word_labels(*base_ball, geodesic_to(*base_ball, elt)),
                             lim.fn.values() == base.fn.values(), lim.certified});
  }
  probe.distinct_limits = limits.size();

  BoundaryApprox busemann =
      enumerate_busemann_points(ext_ball, r, horizon - r, stability_window);
  probe.busemann_estimate = busemann.certified_count();
  probe.bound_holds = kernel_sample.size() <= probe.busemann_estimate;
  return probe;
}

}  // namespace horoball
