#include "horoball/boundary.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace horoball {

RestrictedFunction::RestrictedFunction(BallPtr ball, int radius, std::vector<int64_t> values)
    : ball_(std::move(ball)), radius_(radius), values_(std::move(values)) {
  if (values_.size() != ball_->ball_size(radius_))
    throw RadiusMismatch("value vector does not cover B_" + std::to_string(radius_));
}

int64_t RestrictedFunction::at(const Element& y) const {
  const uint32_t i = ball_->index_of(y);
  if (i >= values_.size()) throw OutOfDomain("point outside the restriction radius");
  return values_[i];
}

RestrictedFunction RestrictedFunction::truncated(int r) const {
  if (r > radius_) throw RadiusMismatch("cannot extend a restriction by truncation");
  return RestrictedFunction(
      ball_, r, std::vector<int64_t>(values_.begin(), values_.begin() + ball_->ball_size(r)));
}

RestrictedFunction RestrictedFunction::negated() const {
  std::vector<int64_t> neg(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) neg[i] = -values_[i];
  return RestrictedFunction(ball_, radius_, std::move(neg));
}

void RestrictedFunction::check_invariants() const {
  if (values_[0] != 0) throw PreconditionFailed("h(1) != 0");
  const Group& g = ball_->group();
  for (uint32_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < -ball_->dist(i))
      throw PreconditionFailed("h below the -|y| floor at index " + std::to_string(i));
    for (const auto& s : ball_->gens().members) {
      auto j = ball_->find(g.mul(ball_->element(i), s));
      if (!j || *j >= values_.size()) continue;
      const int64_t d = values_[i] - values_[*j];
      if (d > 1 || d < -1)
        throw PreconditionFailed("h is not 1-Lipschitz along an edge at index " +
                                 std::to_string(i));
    }
  }
}

bool value_less(const RestrictedFunction& a, const RestrictedFunction& b) {
  return a.values() < b.values();
}

RestrictedFunction busemann_restriction(const BallPtr& ball, const Element& x, int r) {
  const Group& g = ball->group();
  const int nx = ball->norm_of(x);
  if (nx + r > ball->radius())
    throw HorizonTooSmall("need |x| + r <= horizon for exact b_x on B_r");
  const Element xinv = g.inverse(x);
  const uint32_t nr = ball->ball_size(r);
  std::vector<int64_t> values(nr);
  for (uint32_t y = 0; y < nr; ++y)
    values[y] = ball->dist(ball->index_of(g.mul(xinv, ball->element(y)))) - nx;
  return RestrictedFunction(ball, r, std::move(values));
}

Ray ray_from_word(const Ball& ball, const GenWord& word) {
  Ray ray;
  ray.start = ball.group().identity();
  for (int32_t s : word) ray.steps.push_back(ball.gens().members[s]);
  return ray;
}

Ray periodic_ray(const Ball& ball, const Element& start, const GenWord& period_word) {
  Ray ray;
  ray.start = start;
  for (int32_t s : period_word) ray.period.push_back(ball.gens().members[s]);
  return ray;
}

RayLimit ray_limit(const BallPtr& ball, const Ray& ray, int r, int stability_window) {
  if (stability_window < 1) stability_window = default_stability_window(r);
  const Group& g = ball->group();
  const uint32_t nr = ball->ball_size(r);
  const bool from_identity = g.is_identity(ray.start);

  std::vector<int64_t> values(nr, 0);
  std::vector<int32_t> constant_run(nr, 0);
  std::vector<uint8_t> floor_hit(nr, 0);

  Element gamma = ray.start;
  int evaluated = -1;
  for (size_t t = 0;; ++t) {
    std::vector<int64_t> now(nr);
    bool ok = true;
    auto gi = ball->find(gamma);
    if (!gi) break;
    const Element ginv = g.inverse(gamma);
    for (uint32_t y = 0; y < nr && ok; ++y) {
      auto zi = ball->find(g.mul(ginv, ball->element(y)));
      if (!zi) {
        ok = false;
        break;
      }
      now[y] = ball->dist(*zi) - ball->dist(*gi);
    }
    if (!ok) break;

    for (uint32_t y = 0; y < nr; ++y) {
      if (now[y] < -ball->dist(y))
        throw NotAGeodesic("b_x(y) dropped below -|y|, distances inconsistent");
      if (evaluated >= 0) {
        if (from_identity && now[y] > values[y])
          throw NotAGeodesic("b_{gamma_t}(y) increased along the ray at t=" +
                             std::to_string(t));
        constant_run[y] = (now[y] == values[y]) ? constant_run[y] + 1 : 0;
      }
      values[y] = now[y];
      floor_hit[y] = (now[y] == -ball->dist(y)) ? 1 : 0;
    }
    evaluated = static_cast<int>(t);
    if (!ray.infinite() && t == ray.finite_length()) break;
    gamma = g.mul(gamma, ray.step(t));
  }

  if (evaluated < r + 1)
    throw RayTooShort("ray evaluable to t=" + std::to_string(evaluated) +
                      ", need at least r + 1 = " + std::to_string(r + 1));

  // The floor settles a value only together with monotonicity, i.e. for rays
  // from the identity; otherwise only window stability counts.
  bool certified = true;
  for (uint32_t y = 0; y < nr; ++y) {
    const bool settled =
        (from_identity && floor_hit[y]) || constant_run[y] >= stability_window;
    if (!settled) {
      certified = false;
      break;
    }
  }

  return RayLimit{RestrictedFunction(ball, r, std::move(values)), certified, evaluated};
}

size_t BoundaryApprox::certified_count() const {
  size_t n = 0;
  for (const auto& f : functions) n += f.certified ? 1 : 0;
  return n;
}

uint64_t BoundaryApprox::set_hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t u) {
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& f : functions) {
    mix(0x5eed);
    for (int64_t v : f.fn.values()) mix(static_cast<uint64_t>(v));
  }
  return h;
}

const BoundaryFunction* BoundaryApprox::find_values(const std::vector<int64_t>& values) const {
  for (const auto& f : functions)
    if (f.fn.values() == values) return &f;
  return nullptr;
}

BoundaryApprox annulus_boundary_approx(BallPtr ball, int r, int w, int diagnostic_shells) {
  const int R = ball->radius();
  if (R < r + w + 1)
    throw HorizonTooSmall("annulus surrogate needs horizon >= r + w + 1");
  const int shells = std::max(1, std::min(diagnostic_shells, R - r - w));

  BoundaryApprox out;
  out.ball = ball;
  out.radius = r;
  out.horizon = R;
  out.window = w;

  const Group& g = ball->group();
  std::vector<std::set<std::vector<int64_t>>> shell_sets(shells);
  for (int j = shells - 1; j >= 0; --j) {
    const int hi = R - r - j;
    const int lo = hi - w;
    for (uint32_t x = ball->sphere_begin(lo); x < ball->sphere_end(hi); ++x) {
      const Element xinv = g.inverse(ball->element(x));
      std::vector<int64_t> values(ball->ball_size(r));
      for (uint32_t y = 0; y < values.size(); ++y)
        values[y] = ball->dist(ball->index_of(g.mul(xinv, ball->element(y)))) - ball->dist(x);
      shell_sets[j].insert(std::move(values));
    }
  }
  for (int j = shells - 1; j >= 0; --j) out.annulus_counts.push_back(shell_sets[j].size());
  out.stabilized = true;
  for (int j = 1; j < shells; ++j)
    if (shell_sets[j] != shell_sets[0]) out.stabilized = false;

  for (const auto& values : shell_sets[0])
    out.functions.push_back(
        {RestrictedFunction(ball, r, values), Provenance::Annulus, false});
  return out;
}

BoundaryApprox enumerate_busemann_points(BallPtr ball, int r, int depth,
                                         int stability_window) {
  if (stability_window < 1) stability_window = default_stability_window(r);
  if (depth > ball->radius() - r)
    throw HorizonTooSmall("walk depth must leave room for B_r lookups");
  if (depth < r + 1) throw HorizonTooSmall("walk depth below r + 1 certifies nothing");

  const Group& g = ball->group();
  const int merge_depth = r + stability_window;

  // Branches through the same endpoint have identical restriction futures,
  // so one path per endpoint suffices. When several branches discover an
  // endpoint, one whose current restriction already equals the child's is
  // preferred: a class that persists then gets a representative ray with a
  // class-stable tail, which is what the certificate needs. Past merge_depth
  // endpoints with identical restrictions are merged outright.
  struct Branch {
    uint32_t endpoint;
    GenWord path;
    std::vector<int64_t> restriction;
  };
  std::vector<Branch> active{
      {0, {}, busemann_restriction(ball, g.identity(), r).values()}};

  for (int t = 0; t < depth; ++t) {
    struct Candidate {
      size_t parent;  // index into active
      int32_t gen;
    };
    std::map<uint32_t, std::vector<Candidate>> found;
    for (size_t b = 0; b < active.size(); ++b) {
      const Element& x = ball->element(active[b].endpoint);
      for (size_t s = 0; s < ball->gens().members.size(); ++s) {
        auto idx = ball->find(g.mul(x, ball->gens().members[s]));
        if (!idx || ball->dist(*idx) != t + 1 || ball->extendability(*idx) < depth)
          continue;
        found[*idx].push_back({b, static_cast<int32_t>(s)});
      }
    }

    std::vector<Branch> next;
    for (auto& [endpoint, candidates] : found) {
      Branch child;
      child.endpoint = endpoint;
      child.restriction = busemann_restriction(ball, ball->element(endpoint), r).values();
      const Candidate* chosen = &candidates.front();
      for (const auto& c : candidates)
        if (active[c.parent].restriction == child.restriction) {
          chosen = &c;
          break;
        }
      child.path = active[chosen->parent].path;
      child.path.push_back(chosen->gen);
      next.push_back(std::move(child));
    }

    if (t + 1 >= merge_depth) {
      std::map<std::vector<int64_t>, Branch> classes;
      for (auto& br : next) {
        auto key = br.restriction;
        classes.try_emplace(std::move(key), std::move(br));
      }
      next.clear();
      for (auto& [values, br] : classes) next.push_back(std::move(br));
      std::sort(next.begin(), next.end(),
                [](const Branch& a, const Branch& b) { return a.endpoint < b.endpoint; });
    }
    active = std::move(next);
    if (active.empty())
      throw HorizonTooSmall("no geodesic extends to depth " + std::to_string(depth));
  }

  std::map<std::vector<int64_t>, BoundaryFunction> limits;
  for (const auto& br : active) {
    RayLimit lim = ray_limit(ball, ray_from_word(*ball, br.path), r, stability_window);
    auto key = lim.fn.values();
    auto [it, inserted] = limits.try_emplace(
        std::move(key), BoundaryFunction{std::move(lim.fn), Provenance::RayLimit,
                                         lim.certified});
    if (!inserted && lim.certified) it->second.certified = true;
  }

  BoundaryApprox out;
  out.ball = ball;
  out.radius = r;
  out.horizon = ball->radius();
  out.window = stability_window;
  for (auto& [values, f] : limits) out.functions.push_back(std::move(f));
  out.stabilized = out.certified_count() == out.functions.size();
  return out;
}

bool rays_equivalent(const BallPtr& ball, const Ray& a, const Ray& b, int r,
                     int stability_window) {
  RayLimit la = ray_limit(ball, a, r, stability_window);
  RayLimit lb = ray_limit(ball, b, r, stability_window);
  if (!la.certified || !lb.certified)
    throw UncertifiedLimit("both rays must certify at radius " + std::to_string(r));
  return la.fn.values() == lb.fn.values();
}

ClassifyReport classify_boundary(const BoundaryApprox& annulus,
                                 const BoundaryApprox& busemann) {
  if (annulus.radius != busemann.radius)
    throw RadiusMismatch("annulus and Busemann approximations differ in radius");
  if (annulus.ball != busemann.ball)
    throw RadiusMismatch("approximations come from different balls");
  ClassifyReport rep;
  rep.annulus_total = annulus.functions.size();
  for (size_t i = 0; i < annulus.functions.size(); ++i) {
    const auto* hit = busemann.find_values(annulus.functions[i].fn.values());
    if (hit && hit->certified)
      ++rep.matched;
    else
      rep.unmatched.push_back(i);
  }
  return rep;
}

}  // namespace horoball
