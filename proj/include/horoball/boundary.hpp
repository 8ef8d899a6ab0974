#pragma once

// Finite-radius approximations of the horofunction boundary.
//
// A horofunction is approximated by its restriction to the ball B_r: an
// integer vector indexed in ball order, zero at the identity, 1-Lipschitz
// along generator edges and bounded below by -|y|.
//
// Two surrogates are computed:
//   * annulus: distinct restrictions b_x|B_r over a norm annulus near the
//     horizon, with a stabilization diagnostic across the last few shells;
//   * ray limits: pointwise limits along geodesic rays. For a ray from the
//     identity each b_{gamma_t}(y) is non-increasing and >= -|y|, so it
//     stabilizes; a value is certified once it hits the floor -|y| or has
//     been constant for stability_window consecutive steps. A limit is
//     CERTIFIED when every point of B_r is, else HEURISTIC.

#include <cstdint>
#include <string>
#include <vector>

#include "horoball/ball.hpp"

namespace horoball {

inline int default_stability_window(int r) { return 2 * r + 2; }

class RestrictedFunction {
 public:
  RestrictedFunction(BallPtr ball, int radius, std::vector<int64_t> values);

  const Ball& ball() const { return *ball_; }
  BallPtr ball_ptr() const { return ball_; }
  int radius() const { return radius_; }
  const std::vector<int64_t>& values() const { return values_; }
  int64_t at(uint32_t index) const { return values_[index]; }
  int64_t at(const Element& y) const;

  RestrictedFunction truncated(int r) const;
  RestrictedFunction negated() const;

  // h(1)=0, edge-Lipschitz inside B_r, h >= -|.|; throws on violation.
  void check_invariants() const;

  friend bool operator==(const RestrictedFunction& a, const RestrictedFunction& b) {
    return a.radius_ == b.radius_ && a.values_ == b.values_;
  }

 private:
  BallPtr ball_;
  int radius_;
  std::vector<int64_t> values_;
};

bool value_less(const RestrictedFunction& a, const RestrictedFunction& b);

// b_x(y) = d(x,y) - d(x,1) on B_r; exact when |x| + r <= horizon.
RestrictedFunction busemann_restriction(const BallPtr& ball, const Element& x, int r);

// gamma_0 = start, then unit steps; after `steps` the `period` block repeats
// forever (empty period = finite ray).
struct Ray {
  Element start;
  std::vector<Element> steps;
  std::vector<Element> period;

  bool infinite() const { return !period.empty(); }
  size_t finite_length() const { return steps.size(); }
  const Element& step(size_t t) const {
    return t < steps.size() ? steps[t] : period[(t - steps.size()) % period.size()];
  }
};

Ray ray_from_word(const Ball& ball, const GenWord& word);
Ray periodic_ray(const Ball& ball, const Element& start, const GenWord& period_word);

struct RayLimit {
  RestrictedFunction fn;
  bool certified;
  int evaluated_to;  // last t with b_{gamma_t}|B_r fully evaluated
};

// Follows b_{gamma_t}|B_r as far as the horizon allows and returns the last
// restriction with its certificate. Monotonicity is asserted for rays from
// the identity; a violation means the input fails the geodesic equation.
RayLimit ray_limit(const BallPtr& ball, const Ray& ray, int r, int stability_window);

enum class Provenance { Annulus, RayLimit };

struct BoundaryFunction {
  RestrictedFunction fn;
  Provenance provenance;
  bool certified;
};

struct BoundaryApprox {
  BallPtr ball;
  int radius = 0;
  int horizon = 0;
  int window = 0;
  std::vector<BoundaryFunction> functions;  // sorted by value vector
  std::vector<size_t> annulus_counts;       // innermost diagnostic shell first
  bool stabilized = false;

  size_t certified_count() const;
  uint64_t set_hash() const;
  const BoundaryFunction* find_values(const std::vector<int64_t>& values) const;
};

// Distinct restrictions b_x|B_r over |x| in [horizon-r-w, horizon-r], with
// per-shell counts for the last `diagnostic_shells` shifted annuli.
BoundaryApprox annulus_boundary_approx(BallPtr ball, int r, int w,
                                       int diagnostic_shells = 3);

// Walks geodesics from the identity out to `depth`, pruning branches whose
// current restrictions coincide once past depth r + stability_window, and
// returns the distinct ray limits with certificates. Only branches that
// extend to `depth` inside the ball are followed.
BoundaryApprox enumerate_busemann_points(BallPtr ball, int r, int depth,
                                         int stability_window = -1);

bool rays_equivalent(const BallPtr& ball, const Ray& a, const Ray& b, int r,
                     int stability_window);

struct ClassifyReport {
  size_t annulus_total = 0;
  size_t matched = 0;
  std::vector<size_t> unmatched;  // indices into the annulus function list
  bool all_matched() const { return unmatched.empty(); }
};

// Splits annulus functions into those matched by a certified ray limit and
// the rest; an empty remainder is the finite-scale signature that every
// horofunction is a Busemann point.
ClassifyReport classify_boundary(const BoundaryApprox& annulus,
                                 const BoundaryApprox& busemann);

}  // namespace horoball
