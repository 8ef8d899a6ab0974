#pragma once

// The canonical action x.h(y) = h(x^-1 y) - h(x^-1) on restricted functions,
// orbit structure, norm-bounded stabilizer/kernel samples, and virtual
// character extraction.
//
// Acting by x consumes a collar of width |x|: the source must be defined on
// B_{r+|x|} to produce a function on B_r. All radius bookkeeping is explicit;
// nothing is silently truncated.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horoball/boundary.hpp"

namespace horoball {

// (x.h)(y) = h(x^-1 y) - h(x^-1) on B_r; needs h on B_{r + |x|}.
RestrictedFunction act_on_function(const Element& x, const RestrictedFunction& h, int r);

struct OrbitReport {
  int radius = 0;     // radius at which functions are matched
  int max_norm = 0;   // norm bound of the stabilizer samples
  bool closed = false;          // all generator images match some function
  bool permutation = false;     // generator actions are bijections on the set
  int max_closed_radius = -1;   // largest rho <= radius with closure
  // gen_action[s][i] = index of the function matching s.f_i, or -1
  std::vector<std::vector<int32_t>> gen_action;
  std::vector<std::vector<size_t>> orbits;          // partition of function indices
  std::vector<std::vector<uint32_t>> stabilizer;    // per orbit: ball indices fixing the rep
};

// Orbit partition of boundary.functions under the generator action, matched
// at `radius` (functions must be defined at radius + 1 at least; stabilizer
// samples need radius + max_norm).
OrbitReport compute_orbits(const BoundaryApprox& boundary, const GeneratingSet& gens,
                           int radius, int max_norm);

// All |x| <= max_norm fixing every boundary function at `radius`.
std::vector<uint32_t> action_kernel_sample(const BoundaryApprox& boundary, int radius,
                                           int max_norm);

// Kernel sample members additionally satisfying h(x) = 0 for all h.
std::vector<uint32_t> f_subgroup_sample(const BoundaryApprox& boundary, int radius,
                                        int max_norm);

struct CharacterReport {
  size_t function_index = 0;
  std::vector<uint32_t> stabilizer;   // ball indices, |x| <= max_norm
  size_t pairs_checked = 0;           // products staying inside the domain
  size_t pairs_failed = 0;            // h(xy) != h(x) + h(y)
  bool homomorphism = false;
  std::optional<uint32_t> witness;    // y != 1 with h(y) = -|y|, smallest norm
  std::vector<std::vector<int64_t>> psi;  // per stabilizer element, all h_i(x)
};

// Verifies additivity of h on its stabilizer sample and hunts for a witness
// h(y) = -|y|. The function is addressed by its index in boundary.functions.
CharacterReport extract_character(const BoundaryApprox& boundary, const OrbitReport& orbits,
                                  size_t function_index);

// Psi(x) = (h_1(x), ..., h_d(x)) in the deterministic function order.
std::vector<int64_t> psi_map(const BoundaryApprox& boundary, const Element& x);

struct PowerCheck {
  bool ok = false;
  int powers_checked = 0;  // |x^t| = t|x| verified for t = 1..powers_checked
  Ray ray;                 // periodic geodesic with gamma_{t|x|} = x^t
};

// Requires h(x) = |x| and h 1-Lipschitz (pass the negated character when the
// witness satisfies h(y) = -|y|). Verifies |x^t| = t|x| as far as the ball
// reaches and returns the periodic ray, checked against the geodesic
// equation.
PowerCheck power_geodesic_check(const BallPtr& ball, const Element& x,
                                const RestrictedFunction& h);

struct InjectivityProbe {
  struct Entry {
    std::string word;        // the sampled g, spelled in the base generators
    bool equal_to_base;      // limit of (g x^t) equals limit of (x^t)
    bool certified;
  };
  std::vector<Entry> entries;
  size_t distinct_limits = 0;
  size_t busemann_estimate = 0;  // certified points of the extended graph
  bool bound_holds = false;      // sample size <= estimate
};

// For each g in the kernel sample, compares the limits of (g x^t) and (x^t)
// in the Cayley graph over gens_extended; distinct limits for distinct g is
// the injectivity the kernel bound rests on.
InjectivityProbe kernel_injectivity_probe(const BallPtr& base_ball,
                                          const std::vector<uint32_t>& kernel_sample,
                                          const Element& x,
                                          const GeneratingSet& gens_extended, int r,
                                          int horizon, int stability_window = -1);

}  // namespace horoball
