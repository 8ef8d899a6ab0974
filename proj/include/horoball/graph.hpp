#pragma once

// Plain-graph support: groves (a half-line spine with a finite graph hung
// off every integer), base-pointed boundary approximation by per-source BFS,
// and the sphere lower bound on the number of certified limit functions.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "horoball/errors.hpp"

namespace horoball {

struct Graph {
  size_t vertex_count = 0;
  std::vector<std::vector<uint32_t>> adj;
  uint32_t base = 0;

  void add_edge(uint32_t u, uint32_t v);
  void validate() const;  // connected from base, no self-loops
};

// One `u v` pair per line; '#base <v>' picks the base point (default 0).
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

enum class BlockFamily { Complete, Path, Cycle };

struct GroveSpec {
  BlockFamily family = BlockFamily::Complete;
  std::vector<int> sizes;  // one entry per block, or a single broadcast entry
  int blocks = 2;          // truncation of the half-line spine
};

// Spine 0..N-1 with block n attached at spine vertex n; base point 0.
Graph build_grove(const GroveSpec& spec);

std::vector<int> bfs_distances(const Graph& graph, uint32_t source);

// BFS ball around the base: vertices grouped by distance, each sphere in
// vertex-id order, mirroring the group-side enumeration contract.
struct GraphBall {
  std::vector<uint32_t> order;        // vertex ids, sphere by sphere
  std::vector<uint32_t> sphere_off;   // sphere k = order[off[k]..off[k+1])
  std::vector<int> dist;              // per vertex id, -1 if unreachable

  uint32_t ball_size(int r) const {
    return r + 1 < static_cast<int>(sphere_off.size())
               ? sphere_off[r + 1]
               : static_cast<uint32_t>(order.size());
  }
  std::vector<size_t> sphere_sizes() const;
};

GraphBall graph_ball(const Graph& graph, int max_radius = -1);

struct GraphBoundary {
  int radius = 0;
  int horizon = 0;
  int window = 0;
  std::vector<std::vector<int64_t>> functions;  // sorted value vectors over B_r(base)
  std::vector<size_t> annulus_counts;
  bool stabilized = false;
};

// Distinct h_x(y) = d(x,y) - d(x,base) over x with d(x,base) in
// [horizon-r-w, horizon-r]; per-source BFS, no invariance shortcuts.
GraphBoundary graph_boundary(const Graph& graph, int r, int horizon, int w,
                             int diagnostic_shells = 3);

struct GraphRayLimit {
  std::vector<int64_t> values;
  bool certified = false;
};

// Pointwise limit of d(gamma_t, y) - d(gamma_t, base) along a vertex ray
// starting at the base; same certificate rule as the group-side ray limits.
GraphRayLimit graph_ray_limit(const Graph& graph, const std::vector<uint32_t>& ray,
                              int r, int stability_window = -1);

struct SphereBoundReport {
  size_t certified = 0;
  size_t min_sphere = 0;
  size_t max_sphere = 0;
  bool ok = false;                 // certified <= min_sphere
  double growth_constant = 0.0;    // only meaningful when spheres are flat
  bool linear_growth = false;
};

// certified limit-function count vs. min |S_rho| over the top `window`
// spheres; the liminf bound at finite scale.
SphereBoundReport sphere_bound_check(const std::vector<size_t>& sphere_sizes,
                                     size_t certified, int window);

}  // namespace horoball
