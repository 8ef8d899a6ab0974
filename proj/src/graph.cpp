#include "horoball/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace horoball {

void Graph::add_edge(uint32_t u, uint32_t v) {
  if (u == v) throw InvalidSpec("self-loop at vertex " + std::to_string(u));
  const uint32_t m = std::max(u, v);
  if (m >= vertex_count) {
    vertex_count = m + 1;
    adj.resize(vertex_count);
  }
  if (std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) return;
  adj[u].push_back(v);
  adj[v].push_back(u);
}

void Graph::validate() const {
  if (vertex_count == 0) throw InvalidSpec("empty graph");
  if (base >= vertex_count) throw InvalidSpec("base point out of range");
  const auto dist = bfs_distances(*this, base);
  for (size_t v = 0; v < vertex_count; ++v)
    if (dist[v] < 0)
      throw InvalidSpec("vertex " + std::to_string(v) + " unreachable from the base");
}

Graph read_edge_list(std::istream& in) {
  Graph g;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "#base") {
      uint32_t b;
      if (!(ls >> b)) throw InvalidSpec("#base needs a vertex id");
      g.base = b;
      continue;
    }
    if (tok[0] == '#') continue;
    uint32_t u = 0, v = 0;
    try {
      u = static_cast<uint32_t>(std::stoul(tok));
    } catch (const std::exception&) {
      throw InvalidSpec("bad vertex id '" + tok + "'");
    }
    if (!(ls >> v)) throw InvalidSpec("edge line needs two vertex ids");
    g.add_edge(u, v);
  }
  g.validate();
  return g;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

Graph build_grove(const GroveSpec& spec) {
  if (spec.blocks < 2) throw InvalidSpec("a grove needs at least 2 spine vertices");
  if (spec.sizes.empty()) throw InvalidSpec("no block sizes given");
  auto size_of = [&](int n) {
    return spec.sizes.size() == 1 ? spec.sizes[0] : spec.sizes.at(n);
  };
  if (spec.sizes.size() != 1 && spec.sizes.size() != static_cast<size_t>(spec.blocks))
    throw InvalidSpec("need one size or one per block");

  Graph g;
  // spine
  for (int n = 0; n + 1 < spec.blocks; ++n) g.add_edge(n, n + 1);
  // blocks, attached at their first vertex
  uint32_t next = spec.blocks;
  for (int n = 0; n < spec.blocks; ++n) {
    const int m = size_of(n);
    if (m < 1) throw InvalidSpec("block size must be >= 1");
    if (spec.family == BlockFamily::Cycle && m < 3)
      throw InvalidSpec("cycle blocks need >= 3 vertices");
    const uint32_t first = next;
    next += m;
    g.add_edge(n, first);  // attachment edge {n, x_n}
    switch (spec.family) {
      case BlockFamily::Complete:
        for (uint32_t i = 0; i < static_cast<uint32_t>(m); ++i)
          for (uint32_t j = i + 1; j < static_cast<uint32_t>(m); ++j)
            g.add_edge(first + i, first + j);
        break;
      case BlockFamily::Path:
        for (uint32_t i = 0; i + 1 < static_cast<uint32_t>(m); ++i)
          g.add_edge(first + i, first + i + 1);
        break;
      case BlockFamily::Cycle:
        for (uint32_t i = 0; i + 1 < static_cast<uint32_t>(m); ++i)
          g.add_edge(first + i, first + i + 1);
        g.add_edge(first + m - 1, first);
        break;
    }
  }
  g.base = 0;
  g.validate();
  return g;
}

std::vector<int> bfs_distances(const Graph& graph, uint32_t source) {
  std::vector<int> dist(graph.vertex_count, -1);
  std::deque<uint32_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const uint32_t u = queue.front();
    queue.pop_front();
    for (uint32_t v : graph.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

GraphBall graph_ball(const Graph& graph, int max_radius) {
  GraphBall ball;
  ball.dist = bfs_distances(graph, graph.base);
  int ecc = 0;
  for (int d : ball.dist) ecc = std::max(ecc, d);
  const int top = max_radius < 0 ? ecc : std::min(ecc, max_radius);

  ball.sphere_off.push_back(0);
  for (int k = 0; k <= top; ++k) {
    for (uint32_t v = 0; v < graph.vertex_count; ++v)
      if (ball.dist[v] == k) ball.order.push_back(v);
    ball.sphere_off.push_back(static_cast<uint32_t>(ball.order.size()));
  }
  return ball;
}

std::vector<size_t> GraphBall::sphere_sizes() const {
  std::vector<size_t> out;
  for (size_t k = 0; k + 1 < sphere_off.size(); ++k)
    out.push_back(sphere_off[k + 1] - sphere_off[k]);
  return out;
}

GraphBoundary graph_boundary(const Graph& graph, int r, int horizon, int w,
                             int diagnostic_shells) {
  if (horizon < r + w + 1)
    throw HorizonTooSmall("graph boundary needs horizon >= r + w + 1");
  const GraphBall ball = graph_ball(graph);
  if (ball.sphere_off.size() <= static_cast<size_t>(horizon))
    throw HorizonTooSmall("graph has no vertex at distance " + std::to_string(horizon));

  GraphBoundary out;
  out.radius = r;
  out.horizon = horizon;
  out.window = w;
  const uint32_t nr = ball.ball_size(r);
  const int shells = std::max(1, std::min(diagnostic_shells, horizon - r - w));

  std::vector<std::set<std::vector<int64_t>>> shell_sets(shells);
  for (int j = shells - 1; j >= 0; --j) {
    const int hi = horizon - r - j;
    const int lo = hi - w;
    for (uint32_t v = 0; v < graph.vertex_count; ++v) {
      if (ball.dist[v] < lo || ball.dist[v] > hi) continue;
      const auto from_v = bfs_distances(graph, v);
      std::vector<int64_t> values(nr);
      for (uint32_t y = 0; y < nr; ++y)
        values[y] = from_v[ball.order[y]] - ball.dist[v];
      shell_sets[j].insert(std::move(values));
    }
  }
  for (int j = shells - 1; j >= 0; --j) out.annulus_counts.push_back(shell_sets[j].size());
  out.stabilized = true;
  for (int j = 1; j < shells; ++j)
    if (shell_sets[j] != shell_sets[0]) out.stabilized = false;
  out.functions.assign(shell_sets[0].begin(), shell_sets[0].end());
  return out;
}

GraphRayLimit graph_ray_limit(const Graph& graph, const std::vector<uint32_t>& ray,
                              int r, int stability_window) {
  if (stability_window < 1) stability_window = 2 * r + 2;
  if (ray.empty() || ray.front() != graph.base)
    throw NotAGeodesic("ray must start at the base point");
  if (static_cast<int>(ray.size()) < r + 2)
    throw RayTooShort("ray shorter than r + 1 steps");
  const GraphBall ball = graph_ball(graph);
  const uint32_t nr = ball.ball_size(r);

  GraphRayLimit out;
  out.values.assign(nr, 0);
  std::vector<int32_t> constant_run(nr, 0);
  std::vector<uint8_t> floor_hit(nr, 0);

  for (size_t t = 0; t < ray.size(); ++t) {
    if (ball.dist[ray[t]] != static_cast<int>(t))
      throw NotAGeodesic("vertex " + std::to_string(ray[t]) + " is not at distance " +
                         std::to_string(t));
    const auto from_g = bfs_distances(graph, ray[t]);
    for (uint32_t y = 0; y < nr; ++y) {
      const int64_t now = from_g[ball.order[y]] - static_cast<int64_t>(t);
      if (t > 0) {
        if (now > out.values[y]) throw NotAGeodesic("limit sequence increased");
        constant_run[y] = now == out.values[y] ? constant_run[y] + 1 : 0;
      }
      out.values[y] = now;
      floor_hit[y] = now == -ball.dist[ball.order[y]] ? 1 : 0;
    }
  }
  out.certified = true;
  for (uint32_t y = 0; y < nr; ++y)
    if (!floor_hit[y] && constant_run[y] < stability_window) out.certified = false;
  return out;
}

SphereBoundReport sphere_bound_check(const std::vector<size_t>& sphere_sizes,
                                     size_t certified, int window) {
  if (sphere_sizes.empty()) throw InvalidSpec("no sphere data");
  const size_t take = std::min<size_t>(window, sphere_sizes.size());
  SphereBoundReport rep;
  rep.certified = certified;
  rep.min_sphere = SIZE_MAX;
  for (size_t i = sphere_sizes.size() - take; i < sphere_sizes.size(); ++i) {
    rep.min_sphere = std::min(rep.min_sphere, sphere_sizes[i]);
    rep.max_sphere = std::max(rep.max_sphere, sphere_sizes[i]);
  }
  rep.ok = certified <= rep.min_sphere;
  rep.linear_growth = rep.max_sphere == rep.min_sphere;
  if (rep.linear_growth) rep.growth_constant = static_cast<double>(rep.min_sphere);
  return rep;
}

}  // namespace horoball
