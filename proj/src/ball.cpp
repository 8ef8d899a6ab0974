#include "horoball/ball.hpp"

#include <algorithm>

namespace horoball {

BallPtr Ball::grow(GroupPtr group, GeneratingSet gens, int r_max, size_t element_cap) {
  if (r_max < 1) throw InvalidSpec("ball radius must be >= 1");
  if (gens.members.empty()) throw InvalidSpec("empty generating set");

  auto ball = std::shared_ptr<Ball>(new Ball());
  ball->group_ = std::move(group);
  ball->gens_ = std::move(gens);
  ball->r_max_ = r_max;

  const Group& g = *ball->group_;
  ball->index_.emplace(g.identity(), 0);
  ball->elems_.push_back(&ball->index_.begin()->first);
  ball->dist_.push_back(0);
  ball->parent_.push_back(-1);
  ball->parent_gen_.push_back(-1);
  ball->sphere_off_ = {0, 1};

  for (int k = 0; k < r_max; ++k) {
    const uint32_t begin = ball->sphere_off_[k];
    const uint32_t end = ball->sphere_off_[k + 1];
    if (begin == end) break;  // finite group exhausted

    // Discover sphere k+1 from sphere k; first discovery fixes the parent.
    std::vector<const Element*> fresh;
    for (uint32_t i = begin; i < end; ++i) {
      for (size_t s = 0; s < ball->gens_.members.size(); ++s) {
        Element next = g.mul(*ball->elems_[i], ball->gens_.members[s]);
        if (ball->index_.contains(next)) continue;
        if (ball->elems_.size() + fresh.size() >= element_cap)
          throw MemoryBudgetExceeded("ball exceeds " + std::to_string(element_cap) +
                                     " elements at radius " + std::to_string(k + 1));
        auto [it, inserted] = ball->index_.emplace(std::move(next), 0);
        if (inserted) {
          fresh.push_back(&it->first);
          ball->parent_.push_back(static_cast<int32_t>(i));
          ball->parent_gen_.push_back(static_cast<int32_t>(s));
        }
      }
    }
    // Canonical order within the sphere; permute the parent records along.
    std::vector<size_t> order(fresh.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return canonical_less(*fresh[a], *fresh[b]);
    });
    const size_t base = ball->elems_.size();
    std::vector<int32_t> par(fresh.size()), pgen(fresh.size());
    for (size_t i = 0; i < order.size(); ++i) {
      par[i] = ball->parent_[base + order[i]];
      pgen[i] = ball->parent_gen_[base + order[i]];
    }
    for (size_t i = 0; i < order.size(); ++i) {
      ball->parent_[base + i] = par[i];
      ball->parent_gen_[base + i] = pgen[i];
      ball->elems_.push_back(fresh[order[i]]);
      ball->index_[*fresh[order[i]]] = static_cast<uint32_t>(base + i);
      ball->dist_.push_back(k + 1);
    }
    ball->sphere_off_.push_back(static_cast<uint32_t>(ball->elems_.size()));
  }
  while (ball->sphere_off_.size() < static_cast<size_t>(r_max) + 2)
    ball->sphere_off_.push_back(static_cast<uint32_t>(ball->elems_.size()));

  // Geodesic extendability, innermost spheres last.
  ball->ext_.assign(ball->elems_.size(), 0);
  for (uint32_t i = 0; i < ball->elems_.size(); ++i) ball->ext_[i] = ball->dist_[i];
  for (int k = r_max - 1; k >= 0; --k) {
    for (uint32_t i = ball->sphere_off_[k]; i < ball->sphere_off_[k + 1]; ++i) {
      for (const auto& s : ball->gens_.members) {
        auto it = ball->index_.find(g.mul(*ball->elems_[i], s));
        if (it == ball->index_.end()) continue;
        const uint32_t j = it->second;
        if (ball->dist_[j] == k + 1 && ball->ext_[j] > ball->ext_[i])
          ball->ext_[i] = ball->ext_[j];
      }
    }
  }
  return ball;
}

std::optional<uint32_t> Ball::find(const Element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint32_t Ball::index_of(const Element& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw OutOfBall("element not within radius " + std::to_string(r_max_));
  return it->second;
}

int Ball::distance(const Element& x, const Element& y) const {
  return norm_of(group_->mul(group_->inverse(x), y));
}

uint32_t Ball::ball_size(int r) const {
  if (r < 0) return 0;
  if (r >= r_max_) return static_cast<uint32_t>(elems_.size());
  return sphere_off_[r + 1];
}

std::vector<size_t> Ball::sphere_sizes() const {
  std::vector<size_t> sizes;
  for (int k = 0; k <= r_max_; ++k) sizes.push_back(sphere_end(k) - sphere_begin(k));
  return sizes;
}

std::string word_labels(const Ball& ball, const GenWord& word) {
  std::string out;
  for (int32_t s : word) out += ball.gens().labels[s];
  return out;
}

GenWord geodesic_to(const Ball& ball, const Element& x) {
  uint32_t i = ball.index_of(x);
  GenWord word;
  while (ball.parent(i) >= 0) {
    word.push_back(ball.parent_gen(i));
    i = static_cast<uint32_t>(ball.parent(i));
  }
  std::reverse(word.begin(), word.end());
  return word;
}

bool verify_geodesic(const Ball& ball, const GenWord& word) {
  const Group& g = ball.group();
  std::vector<Element> prefix{g.identity()};
  for (int32_t s : word) {
    if (s < 0 || static_cast<size_t>(s) >= ball.gens().members.size())
      throw InvalidSpec("word refers to a generator outside the set");
    prefix.push_back(g.mul(prefix.back(), ball.gens().members[s]));
  }
  for (size_t m = 0; m < prefix.size(); ++m)
    for (size_t k = m; k < prefix.size(); ++k) {
      // left-invariance: d(prefix_m, prefix_k) = |prefix_m^-1 prefix_k|
      Element diff = g.mul(g.inverse(prefix[m]), prefix[k]);
      auto idx = ball.find(diff);
      if (!idx) throw OutOfBall("geodesic check needs d(" + std::to_string(m) + "," +
                                std::to_string(k) + ") beyond the horizon");
      if (ball.dist(*idx) != static_cast<int>(k - m)) return false;
    }
  return true;
}

std::vector<uint32_t> GeodesicTree::nodes_at_depth(int d) const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].depth == d) out.push_back(i);
  return out;
}

GenWord GeodesicTree::branch_word(uint32_t node) const {
  GenWord word;
  for (int32_t n = static_cast<int32_t>(node); nodes[n].parent >= 0; n = nodes[n].parent)
    word.push_back(nodes[n].gen);
  std::reverse(word.begin(), word.end());
  return word;
}

GeodesicTree geodesic_tree(const Ball& ball, int depth) {
  if (depth > ball.radius()) throw HorizonTooSmall("tree depth exceeds ball radius");
  GeodesicTree tree;
  tree.depth = depth;
  tree.nodes.push_back({0, -1, -1, 0, 0});

  const Group& g = ball.group();
  uint32_t level_begin = 0, level_end = 1;
  for (int t = 0; t < depth; ++t) {
    for (uint32_t n = level_begin; n < level_end; ++n) {
      const Element& x = ball.element(tree.nodes[n].ball_index);
      for (size_t s = 0; s < ball.gens().members.size(); ++s) {
        auto idx = ball.find(g.mul(x, ball.gens().members[s]));
        if (!idx || ball.dist(*idx) != t + 1) continue;
        tree.nodes.push_back({*idx, static_cast<int32_t>(n), static_cast<int32_t>(s),
                              t + 1, t + 1});
      }
    }
    level_begin = level_end;
    level_end = static_cast<uint32_t>(tree.nodes.size());
  }
  for (uint32_t n = static_cast<uint32_t>(tree.nodes.size()); n-- > 1;) {
    auto& node = tree.nodes[n];
    auto& up = tree.nodes[node.parent];
    if (node.horizon > up.horizon) up.horizon = node.horizon;
  }
  return tree;
}

}  // namespace horoball
