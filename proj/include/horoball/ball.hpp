#pragma once

// Word-metric balls around the identity, built by breadth-first search.
//
// Enumeration order is part of the contract: spheres are contiguous and
// each sphere is sorted by canonical key, so element indices, parents and
// every downstream hash are reproducible across runs.

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "horoball/group.hpp"

namespace horoball {

class Ball;
using BallPtr = std::shared_ptr<const Ball>;

class Ball {
 public:
  // Exactly {x : |x|_S <= r_max}. Throws MemoryBudgetExceeded past the cap.
  static BallPtr grow(GroupPtr group, GeneratingSet gens, int r_max,
                      size_t element_cap = 20'000'000);

  const Group& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const GeneratingSet& gens() const { return gens_; }
  int radius() const { return r_max_; }
  size_t size() const { return elems_.size(); }

  const Element& element(uint32_t i) const { return *elems_[i]; }
  int dist(uint32_t i) const { return dist_[i]; }
  int32_t parent(uint32_t i) const { return parent_[i]; }
  int32_t parent_gen(uint32_t i) const { return parent_gen_[i]; }

  std::optional<uint32_t> find(const Element& x) const;
  uint32_t index_of(const Element& x) const;  // throws OutOfBall

  // |x|_S; throws OutOfBall when x is not in the ball.
  int norm_of(const Element& x) const { return dist_[index_of(x)]; }
  // d(x,y) = |x^-1 y|, exact only while the product stays in the ball.
  int distance(const Element& x, const Element& y) const;

  // Number of elements with |x| <= r (a prefix of the index range).
  uint32_t ball_size(int r) const;
  uint32_t sphere_begin(int k) const { return sphere_off_[k]; }
  uint32_t sphere_end(int k) const { return sphere_off_[k + 1]; }
  std::vector<size_t> sphere_sizes() const;

  // Largest depth d <= r_max such that some geodesic from the identity
  // through element i reaches sphere d.
  int extendability(uint32_t i) const { return ext_[i]; }

 private:
  Ball() = default;

  GroupPtr group_;
  GeneratingSet gens_;
  int r_max_ = 0;
  std::vector<const Element*> elems_;  // keys owned by index_
  std::unordered_map<Element, uint32_t, ElementHash> index_;
  std::vector<int32_t> dist_;
  std::vector<int32_t> parent_;
  std::vector<int32_t> parent_gen_;
  std::vector<uint32_t> sphere_off_;
  std::vector<int32_t> ext_;
};

// Word as a sequence of generator indices into ball.gens().members.
using GenWord = std::vector<int32_t>;

std::string word_labels(const Ball& ball, const GenWord& word);

// A geodesic spelling of x: |word| = |x| and every prefix endpoint of the
// word lies at distance equal to its length.
GenWord geodesic_to(const Ball& ball, const Element& x);

// Checks d(prefix_m, prefix_k) = k - m for all prefix pairs of the word.
bool verify_geodesic(const Ball& ball, const GenWord& word);

// Prefix tree of all finite geodesics from the identity up to `depth`.
struct GeodesicTree {
  struct Node {
    uint32_t ball_index;
    int32_t parent;   // node id, -1 at the root
    int32_t gen;      // generator applied to the parent, -1 at the root
    int32_t depth;
    int32_t horizon;  // max depth among descendants (including itself)
  };
  std::vector<Node> nodes;  // level order; node 0 is the identity
  int depth = 0;

  std::vector<uint32_t> nodes_at_depth(int d) const;
  GenWord branch_word(uint32_t node) const;
  bool ray_viable(uint32_t node, int h) const { return nodes[node].horizon >= h; }
};

GeodesicTree geodesic_tree(const Ball& ball, int depth);

}  // namespace horoball
