#pragma once

// Exact models of finitely generated groups with decidable equality.
//
// Every element is kept in a canonical form encoded as a flat integer
// vector, so equality is vector equality and hashing is exact:
//
//   FreeAbelian(n)    [x1..xn]            componentwise addition
//   InfiniteDihedral  [sign, offset]      the affine map x -> sign*x + offset
//   Heisenberg3       [a, b, c]           upper unitriangular 3x3 matrix
//   Free(k)           [l1..lm]            reduced word, letter i>0 / -i inverse
//   IntegerMatrix     row-major entries   exact products of unimodular mats
//   DirectWithFinite  base ++ [residue]   base element and a Z/m coordinate
//
// Words over labeled generators use 'a','b',... with 'A','B',... as the
// inverses, e.g. "abA" = a*b*a^-1.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "horoball/errors.hpp"

namespace horoball {

struct Element {
  std::vector<int64_t> v;

  friend bool operator==(const Element&, const Element&) = default;
};

// Shortlex on the canonical vector; the tie-breaking order used everywhere
// a deterministic element order is needed.
bool canonical_less(const Element& a, const Element& b);

struct ElementHash {
  size_t operator()(const Element& e) const noexcept;
};

enum class Family {
  FreeAbelian,
  InfiniteDihedral,
  Heisenberg3,
  Free,
  IntegerMatrix,
  DirectWithFinite,
};

struct GroupSpec {
  Family family = Family::FreeAbelian;
  int rank = 1;                                   // FreeAbelian n / Free k
  std::vector<std::vector<int64_t>> matrices;     // IntegerMatrix generators (square, det +-1)
  std::shared_ptr<GroupSpec> base;                // DirectWithFinite base
  int finite_order = 0;                           // DirectWithFinite m >= 2
  std::vector<std::string> extra_generators;      // words adjoined to the standard set
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

struct GeneratingSet {
  std::vector<Element> members;     // symmetric, duplicate-free, identity-free
  std::vector<std::string> labels;  // word over labeled generators per member

  size_t size() const { return members.size(); }
};

class Group {
 public:
  virtual ~Group() = default;

  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  virtual Element mul(const Element& g, const Element& h) const = 0;
  virtual Element inverse(const Element& g) const = 0;

  // Labeled generators addressed by the letters 'a','b',... in words.
  virtual std::vector<Element> labeled_generators() const = 0;
  virtual std::vector<std::string> generator_labels() const;

  // The default symmetric generating set of the family.
  virtual GeneratingSet standard_generating_set() const;

  bool is_identity(const Element& g) const { return g == identity(); }
  Element evaluate_word(const std::string& word) const;

  // Throws MixedGroups when the payload cannot belong to this group.
  virtual void check_element(const Element& g) const;

 protected:
  virtual size_t payload_size() const = 0;  // 0 = variable length
};

GroupPtr make_group(const GroupSpec& spec);

// "Z", "Z^2", "Dinf", "Heis", "F2", "Z x C3", "mat:[[0,1],[1,0]],..."
GroupSpec parse_group_spec(const std::string& text);

// Evaluates the words, adjoins inverses, removes duplicates. Standard
// generators are included unless include_standard is false.
GeneratingSet symmetrize_generators(const GroupPtr& group,
                                    const std::vector<std::string>& words,
                                    bool include_standard = true);

std::string inverse_word(const std::string& word);

}  // namespace horoball
