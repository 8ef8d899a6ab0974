#include "horoball/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <json.hpp>

namespace horoball {

namespace {
// Sorts members into canonical order, keeping labels aligned.
void sort_generating_set(GeneratingSet& gs) {
  std::vector<size_t> order(gs.members.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return canonical_less(gs.members[a], gs.members[b]);
  });
  GeneratingSet sorted;
  for (size_t i : order) {
    sorted.members.push_back(std::move(gs.members[i]));
    sorted.labels.push_back(std::move(gs.labels[i]));
  }
  gs = std::move(sorted);
}
}  // namespace

bool canonical_less(const Element& a, const Element& b) {
  if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
  return std::lexicographical_compare(a.v.begin(), a.v.end(), b.v.begin(), b.v.end());
}

size_t ElementHash::operator()(const Element& e) const noexcept {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (int64_t x : e.v) {
    uint64_t u = static_cast<uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return static_cast<size_t>(h);
}

namespace {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer addition overflow");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer multiplication overflow");
  return r;
}

std::string label_letter(size_t i) { return std::string(1, static_cast<char>('a' + i)); }

// ---------------------------------------------------------------- FreeAbelian

class FreeAbelianGroup final : public Group {
 public:
  explicit FreeAbelianGroup(int n) : n_(n) {}

  std::string name() const override {
    return n_ == 1 ? "Z" : "Z^" + std::to_string(n_);
  }
  Element identity() const override { return Element{std::vector<int64_t>(n_, 0)}; }
  Element mul(const Element& g, const Element& h) const override {
    check_element(g);
    check_element(h);
    Element r = g;
    for (int i = 0; i < n_; ++i) r.v[i] = checked_add(r.v[i], h.v[i]);
    return r;
  }
  Element inverse(const Element& g) const override {
    check_element(g);
    Element r = g;
    for (auto& x : r.v) x = -x;
    return r;
  }
  std::vector<Element> labeled_generators() const override {
    std::vector<Element> gens;
    for (int i = 0; i < n_; ++i) {
      Element e = identity();
      e.v[i] = 1;
      gens.push_back(std::move(e));
    }
    return gens;
  }

 protected:
  size_t payload_size() const override { return static_cast<size_t>(n_); }

 private:
  int n_;
};

// ----------------------------------------------------------- InfiniteDihedral
// Element [s, o] is the affine map x -> s*x + o with s in {+1,-1}. The two
// labeled generators are the reflections a: x -> -x and b: x -> -x + 1.

class DihedralGroup final : public Group {
 public:
  std::string name() const override { return "Dinf"; }
  Element identity() const override { return Element{{1, 0}}; }
  Element mul(const Element& g, const Element& h) const override {
    check_element(g);
    check_element(h);
    return Element{{g.v[0] * h.v[0], checked_add(g.v[0] * h.v[1], g.v[1])}};
  }
  Element inverse(const Element& g) const override {
    check_element(g);
    return Element{{g.v[0], -g.v[0] * g.v[1]}};
  }
  std::vector<Element> labeled_generators() const override {
    return {Element{{-1, 0}}, Element{{-1, 1}}};
  }
  void check_element(const Element& g) const override {
    Group::check_element(g);
    if (g.v[0] != 1 && g.v[0] != -1) throw MixedGroups("dihedral sign must be +-1");
  }

 protected:
  size_t payload_size() const override { return 2; }
};

// --------------------------------------------------------------- Heisenberg3
// [a, b, c] encodes the unitriangular matrix {{1,a,c},{0,1,b},{0,0,1}}.

class HeisenbergGroup final : public Group {
 public:
  std::string name() const override { return "Heis"; }
  Element identity() const override { return Element{{0, 0, 0}}; }
  Element mul(const Element& g, const Element& h) const override {
    check_element(g);
    check_element(h);
    return Element{{checked_add(g.v[0], h.v[0]), checked_add(g.v[1], h.v[1]),
                    checked_add(checked_add(g.v[2], h.v[2]), checked_mul(g.v[0], h.v[1]))}};
  }
  Element inverse(const Element& g) const override {
    check_element(g);
    return Element{{-g.v[0], -g.v[1], checked_add(-g.v[2], checked_mul(g.v[0], g.v[1]))}};
  }
  std::vector<Element> labeled_generators() const override {
    return {Element{{1, 0, 0}}, Element{{0, 1, 0}}};
  }

 protected:
  size_t payload_size() const override { return 3; }
};

// ---------------------------------------------------------------------- Free

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(int k) : k_(k) {}

  std::string name() const override { return "F" + std::to_string(k_); }
  Element identity() const override { return Element{}; }
  Element mul(const Element& g, const Element& h) const override {
    check_element(g);
    check_element(h);
    Element r = g;
    for (int64_t x : h.v) {
      if (!r.v.empty() && r.v.back() == -x) {
        r.v.pop_back();
      } else {
        r.v.push_back(x);
      }
    }
    return r;
  }
  Element inverse(const Element& g) const override {
    check_element(g);
    Element r;
    r.v.reserve(g.v.size());
    for (auto it = g.v.rbegin(); it != g.v.rend(); ++it) r.v.push_back(-*it);
    return r;
  }
  std::vector<Element> labeled_generators() const override {
    std::vector<Element> gens;
    for (int i = 1; i <= k_; ++i) gens.push_back(Element{{i}});
    return gens;
  }
  void check_element(const Element& g) const override {
    for (size_t i = 0; i < g.v.size(); ++i) {
      if (g.v[i] == 0 || g.v[i] > k_ || g.v[i] < -k_)
        throw MixedGroups("free-group letter out of range");
      if (i > 0 && g.v[i] == -g.v[i - 1]) throw MixedGroups("word is not reduced");
    }
  }

 protected:
  size_t payload_size() const override { return 0; }

 private:
  int k_;
};

// -------------------------------------------------------------- IntegerMatrix

class MatrixGroup final : public Group {
 public:
  MatrixGroup(int dim, std::vector<std::vector<int64_t>> gens)
      : dim_(dim), gens_(std::move(gens)) {}

  std::string name() const override {
    return "mat(" + std::to_string(dim_) + "," + std::to_string(gens_.size()) + ")";
  }
  Element identity() const override {
    Element e{std::vector<int64_t>(dim_ * dim_, 0)};
    for (int i = 0; i < dim_; ++i) e.v[i * dim_ + i] = 1;
    return e;
  }
  Element mul(const Element& g, const Element& h) const override {
    check_element(g);
    check_element(h);
    Element r{std::vector<int64_t>(dim_ * dim_, 0)};
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k) {
        if (g.v[i * dim_ + k] == 0) continue;
        for (int j = 0; j < dim_; ++j)
          r.v[i * dim_ + j] = checked_add(
              r.v[i * dim_ + j], checked_mul(g.v[i * dim_ + k], h.v[k * dim_ + j]));
      }
    return r;
  }
  Element inverse(const Element& g) const override {
    check_element(g);
    int64_t det = determinant(g.v, dim_);
    // det is +-1 for every product of unimodular generators
    Element r{std::vector<int64_t>(dim_ * dim_, 0)};
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        r.v[j * dim_ + i] = checked_mul(det, cofactor(g.v, dim_, i, j));
    return r;
  }
  std::vector<Element> labeled_generators() const override {
    std::vector<Element> gens;
    for (const auto& m : gens_) gens.push_back(Element{m});
    return gens;
  }

  static int64_t determinant(const std::vector<int64_t>& m, int d) {
    if (d == 1) return m[0];
    int64_t det = 0;
    for (int j = 0; j < d; ++j) {
      if (m[j] == 0) continue;
      int64_t term = checked_mul(m[j], cofactor(m, d, 0, j));
      det = checked_add(det, term);
    }
    return det;
  }

  static int64_t cofactor(const std::vector<int64_t>& m, int d, int i, int j) {
    std::vector<int64_t> minor;
    minor.reserve((d - 1) * (d - 1));
    for (int r = 0; r < d; ++r) {
      if (r == i) continue;
      for (int c = 0; c < d; ++c) {
        if (c == j) continue;
        minor.push_back(m[r * d + c]);
      }
    }
    int64_t det = determinant(minor, d - 1);
    return ((i + j) % 2 == 0) ? det : -det;
  }

 protected:
  size_t payload_size() const override { return static_cast<size_t>(dim_ * dim_); }

 private:
  int dim_;
  std::vector<std::vector<int64_t>> gens_;
};

// ----------------------------------------------------------- DirectWithFinite
// G x Z/m, payload [residue] ++ base payload. The standard generating set is
// product-style, (S_base u {1}) x Z/m minus the identity, so the word metric
// reads the base coordinate and charges torsion only at the identity fibre.

class DirectWithFiniteGroup final : public Group {
 public:
  DirectWithFiniteGroup(GroupPtr base, int m) : base_(std::move(base)), m_(m) {}

  std::string name() const override { return base_->name() + " x C" + std::to_string(m_); }
  Element identity() const override {
    Element e{{0}};
    const Element b = base_->identity();
    e.v.insert(e.v.end(), b.v.begin(), b.v.end());
    return e;
  }
  Element mul(const Element& g, const Element& h) const override {
    Element r{{(g.v[0] + h.v[0]) % m_}};
    const Element b = base_->mul(base_part(g), base_part(h));
    r.v.insert(r.v.end(), b.v.begin(), b.v.end());
    return r;
  }
  Element inverse(const Element& g) const override {
    Element r{{(m_ - g.v[0]) % m_}};
    const Element b = base_->inverse(base_part(g));
    r.v.insert(r.v.end(), b.v.begin(), b.v.end());
    return r;
  }
  std::vector<Element> labeled_generators() const override {
    std::vector<Element> gens;
    for (const auto& s : base_->labeled_generators()) gens.push_back(lift(s, 0));
    gens.push_back(lift(base_->identity(), 1));
    return gens;
  }
  GeneratingSet standard_generating_set() const override {
    const auto base_set = base_->standard_generating_set();
    std::vector<Element> factors = base_set.members;
    std::vector<std::string> factor_labels = base_set.labels;
    factors.push_back(base_->identity());
    factor_labels.emplace_back("");
    const std::string torsion = label_letter(base_->labeled_generators().size());

    GeneratingSet out;
    for (size_t i = 0; i < factors.size(); ++i)
      for (int c = 0; c < m_; ++c) {
        Element e = lift(factors[i], c);
        if (e == identity()) continue;
        out.members.push_back(std::move(e));
        std::string lbl = factor_labels[i];
        for (int t = 0; t < c; ++t) lbl += torsion;
        out.labels.push_back(lbl);
      }
    sort_generating_set(out);
    return out;
  }
  void check_element(const Element& g) const override {
    if (g.v.empty() || g.v[0] < 0 || g.v[0] >= m_) throw MixedGroups("bad torsion residue");
    base_->check_element(base_part(g));
  }

 protected:
  size_t payload_size() const override { return 0; }  // base may be variable-length

 private:
  Element base_part(const Element& g) const {
    return Element{std::vector<int64_t>(g.v.begin() + 1, g.v.end())};
  }
  Element lift(const Element& base_el, int c) const {
    Element e{{c}};
    e.v.insert(e.v.end(), base_el.v.begin(), base_el.v.end());
    return e;
  }
  GroupPtr base_;
  int m_;
};

}  // namespace

std::vector<std::string> Group::generator_labels() const {
  std::vector<std::string> labels;
  for (size_t i = 0; i < labeled_generators().size(); ++i) labels.push_back(label_letter(i));
  return labels;
}

GeneratingSet Group::standard_generating_set() const {
  GeneratingSet gs;
  const auto gens = labeled_generators();
  std::set<std::vector<int64_t>> seen;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (seen.insert(gens[i].v).second) {
      gs.members.push_back(gens[i]);
      gs.labels.push_back(label_letter(i));
    }
    Element inv = inverse(gens[i]);
    if (seen.insert(inv.v).second) {
      gs.members.push_back(std::move(inv));
      gs.labels.push_back(std::string(1, static_cast<char>('A' + i)));
    }
  }
  sort_generating_set(gs);
  return gs;
}

void Group::check_element(const Element& g) const {
  const size_t n = payload_size();
  if (n != 0 && g.v.size() != n)
    throw MixedGroups("element payload size " + std::to_string(g.v.size()) +
                      " does not match group " + name());
}

Element Group::evaluate_word(const std::string& word) const {
  const auto gens = labeled_generators();
  Element acc = identity();
  for (char c : word) {
    size_t idx;
    bool inv;
    if (c >= 'a' && c <= 'z') {
      idx = static_cast<size_t>(c - 'a');
      inv = false;
    } else if (c >= 'A' && c <= 'Z') {
      idx = static_cast<size_t>(c - 'A');
      inv = true;
    } else {
      throw InvalidSpec(std::string("bad letter '") + c + "' in word");
    }
    if (idx >= gens.size())
      throw InvalidSpec(std::string("letter '") + c + "' has no generator in " + name());
    acc = mul(acc, inv ? inverse(gens[idx]) : gens[idx]);
  }
  return acc;
}

std::string inverse_word(const std::string& word) {
  std::string out;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    char c = *it;
    if (c >= 'a' && c <= 'z')
      out += static_cast<char>(c - 'a' + 'A');
    else
      out += static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

GroupPtr make_group(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::FreeAbelian:
      if (spec.rank < 1) throw InvalidSpec("FreeAbelian rank must be >= 1");
      return std::make_shared<FreeAbelianGroup>(spec.rank);
    case Family::InfiniteDihedral:
      return std::make_shared<DihedralGroup>();
    case Family::Heisenberg3:
      return std::make_shared<HeisenbergGroup>();
    case Family::Free:
      if (spec.rank < 1 || spec.rank > 26) throw InvalidSpec("Free rank must be in 1..26");
      return std::make_shared<FreeGroup>(spec.rank);
    case Family::IntegerMatrix: {
      if (spec.matrices.empty()) throw InvalidSpec("IntegerMatrix needs generators");
      const size_t n = spec.matrices.front().size();
      int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (dim < 1 || static_cast<size_t>(dim) * dim != n)
        throw InvalidSpec("matrix generator is not square");
      for (const auto& m : spec.matrices) {
        if (m.size() != n) throw InvalidSpec("matrix generators differ in dimension");
        int64_t det = MatrixGroup::determinant(m, dim);
        if (det != 1 && det != -1)
          throw InvalidSpec("matrix generator determinant is " + std::to_string(det) +
                            ", must be +-1");
      }
      return std::make_shared<MatrixGroup>(dim, spec.matrices);
    }
    case Family::DirectWithFinite: {
      if (!spec.base) throw InvalidSpec("DirectWithFinite needs a base group");
      if (spec.finite_order < 2) throw InvalidSpec("finite part must have order >= 2");
      return std::make_shared<DirectWithFiniteGroup>(make_group(*spec.base), spec.finite_order);
    }
  }
  throw InvalidSpec("unknown family");
}

GroupSpec parse_group_spec(const std::string& text) {
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string t = trim(text);
  if (t.empty()) throw InvalidSpec("empty group spec");

  // direct product with a cyclic group: "<base> x C<m>"
  const auto xpos = t.rfind(" x C");
  const auto xpos2 = t.rfind("xC");
  size_t cut = std::string::npos, mstart = 0;
  if (xpos != std::string::npos) {
    cut = xpos;
    mstart = xpos + 4;
  } else if (xpos2 != std::string::npos) {
    cut = xpos2;
    mstart = xpos2 + 2;
  }
  if (cut != std::string::npos) {
    GroupSpec spec;
    spec.family = Family::DirectWithFinite;
    spec.base = std::make_shared<GroupSpec>(parse_group_spec(t.substr(0, cut)));
    try {
      spec.finite_order = std::stoi(t.substr(mstart));
    } catch (const std::exception&) {
      throw InvalidSpec("bad cyclic order in '" + t + "'");
    }
    return spec;
  }

  GroupSpec spec;
  if (t == "Z") {
    spec.family = Family::FreeAbelian;
    spec.rank = 1;
  } else if (t.rfind("Z^", 0) == 0) {
    spec.family = Family::FreeAbelian;
    try {
      spec.rank = std::stoi(t.substr(2));
    } catch (const std::exception&) {
      throw InvalidSpec("bad rank in '" + t + "'");
    }
  } else if (t == "Dinf") {
    spec.family = Family::InfiniteDihedral;
  } else if (t == "Heis") {
    spec.family = Family::Heisenberg3;
  } else if (t.size() >= 2 && t[0] == 'F' && std::isdigit(static_cast<unsigned char>(t[1]))) {
    spec.family = Family::Free;
    try {
      spec.rank = std::stoi(t.substr(1));
    } catch (const std::exception&) {
      throw InvalidSpec("bad rank in '" + t + "'");
    }
  } else if (t.rfind("mat:", 0) == 0) {
    spec.family = Family::IntegerMatrix;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t.substr(4));
    } catch (const std::exception& e) {
      throw InvalidSpec(std::string("bad matrix list: ") + e.what());
    }
    for (const auto& mat : j) {
      std::vector<int64_t> flat;
      for (const auto& row : mat)
        for (const auto& x : row) flat.push_back(x.get<int64_t>());
      spec.matrices.push_back(std::move(flat));
    }
  } else {
    throw InvalidSpec("unknown group spec '" + t + "'");
  }
  return spec;
}

GeneratingSet symmetrize_generators(const GroupPtr& group,
                                    const std::vector<std::string>& words,
                                    bool include_standard) {
  GeneratingSet gs;
  std::set<std::vector<int64_t>> seen;
  auto add = [&](Element e, std::string label) {
    if (group->is_identity(e)) return;
    if (seen.insert(e.v).second) {
      gs.members.push_back(std::move(e));
      gs.labels.push_back(std::move(label));
    }
  };

  if (include_standard) {
    GeneratingSet std_set = group->standard_generating_set();
    for (size_t i = 0; i < std_set.members.size(); ++i)
      add(std::move(std_set.members[i]), std::move(std_set.labels[i]));
  }
  for (const auto& w : words) {
    Element e = group->evaluate_word(w);
    if (group->is_identity(e))
      throw IdentityGenerator("word '" + w + "' evaluates to the identity");
    Element inv = group->inverse(e);
    add(std::move(e), w);
    add(std::move(inv), inverse_word(w));
  }
  sort_generating_set(gs);
  return gs;
}

}  // namespace horoball
