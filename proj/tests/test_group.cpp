#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "horoball/group.hpp"
#include "oracles.hpp"

using namespace horoball;

namespace {

Element random_element(const Group& g, std::mt19937& rng, int max_len = 10) {
  const auto gens = g.labeled_generators();
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Element e = g.identity();
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const Element& s = gens[pick(rng)];
    e = g.mul(e, coin(rng) ? s : g.inverse(s));
  }
  return e;
}

std::vector<GroupPtr> fixture_groups() {
  std::vector<GroupPtr> out;
  out.push_back(make_group(parse_group_spec("Z")));
  out.push_back(make_group(parse_group_spec("Z^2")));
  out.push_back(make_group(parse_group_spec("Dinf")));
  out.push_back(make_group(parse_group_spec("Heis")));
  out.push_back(make_group(parse_group_spec("F2")));
  out.push_back(make_group(parse_group_spec("Z x C3")));
  out.push_back(make_group(parse_group_spec("mat:[[[0,-1],[1,0]],[[1,1],[0,1]]]")));
  return out;
}

}  // namespace

TEST_CASE("identity elements per family") {
  CHECK(make_group(parse_group_spec("Z"))->identity() == Element{{0}});
  CHECK(make_group(parse_group_spec("Z^3"))->identity() == Element{{0, 0, 0}});
  CHECK(make_group(parse_group_spec("Dinf"))->identity() == Element{{1, 0}});
  CHECK(make_group(parse_group_spec("Heis"))->identity() == Element{{0, 0, 0}});
  CHECK(make_group(parse_group_spec("F2"))->identity() == Element{});
}

TEST_CASE("dihedral reflections square to the identity") {
  auto g = make_group(parse_group_spec("Dinf"));
  const auto gens = g->labeled_generators();
  const Element a = gens[0], b = gens[1];
  CHECK(a == Element{{-1, 0}});
  CHECK(b == Element{{-1, 1}});
  CHECK(g->mul(a, a) == g->identity());
  CHECK(g->mul(b, b) == g->identity());
  // composing the two reflections gives the unit translation x -> x - 1
  CHECK(g->mul(a, b) == Element{{1, -1}});
}

TEST_CASE("heisenberg commutator is the central generator") {
  auto g = make_group(parse_group_spec("Heis"));
  const auto gens = g->labeled_generators();
  const Element x = gens[0], y = gens[1];
  Element comm = g->mul(g->mul(x, y), g->mul(g->inverse(x), g->inverse(y)));
  CHECK(comm == Element{{0, 0, 1}});
  CHECK(g->evaluate_word("abAB") == Element{{0, 0, 1}});
}

TEST_CASE("free abelian and free multiplication") {
  auto z2 = make_group(parse_group_spec("Z^2"));
  CHECK(z2->mul(Element{{1, 0}}, Element{{0, 1}}) == Element{{1, 1}});

  auto f2 = make_group(parse_group_spec("F2"));
  const Element a = f2->labeled_generators()[0];
  CHECK(f2->mul(a, f2->inverse(a)) == Element{});
  CHECK(f2->evaluate_word("abBA") == Element{});
  CHECK(f2->evaluate_word("abA") == Element{{1, 2, -1}});
}

TEST_CASE("group axioms hold exactly on random triples") {
  for (const auto& g : fixture_groups()) {
    CAPTURE(g->name());
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
      Element x = random_element(*g, rng);
      Element y = random_element(*g, rng);
      Element z = random_element(*g, rng);
      CHECK(g->mul(g->mul(x, y), z) == g->mul(x, g->mul(y, z)));
      CHECK(g->mul(x, g->identity()) == x);
      CHECK(g->mul(g->identity(), x) == x);
      CHECK(g->mul(x, g->inverse(x)) == g->identity());
      CHECK(g->mul(g->inverse(x), x) == g->identity());
    }
  }
}

TEST_CASE("standard generating sets are symmetric and identity-free") {
  for (const auto& g : fixture_groups()) {
    CAPTURE(g->name());
    const GeneratingSet gs = g->standard_generating_set();
    std::set<std::vector<int64_t>> members;
    for (size_t i = 0; i < gs.size(); ++i) {
      CHECK(!g->is_identity(gs.members[i]));
      CHECK(members.insert(gs.members[i].v).second);  // duplicate-free
      CHECK(g->evaluate_word(gs.labels[i]) == gs.members[i]);
    }
    for (const auto& m : gs.members) CHECK(members.contains(g->inverse(m).v));
  }
}

TEST_CASE("generating set sizes per family") {
  CHECK(make_group(parse_group_spec("Z"))->standard_generating_set().size() == 2);
  CHECK(make_group(parse_group_spec("Z^2"))->standard_generating_set().size() == 4);
  CHECK(make_group(parse_group_spec("Dinf"))->standard_generating_set().size() == 2);
  CHECK(make_group(parse_group_spec("Heis"))->standard_generating_set().size() == 4);
  CHECK(make_group(parse_group_spec("F2"))->standard_generating_set().size() == 4);
  // (S_Z u {1}) x C3 minus the identity
  CHECK(make_group(parse_group_spec("Z x C3"))->standard_generating_set().size() == 8);
}

TEST_CASE("symmetrize_generators") {
  auto z = make_group(parse_group_spec("Z"));

  SUBCASE("single word") {
    GeneratingSet gs = symmetrize_generators(z, {"a"}, false);
    REQUIRE(gs.size() == 2);
    CHECK(gs.members[0] == Element{{-1}});
    CHECK(gs.members[1] == Element{{1}});
  }
  SUBCASE("words of different lengths") {
    GeneratingSet gs = symmetrize_generators(z, {"a", "aa"}, false);
    REQUIRE(gs.size() == 4);
    CHECK(gs.members[0] == Element{{-2}});
    CHECK(gs.members[3] == Element{{2}});
  }
  SUBCASE("self-inverse generators do not grow the set") {
    auto dinf = make_group(parse_group_spec("Dinf"));
    GeneratingSet gs = symmetrize_generators(dinf, {"a", "b"}, false);
    CHECK(gs.size() == 2);
  }
  SUBCASE("identity word is rejected") {
    CHECK_THROWS_AS(symmetrize_generators(z, {"aA"}, false), IdentityGenerator);
  }
  SUBCASE("standard generators included by default") {
    GeneratingSet gs = symmetrize_generators(z, {"aa"});
    CHECK(gs.size() == 4);
  }
}

TEST_CASE("labels invert correctly") {
  CHECK(inverse_word("abA") == "aBA");
  CHECK(inverse_word("aa") == "AA");
  auto f2 = make_group(parse_group_spec("F2"));
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Element e = random_element(*f2, rng);
    std::string w;
    for (int64_t l : e.v) w += l > 0 ? static_cast<char>('a' + l - 1)
                                     : static_cast<char>('A' - l - 1);
    CHECK(f2->evaluate_word(inverse_word(w)) == f2->inverse(e));
  }
}

TEST_CASE("matrix family validates unimodularity") {
  CHECK_THROWS_AS(make_group(parse_group_spec("mat:[[[2,0],[0,1]]]")), InvalidSpec);
  CHECK_THROWS_AS(make_group(parse_group_spec("mat:[[[1,0,0],[0,1,0]]]")), InvalidSpec);

  auto sl2 = make_group(parse_group_spec("mat:[[[0,-1],[1,0]],[[1,1],[0,1]]]"));
  const Element s = sl2->labeled_generators()[0];
  Element s4 = sl2->mul(sl2->mul(s, s), sl2->mul(s, s));
  CHECK(s4 == sl2->identity());
  const Element t = sl2->labeled_generators()[1];
  CHECK(sl2->inverse(t) == Element{{1, -1, 0, 1}});
}

TEST_CASE("direct product with cyclic group") {
  auto g = make_group(parse_group_spec("Z x C3"));
  // payload: [residue, z]
  const Element a = g->labeled_generators()[0];  // (1, 0)
  const Element b = g->labeled_generators()[1];  // torsion
  CHECK(a == Element{{0, 1}});
  CHECK(b == Element{{1, 0}});
  CHECK(g->mul(b, g->mul(b, b)) == g->identity());
  CHECK(g->mul(a, b) == Element{{1, 1}});
  CHECK(g->inverse(Element{{1, 5}}) == Element{{2, -5}});
}

TEST_CASE("invalid specs are rejected") {
  GroupSpec s;
  s.family = Family::FreeAbelian;
  s.rank = 0;
  CHECK_THROWS_AS(make_group(s), InvalidSpec);
  CHECK_THROWS_AS(parse_group_spec("Q"), InvalidSpec);
  CHECK_THROWS_AS(parse_group_spec(""), InvalidSpec);
  CHECK_THROWS_AS(make_group(parse_group_spec("Z x C1")), InvalidSpec);

  auto z = make_group(parse_group_spec("Z"));
  CHECK_THROWS_AS(z->evaluate_word("ab"), InvalidSpec);   // no second generator
  CHECK_THROWS_AS(z->evaluate_word("a!"), InvalidSpec);
}

TEST_CASE("mixing elements across groups is detected") {
  auto z = make_group(parse_group_spec("Z"));
  auto heis = make_group(parse_group_spec("Heis"));
  CHECK_THROWS_AS(heis->mul(heis->identity(), z->identity()), MixedGroups);
  auto dinf = make_group(parse_group_spec("Dinf"));
  CHECK_THROWS_AS(dinf->mul(Element{{3, 0}}, dinf->identity()), MixedGroups);
}

TEST_CASE("canonical order is shortlex") {
  CHECK(canonical_less(Element{{1}}, Element{{1, 1}}));
  CHECK(canonical_less(Element{{-1, 0}}, Element{{-1, 1}}));
  CHECK(!canonical_less(Element{{2}}, Element{{-3}}));
}

TEST_CASE("dihedral norms match the closed form") {
  // spot values pinned from the alternating normal form
  CHECK(oracle::dinf_norm(1, -1) == 2);   // ab
  CHECK(oracle::dinf_norm(-1, -1) == 3);  // aba
  CHECK(oracle::dinf_norm(-1, 2) == 3);   // bab
  CHECK(oracle::dinf_norm(1, 2) == 4);    // baba
}
