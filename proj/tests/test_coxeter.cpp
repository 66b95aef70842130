#include "coxlat/coxeter.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

using namespace coxlat;
using testfix::dihedral;
using testfix::example1;
using testfix::path_system;

TEST_CASE("parse_system accepts the rank-5 document") {
  auto sys = example1(3, 5);
  CHECK(sys.rank() == 5);
  CHECK(sys.name(0) == "s1");
  CHECK(sys.label(0, 3) == 3);
  CHECK(sys.label(3, 0) == 3);
  CHECK(sys.label(2, 4) == 5);
  CHECK(sys.label(0, 1) == kInfLabel);
  CHECK(sys.label(0, 0) == 1);
}

TEST_CASE("parse_system handles a single generator with empty body") {
  auto sys = parse_system("generators: s\n");
  CHECK(sys.rank() == 1);
  auto t = is_spherical(sys, gs_from({0}));
  REQUIRE(t);
  CHECK(enumerate_group(sys, *t)->size() == 2);
}

TEST_CASE("parse_system rejects malformed documents with locations") {
  CHECK_THROWS_WITH_AS(parse_system("generators: s t\nm s t = 3\nm t s = 4\n"),
                       doctest::Contains("asymmetric"), ParseError);
  CHECK_THROWS_WITH_AS(parse_system("generators: s t\nm s t = 1\n"),
                       doctest::Contains("label"), ParseError);
  CHECK_THROWS_WITH_AS(parse_system("generators: s t\nm s u = 3\n"),
                       doctest::Contains("unknown generator"), ParseError);
  CHECK_THROWS_WITH_AS(parse_system("generators: s s\n"),
                       doctest::Contains("duplicate generator"), ParseError);
  CHECK_THROWS_AS(parse_system("m s t = 3\n"), ParseError);
  try {
    parse_system("generators: s t\n\nm s t = 2\nm t s = 3\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("word_reduce deletes squares") {
  auto sys = dihedral(3);
  CHECK(word_reduce(sys, {0, 0}) == Word{});
  CHECK(word_reduce(sys, {}) == Word{});
}

TEST_CASE("word_reduce applies the commuting braid move") {
  auto sys = dihedral(2);
  // Independent oracle: multiply s*t*s in the enumerated group and compare
  // against the enumerated element of t.
  auto t = is_spherical(sys, gs_from({0, 1}));
  REQUIRE(t);
  auto g = enumerate_group(sys, *t);
  CHECK(g->eval_word({0, 1, 0}) == g->eval_word({1}));
  CHECK(word_reduce(sys, {0, 1, 0}) == Word{1});
}

TEST_CASE("word_reduce leaves infinite-label pairs alone") {
  auto sys = example1();
  CHECK(word_reduce(sys, {0, 2}) == Word{0, 2});
  CHECK_FALSE(words_equal(sys, {0, 2}, {2, 0}));
  CHECK(words_equal(sys, {}, {0, 0}));
  CHECK(words_equal(sys, {0, 3, 0}, {0, 3, 0}));
}

TEST_CASE("word_reduce enforces the length bound") {
  auto sys = dihedral(3);
  Word w(17, 0);
  CHECK_THROWS_AS(word_reduce(sys, w), ResourceError);
}

TEST_CASE("word_reduce is idempotent and length-nonincreasing") {
  auto sys = example1(4, 6);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> len(0, 8), letter(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Word w(len(rng));
    for (auto& x : w) x = letter(rng);
    Word r = word_reduce(sys, w);
    CHECK(r.size() <= w.size());
    CHECK(word_reduce(sys, r) == r);
    CHECK(words_equal(sys, w, r));
  }
}

TEST_CASE("words_equal is an equivalence relation on a sample") {
  auto sys = dihedral(4);
  std::vector<Word> sample;
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> len(0, 6), letter(0, 1);
  for (int i = 0; i < 24; ++i) {
    Word w(len(rng));
    for (auto& x : w) x = letter(rng);
    sample.push_back(w);
  }
  for (const auto& u : sample) CHECK(words_equal(sys, u, u));
  for (const auto& u : sample)
    for (const auto& v : sample) {
      bool uv = words_equal(sys, u, v);
      CHECK(uv == words_equal(sys, v, u));
      if (uv)
        for (const auto& w : sample)
          if (words_equal(sys, v, w)) CHECK(words_equal(sys, u, w));
    }
}

TEST_CASE("is_spherical on the rank-5 example") {
  auto sys = example1(4, 4);
  auto empty = is_spherical(sys, 0);
  REQUIRE(empty);
  CHECK(empty->components.empty());
  CHECK(spherical_order(*empty) == 1);

  auto pair = is_spherical(sys, gs_from({0, 3}));
  REQUIRE(pair);
  REQUIRE(pair->components.size() == 1);
  CHECK(pair->components[0].type == FiniteType::I2);
  CHECK(pair->components[0].label == 4);

  CHECK_FALSE(is_spherical(sys, gs_from({0, 1})));
  CHECK_FALSE(is_spherical(sys, gs_from({3, 4})));
}

TEST_CASE("diagram classification recognizes the finite types") {
  struct Case {
    std::vector<unsigned> labels;
    FiniteType type;
    long long order;
  };
  // Path diagrams (label 2 elsewhere = disconnected in the diagram).
  std::vector<Case> cases = {
      {{3, 3}, FiniteType::A, 24},        // A3
      {{4, 3}, FiniteType::B, 48},        // B3
      {{3, 4}, FiniteType::B, 48},        // B3 reversed
      {{5, 3}, FiniteType::H3, 120},      // H3
      {{3, 4, 3}, FiniteType::F4, 1152},  // F4
      {{4, 3, 3}, FiniteType::B, 384},    // B4
      {{5, 3, 3}, FiniteType::H4, 14400}, // H4
      {{3, 3, 3, 3}, FiniteType::A, 720}, // A5
  };
  for (const auto& c : cases) {
    auto sys = path_system(c.labels);
    GenSet all = (GenSet{1} << sys.rank()) - 1;
    auto t = is_spherical(sys, all);
    REQUIRE_MESSAGE(t, "labels failed to classify");
    REQUIRE(t->components.size() == 1);
    CHECK(t->components[0].type == c.type);
    CHECK(spherical_order(*t) == c.order);
  }
}

TEST_CASE("diagram classification recognizes D and E shapes") {
  // Star with three legs from vertex 0.
  auto d4 = testfix::from_labels(4, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}}, 2);
  GenSet all4 = (GenSet{1} << 4) - 1;
  auto t = is_spherical(d4, all4);
  REQUIRE(t);
  CHECK(t->components[0].type == FiniteType::D);
  CHECK(spherical_order(*t) == 192);

  // E6: legs 1,2,2 from the branch vertex.
  auto e6 = testfix::from_labels(
      6, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}}, 2);
  GenSet all6 = (GenSet{1} << 6) - 1;
  auto te6 = is_spherical(e6, all6);
  REQUIRE(te6);
  CHECK(te6->components[0].type == FiniteType::E6);
  CHECK(spherical_order(*te6) == 51840);
}

TEST_CASE("diagram classification rejects affine and wild shapes") {
  // Triangle of 3s: affine A~2.
  CHECK_FALSE(is_spherical(
      testfix::from_labels(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}, 2), 7));
  // Degree-4 star: affine D~4.
  CHECK_FALSE(is_spherical(
      testfix::from_labels(5, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}}, 2),
      31));
  // Two 4s on a path of 3: affine C~2.
  CHECK_FALSE(is_spherical(path_system({4, 4}), 7));
  // Label 6 in rank 3: affine G~2.
  CHECK_FALSE(is_spherical(path_system({6, 3}), 7));
  // Label 5 in the middle of a path of 4.
  CHECK_FALSE(is_spherical(path_system({3, 5, 3}), 15));
  // Infinite label inside the subset.
  CHECK_FALSE(is_spherical(testfix::from_labels(2, {}), 3));
}

TEST_CASE("reducible subsets multiply component orders") {
  // g0-g1 labeled 4, g2 isolated (all other labels 2): I2(4) x A1.
  auto sys = path_system({4, 2});
  auto t = is_spherical(sys, 7);
  REQUIRE(t);
  CHECK(t->components.size() == 2);
  CHECK(spherical_order(*t) == 16 * 2 / 2);  // 2*4 * 2
}

namespace {

// Brute-force oracle for |B3|: signed 3x3 permutation matrices.
int count_signed_permutations3() {
  int count = 0;
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    count += 8;  // 2^3 sign choices
  } while (std::next_permutation(perm, perm + 3));
  return count;
}

}  // namespace

TEST_CASE("enumerate_group matches classification orders") {
  auto check_order = [](const CoxeterSystem& sys, GenSet members,
                        long long expect) {
    auto t = is_spherical(sys, members);
    REQUIRE(t);
    auto g = enumerate_group(sys, *t);
    CHECK(g->size() == expect);
    CHECK(spherical_order(*t) == expect);
  };
  check_order(dihedral(4), 3, 8);
  check_order(path_system({4, 3}), 7, count_signed_permutations3());
  check_order(path_system({3, 3}), 7, 24);
  check_order(example1(4, 4), gs_from({0, 3}), 8);
  auto t0 = is_spherical(dihedral(3), gs_from({0}));
  REQUIRE(t0);
  CHECK(enumerate_group(dihedral(3), *t0)->size() == 2);
}

TEST_CASE("enumerated tables are coherent groups") {
  auto sys = path_system({4, 3});  // B3
  auto t = is_spherical(sys, 7);
  auto g = enumerate_group(sys, *t);
  REQUIRE(g->size() == 48);

  // identity and inverses
  for (int e = 0; e < g->size(); ++e) {
    CHECK(g->mul(0, e) == e);
    CHECK(g->mul(e, 0) == e);
    CHECK(g->mul(e, g->inv(e)) == 0);
  }
  // generators square to the identity and generate everything
  std::vector<int> gen_elems;
  for (int s : g->generators()) {
    int x = g->gen_image(s);
    CHECK(g->mul(x, x) == 0);
    gen_elems.push_back(x);
  }
  CHECK(static_cast<int>(subgroup_closure(*g, gen_elems).size()) == g->size());
  // associativity spot checks
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, g->size() - 1);
  for (int i = 0; i < 500; ++i) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
  }
  // stored words are the canonical reduced words
  for (int e = 0; e < g->size(); ++e)
    CHECK(word_reduce(sys, g->word_of(e), 32) == g->word_of(e));
}

TEST_CASE("halving of dihedral groups follows the parity law") {
  for (unsigned m = 2; m <= 8; ++m) {
    auto sys = dihedral(m);
    auto t = is_spherical(sys, 3);
    REQUIRE(t);
    auto half = halving(sys, *t, 0);
    if (m % 2 == 0) {
      REQUIRE(half);
      CHECK(half->members.size() == m);
      CHECK(half->index == 2);
    } else {
      CHECK_FALSE(half);
    }
  }
}

TEST_CASE("halving of irreducible rank 3 and 4 types singles out B_k") {
  struct Case {
    std::vector<unsigned> labels;  // path diagram
    int expect;                    // halvable position, -1 if none
    long long half_order;
  };
  std::vector<Case> cases = {
      {{3, 3}, -1, 0},       // A3
      {{4, 3}, 0, 24},       // B3 at the 4-end: Half of type D3 = A3
      {{5, 3}, -1, 0},       // H3
      {{3, 3, 3}, -1, 0},    // A4
      {{4, 3, 3}, 0, 192},   // B4 at the 4-end: Half of type D4
      {{3, 4, 3}, -1, 0},    // F4
      {{5, 3, 3}, -1, 0},    // H4
  };
  for (const auto& c : cases) {
    auto sys = path_system(c.labels);
    GenSet all = (GenSet{1} << sys.rank()) - 1;
    auto t = is_spherical(sys, all);
    REQUIRE(t);
    for (int s = 0; s < sys.rank(); ++s) {
      auto half = halving(sys, *t, s);
      // the law: halvable iff type B_k at the generator with labels in {2,4}
      bool expect_ok = s == c.expect;
      CHECK(half.has_value() == expect_ok);
      if (half && expect_ok)
        CHECK(static_cast<long long>(half->members.size()) == c.half_order);
    }
  }
  // D4: the triple point makes every generator non-halvable
  auto d4 = testfix::from_labels(4, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}}, 2);
  auto td4 = is_spherical(d4, 15);
  REQUIRE(td4);
  for (int s = 0; s < 4; ++s) CHECK_FALSE(halving(d4, *td4, s));
}

TEST_CASE("halving a singleton gives the trivial subgroup") {
  auto sys = dihedral(5);
  auto t = is_spherical(sys, gs_from({0}));
  REQUIRE(t);
  auto half = halving(sys, *t, 0);
  REQUIRE(half);
  CHECK(half->members == std::vector<int>{0});
}

TEST_CASE("subgroup_cosets partitions the group") {
  auto sys = dihedral(4);
  auto t = is_spherical(sys, 3);
  auto g = enumerate_group(sys, *t);

  Subgroup whole{g, {}, 1};
  for (int e = 0; e < g->size(); ++e) whole.members.push_back(e);
  auto one = subgroup_cosets(*g, whole);
  CHECK(one.size() == 1);

  auto half = halving(sys, *t, 0);
  REQUIRE(half);
  auto two = subgroup_cosets(*g, *half);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == half->members);
  CHECK(two[0].size() == 4);
  CHECK(two[1].size() == 4);

  auto sys3 = dihedral(3);
  auto t3 = is_spherical(sys3, 3);
  auto g3 = enumerate_group(sys3, *t3);
  Subgroup triv{g3, {0}, g3->size()};
  CHECK(subgroup_cosets(*g3, triv).size() == 6);

  // General property: |G|/|H| cosets, pairwise disjoint, covering G.
  std::set<int> covered;
  for (const auto& coset : two)
    for (int e : coset) CHECK(covered.insert(e).second);
  CHECK(static_cast<int>(covered.size()) == g->size());
}

TEST_CASE("subgroup_table embeds consistently") {
  auto sys = dihedral(6);
  auto t = is_spherical(sys, 3);
  auto g = enumerate_group(sys, *t);
  auto half = halving(sys, *t, 0);
  REQUIRE(half);
  auto sub = subgroup_table(g, half->members);
  CHECK(sub.table->size() == 6);
  for (int a = 0; a < sub.table->size(); ++a)
    for (int b = 0; b < sub.table->size(); ++b)
      CHECK(sub.embed[sub.table->mul(a, b)] ==
            g->mul(sub.embed[a], sub.embed[b]));
}
