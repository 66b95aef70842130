#include "coxlat/nerve.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

using namespace coxlat;
using testfix::example1;

namespace {

// Independent oracle: count label-preserving vertex maps by brute force over
// all permutations.
long long brute_force_aut_count(const CoxeterSystem& sys) {
  int n = sys.rank();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = sys.label(i, j) == sys.label(p[i], p[j]);
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Re-validation of the three witness conditions from first principles.
bool revalidate_witness(const CoxeterSystem& sys, const Nerve& nerve,
                        const Witness& w) {
  if (!fixes_star(nerve, w.alpha1, w.s2)) return false;
  if (!fixes_star(nerve, w.alpha2, w.s1)) return false;
  if (w.alpha1(w.s1) == w.s1 || w.alpha2(w.s2) == w.s2) return false;
  for (auto [s, alpha] : {std::pair(w.s1, &w.alpha1), std::pair(w.s2, &w.alpha2)}) {
    for (int t = (*alpha)(s); t != s; t = (*alpha)(t))
      if (sys.finite_label(s, t)) return false;
    if (!all_containing_halvable(sys, nerve, s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("build_nerve of the rank-5 example matches the labeled graph") {
  auto sys = example1(4, 6);
  auto nerve = build_nerve(sys);
  CHECK(nerve.vertex_count() == 5);
  CHECK(nerve.simplices.size() == 11);  // 5 vertices + 6 edges
  CHECK(nerve.edge_count() == 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(nerve.has_simplex(gs_from({i, 3})));
    CHECK(nerve.has_simplex(gs_from({i, 4})));
    CHECK(nerve.label(i, 3) == 4);
    CHECK(nerve.label(i, 4) == 6);
  }
  CHECK_FALSE(nerve.has_simplex(gs_from({0, 1})));
  CHECK_FALSE(nerve.has_simplex(gs_from({3, 4})));
}

TEST_CASE("build_nerve of a rank-1 system") {
  auto sys = parse_system("generators: s\n");
  auto nerve = build_nerve(sys);
  CHECK(nerve.simplices == std::vector<GenSet>{1});
}

TEST_CASE("build_nerve of the complete bipartite catalog") {
  auto sys = catalog("complete_bipartite", {3, 3, 2});
  auto nerve = build_nerve(sys);
  CHECK(nerve.vertex_count() == 6);
  // Same-side pairs are infinite, so the nerve is exactly K_{3,3}.
  CHECK(nerve.edge_count() == 9);
  CHECK(nerve.simplices.size() == 15);
}

TEST_CASE("join_of_points nerves carry higher simplices") {
  auto sys = catalog("join_of_points", {2, 2, 2});
  auto nerve = build_nerve(sys);
  CHECK(nerve.vertex_count() == 6);
  CHECK(nerve.edge_count() == 12);
  // one triple per choice of one vertex per part
  int triples = 0;
  for (GenSet t : nerve.simplices)
    if (gs_size(t) == 3) ++triples;
  CHECK(triples == 8);
  CHECK(nerve.simplices.size() == 6 + 12 + 8);
}

TEST_CASE("label_automorphisms matches the brute-force oracle") {
  auto uneven = example1(4, 6);
  auto auts = label_automorphisms(build_nerve(uneven));
  CHECK(auts.size() == 6);  // permutations of {s1,s2,s3}
  CHECK(auts.size() == static_cast<size_t>(brute_force_aut_count(uneven)));

  auto even = example1(4, 4);
  auto auts2 = label_automorphisms(build_nerve(even));
  CHECK(auts2.size() == 12);  // additionally swap s4 <-> s5
  CHECK(auts2.size() == static_cast<size_t>(brute_force_aut_count(even)));
}

TEST_CASE("label_automorphisms of the Petersen nerve has order 120") {
  auto sys = catalog("petersen", {4});
  auto auts = label_automorphisms(build_nerve(sys));
  CHECK(auts.size() == 120);
  CHECK(auts.size() == static_cast<size_t>(brute_force_aut_count(sys)));
}

TEST_CASE("label_automorphisms returns a group, identity first") {
  auto sys = example1(4, 4);
  auto auts = label_automorphisms(build_nerve(sys));
  REQUIRE_FALSE(auts.empty());
  CHECK(auts[0].is_identity());

  auto find_perm = [&](const std::vector<int>& p) {
    return std::any_of(auts.begin(), auts.end(),
                       [&](const LabelAut& a) { return a.perm == p; });
  };
  // closure under composition and inverse
  for (const auto& a : auts) {
    std::vector<int> inv(a.perm.size());
    for (size_t i = 0; i < a.perm.size(); ++i) inv[a.perm[i]] = i;
    CHECK(find_perm(inv));
    for (const auto& b : auts) {
      std::vector<int> ab(a.perm.size());
      for (size_t i = 0; i < a.perm.size(); ++i) ab[i] = a.perm[b.perm[i]];
      CHECK(find_perm(ab));
    }
  }
  // order divides |S|!
  long long fact = 1;
  for (int i = 2; i <= sys.rank(); ++i) fact *= i;
  CHECK(fact % auts.size() == 0);
}

TEST_CASE("fixes_star behaves as on the rank-5 example") {
  auto sys = example1(4, 4);
  auto nerve = build_nerve(sys);
  auto id = make_label_aut({0, 1, 2, 3, 4});
  CHECK(fixes_star(nerve, id, 0));
  CHECK(fixes_star(nerve, id, 3));

  auto swap13 = make_label_aut({2, 1, 0, 3, 4});
  CHECK(fixes_star(nerve, swap13, 1));     // star(s2) = {s2,s4,s5}
  CHECK_FALSE(fixes_star(nerve, swap13, 3));  // s1 in star(s4) moves
  CHECK_FALSE(fixes_star(nerve, swap13, 0));  // moves s1 itself
}

TEST_CASE("nondiscreteness_check") {
  auto sys = example1(4, 4);
  auto hit = nondiscreteness_check(build_nerve(sys));
  REQUIRE(hit);
  CHECK_FALSE(hit->first.is_identity());
  CHECK(fixes_star(build_nerve(sys), hit->first, hit->second));

  // A labeled path with distinct labels has trivial automorphism group.
  auto rigid = testfix::path_system({3, 4});
  CHECK_FALSE(nondiscreteness_check(build_nerve(rigid)));

  auto pet = catalog("petersen", {4});
  CHECK(nondiscreteness_check(build_nerve(pet)));
}

TEST_CASE("find_witnesses on the rank-5 example") {
  auto sys = example1(4, 4);
  auto nerve = build_nerve(sys);
  auto witnesses = find_witnesses(nerve);
  REQUIRE_FALSE(witnesses.empty());

  // the first witness is the classical one
  const Witness& w = witnesses[0];
  CHECK(w.s1 == 0);
  CHECK(w.s2 == 1);
  CHECK(w.alpha1.perm == std::vector<int>{2, 1, 0, 3, 4});
  CHECK(w.alpha2.perm == std::vector<int>{0, 2, 1, 3, 4});
  CHECK(w.q1 == 2);
  CHECK(w.q2 == 2);

  for (const auto& wit : witnesses) CHECK(revalidate_witness(sys, nerve, wit));

  // lexicographic enumeration order
  for (size_t i = 1; i < witnesses.size(); ++i) {
    auto key = [](const Witness& x) { return std::pair(x.s1, x.s2); };
    CHECK(key(witnesses[i - 1]) <= key(witnesses[i]));
  }
}

TEST_CASE("find_witnesses fails on odd labels via Condition (3)") {
  auto sys = example1(3, 3);
  CHECK(find_witnesses(sys).empty());
  // mixed: m even but m' odd still fails (subsets {s_i, s5} unhalvable)
  auto mixed = example1(4, 3);
  CHECK(find_witnesses(mixed).empty());
}

TEST_CASE("find_witnesses on the Petersen nerve finds distance-2 pairs") {
  auto sys = catalog("petersen", {4});
  auto nerve = build_nerve(sys);
  auto witnesses = find_witnesses(nerve);
  REQUIRE_FALSE(witnesses.empty());
  CHECK(nerve.distance(witnesses[0].s1, witnesses[0].s2) == 2);
  CHECK(revalidate_witness(sys, nerve, witnesses[0]));
}

TEST_CASE("catalog petersen shape") {
  auto sys = catalog("petersen", {4});
  CHECK(sys.rank() == 10);
  int edges = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j)
      if (sys.finite_label(i, j)) {
        CHECK(sys.label(i, j) == 4);
        ++edges;
      }
  CHECK(edges == 15);
  // 3-regular
  for (int i = 0; i < 10; ++i) {
    int deg = 0;
    for (int j = 0; j < 10; ++j)
      if (j != i && sys.finite_label(i, j)) ++deg;
    CHECK(deg == 3);
  }
}

TEST_CASE("catalog complete_bipartite(2,3,2) is the rank-5 example shape") {
  auto sys = catalog("complete_bipartite", {2, 3, 2});
  CHECK(sys.rank() == 5);
  auto nerve = build_nerve(sys);
  CHECK(nerve.edge_count() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 5; ++j) CHECK(sys.label(i, j) == 2);
}

TEST_CASE("catalog gl32_building is the Heawood graph") {
  auto sys = catalog("gl32_building", {4});
  CHECK(sys.rank() == 14);
  auto nerve = build_nerve(sys);
  CHECK(nerve.edge_count() == 21);
  // bipartite: points never adjacent to points, lines never to lines
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      CHECK_FALSE(sys.finite_label(i, j));
      CHECK_FALSE(sys.finite_label(7 + i, 7 + j));
    }
  // 3-regular with girth 6: count closed walks via BFS from each vertex
  for (int v = 0; v < 14; ++v) {
    int deg = 0;
    for (int u = 0; u < 14; ++u)
      if (u != v && sys.finite_label(u, v)) ++deg;
    CHECK(deg == 3);
  }
  // girth oracle: shortest cycle through each edge
  int girth = 1000;
  for (int a = 0; a < 14; ++a)
    for (int b = a + 1; b < 14; ++b) {
      if (!sys.finite_label(a, b)) continue;
      // BFS from a to b avoiding the edge (a,b)
      std::vector<int> dist(14, -1);
      dist[a] = 0;
      std::vector<int> queue{a};
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int w = 0; w < 14; ++w) {
          if (dist[w] >= 0 || !sys.finite_label(u, w)) continue;
          if ((u == a && w == b) || (u == b && w == a)) continue;
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
      if (dist[b] > 0) girth = std::min(girth, dist[b] + 1);
    }
  CHECK(girth == 6);
}

namespace {

int matvec_f2(const int a[3][3], int v) {
  int x[3] = {(v >> 2) & 1, (v >> 1) & 1, v & 1};
  int out = 0;
  for (int i = 0; i < 3; ++i) {
    int y = 0;
    for (int j = 0; j < 3; ++j) y ^= a[i][j] & x[j];
    out |= y << (2 - i);
  }
  return out;
}

int rowvec_f2(int f, const int a[3][3]) {
  int x[3] = {(f >> 2) & 1, (f >> 1) & 1, f & 1};
  int out = 0;
  for (int j = 0; j < 3; ++j) {
    int y = 0;
    for (int i = 0; i < 3; ++i) y ^= x[i] & a[i][j];
    out |= y << (2 - j);
  }
  return out;
}

// The induced permutation of the 14 nerve vertices (7 points then 7 lines)
// of an involutive matrix over F_2.
std::vector<int> unipotent_perm(const int a[3][3]) {
  std::vector<int> perm(14);
  for (int v = 1; v <= 7; ++v) perm[v - 1] = matvec_f2(a, v) - 1;
  for (int f = 1; f <= 7; ++f) perm[7 + f - 1] = 7 + rowvec_f2(f, a) - 1;
  return perm;
}

}  // namespace

TEST_CASE("gl32 unipotent automorphisms realize a witness") {
  auto sys = catalog("gl32_building", {4});
  auto nerve = build_nerve(sys);
  const int a1[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
  const int a2[3][3] = {{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};
  auto p1 = unipotent_perm(a1);
  auto p2 = unipotent_perm(a2);

  auto auts = label_automorphisms(nerve);
  auto member = [&](const std::vector<int>& p) {
    return std::any_of(auts.begin(), auts.end(),
                       [&](const LabelAut& a) { return a.perm == p; });
  };
  REQUIRE(member(p1));
  REQUIRE(member(p2));

  auto alpha1 = make_label_aut(p1);
  auto alpha2 = make_label_aut(p2);
  CHECK(alpha1.order == 2);
  CHECK(alpha2.order == 2);

  int s1 = sys.index_of("p100");
  int s2 = sys.index_of("L100");
  REQUIRE(s1 >= 0);
  REQUIRE(s2 >= 0);
  CHECK(fixes_star(nerve, alpha1, s2));
  CHECK(fixes_star(nerve, alpha2, s1));
  CHECK(alpha1(s1) != s1);
  CHECK(alpha2(s2) != s2);

  Witness w{s1, s2, alpha1, alpha2, 2, 2};
  CHECK(revalidate_witness(sys, nerve, w));

  // and the search really finds it
  auto witnesses = find_witnesses(nerve);
  bool found = std::any_of(witnesses.begin(), witnesses.end(),
                           [&](const Witness& x) {
                             return x.s1 == s1 && x.s2 == s2 &&
                                    x.alpha1.perm == p1 && x.alpha2.perm == p2;
                           });
  CHECK(found);
}

TEST_CASE("catalog rejects bad input") {
  CHECK_THROWS_AS(catalog("nonsense", {}), std::invalid_argument);
  CHECK_THROWS_AS(catalog("petersen", {1}), std::invalid_argument);
  CHECK_THROWS_AS(catalog("petersen", {4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(catalog_parse("petersen(x)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_parse("petersen"), std::invalid_argument);
  CHECK(catalog_parse("petersen(4)").rank() == 10);
}
