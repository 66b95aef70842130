#include "coxlat/nerve.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace coxlat {

bool Nerve::has_simplex(GenSet t) const {
  return std::find(simplices.begin(), simplices.end(), t) != simplices.end();
}

std::vector<GenSet> Nerve::simplices_containing(int s) const {
  std::vector<GenSet> out;
  for (GenSet t : simplices)
    if (gs_contains(t, s)) out.push_back(t);
  return out;
}

std::vector<int> Nerve::star_vertices(int s) const {
  GenSet star = 0;
  for (GenSet t : simplices)
    if (gs_contains(t, s)) star |= t;
  return gs_members(star);
}

int Nerve::edge_count() const {
  int n = 0;
  for (GenSet t : simplices)
    if (gs_size(t) == 2) ++n;
  return n;
}

int Nerve::distance(int s, int t) const {
  if (s == t) return 0;
  std::vector<int> dist(vertex_count(), -1);
  std::deque<int> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < vertex_count(); ++v) {
      if (dist[v] >= 0 || v == u) continue;
      if (sys.finite_label(u, v)) {
        dist[v] = dist[u] + 1;
        if (v == t) return dist[v];
        queue.push_back(v);
      }
    }
  }
  return dist[t];
}

Nerve build_nerve(const CoxeterSystem& sys) {
  Nerve nerve{sys, {}};
  std::vector<GenSet> level;
  for (int s = 0; s < sys.rank(); ++s) level.push_back(gs_with(0, s));
  std::set<GenSet> known(level.begin(), level.end());
  nerve.simplices = level;
  while (!level.empty()) {
    std::vector<GenSet> next;
    for (GenSet t : level) {
      int top = 63 - __builtin_clzll(t);
      for (int s = top + 1; s < sys.rank(); ++s) {
        GenSet cand = gs_with(t, s);
        if (known.count(cand)) continue;
        // all facets must already be simplices
        bool facets_ok = true;
        for (int u : gs_members(cand))
          if (gs_size(cand) > 1 && !known.count(gs_without(cand, u))) {
            facets_ok = false;
            break;
          }
        if (!facets_ok) continue;
        if (is_spherical(sys, cand)) {
          known.insert(cand);
          next.push_back(cand);
        }
      }
    }
    nerve.simplices.insert(nerve.simplices.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(nerve.simplices.begin(), nerve.simplices.end(),
            [](GenSet a, GenSet b) {
              return std::pair(gs_size(a), a) < std::pair(gs_size(b), b);
            });
  return nerve;
}

GenSet LabelAut::apply(GenSet t) const {
  GenSet out = 0;
  for (int s : gs_members(t)) out = gs_with(out, perm[s]);
  return out;
}

bool LabelAut::is_identity() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

int perm_order(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  long long order = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = perm[j];
      ++len;
    }
    order = std::lcm(order, static_cast<long long>(len));
  }
  return static_cast<int>(order);
}

LabelAut make_label_aut(std::vector<int> perm) {
  LabelAut a;
  a.order = perm_order(perm);
  a.perm = std::move(perm);
  return a;
}

std::vector<LabelAut> label_automorphisms(const Nerve& nerve,
                                          const AutOptions& opts) {
  int n = nerve.vertex_count();
  if (n > opts.max_vertices)
    throw ResourceError("automorphism search bound exceeded (" +
                        std::to_string(n) + " vertices)");
  // Pruning invariant: the sorted multiset of labels to all other vertices.
  std::vector<std::vector<unsigned>> profile(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u)
      if (u != v) profile[v].push_back(nerve.label(v, u));
    std::sort(profile[v].begin(), profile[v].end());
  }
  std::vector<LabelAut> out;
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  auto backtrack = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back(make_label_aut(image));
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c] || profile[v] != profile[c]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        ok = nerve.label(u, v) == nerve.label(image[u], c);
      if (!ok) continue;
      image[v] = c;
      used[c] = 1;
      self(self, v + 1);
      image[v] = -1;
      used[c] = 0;
    }
  };
  backtrack(backtrack, 0);
  return out;  // backtracking order is lexicographic; identity comes first
}

bool fixes_star(const Nerve& nerve, const LabelAut& a, int s) {
  if (a(s) != s) return false;
  for (GenSet t : nerve.simplices) {
    if (!gs_contains(t, s)) continue;
    for (int u : gs_members(t))
      if (a(u) != u) return false;
  }
  return true;
}

std::optional<std::pair<LabelAut, int>> nondiscreteness_check(
    const Nerve& nerve, const AutOptions& opts) {
  auto auts = label_automorphisms(nerve, opts);
  for (const auto& a : auts) {
    if (a.is_identity()) continue;
    for (int s = 0; s < nerve.vertex_count(); ++s)
      if (fixes_star(nerve, a, s)) return std::pair(a, s);
  }
  return std::nullopt;
}

bool all_containing_halvable(const CoxeterSystem& sys, const Nerve& nerve,
                             int s, const EnumOptions& opts) {
  for (GenSet t : nerve.simplices_containing(s)) {
    auto sph = is_spherical(sys, t);
    assert(sph);
    if (!halving(sys, *sph, s, opts)) return false;
  }
  return true;
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool orbit_images_infinite(const CoxeterSystem& sys, const LabelAut& alpha,
                           int s) {
  int t = alpha(s);
  while (t != s) {
    if (sys.finite_label(s, t)) return false;
    t = alpha(t);
  }
  return true;
}

std::vector<Witness> find_witnesses(const Nerve& nerve,
                                    const WitnessOptions& opts) {
  const CoxeterSystem& sys = nerve.sys;
  auto auts = label_automorphisms(nerve, opts.aut);
  int n = nerve.vertex_count();

  // Prime-order automorphisms fixing each star, in list order.  Powers of
  // composite-order star-fixers appear here on their own: the list of
  // automorphisms is closed under composition, so every prime-order power is
  // already a member.
  std::vector<std::vector<int>> star_fixers(n);
  for (size_t i = 0; i < auts.size(); ++i) {
    if (!is_prime(auts[i].order)) continue;
    for (int s = 0; s < n; ++s)
      if (fixes_star(nerve, auts[i], s)) star_fixers[s].push_back(i);
  }

  std::vector<int> halvable(n, -1);  // lazy: -1 unknown, 0 no, 1 yes
  auto halvable_ok = [&](int s) {
    if (halvable[s] < 0)
      halvable[s] =
          all_containing_halvable(sys, nerve, s, opts.enumeration) ? 1 : 0;
    return halvable[s] == 1;
  };

  std::vector<Witness> out;
  for (int s1 = 0; s1 < n; ++s1) {
    for (int s2 = 0; s2 < n; ++s2) {
      for (int i1 : star_fixers[s2]) {
        const LabelAut& a1 = auts[i1];
        if (a1(s1) == s1) continue;
        if (!orbit_images_infinite(sys, a1, s1)) continue;
        for (int i2 : star_fixers[s1]) {
          const LabelAut& a2 = auts[i2];
          if (a2(s2) == s2) continue;
          if (!orbit_images_infinite(sys, a2, s2)) continue;
          if (!halvable_ok(s1) || !halvable_ok(s2)) continue;
          out.push_back(Witness{s1, s2, a1, a2, a1.order, a2.order});
        }
      }
    }
  }
  return out;
}

std::vector<Witness> find_witnesses(const CoxeterSystem& sys,
                                    const WitnessOptions& opts) {
  return find_witnesses(build_nerve(sys), opts);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

CoxeterSystem graph_system(std::vector<std::string> names,
                           const std::vector<std::pair<int, int>>& edges,
                           unsigned m) {
  int rank = static_cast<int>(names.size());
  std::vector<unsigned> mat(rank * rank, kInfLabel);
  for (int i = 0; i < rank; ++i) mat[i * rank + i] = 1;
  for (auto [a, b] : edges) {
    mat[a * rank + b] = m;
    mat[b * rank + a] = m;
  }
  return CoxeterSystem(std::move(names), std::move(mat));
}

CoxeterSystem make_complete_bipartite(int q, int qp, int m) {
  if (q < 1 || qp < 1 || m < 2)
    throw std::invalid_argument("complete_bipartite needs q,q' >= 1, m >= 2");
  std::vector<std::string> names;
  for (int i = 1; i <= q; ++i) names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= qp; ++i) names.push_back("b" + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < qp; ++j) edges.emplace_back(i, q + j);
  return graph_system(std::move(names), edges, m);
}

std::string bits3(int v) {
  std::string s;
  for (int i = 2; i >= 0; --i) s += char('0' + ((v >> i) & 1));
  return s;
}

// Incidence graph of the Fano plane: points are the nonzero vectors of
// F_2^3, lines the kernels of the nonzero functionals; p on L iff <f,v> = 0.
CoxeterSystem make_gl32_building(int m) {
  if (m < 2) throw std::invalid_argument("gl32_building needs m >= 2");
  std::vector<std::string> names;
  for (int v = 1; v <= 7; ++v) names.push_back("p" + bits3(v));
  for (int f = 1; f <= 7; ++f) names.push_back("L" + bits3(f));
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= 7; ++v)
    for (int f = 1; f <= 7; ++f)
      if (__builtin_popcount(v & f) % 2 == 0)
        edges.emplace_back(v - 1, 7 + f - 1);
  return graph_system(std::move(names), edges, m);
}

CoxeterSystem make_petersen(int m) {
  if (m < 2) throw std::invalid_argument("petersen needs m >= 2");
  std::vector<std::string> names;
  for (int i = 1; i <= 5; ++i) names.push_back("o" + std::to_string(i));
  for (int i = 1; i <= 5; ++i) names.push_back("i" + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);                // spokes
  }
  return graph_system(std::move(names), edges, m);
}

CoxeterSystem make_join_of_points(const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("join_of_points needs sizes");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("part sizes must be >= 1");
  std::vector<std::string> names;
  std::vector<int> part_of;
  for (size_t p = 0; p < sizes.size(); ++p)
    for (int i = 1; i <= sizes[p]; ++i) {
      names.push_back(std::string(1, char('a' + p)) + std::to_string(i));
      part_of.push_back(static_cast<int>(p));
    }
  std::vector<std::pair<int, int>> edges;
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (part_of[i] != part_of[j]) edges.emplace_back(i, j);
  return graph_system(std::move(names), edges, 2);
}

}  // namespace

CoxeterSystem catalog(const std::string& name,
                      const std::vector<int>& params) {
  auto need = [&](size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("catalog " + name + " expects " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (name == "complete_bipartite") {
    need(3);
    return make_complete_bipartite(params[0], params[1], params[2]);
  }
  if (name == "gl32_building") {
    need(1);
    return make_gl32_building(params[0]);
  }
  if (name == "petersen") {
    need(1);
    return make_petersen(params[0]);
  }
  if (name == "join_of_points") return make_join_of_points(params);
  throw std::invalid_argument("unknown catalog name '" + name + "'");
}

CoxeterSystem catalog_parse(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw std::invalid_argument("expected name(arg,...) but got '" + spec +
                                "'");
  std::string name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<int> params;
  std::istringstream in(args);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      params.push_back(std::stoi(tok));
    } catch (...) {
      throw std::invalid_argument("bad catalog parameter '" + tok + "'");
    }
  }
  return catalog(name, params);
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"complete_bipartite", "complete_bipartite(q,q',m)",
       "complete bipartite nerve K_{q,q'}, finite labels m"},
      {"gl32_building", "gl32_building(m)",
       "incidence graph of the Fano plane (Heawood graph), labels m"},
      {"petersen", "petersen(m)", "Petersen graph nerve, labels m"},
      {"join_of_points", "join_of_points(n1,...,nk)",
       "join of k point sets; all join edges labeled 2"},
  };
  return entries;
}

}  // namespace coxlat
