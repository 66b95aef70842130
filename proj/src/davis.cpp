#include "coxlat/davis.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

namespace coxlat {

namespace {

std::string type_string(const CoxeterSystem& sys, GenSet t) {
  if (t == 0) return "{}";
  std::string out = "{";
  bool first = true;
  for (int s : gs_members(t)) {
    if (!first) out += ",";
    out += sys.name(s);
    first = false;
  }
  return out + "}";
}

std::vector<int> perm_power(const std::vector<int>& p, int e) {
  std::vector<int> out(p.size());
  std::iota(out.begin(), out.end(), 0);
  for (int i = 0; i < e; ++i) {
    std::vector<int> next(p.size());
    for (size_t v = 0; v < p.size(); ++v) next[v] = p[out[v]];
    out = next;
  }
  return out;
}

GenSet apply_perm(const std::vector<int>& p, GenSet t) {
  GenSet out = 0;
  for (int s : gs_members(t)) out = gs_with(out, p[s]);
  return out;
}

}  // namespace

GroupPtr GroupCache::full(const CoxeterSystem& sys, GenSet t) {
  auto it = full_.find(t);
  if (it != full_.end()) return it->second;
  auto sph = is_spherical(sys, t);
  if (!sph)
    throw std::invalid_argument("subset " + type_string(sys, t) +
                                " is not spherical");
  auto g = enumerate_group(sys, *sph, opts_);
  full_[t] = g;
  return g;
}

const HalfTable& GroupCache::half(const CoxeterSystem& sys, GenSet t, int s) {
  auto key = std::pair(t, s);
  auto it = half_.find(key);
  if (it != half_.end()) return it->second;
  auto sph = is_spherical(sys, t);
  if (!sph)
    throw std::invalid_argument("subset " + type_string(sys, t) +
                                " is not spherical");
  auto sub = halving(sys, *sph, s, opts_);
  if (!sub) throw NotHalvableError(sys, t, s);
  GroupPtr parent = full(sys, t);
  auto table = subgroup_table(parent, sub->members, opts_.dense_bound);
  HalfTable half;
  half.table = table.table;
  half.embed = table.embed;
  half.members = sub->members;
  return half_.emplace(key, std::move(half)).first->second;
}

NotHalvableError::NotHalvableError(const CoxeterSystem& sys, GenSet t, int s)
    : std::runtime_error("W_" + type_string(sys, t) +
                         " is not halvable along " + sys.name(s)),
      subset(t), gen(s) {}

std::string chamber_name(const ChamberId& c) {
  std::string out = "K(" + std::to_string(c.level) + ";";
  for (size_t i = 0; i < c.js.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.js[i]);
  }
  return out + ")";
}

int ChamberComplex::level_of_class(int v) const {
  int level = chambers[members[v][0].first].level;
  for (auto [c, t] : members[v]) level = std::min(level, chambers[c].level);
  return level;
}

std::vector<int> ChamberComplex::chambers_of_class(int v) const {
  std::vector<int> out;
  for (auto [c, t] : members[v]) out.push_back(c);
  return out;
}

std::vector<int> ChamberComplex::mirror_vertices(int chamber, int s) const {
  std::vector<int> out;
  for (size_t ti = 0; ti < types.size(); ++ti)
    if (gs_contains(types[ti], s))
      out.push_back(vertex_of(chamber, static_cast<int>(ti)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> ChamberComplex::chambers_per_level() const {
  std::vector<int> out(n, 0);
  for (const auto& c : chambers) ++out[c.level - 1];
  return out;
}

namespace {

// Union-find
struct UF {
  std::vector<int> parent;
  explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

ChamberComplex assemble(const CoxeterSystem& sys,
                        std::optional<Witness> witness, int n,
                        std::vector<ChamberId> chambers,
                        std::vector<ChamberComplex::DualEdge> dual_edges) {
  ChamberComplex y{sys, std::move(witness), n, {}, {}, std::move(chambers),
                   std::move(dual_edges), {}, {}, {}, {}, {}, {}, {}};

  auto nerve = build_nerve(sys);
  y.types.push_back(0);
  for (GenSet t : nerve.simplices) y.types.push_back(t);
  for (size_t i = 0; i < y.types.size(); ++i)
    y.type_index[y.types[i]] = static_cast<int>(i);

  int nc = y.chamber_count();
  int nt = static_cast<int>(y.types.size());
  UF uf(nc * nt);
  for (const auto& de : y.dual_edges)
    for (int ti = 0; ti < nt; ++ti)
      if (gs_contains(y.types[ti], de.gen))
        uf.unite(de.child * nt + ti, de.parent * nt + ti);

  y.pair_class.assign(nc * nt, -1);
  for (int c = 0; c < nc; ++c)
    for (int ti = 0; ti < nt; ++ti) {
      int root = uf.find(c * nt + ti);
      if (y.pair_class[root] < 0) {
        y.pair_class[root] = static_cast<int>(y.members.size());
        y.members.push_back({});
      }
      int cls = y.pair_class[root];
      y.pair_class[c * nt + ti] = cls;
      y.members[cls].emplace_back(c, ti);
    }

  // structure checks: Cor 4.3
  for (size_t v = 0; v < y.members.size(); ++v)
    if (y.members[v].size() > 2)
      y.structure_report.add("chamber.vertex-in-two",
                             "class " + std::to_string(v),
                             "vertex lies in " +
                                 std::to_string(y.members[v].size()) +
                                 " chambers");
  {
    std::vector<int> mirror_count(y.members.size(), 0);
    y.interior_gen.assign(y.members.size(), std::nullopt);
    for (const auto& de : y.dual_edges)
      for (int ti = 0; ti < nt; ++ti)
        if (gs_contains(y.types[ti], de.gen)) {
          int v = y.vertex_of(de.child, ti);
          ++mirror_count[v];
          y.interior_gen[v] = de.gen;
        }
    for (size_t v = 0; v < y.members.size(); ++v) {
      if (mirror_count[v] > 1)
        y.structure_report.add("chamber.mirrors-disjoint",
                               "class " + std::to_string(v),
                               "vertex lies in " +
                                   std::to_string(mirror_count[v]) +
                                   " interior mirrors");
      if ((y.members[v].size() == 2) != (mirror_count[v] >= 1))
        y.structure_report.add("chamber.shared-iff-mirror",
                               "class " + std::to_string(v),
                               "sharing does not match mirror membership");
    }
  }

  // vertex payloads
  y.scwol.vdata.reserve(y.members.size());
  for (size_t v = 0; v < y.members.size(); ++v) {
    auto [c, ti] = y.members[v][0];
    ScwolVertexData data;
    data.point_type = y.types[ti];
    data.level = y.level_of_class(static_cast<int>(v));
    data.name = chamber_name(y.chambers[c]) + type_string(sys, y.types[ti]);
    y.scwol.vdata.push_back(std::move(data));
  }

  // edges: strict type inclusion inside a chamber
  for (int c = 0; c < nc; ++c)
    for (int ti = 0; ti < nt; ++ti)
      for (int tj = 0; tj < nt; ++tj) {
        GenSet a = y.types[ti], b = y.types[tj];
        if (a == b || (a & b) != a) continue;  // need a strictly inside b
        int u = y.vertex_of(c, ti), v = y.vertex_of(c, tj);
        auto key = std::pair(u, v);
        if (y.edge_index.count(key)) continue;
        y.edge_index[key] = y.scwol.add_edge(u, v);
        y.edge_chamber.push_back(c);
      }
  // compositions
  for (auto& [key_a, a] : y.edge_index)
    for (auto& [key_b, b] : y.edge_index) {
      if (key_a.first != key_b.second) continue;  // i(a) = t(b)
      auto ab = y.edge_index.find({key_b.first, key_a.second});
      if (ab == y.edge_index.end()) {
        y.structure_report.add(
            "chamber.composition",
            "(" + std::to_string(a) + "," + std::to_string(b) + ")",
            "missing transitive edge");
        continue;
      }
      y.scwol.comp[{a, b}] = ab->second;
    }
  return y;
}

}  // namespace

ChamberComplex build_chamber(const CoxeterSystem& sys) {
  return assemble(sys, std::nullopt, 1, {ChamberId{1, {}}}, {});
}

Word w_word(const Witness& wit, int n, int k, const std::vector<int>& js) {
  if (k < 1 || k > n || static_cast<int>(js.size()) != n - k)
    throw std::invalid_argument("w_word index out of range");
  for (int i = n - 1; i >= k; --i) {
    int j = js[n - 1 - i];
    if (j < 0 || j >= wit.q(i))
      throw std::invalid_argument("w_word subscript out of range");
  }
  Word w;
  for (int i = 1; i <= n - 1; ++i) w.push_back(wit.s(i));
  std::vector<int> perm(wit.alpha1.perm.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i >= k; --i) {
    auto step = perm_power(wit.alpha(i).perm, js[n - 1 - i]);
    std::vector<int> next(perm.size());
    for (size_t v = 0; v < perm.size(); ++v) next[v] = perm[step[v]];
    perm = next;  // alpha^{j_{n-1},...,j_i}
    w.push_back(perm[wit.s(i)]);
  }
  return w;
}

DisjointnessReport verify_disjointness(const Witness& wit,
                                       const CoxeterSystem& sys, int n,
                                       int word_bound) {
  DisjointnessReport report;
  std::vector<std::pair<std::string, Word>> reduced;  // (set name, canonical)
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> tuples{{}};
    for (int i = n - 1; i >= k; --i) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples)
        for (int j = 0; j < wit.q(i); ++j) {
          auto u = t;
          u.push_back(j);
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
    for (const auto& js : tuples) {
      Word w = w_word(wit, n, k, js);
      std::string name = "W_{" + std::to_string(k) + "," + std::to_string(n) +
                         "} js=(";
      for (size_t i = 0; i < js.size(); ++i)
        name += (i ? "," : "") + std::to_string(js[i]);
      name += ")";
      reduced.emplace_back(name, word_reduce(sys, w, word_bound));
    }
  }
  report.word_count = static_cast<int>(reduced.size());
  for (size_t i = 0; i < reduced.size(); ++i)
    for (size_t j = i + 1; j < reduced.size(); ++j)
      if (reduced[i].second == reduced[j].second) {
        ++report.collisions;
        report.details.push_back(reduced[i].first + " = " + reduced[j].first);
      }
  report.pass = report.collisions == 0;
  return report;
}

ChamberComplex build_Yn(const Witness& wit, const CoxeterSystem& sys, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::vector<ChamberId> chambers;
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> tuples{{}};
    for (int i = n - 1; i >= k; --i) {
      std::vector<std::vector<int>> next;
      for (const auto& t : tuples)
        for (int j = 0; j < wit.q(i); ++j) {
          auto u = t;
          u.push_back(j);
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
    std::sort(tuples.begin(), tuples.end());
    for (auto& js : tuples) {
      index[{k, js}] = static_cast<int>(chambers.size());
      chambers.push_back(ChamberId{k, js});
    }
  }
  std::vector<ChamberComplex::DualEdge> dual;
  for (size_t c = 0; c < chambers.size(); ++c) {
    const auto& id = chambers[c];
    if (id.level >= n) continue;
    auto parent_js = id.js;
    parent_js.pop_back();
    int parent = index.at({id.level + 1, parent_js});
    // mirror type alpha^{j_{n-1},...,j_k}(s_k)
    std::vector<int> perm(sys.rank());
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i >= id.level; --i) {
      auto step = perm_power(wit.alpha(i).perm, id.js[n - 1 - i]);
      std::vector<int> next(perm.size());
      for (size_t v = 0; v < perm.size(); ++v) next[v] = perm[step[v]];
      perm = next;
    }
    dual.push_back({static_cast<int>(c), parent, perm[wit.s(id.level)]});
  }
  return assemble(sys, wit, n, std::move(chambers), std::move(dual));
}

std::vector<SubcomplexIso> subcomplex_isos(const ChamberComplex& prev,
                                           const ChamberComplex& cur) {
  if (!cur.witness || cur.n < 2 || prev.n != cur.n - 1)
    throw std::invalid_argument("subcomplex_isos needs Y_{n-1} and Y_n");
  const Witness& wit = *cur.witness;
  int n = cur.n;
  std::map<std::pair<int, std::vector<int>>, int> cur_index;
  for (int c = 0; c < cur.chamber_count(); ++c)
    cur_index[{cur.chambers[c].level, cur.chambers[c].js}] = c;

  std::vector<SubcomplexIso> out;
  for (int j = 0; j < wit.q(n - 1); ++j) {
    SubcomplexIso iso;
    iso.j = j;
    iso.type_transport = perm_power(wit.alpha(n - 1).perm, j);
    iso.chamber_map.resize(prev.chamber_count());
    for (int c = 0; c < prev.chamber_count(); ++c) {
      std::vector<int> js{j};
      js.insert(js.end(), prev.chambers[c].js.begin(),
                prev.chambers[c].js.end());
      iso.chamber_map[c] = cur_index.at({prev.chambers[c].level, js});
    }
    iso.vertex_map.assign(prev.members.size(), -1);
    for (size_t v = 0; v < prev.members.size(); ++v) {
      for (auto [c, ti] : prev.members[v]) {
        GenSet tt = apply_perm(iso.type_transport, prev.types[ti]);
        int image = cur.vertex_of(iso.chamber_map[c], cur.type_index.at(tt));
        if (iso.vertex_map[v] >= 0 && iso.vertex_map[v] != image)
          throw std::logic_error("subcomplex map not well defined on classes");
        iso.vertex_map[v] = image;
      }
    }
    out.push_back(std::move(iso));
  }
  return out;
}

namespace {

GYn build_gyn_impl(std::shared_ptr<const ChamberComplex> y,
                   GroupCache& cache) {
  const CoxeterSystem& sys = y->sys;
  GYn gyn;
  gyn.complex = y;
  auto cog = std::make_shared<ComplexOfGroups>();
  cog->base = y->scwol;

  int nv = static_cast<int>(y->members.size());
  cog->local.resize(nv);
  gyn.to_full.resize(nv);
  for (int v = 0; v < nv; ++v) {
    GenSet t = y->types[y->members[v][0].second];
    if (y->interior_gen[v]) {
      const HalfTable& half = cache.half(sys, t, *y->interior_gen[v]);
      cog->local[v] = half.table;
      gyn.to_full[v] = half.embed;
    } else {
      cog->local[v] = cache.full(sys, t);
      gyn.to_full[v].resize(cog->local[v]->size());
      std::iota(gyn.to_full[v].begin(), gyn.to_full[v].end(), 0);
    }
  }

  int ne = y->scwol.edge_count();
  cog->psi.resize(ne);
  gyn.rule.assign(ne, GYn::EdgeRule::Inclusion);
  gyn.rule_gen.assign(ne, -1);
  for (auto& [key, a] : y->edge_index) {
    auto [u, v] = key;
    GenSet tu = y->types[y->members[u][0].second];
    GenSet tv = y->types[y->members[v][0].second];
    GroupPtr full_u = cache.full(sys, tu);
    GroupPtr full_v = cache.full(sys, tv);

    bool ad = false;
    int mirror = -1;
    if (!y->interior_gen[u] && y->interior_gen[v]) {
      mirror = *y->interior_gen[v];
      int cu = y->members[u][0].first;  // unique chamber of u
      int other = -1;
      for (auto [c, ti] : y->members[v])
        if (c != cu) other = c;
      assert(other >= 0);
      ad = y->chambers[other].level == y->chambers[cu].level + 1;
    }
    gyn.rule[a] = ad ? GYn::EdgeRule::AdS : GYn::EdgeRule::Inclusion;
    gyn.rule_gen[a] = ad ? mirror : -1;

    // index map: through W_{T_u} words into W_{T_v}, then into the half
    // table when the target is an interior-mirror vertex
    const auto& src = *cog->local[u];
    std::vector<int> map(src.size());
    const HalfTable* tgt_half =
        y->interior_gen[v] ? &cache.half(sys, tv, *y->interior_gen[v])
                           : nullptr;
    std::vector<int> parent_to_half;
    if (tgt_half) {
      parent_to_half.assign(full_v->size(), -1);
      for (size_t i = 0; i < tgt_half->embed.size(); ++i)
        parent_to_half[tgt_half->embed[i]] = static_cast<int>(i);
    }
    int gs = ad ? full_v->gen_image(mirror) : -1;
    for (int x = 0; x < src.size(); ++x) {
      int in_full_u = gyn.to_full[u][x];
      int image = full_v->eval_word(full_u->word_of(in_full_u));
      if (ad) image = full_v->mul(full_v->mul(gs, image), gs);
      if (tgt_half) {
        image = parent_to_half[image];
        if (image < 0)
          throw std::logic_error("edge map image escapes the halving at " +
                                 y->scwol.vdata[v].name);
      }
      map[x] = image;
    }
    cog->psi[a] = std::move(map);
  }
  gyn.cog = cog;
  return gyn;
}

}  // namespace

GYn build_GY1(const CoxeterSystem& sys, GroupCache& cache) {
  return build_gyn_impl(std::make_shared<ChamberComplex>(build_chamber(sys)),
                        cache);
}

GYn build_GYn(const Witness& wit, const CoxeterSystem& sys, int n,
              GroupCache& cache) {
  return build_gyn_impl(
      std::make_shared<ChamberComplex>(build_Yn(wit, sys, n)), cache);
}

CogMorphism build_covering_to_GY1(const GYn& gyn, const GYn& gy1) {
  const ChamberComplex& y = *gyn.complex;
  const ChamberComplex& k1 = *gy1.complex;
  if (k1.n != 1 || k1.chamber_count() != 1)
    throw std::invalid_argument("target must be G(Y_1)");

  CogMorphism m;
  m.source = gyn.cog;
  m.target = gy1.cog;
  m.f.vmap.resize(y.members.size());
  for (size_t v = 0; v < y.members.size(); ++v)
    m.f.vmap[v] = k1.vertex_of(0, y.members[v][0].second);
  m.f.emap.assign(y.scwol.edge_count(), -1);
  for (auto& [key, a] : y.edge_index)
    m.f.emap[a] = k1.edge_index.at({m.f.vmap[key.first], m.f.vmap[key.second]});
  m.local_maps = gyn.to_full;
  m.edge_elts.assign(y.scwol.edge_count(), 0);
  for (int a = 0; a < y.scwol.edge_count(); ++a)
    if (gyn.rule[a] == GYn::EdgeRule::AdS) {
      int tv = m.f.vmap[y.scwol.edges[a].to];
      m.edge_elts[a] = gy1.cog->local[tv]->gen_image(gyn.rule_gen[a]);
    }
  return m;
}

Subdivision subdivide(const ChamberComplex& y) {
  Subdivision sd;
  int nt = static_cast<int>(y.types.size());

  // enumerate chains per chamber
  for (int c = 0; c < y.chamber_count(); ++c) {
    std::vector<std::vector<int>> stack;  // chains of type indices
    for (int ti = 0; ti < nt; ++ti) stack.push_back({ti});
    while (!stack.empty()) {
      auto chain_types = stack.back();
      stack.pop_back();
      std::vector<int> chain;
      for (int ti : chain_types) chain.push_back(y.vertex_of(c, ti));
      auto it = sd.chain_index.find(chain);
      int idx;
      if (it == sd.chain_index.end()) {
        idx = sd.scwol.add_vertex({});
        sd.chain_index[chain] = idx;
        sd.chains.push_back(chain);
        sd.min_vertex.push_back(chain.front());
        sd.chamber.push_back(c);
        auto& data = sd.scwol.vdata[idx];
        data.level = y.chambers[c].level;
        if (chain.size() == 1)
          data.point_type = y.types[chain_types[0]];
        data.name = "sd" + std::to_string(idx);
      } else {
        idx = it->second;
        sd.scwol.vdata[idx].level =
            std::min(sd.scwol.vdata[idx].level, y.chambers[c].level);
      }
      int last = chain_types.back();
      for (int tj = 0; tj < nt; ++tj) {
        GenSet a = y.types[last], b = y.types[tj];
        if (a != b && (a & b) == a) {
          auto ext = chain_types;
          ext.push_back(tj);
          stack.push_back(std::move(ext));
        }
      }
    }
  }

  // edges: from each simplex to each proper nonempty face
  auto& eidx = sd.edge_index;
  for (size_t ci = 0; ci < sd.chains.size(); ++ci) {
    const auto& chain = sd.chains[ci];
    int len = static_cast<int>(chain.size());
    if (len < 2) continue;
    for (int mask = 1; mask < (1 << len) - 1; ++mask) {
      std::vector<int> sub;
      for (int p = 0; p < len; ++p)
        if (mask & (1 << p)) sub.push_back(chain[p]);
      int fi = sd.chain_index.at(sub);
      eidx[{static_cast<int>(ci), fi}] =
          sd.scwol.add_edge(static_cast<int>(ci), fi);
    }
  }
  for (auto& [key_a, a] : eidx)
    for (auto& [key_b, b] : eidx) {
      if (key_b.second != key_a.first) continue;  // b: D -> C, a: C -> C'
      sd.scwol.comp[{a, b}] = eidx.at({key_b.first, key_a.second});
    }
  return sd;
}

CogPtr subdivide_cog(const GYn& gyn, const Subdivision& sd) {
  const ChamberComplex& y = *gyn.complex;
  auto cog = std::make_shared<ComplexOfGroups>();
  cog->base = sd.scwol;
  cog->local.resize(sd.scwol.vertex_count());
  for (int v = 0; v < sd.scwol.vertex_count(); ++v)
    cog->local[v] = gyn.cog->local[sd.min_vertex[v]];
  cog->psi.resize(sd.scwol.edge_count());
  for (int a = 0; a < sd.scwol.edge_count(); ++a) {
    int u = sd.min_vertex[sd.scwol.edges[a].from];
    int v = sd.min_vertex[sd.scwol.edges[a].to];
    if (u == v) {
      cog->psi[a].resize(cog->local[sd.scwol.edges[a].from]->size());
      std::iota(cog->psi[a].begin(), cog->psi[a].end(), 0);
    } else {
      cog->psi[a] = gyn.cog->psi[y.edge_index.at({u, v})];
    }
  }
  return cog;
}

std::string dual_graph_dot(const ChamberComplex& y) {
  std::ostringstream out;
  out << "graph dual {\n";
  for (int c = 0; c < y.chamber_count(); ++c)
    out << "  \"" << chamber_name(y.chambers[c]) << "\";\n";
  for (const auto& de : y.dual_edges)
    out << "  \"" << chamber_name(y.chambers[de.child]) << "\" -- \""
        << chamber_name(y.chambers[de.parent]) << "\" [label=\""
        << y.sys.name(de.gen) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace coxlat
