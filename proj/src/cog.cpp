#include "coxlat/cog.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace coxlat {

int Scwol::add_vertex(ScwolVertexData data) {
  vdata.push_back(std::move(data));
  return vertex_count() - 1;
}

int Scwol::add_edge(int from, int to) {
  edges.push_back({from, to});
  return edge_count() - 1;
}

std::optional<int> Scwol::compose(int a, int b) const {
  auto it = comp.find({a, b});
  if (it == comp.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<int, int>> Scwol::composable_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < edge_count(); ++a)
    for (int b = 0; b < edge_count(); ++b)
      if (edges[a].from == edges[b].to) out.emplace_back(a, b);
  return out;
}

void Report::add(std::string axiom, std::string location,
                 std::string details) {
  violations.push_back(
      {std::move(axiom), std::move(location), std::move(details)});
}

std::string Report::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (size_t i = 0; i < violations.size() && i < 5; ++i)
    out << "; [" << violations[i].axiom << "] at " << violations[i].location
        << ": " << violations[i].details;
  return out.str();
}

namespace {

std::string edge_str(const Scwol& x, int a) {
  return "edge " + std::to_string(a) + " (" + std::to_string(x.edges[a].from) +
         "->" + std::to_string(x.edges[a].to) + ")";
}

}  // namespace

Report validate_scwol(const Scwol& x) {
  Report report;
  for (int a = 0; a < x.edge_count(); ++a) {
    const auto& e = x.edges[a];
    if (e.from < 0 || e.from >= x.vertex_count() || e.to < 0 ||
        e.to >= x.vertex_count()) {
      report.add("scwol.edge-range", edge_str(x, a), "endpoint out of range");
      continue;
    }
    if (e.from == e.to)
      report.add("scwol.no-loops", edge_str(x, a), "i(a) = t(a)");
  }
  for (auto& [key, c] : x.comp) {
    auto [a, b] = key;
    if (a < 0 || a >= x.edge_count() || b < 0 || b >= x.edge_count() ||
        c < 0 || c >= x.edge_count()) {
      report.add("scwol.composition-range",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "edge index out of range");
      continue;
    }
    if (x.edges[a].from != x.edges[b].to)
      report.add("scwol.composition-domain",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "composition defined on a non-composable pair");
  }
  for (auto [a, b] : x.composable_pairs()) {
    auto ab = x.compose(a, b);
    std::string loc = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (!ab) {
      report.add("scwol.composition-total", loc,
                 "composable pair without a composition");
      continue;
    }
    if (x.edges[*ab].from != x.edges[b].from)
      report.add("scwol.i(ab)=i(b)", loc, "initial vertex mismatch");
    if (x.edges[*ab].to != x.edges[a].to)
      report.add("scwol.t(ab)=t(a)", loc, "terminal vertex mismatch");
  }
  // associativity on composable triples
  for (int a = 0; a < x.edge_count(); ++a)
    for (int b = 0; b < x.edge_count(); ++b) {
      if (x.edges[a].from != x.edges[b].to) continue;
      for (int c = 0; c < x.edge_count(); ++c) {
        if (x.edges[b].from != x.edges[c].to) continue;
        auto ab = x.compose(a, b);
        auto bc = x.compose(b, c);
        if (!ab || !bc) continue;
        auto left = x.compose(*ab, c);
        auto right = x.compose(a, *bc);
        if (!left || !right || *left != *right)
          report.add("scwol.associativity",
                     "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")",
                     "(ab)c != a(bc)");
      }
    }
  return report;
}

Report validate_action(const Scwol& x, const ScwolAction& act) {
  Report report;
  const auto& g = *act.group;
  int n = g.size();
  if (static_cast<int>(act.on_vertices.size()) != n ||
      static_cast<int>(act.on_edges.size()) != n) {
    report.add("action.shape", "-", "permutation arrays do not match |H|");
    return report;
  }
  for (int h = 0; h < n; ++h) {
    if (static_cast<int>(act.on_vertices[h].size()) != x.vertex_count() ||
        static_cast<int>(act.on_edges[h].size()) != x.edge_count()) {
      report.add("action.shape", "element " + std::to_string(h),
                 "permutation size mismatch");
      return report;
    }
  }
  for (int v = 0; v < x.vertex_count(); ++v)
    if (act.on_vertices[0][v] != v)
      report.add("action.identity", "vertex " + std::to_string(v),
                 "identity element moves a vertex");
  for (int a = 0; a < x.edge_count(); ++a)
    if (act.on_edges[0][a] != a)
      report.add("action.identity", edge_str(x, a),
                 "identity element moves an edge");

  for (int h = 0; h < n; ++h) {
    // bijective, structure-preserving
    std::vector<char> seen(x.vertex_count(), 0);
    for (int v = 0; v < x.vertex_count(); ++v) {
      int w = act.on_vertices[h][v];
      if (w < 0 || w >= x.vertex_count() || seen[w]) {
        report.add("action.vertex-bijection", "element " + std::to_string(h),
                   "not a vertex permutation");
        break;
      }
      seen[w] = 1;
    }
    for (int a = 0; a < x.edge_count(); ++a) {
      int b = act.on_edges[h][a];
      if (b < 0 || b >= x.edge_count()) {
        report.add("action.edge-range", "element " + std::to_string(h),
                   edge_str(x, a));
        continue;
      }
      if (x.edges[b].from != act.on_vertices[h][x.edges[a].from] ||
          x.edges[b].to != act.on_vertices[h][x.edges[a].to])
        report.add("action.incidence",
                   "element " + std::to_string(h) + ", " + edge_str(x, a),
                   "edge image does not match vertex images");
    }
    // composition equivariance
    for (auto [a, b] : x.composable_pairs()) {
      auto ab = x.compose(a, b);
      if (!ab) continue;
      auto hab = x.compose(act.on_edges[h][a], act.on_edges[h][b]);
      if (!hab || *hab != act.on_edges[h][*ab])
        report.add("action.composition",
                   "element " + std::to_string(h) + ", pair (" +
                       std::to_string(a) + "," + std::to_string(b) + ")",
                   "h.(ab) != (h.a)(h.b)");
    }
  }
  // homomorphism
  for (int h1 = 0; h1 < n; ++h1)
    for (int h2 = 0; h2 < n; ++h2) {
      int h12 = g.mul(h1, h2);
      for (int v = 0; v < x.vertex_count(); ++v)
        if (act.on_vertices[h12][v] !=
            act.on_vertices[h1][act.on_vertices[h2][v]]) {
          report.add("action.homomorphism",
                     "(" + std::to_string(h1) + "," + std::to_string(h2) + ")",
                     "vertex action is not multiplicative");
          goto next_pair;
        }
      for (int a = 0; a < x.edge_count(); ++a)
        if (act.on_edges[h12][a] != act.on_edges[h1][act.on_edges[h2][a]]) {
          report.add("action.homomorphism",
                     "(" + std::to_string(h1) + "," + std::to_string(h2) + ")",
                     "edge action is not multiplicative");
          goto next_pair;
        }
    next_pair:;
    }
  // Def 3.2 conditions
  for (int h = 0; h < n; ++h)
    for (int a = 0; a < x.edge_count(); ++a) {
      if (act.on_vertices[h][x.edges[a].from] == x.edges[a].to)
        report.add("action.no-inversion-1",
                   "element " + std::to_string(h) + ", " + edge_str(x, a),
                   "g.i(a) = t(a)");
      if (act.on_vertices[h][x.edges[a].from] == x.edges[a].from &&
          act.on_edges[h][a] != a)
        report.add("action.no-inversion-2",
                   "element " + std::to_string(h) + ", " + edge_str(x, a),
                   "g fixes i(a) but moves a");
    }
  return report;
}

int ComplexOfGroups::twist_of(int a, int b) const {
  auto it = twist.find({a, b});
  return it == twist.end() ? 0 : it->second;
}

bool ComplexOfGroups::is_simple() const {
  for (auto& [k, g] : twist)
    if (g != 0) return false;
  return true;
}

namespace {

bool is_homomorphism(const FiniteGroupTable& src, const FiniteGroupTable& dst,
                     const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.size()) return false;
  for (int x : map)
    if (x < 0 || x >= dst.size()) return false;
  if (map[0] != 0) return false;
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < src.size(); ++b)
      if (map[src.mul(a, b)] != dst.mul(map[a], map[b])) return false;
  return true;
}

bool is_injective(const std::vector<int>& map) {
  std::set<int> seen(map.begin(), map.end());
  return seen.size() == map.size();
}

}  // namespace

Report validate_cog(const ComplexOfGroups& c) {
  Report report;
  const Scwol& x = c.base;
  if (static_cast<int>(c.local.size()) != x.vertex_count()) {
    report.add("cog.shape", "-", "local group count != vertex count");
    return report;
  }
  if (static_cast<int>(c.psi.size()) != x.edge_count()) {
    report.add("cog.shape", "-", "edge map count != edge count");
    return report;
  }
  for (int a = 0; a < x.edge_count(); ++a) {
    const auto& psi = c.psi[a];
    const auto& gi = *c.local[x.edges[a].from];
    const auto& gt = *c.local[x.edges[a].to];
    if (static_cast<int>(psi.size()) != gi.size()) {
      report.add("cog.psi-shape", edge_str(x, a), "domain size mismatch");
      continue;
    }
    if (!is_homomorphism(gi, gt, psi))
      report.add("cog.psi-homomorphism", edge_str(x, a),
                 "edge map is not a homomorphism");
    if (!is_injective(psi))
      report.add("cog.psi-injective", edge_str(x, a),
                 "edge map is not injective");
  }
  for (auto& [key, g] : c.twist) {
    auto [a, b] = key;
    if (!x.compose(a, b))
      report.add("cog.twist-domain",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "twist on a non-composable pair");
    else if (g < 0 || g >= c.local[x.edges[a].to]->size())
      report.add("cog.twist-range",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "twist element out of range");
  }
  // Ad(g_{a,b}) o psi_{ab} = psi_a o psi_b
  for (auto [a, b] : x.composable_pairs()) {
    auto ab = x.compose(a, b);
    if (!ab) continue;  // flagged by validate_scwol
    const auto& gt = *c.local[x.edges[a].to];
    int g = c.twist_of(a, b);
    const auto& gib = *c.local[x.edges[b].from];
    bool ok = true;
    for (int e = 0; e < gib.size() && ok; ++e) {
      int lhs = gt.mul(gt.mul(g, c.psi[*ab][e]), gt.inv(g));
      int rhs = c.psi[a][c.psi[b][e]];
      ok = lhs == rhs;
    }
    if (!ok)
      report.add("cog.compatibility",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "Ad(g_ab) o psi_ab != psi_a o psi_b");
  }
  // cocycle: psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}
  for (int a = 0; a < x.edge_count(); ++a)
    for (int b = 0; b < x.edge_count(); ++b) {
      if (x.edges[a].from != x.edges[b].to) continue;
      for (int cc = 0; cc < x.edge_count(); ++cc) {
        if (x.edges[b].from != x.edges[cc].to) continue;
        auto ab = x.compose(a, b);
        auto bc = x.compose(b, cc);
        if (!ab || !bc) continue;
        const auto& gt = *c.local[x.edges[a].to];
        int lhs = gt.mul(c.psi[a][c.twist_of(b, cc)], c.twist_of(a, *bc));
        int rhs = gt.mul(c.twist_of(a, b), c.twist_of(*ab, cc));
        if (lhs != rhs)
          report.add("cog.cocycle",
                     "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(cc) + ")",
                     "cocycle condition fails");
      }
    }
  return report;
}

bool ScwolMorphism::nondegenerate() const {
  return std::all_of(emap.begin(), emap.end(), [](int e) { return e >= 0; });
}

CogMorphism identity_morphism(CogPtr c) {
  CogMorphism m;
  m.source = c;
  m.target = c;
  m.f.vmap.resize(c->base.vertex_count());
  for (int v = 0; v < c->base.vertex_count(); ++v) m.f.vmap[v] = v;
  m.f.emap.resize(c->base.edge_count());
  for (int a = 0; a < c->base.edge_count(); ++a) m.f.emap[a] = a;
  m.local_maps.resize(c->base.vertex_count());
  for (int v = 0; v < c->base.vertex_count(); ++v) {
    m.local_maps[v].resize(c->local[v]->size());
    for (int e = 0; e < c->local[v]->size(); ++e) m.local_maps[v][e] = e;
  }
  m.edge_elts.assign(c->base.edge_count(), 0);
  return m;
}

namespace {

// Home vertex of phi(a): t(f(a)) for nondegenerate f(a), else the common
// image of the endpoints.
int phi_home(const CogMorphism& m, int a) {
  int fa = m.f.emap[a];
  if (fa >= 0) return m.target->base.edges[fa].to;
  return m.f.vmap[m.source->base.edges[a].to];
}

}  // namespace

Report validate_morphism(const CogMorphism& m) {
  Report report;
  const ComplexOfGroups& src = *m.source;
  const ComplexOfGroups& tgt = *m.target;
  const Scwol& y = src.base;
  const Scwol& z = tgt.base;

  if (static_cast<int>(m.f.vmap.size()) != y.vertex_count() ||
      static_cast<int>(m.f.emap.size()) != y.edge_count() ||
      static_cast<int>(m.local_maps.size()) != y.vertex_count() ||
      static_cast<int>(m.edge_elts.size()) != y.edge_count()) {
    report.add("morphism.shape", "-", "map arrays do not match the source");
    return report;
  }
  for (int v = 0; v < y.vertex_count(); ++v)
    if (m.f.vmap[v] < 0 || m.f.vmap[v] >= z.vertex_count()) {
      report.add("morphism.vmap-range", "vertex " + std::to_string(v), "-");
      return report;
    }
  // scwol morphism conditions
  for (int a = 0; a < y.edge_count(); ++a) {
    int fa = m.f.emap[a];
    if (fa >= z.edge_count()) {
      report.add("morphism.emap-range", edge_str(y, a), "-");
      return report;
    }
    if (fa >= 0) {
      if (z.edges[fa].from != m.f.vmap[y.edges[a].from] ||
          z.edges[fa].to != m.f.vmap[y.edges[a].to])
        report.add("morphism.f-incidence", edge_str(y, a),
                   "f(a) does not join the images of the endpoints");
    } else {
      if (m.f.vmap[y.edges[a].from] != m.f.vmap[y.edges[a].to])
        report.add("morphism.f-degenerate", edge_str(y, a),
                   "collapsed edge with distinct endpoint images");
    }
  }
  for (auto [a, b] : y.composable_pairs()) {
    auto ab = y.compose(a, b);
    if (!ab) continue;
    int fa = m.f.emap[a], fb = m.f.emap[b], fab = m.f.emap[*ab];
    std::string loc = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (fa >= 0 && fb >= 0) {
      auto zc = z.compose(fa, fb);
      if (!zc || fab != *zc)
        report.add("morphism.f-composition", loc, "f(ab) != f(a)f(b)");
    } else if (fa >= 0) {
      if (fab != fa) report.add("morphism.f-composition", loc, "f(ab) != f(a)");
    } else if (fb >= 0) {
      if (fab != fb) report.add("morphism.f-composition", loc, "f(ab) != f(b)");
    } else {
      if (fab != -1)
        report.add("morphism.f-composition", loc,
                   "f(ab) not collapsed although f(a), f(b) are");
    }
  }
  // local maps are homomorphisms into the right groups
  for (int v = 0; v < y.vertex_count(); ++v) {
    if (!is_homomorphism(*src.local[v], *tgt.local[m.f.vmap[v]],
                         m.local_maps[v]))
      report.add("morphism.local-homomorphism", "vertex " + std::to_string(v),
                 "local map is not a homomorphism");
  }
  if (!report.ok()) return report;

  // commuting square: Ad(phi(a)) o theta_{f(a)} o phi_{i(a)} = phi_{t(a)} o psi_a
  for (int a = 0; a < y.edge_count(); ++a) {
    int home = phi_home(m, a);
    const auto& h = *tgt.local[home];
    int pa = m.edge_elts[a];
    if (pa < 0 || pa >= h.size()) {
      report.add("morphism.phi-range", edge_str(y, a),
                 "phi(a) out of range in H_{t(f(a))}");
      continue;
    }
    int fa = m.f.emap[a];
    const auto& gi = *src.local[y.edges[a].from];
    bool ok = true;
    for (int e = 0; e < gi.size() && ok; ++e) {
      int through = m.local_maps[y.edges[a].from][e];
      if (fa >= 0) through = tgt.psi[fa][through];
      int lhs = h.mul(h.mul(pa, through), h.inv(pa));
      int rhs = m.local_maps[y.edges[a].to][src.psi[a][e]];
      ok = lhs == rhs;
    }
    if (!ok)
      report.add("morphism.square", edge_str(y, a),
                 "Ad(phi(a)) o theta_{f(a)} o phi_i != phi_t o psi_a");
  }
  // composition rule:
  // phi_{t(a)}(g_{a,b}) phi(ab) = phi(a) theta_{f(a)}(phi(b)) h_{f(a),f(b)}
  for (auto [a, b] : y.composable_pairs()) {
    auto ab = y.compose(a, b);
    if (!ab) continue;
    int home = phi_home(m, a);
    const auto& h = *tgt.local[home];
    int fa = m.f.emap[a], fb = m.f.emap[b];
    int lhs = h.mul(m.local_maps[y.edges[a].to][src.twist_of(a, b)],
                    m.edge_elts[*ab]);
    int theta_phib = m.edge_elts[b];
    if (fa >= 0) theta_phib = tgt.psi[fa][theta_phib];
    int rhs = h.mul(m.edge_elts[a], theta_phib);
    if (fa >= 0 && fb >= 0) rhs = h.mul(rhs, tgt.twist_of(fa, fb));
    if (lhs != rhs)
      report.add("morphism.composition",
                 "(" + std::to_string(a) + "," + std::to_string(b) + ")",
                 "phi(ab) rule fails");
  }
  return report;
}

Report validate_covering(const CogMorphism& m) {
  Report report = validate_morphism(m);
  if (!report.ok()) return report;
  const ComplexOfGroups& src = *m.source;
  const ComplexOfGroups& tgt = *m.target;
  const Scwol& y = src.base;
  const Scwol& z = tgt.base;

  if (!m.f.nondegenerate()) {
    report.add("covering.nondegenerate", "-", "f collapses an edge");
    return report;
  }
  for (int v = 0; v < y.vertex_count(); ++v)
    if (!is_injective(m.local_maps[v]))
      report.add("covering.local-injective", "vertex " + std::to_string(v),
                 "local map is not injective");
  if (!report.ok()) return report;

  for (int sigma = 0; sigma < y.vertex_count(); ++sigma) {
    const auto& gs = *src.local[sigma];
    for (int b = 0; b < z.edge_count(); ++b) {
      if (z.edges[b].to != m.f.vmap[sigma]) continue;
      const auto& h = *tgt.local[z.edges[b].to];
      std::string loc =
          "sigma=" + std::to_string(sigma) + ", b=" + std::to_string(b);

      // cosets of theta_b(H_{i(b)}) in H_{t(b)}
      Subgroup target_sub{tgt.local[z.edges[b].to], {}, 1};
      target_sub.members = tgt.psi[b];
      std::sort(target_sub.members.begin(), target_sub.members.end());
      auto target_cosets = subgroup_cosets(h, target_sub);
      std::vector<int> coset_of(h.size());
      for (size_t ci = 0; ci < target_cosets.size(); ++ci)
        for (int e : target_cosets[ci]) coset_of[e] = static_cast<int>(ci);

      std::vector<char> hit(target_cosets.size(), 0);
      bool fiber_ok = true;
      for (int a = 0; a < y.edge_count(); ++a) {
        if (m.f.emap[a] != b || y.edges[a].to != sigma) continue;
        Subgroup image_sub{src.local[sigma], {}, 1};
        image_sub.members = src.psi[a];
        std::sort(image_sub.members.begin(), image_sub.members.end());
        auto fibers = subgroup_cosets(gs, image_sub);
        for (const auto& coset : fibers) {
          // the map must be constant on the coset; record its image
          int image = -1;
          for (int g : coset) {
            int val = coset_of[h.mul(m.local_maps[sigma][g], m.edge_elts[a])];
            if (image < 0) image = val;
            if (val != image) {
              report.add("covering.well-defined", loc,
                         "coset map not constant on a source coset");
              fiber_ok = false;
              break;
            }
          }
          if (!fiber_ok) break;
          if (hit[image]) {
            report.add("covering.injective", loc,
                       "two source cosets hit the same target coset");
            fiber_ok = false;
            break;
          }
          hit[image] = 1;
        }
        if (!fiber_ok) break;
      }
      if (!fiber_ok) continue;
      for (size_t ci = 0; ci < hit.size(); ++ci)
        if (!hit[ci]) {
          report.add("covering.surjective", loc,
                     "target coset " + std::to_string(ci) + " not hit");
          break;
        }
    }
  }
  return report;
}

QuotientScwol quotient_scwol(const Scwol& x, const ScwolAction& act) {
  QuotientScwol q;
  int n = act.group->size();

  auto orbits = [&](int count, const std::vector<std::vector<int>>& perms,
                    std::vector<int>& proj, std::vector<int>& lift) {
    proj.assign(count, -1);
    for (int v = 0; v < count; ++v) {
      if (proj[v] >= 0) continue;
      int id = static_cast<int>(lift.size());
      lift.push_back(v);  // v is least in its orbit: earlier members claimed
      std::vector<int> stack{v};
      proj[v] = id;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int h = 0; h < n; ++h) {
          int w = perms[h][u];
          if (proj[w] < 0) {
            proj[w] = id;
            stack.push_back(w);
          }
        }
      }
    }
  };
  orbits(x.vertex_count(), act.on_vertices, q.vproj, q.vlift);
  orbits(x.edge_count(), act.on_edges, q.eproj, q.elift);

  for (int v : q.vlift) q.scwol.add_vertex(x.vdata[v]);
  for (int a : q.elift)
    q.scwol.add_edge(q.vproj[x.edges[a].from], q.vproj[x.edges[a].to]);

  // induced composition: lift b, transport a so the pair composes
  int qe = q.scwol.edge_count();
  for (int qa = 0; qa < qe; ++qa)
    for (int qb = 0; qb < qe; ++qb) {
      if (q.scwol.edges[qa].from != q.scwol.edges[qb].to) continue;
      int b = q.elift[qb];
      int target = x.edges[b].to;
      int a = -1;
      for (int h = 0; h < n && a < 0; ++h) {
        int cand = act.on_edges[h][q.elift[qa]];
        if (x.edges[cand].from == target) a = cand;
      }
      if (a < 0) continue;  // caller validates; surfaces via validate_scwol
      auto ab = x.compose(a, b);
      if (!ab) continue;
      q.scwol.comp[{qa, qb}] = q.eproj[*ab];
    }
  return q;
}

Report extend_action_to_cog(const CogAction& ca) {
  const ComplexOfGroups& c = *ca.cog;
  const Scwol& x = c.base;
  Report report = validate_action(x, ca.act);
  if (!report.ok()) return report;
  int n = ca.act.group->size();
  if (static_cast<int>(ca.local_isos.size()) != n) {
    report.add("cog-action.shape", "-", "local iso family does not match |H|");
    return report;
  }
  for (int h = 0; h < n; ++h) {
    if (static_cast<int>(ca.local_isos[h].size()) != x.vertex_count()) {
      report.add("cog-action.shape", "element " + std::to_string(h),
                 "local iso count != vertex count");
      return report;
    }
    for (int v = 0; v < x.vertex_count(); ++v) {
      const auto& map = ca.local_isos[h][v];
      const auto& gv = *c.local[v];
      const auto& gw = *c.local[ca.act.on_vertices[h][v]];
      if (gv.size() != gw.size() ||
          !is_homomorphism(gv, gw, map) || !is_injective(map)) {
        report.add("cog-action.local-iso",
                   "element " + std::to_string(h) + ", vertex " +
                       std::to_string(v),
                   "phi^h_v is not an isomorphism onto G_{h.v}");
      }
    }
  }
  if (!report.ok()) return report;
  // identity element induces identity maps
  for (int v = 0; v < x.vertex_count(); ++v)
    for (int e = 0; e < c.local[v]->size(); ++e)
      if (ca.local_isos[0][v][e] != e) {
        report.add("cog-action.identity", "vertex " + std::to_string(v),
                   "identity element with non-identity local map");
        break;
      }
  // composition: phi^{h1 h2}_v = phi^{h1}_{h2.v} o phi^{h2}_v
  for (int h1 = 0; h1 < n; ++h1)
    for (int h2 = 0; h2 < n; ++h2) {
      int h12 = ca.act.group->mul(h1, h2);
      for (int v = 0; v < x.vertex_count(); ++v) {
        int hv = ca.act.on_vertices[h2][v];
        const auto& lhs = ca.local_isos[h12][v];
        bool ok = true;
        for (int e = 0; e < c.local[v]->size() && ok; ++e)
          ok = lhs[e] == ca.local_isos[h1][hv][ca.local_isos[h2][v][e]];
        if (!ok)
          report.add("cog-action.composition",
                     "(" + std::to_string(h1) + "," + std::to_string(h2) +
                         "), vertex " + std::to_string(v),
                     "phi^{h'h} != phi^{h'} o phi^h");
      }
    }
  // simple morphism squares: psi_{h.a} o phi^h_{i(a)} = phi^h_{t(a)} o psi_a
  for (int h = 0; h < n; ++h)
    for (int a = 0; a < x.edge_count(); ++a) {
      int ha = ca.act.on_edges[h][a];
      const auto& gi = *c.local[x.edges[a].from];
      bool ok = true;
      for (int e = 0; e < gi.size() && ok; ++e)
        ok = c.psi[ha][ca.local_isos[h][x.edges[a].from][e]] ==
             ca.local_isos[h][x.edges[a].to][c.psi[a][e]];
      if (!ok)
        report.add("cog-action.square",
                   "element " + std::to_string(h) + ", " + edge_str(x, a),
                   "psi_{h.a} o phi^h_i != phi^h_t o psi_a");
    }
  return report;
}

namespace {

// Stabilizer of a vertex, as sorted element indices.
std::vector<int> vertex_stabilizer(const ScwolAction& act, int v) {
  std::vector<int> stab;
  for (int h = 0; h < act.group->size(); ++h)
    if (act.on_vertices[h][v] == v) stab.push_back(h);
  return stab;
}

}  // namespace

InducedQuotient induce_quotient_cog(const CogAction& ca, bool validate) {
  const ComplexOfGroups& c = *ca.cog;
  const Scwol& y = c.base;
  const auto& group = *ca.act.group;
  int n = group.size();

  InducedQuotient iq;
  iq.qs = quotient_scwol(y, ca.act);
  const Scwol& z = iq.qs.scwol;
  iq.lifts = iq.qs.vlift;

  // semidirect local groups H_tau = G_lift x| Stab(lift)
  auto hz = std::make_shared<ComplexOfGroups>();
  hz->base = z;
  iq.semi.resize(z.vertex_count());
  for (int tau = 0; tau < z.vertex_count(); ++tau) {
    int lift = iq.lifts[tau];
    SemidirectInfo& si = iq.semi[tau];
    si.g_size = c.local[lift]->size();
    si.stab = vertex_stabilizer(ca.act, lift);
    int size = si.g_size * si.stab_size();
    std::vector<std::vector<int>> mult(size, std::vector<int>(size));
    const auto& g = *c.local[lift];
    for (int i = 0; i < size; ++i) {
      int gi = si.g_part(i), hi = si.stab_elt(i);
      for (int j = 0; j < size; ++j) {
        int gj = si.g_part(j), hj = si.stab_elt(j);
        // (g, h)(g', h') = (g phi^h(g'), h h')
        int gprod = g.mul(gi, ca.local_isos[hi][lift][gj]);
        int hprod = group.mul(hi, hj);
        int hpos = static_cast<int>(
            std::lower_bound(si.stab.begin(), si.stab.end(), hprod) -
            si.stab.begin());
        mult[i][j] = si.encode(gprod, hpos);
      }
    }
    hz->local.push_back(std::make_shared<FiniteGroupTable>(
        FiniteGroupTable::from_mult_table(std::move(mult), {})));
  }

  // transporters h_a: h_a . t(abar) = lift(t(a))
  auto stab_pos_of = [&](int tau, int h) {
    const auto& st = iq.semi[tau].stab;
    auto it = std::lower_bound(st.begin(), st.end(), h);
    if (it == st.end() || *it != h)
      throw std::logic_error("element outside the expected stabilizer");
    return static_cast<int>(it - st.begin());
  };

  iq.h_edge.resize(z.edge_count());
  std::vector<int> abar(z.edge_count());
  for (int a = 0; a < z.edge_count(); ++a) {
    int tau = z.edges[a].from;
    int lift = iq.lifts[tau];
    // unique lift of a with initial vertex lift(i(a))
    int found = -1;
    for (int h = 0; h < n; ++h) {
      int cand = ca.act.on_edges[h][iq.qs.elift[a]];
      if (y.edges[cand].from == lift) {
        if (found >= 0 && found != cand)
          throw std::logic_error("edge lift at the chosen vertex not unique");
        found = cand;
      }
    }
    if (found < 0) throw std::logic_error("no edge lift at the chosen vertex");
    abar[a] = found;
    int target_lift = iq.lifts[z.edges[a].to];
    int ha = -1;
    for (int h = 0; h < n && ha < 0; ++h)
      if (ca.act.on_vertices[h][y.edges[found].to] == target_lift) ha = h;
    if (ha < 0) throw std::logic_error("no transporter for the edge lift");
    iq.h_edge[a] = ha;
  }

  // theta_a(g, h) = (phi^{h_a}_{t(abar)}(psi_abar(g)), h_a h h_a^{-1})
  for (int a = 0; a < z.edge_count(); ++a) {
    int tau_i = z.edges[a].from, tau_t = z.edges[a].to;
    const SemidirectInfo& si = iq.semi[tau_i];
    const SemidirectInfo& st = iq.semi[tau_t];
    int ha = iq.h_edge[a];
    int tbar = y.edges[abar[a]].to;
    std::vector<int> theta(si.g_size * si.stab_size());
    for (int i = 0; i < static_cast<int>(theta.size()); ++i) {
      int g = si.g_part(i), h = si.stab_elt(i);
      int gimg = ca.local_isos[ha][tbar][c.psi[abar[a]][g]];
      int himg = group.mul(group.mul(ha, h), group.inv(ha));
      theta[i] = st.encode(gimg, stab_pos_of(tau_t, himg));
    }
    hz->psi.push_back(std::move(theta));
  }

  // twists h_{a,b} = h_a h_b h_{ab}^{-1}, as (1, h_{a,b})
  for (auto [a, b] : z.composable_pairs()) {
    auto ab = z.compose(a, b);
    if (!ab) continue;
    int tau_t = z.edges[a].to;
    int hab = group.mul(group.mul(iq.h_edge[a], iq.h_edge[b]),
                        group.inv(iq.h_edge[*ab]));
    int idx = iq.semi[tau_t].encode(0, stab_pos_of(tau_t, hab));
    if (idx != 0) hz->twist[{a, b}] = idx;
  }

  iq.hz = hz;

  // the covering Lambda: C -> H(Z)
  iq.k_vertex.resize(y.vertex_count());
  for (int v = 0; v < y.vertex_count(); ++v) {
    int lift = iq.lifts[iq.qs.vproj[v]];
    int k = -1;
    for (int h = 0; h < n && k < 0; ++h)
      if (ca.act.on_vertices[h][v] == lift) k = h;
    iq.k_vertex[v] = k;
  }
  CogMorphism lambda;
  lambda.source = ca.cog;
  lambda.target = hz;
  lambda.f.vmap = iq.qs.vproj;
  lambda.f.emap = iq.qs.eproj;
  lambda.local_maps.resize(y.vertex_count());
  for (int v = 0; v < y.vertex_count(); ++v) {
    int tau = iq.qs.vproj[v];
    const SemidirectInfo& si = iq.semi[tau];
    int k = iq.k_vertex[v];
    lambda.local_maps[v].resize(c.local[v]->size());
    for (int e = 0; e < c.local[v]->size(); ++e)
      lambda.local_maps[v][e] = si.encode(ca.local_isos[k][v][e], 0);
  }
  lambda.edge_elts.resize(y.edge_count());
  for (int a = 0; a < y.edge_count(); ++a) {
    int b = iq.qs.eproj[a];
    int tau_t = z.edges[b].to;
    int elt = group.mul(
        group.mul(iq.k_vertex[y.edges[a].to], group.inv(iq.k_vertex[y.edges[a].from])),
        group.inv(iq.h_edge[b]));
    lambda.edge_elts[a] = iq.semi[tau_t].encode(0, stab_pos_of(tau_t, elt));
  }
  iq.lambda = std::move(lambda);

  if (validate) {
    iq.hz_report = validate_cog(*hz);
    iq.lambda_report = validate_covering(iq.lambda);
  }
  return iq;
}

CogMorphism canonical_morphism_to_group(const InducedQuotient& iq,
                                        GroupPtr acting_group) {
  auto target = std::make_shared<ComplexOfGroups>();
  target->base.add_vertex({});
  target->local.push_back(acting_group);

  const ComplexOfGroups& hz = *iq.hz;
  CogMorphism m;
  m.source = iq.hz;
  m.target = target;
  m.f.vmap.assign(hz.base.vertex_count(), 0);
  m.f.emap.assign(hz.base.edge_count(), -1);
  m.local_maps.resize(hz.base.vertex_count());
  for (int tau = 0; tau < hz.base.vertex_count(); ++tau) {
    const SemidirectInfo& si = iq.semi[tau];
    m.local_maps[tau].resize(hz.local[tau]->size());
    for (int e = 0; e < hz.local[tau]->size(); ++e)
      m.local_maps[tau][e] = si.stab_elt(e);
  }
  m.edge_elts = iq.h_edge;
  return m;
}

bool has_trivial_type0_groups(const ComplexOfGroups& c) {
  for (int v = 0; v < c.base.vertex_count(); ++v) {
    const auto& data = c.base.vdata[v];
    if (data.point_type && *data.point_type == 0 && c.local[v]->size() != 1)
      return false;
  }
  return true;
}

}  // namespace coxlat
