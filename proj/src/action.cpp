#include "coxlat/action.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace coxlat {

WreathElement wreath_identity(const std::vector<int>& qs, int level) {
  WreathElement e;
  e.level = level;
  if (level > 1) {
    e.children.assign(qs[level - 2], wreath_identity(qs, level - 1));
  }
  return e;
}

WreathElement wreath_mul(const WreathElement& a, const WreathElement& b) {
  assert(a.level == b.level);
  WreathElement out;
  out.level = a.level;
  if (a.level == 1) return out;
  int q = static_cast<int>(a.children.size());
  out.shift = (a.shift + b.shift) % q;
  out.children.resize(q);
  for (int i = 0; i < q; ++i)
    out.children[i] =
        wreath_mul(a.children[i], b.children[((i - a.shift) % q + q) % q]);
  return out;
}

WreathElement wreath_inv(const WreathElement& a) {
  WreathElement out;
  out.level = a.level;
  if (a.level == 1) return out;
  int q = static_cast<int>(a.children.size());
  out.shift = (q - a.shift) % q;
  out.children.resize(q);
  for (int i = 0; i < q; ++i)
    out.children[i] = wreath_inv(a.children[(i + a.shift) % q]);
  return out;
}

BigInt wreath_order_formula(const std::vector<int>& qs) {
  // |H_n| = q_1^{q_2 ... q_{n-1}} q_2^{q_3 ... q_{n-1}} ... q_{n-1}
  BigInt order = 1;
  for (size_t i = 0; i < qs.size(); ++i) {
    BigInt exp = 1;
    for (size_t j = i + 1; j < qs.size(); ++j) exp *= qs[j];
    order *= boost::multiprecision::pow(BigInt(qs[i]),
                                        static_cast<unsigned>(exp));
  }
  return order;
}

BigInt wreath_order_recursive(const std::vector<int>& qs) {
  BigInt order = 1;
  for (int q : qs)
    order = boost::multiprecision::pow(order, static_cast<unsigned>(q)) * q;
  return order;
}

namespace {

// |H_L| for L = 1..n, as machine integers; only used under the bounds.
std::vector<long long> level_sizes(const std::vector<int>& qs) {
  std::vector<long long> size{1, 1};  // size[0] unused, size[1] = |H_1|
  for (int q : qs) {
    long long s = 1;
    for (int i = 0; i < q; ++i) s *= size.back();
    size.push_back(s * q);
  }
  return size;
}

WreathElement element_of(const std::vector<int>& qs,
                         const std::vector<long long>& size, int level,
                         long long idx) {
  WreathElement e;
  e.level = level;
  if (level == 1) return e;
  int q = qs[level - 2];
  long long m = size[level - 1];
  e.shift = static_cast<int>(idx % q);
  idx /= q;
  e.children.resize(q);
  for (int i = 0; i < q; ++i) {
    e.children[i] = element_of(qs, size, level - 1, idx % m);
    idx /= m;
  }
  return e;
}

long long index_of(const std::vector<int>& qs,
                   const std::vector<long long>& size,
                   const WreathElement& e) {
  if (e.level == 1) return 0;
  int q = qs[e.level - 2];
  long long m = size[e.level - 1];
  long long digits = 0;
  for (int i = q - 1; i >= 0; --i)
    digits = digits * m + index_of(qs, size, e.children[i]);
  return digits * q + e.shift;
}

}  // namespace

WreathGroup wreath_group(const Witness& wit, int n,
                         const ActionOptions& opts) {
  if (n < 1) throw std::invalid_argument("wreath level must be >= 1");
  WreathGroup h;
  h.n = n;
  for (int i = 1; i <= n - 1; ++i) h.qs.push_back(wit.q(i));
  h.order = wreath_order_formula(h.qs);
  assert(h.order == wreath_order_recursive(h.qs));
  if (h.order > opts.wreath_elem_bound) return h;

  auto size = level_sizes(h.qs);
  long long count = static_cast<long long>(h.order);
  h.elements.reserve(count);
  for (long long i = 0; i < count; ++i)
    h.elements.push_back(element_of(h.qs, size, n, i));

  if (h.order <= opts.act_bound) {
    std::vector<std::vector<int>> mult(count, std::vector<int>(count));
    for (long long a = 0; a < count; ++a)
      for (long long b = 0; b < count; ++b)
        mult[a][b] = static_cast<int>(
            index_of(h.qs, size, wreath_mul(h.elements[a], h.elements[b])));
    h.table = std::make_shared<FiniteGroupTable>(
        FiniteGroupTable::from_mult_table(std::move(mult), {}));
  }
  return h;
}

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> compose(const std::vector<int>& a,
                         const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (size_t v = 0; v < a.size(); ++v) out[v] = a[b[v]];
  return out;
}

struct ChamberEvaluator {
  const Witness& wit;
  int rank;
  // alpha_pow[i mod 2][p]: powers of alpha_1 (i odd) and alpha_2 (i even)
  std::vector<std::vector<std::vector<int>>> alpha_pow{2};

  ChamberEvaluator(const Witness& w, int r, int n) : wit(w), rank(r) {
    for (int parity = 0; parity < 2; ++parity) {
      const auto& alpha = parity ? w.alpha1 : w.alpha2;  // parity 1 = odd i
      int q = parity ? w.q1 : w.q2;
      auto& pows = alpha_pow[parity];
      pows.push_back(identity_perm(r));
      for (int p = 1; p < q; ++p)
        pows.push_back(compose(alpha.perm, pows.back()));
    }
    (void)n;
  }

  const std::vector<int>& pow(int i, int p) const {
    const auto& pows = alpha_pow[i % 2];
    return pows[p % static_cast<int>(pows.size())];
  }

  // image js and type transport of the chamber (k, js) at level L
  std::pair<std::vector<int>, std::vector<int>> eval(
      const WreathElement& h, const int* js, int len, int L) const {
    if (L == 1) return {{}, identity_perm(rank)};
    if (len == 0) return {{}, pow(L - 1, h.shift)};
    int q = wit.q(L - 1);
    int jp = (js[0] + h.shift) % q;
    auto [rest, beta] = eval(h.children[jp], js + 1, len - 1, L - 1);
    auto perm = compose(pow(L - 1, jp),
                        compose(beta, compose(pow(L - 1, (q - jp) % q),
                                              pow(L - 1, h.shift))));
    std::vector<int> out_js{jp};
    out_js.insert(out_js.end(), rest.begin(), rest.end());
    return {std::move(out_js), std::move(perm)};
  }
};

}  // namespace

YnAction act_on_Yn(const Witness& wit, const CoxeterSystem& sys, int n,
                   const ActionOptions& opts) {
  YnAction yna;
  yna.y = std::make_shared<ChamberComplex>(build_Yn(wit, sys, n));
  yna.sd = subdivide(*yna.y);
  yna.group = wreath_group(wit, n, opts);
  if (!yna.group.table)
    throw ResourceError("wreath group of order " + yna.group.order.str() +
                        " exceeds the action bound");
  const ChamberComplex& y = *yna.y;
  int count = static_cast<int>(yna.group.elements.size());

  std::map<std::pair<int, std::vector<int>>, int> chamber_index;
  for (int c = 0; c < y.chamber_count(); ++c)
    chamber_index[{y.chambers[c].level, y.chambers[c].js}] = c;

  ChamberEvaluator eval(wit, sys.rank(), n);
  yna.chamber_image.assign(count, std::vector<int>(y.chamber_count()));
  yna.chamber_alpha.assign(count, {});
  yna.class_perm.assign(count, std::vector<int>(y.members.size(), -1));
  for (int h = 0; h < count; ++h) {
    auto& alphas = yna.chamber_alpha[h];
    alphas.resize(y.chamber_count());
    for (int c = 0; c < y.chamber_count(); ++c) {
      const auto& id = y.chambers[c];
      auto [js, perm] = eval.eval(yna.group.elements[h], id.js.data(),
                                  static_cast<int>(id.js.size()), n);
      yna.chamber_image[h][c] = chamber_index.at({id.level, js});
      alphas[c] = std::move(perm);
    }
    // induced permutation of the glued vertex classes
    for (size_t v = 0; v < y.members.size(); ++v) {
      for (auto [c, ti] : y.members[v]) {
        GenSet t = y.types[ti];
        GenSet timg = 0;
        for (int s : gs_members(t)) timg = gs_with(timg, alphas[c][s]);
        int img = y.vertex_of(yna.chamber_image[h][c], y.type_index.at(timg));
        if (yna.class_perm[h][v] >= 0 && yna.class_perm[h][v] != img)
          throw std::logic_error(
              "wreath action is not well defined on glued vertices");
        yna.class_perm[h][v] = img;
      }
    }
  }

  // permutations of the subdivision
  yna.act.group = yna.group.table;
  yna.act.on_vertices.assign(count,
                             std::vector<int>(yna.sd.scwol.vertex_count()));
  yna.act.on_edges.assign(count, std::vector<int>(yna.sd.scwol.edge_count()));
  for (int h = 0; h < count; ++h) {
    for (int cv = 0; cv < yna.sd.scwol.vertex_count(); ++cv) {
      std::vector<int> image;
      for (int v : yna.sd.chains[cv]) image.push_back(yna.class_perm[h][v]);
      auto it = yna.sd.chain_index.find(image);
      if (it == yna.sd.chain_index.end())
        throw std::logic_error("wreath action does not preserve simplices");
      yna.act.on_vertices[h][cv] = it->second;
    }
    for (int a = 0; a < yna.sd.scwol.edge_count(); ++a) {
      const auto& e = yna.sd.scwol.edges[a];
      yna.act.on_edges[h][a] = yna.sd.edge_index.at(
          {yna.act.on_vertices[h][e.from], yna.act.on_vertices[h][e.to]});
    }
  }
  return yna;
}

CogAction act_on_GYn(const GYn& gyn, const YnAction& yna, GroupCache& cache) {
  if (gyn.complex->chamber_count() != yna.y->chamber_count() ||
      gyn.complex->n != yna.y->n)
    throw std::invalid_argument("complex and action do not match");
  const ChamberComplex& y = *gyn.complex;
  const CoxeterSystem& sys = y.sys;
  CogAction ca;
  ca.cog = subdivide_cog(gyn, yna.sd);
  ca.act = yna.act;

  int count = yna.group.table->size();
  int nv = yna.sd.scwol.vertex_count();
  ca.local_isos.assign(count, std::vector<std::vector<int>>(nv));
  for (int h = 0; h < count; ++h)
    for (int cv = 0; cv < nv; ++cv) {
      int v = yna.sd.min_vertex[cv];
      int chamber = yna.sd.chamber[cv];
      const auto& alpha = yna.chamber_alpha[h][chamber];
      int cv_img = yna.act.on_vertices[h][cv];
      int v_img = yna.sd.min_vertex[cv_img];
      if (yna.class_perm[h][v] != v_img)
        throw std::logic_error("least vertices do not correspond");

      GenSet t = y.types[y.members[v][0].second];
      GenSet timg = 0;
      for (int s : gs_members(t)) timg = gs_with(timg, alpha[s]);
      GroupPtr full_src = cache.full(sys, t);
      GroupPtr full_img = cache.full(sys, timg);
      const auto& src = *ca.cog->local[cv];
      const auto& to_full_img = gyn.to_full[v_img];
      std::vector<int> map(src.size());
      for (int x = 0; x < src.size(); ++x) {
        Word w = full_src->word_of(gyn.to_full[v][x]);
        for (int& letter : w) letter = alpha[letter];
        int img = full_img->eval_word(w);
        auto it =
            std::lower_bound(to_full_img.begin(), to_full_img.end(), img);
        if (it == to_full_img.end() || *it != img)
          throw std::logic_error("transported element escapes the local group");
        map[x] = static_cast<int>(it - to_full_img.begin());
      }
      ca.local_isos[h][cv] = std::move(map);
    }
  return ca;
}

FundamentalDomain fundamental_domain(const Witness& wit,
                                     const CoxeterSystem& sys, int n,
                                     const ActionOptions& opts) {
  auto yna = act_on_Yn(wit, sys, n, opts);
  FundamentalDomain fd;
  fd.qs = quotient_scwol(yna.sd.scwol, yna.act);
  fd.chamber_images = n;
  for (int v = 0; v < fd.qs.scwol.vertex_count(); ++v) {
    const auto& data = fd.qs.scwol.vdata[v];
    if (data.point_type && *data.point_type == 0)
      fd.type0_levels.push_back(data.level);
  }
  std::sort(fd.type0_levels.begin(), fd.type0_levels.end());
  return fd;
}

HZn induce_HZn(const Witness& wit, const CoxeterSystem& sys, int n,
               GroupCache& cache, const ActionOptions& opts) {
  HZn hzn;
  auto gyn = build_GYn(wit, sys, n, cache);
  hzn.yna = act_on_Yn(wit, sys, n, opts);
  hzn.action = act_on_GYn(gyn, hzn.yna, cache);
  hzn.sd_gyn = hzn.action.cog;
  if (opts.validate) hzn.action_report = extend_action_to_cog(hzn.action);
  hzn.iq = induce_quotient_cog(hzn.action, opts.validate);
  hzn.to_group = canonical_morphism_to_group(hzn.iq, hzn.yna.group.table);
  if (opts.validate) hzn.to_group_report = validate_morphism(hzn.to_group);
  return hzn;
}

Rational covolume(const ComplexOfGroups& c) {
  Rational total = 0;
  for (int v = 0; v < c.base.vertex_count(); ++v) {
    const auto& data = c.base.vdata[v];
    if (data.point_type && *data.point_type == 0)
      total += Rational(1, c.local[v]->size());
  }
  return total;
}

CovolumeReport covolume_report(const Witness& wit, const CoxeterSystem& sys,
                               int n, GroupCache& cache,
                               const ActionOptions& opts) {
  CovolumeReport report;
  report.n = n;

  auto hzn = induce_HZn(wit, sys, n, cache, opts);
  if (!hzn.action_report.ok() || !hzn.iq.hz_report.ok() ||
      !hzn.iq.lambda_report.ok() || !hzn.to_group_report.ok())
    report.consistency.add("covolume.prerequisites", "-",
                           "induced complex failed validation");

  long long group_order = hzn.yna.group.table->size();
  const auto& z = hzn.iq.hz->base;
  std::vector<long long> orbit_size(z.vertex_count(), 0);
  for (int v = 0; v < hzn.yna.sd.scwol.vertex_count(); ++v)
    ++orbit_size[hzn.iq.qs.vproj[v]];

  long long orbit_total = 0;
  for (int tau = 0; tau < z.vertex_count(); ++tau) {
    const auto& data = z.vdata[tau];
    if (!data.point_type || *data.point_type != 0) continue;
    CovolumeRow row;
    row.level = data.level;
    row.stab_order = hzn.iq.semi[tau].stab_size();
    row.orbit_size = orbit_size[tau];
    if (hzn.iq.semi[tau].g_size != 1)
      report.consistency.add("covolume.type0-group",
                             "vertex " + std::to_string(tau),
                             "type-empty vertex with nontrivial W-part");
    if (row.stab_order * row.orbit_size != group_order)
      report.consistency.add("covolume.orbit-stabilizer",
                             "vertex " + std::to_string(tau),
                             std::to_string(row.stab_order) + " * " +
                                 std::to_string(row.orbit_size) +
                                 " != " + std::to_string(group_order));
    orbit_total += row.orbit_size;
    report.per_vertex.push_back(row);
  }
  std::sort(report.per_vertex.begin(), report.per_vertex.end(),
            [](const CovolumeRow& a, const CovolumeRow& b) {
              return a.level < b.level;
            });
  if (orbit_total != hzn.yna.y->chamber_count())
    report.consistency.add(
        "covolume.chamber-count", "-",
        std::to_string(orbit_total) + " orbit members vs " +
            std::to_string(hzn.yna.y->chamber_count()) + " chambers");

  report.direct = covolume(*hzn.iq.hz);
  Rational series = 0;
  std::vector<int> qs;
  for (int k = 1; k <= n; ++k) {
    series += Rational(1, wreath_order_formula(qs));
    if (k <= n - 1) qs.push_back(wit.q(k));
  }
  report.series = series;
  report.agree = report.direct == report.series;
  return report;
}

std::string rational_string(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    out << "/" << boost::multiprecision::denominator(r);
  return out.str();
}

}  // namespace coxlat
