#include "coxlat/coxeter.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace coxlat {

GenSet gs_from(const std::vector<int>& members) {
  GenSet t = 0;
  for (int s : members) t = gs_with(t, s);
  return t;
}

std::vector<int> gs_members(GenSet t) {
  std::vector<int> out;
  for (int s = 0; s < kMaxRank; ++s)
    if (gs_contains(t, s)) out.push_back(s);
  return out;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

CoxeterSystem::CoxeterSystem(std::vector<std::string> names,
                             std::vector<unsigned> matrix)
    : names_(std::move(names)), m_(std::move(matrix)),
      rank_(static_cast<int>(names_.size())) {
  if (rank_ > kMaxRank)
    throw std::invalid_argument("rank exceeds " + std::to_string(kMaxRank));
  if (m_.size() != static_cast<size_t>(rank_) * rank_)
    throw std::invalid_argument("matrix size does not match rank");
  for (int s = 0; s < rank_; ++s) {
    if (m_[s * rank_ + s] != 1)
      throw std::invalid_argument("diagonal label must be 1");
    for (int t = 0; t < rank_; ++t) {
      if (s != t && m_[s * rank_ + t] == 1)
        throw std::invalid_argument("off-diagonal label must be >= 2 or inf");
      if (m_[s * rank_ + t] != m_[t * rank_ + s])
        throw std::invalid_argument("matrix is asymmetric");
    }
  }
}

int CoxeterSystem::index_of(std::string_view name) const {
  for (int s = 0; s < rank_; ++s)
    if (names_[s] == name) return s;
  return -1;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

CoxeterSystem parse_system(std::string_view text) {
  std::vector<std::string> names;
  bool have_generators = false;
  // declared labels with the line that declared them
  std::map<std::pair<int, int>, std::pair<unsigned, int>> declared;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;

    if (toks[0] == "generators:" ||
        (toks[0] == "generators" && toks.size() > 1 && toks[1] == ":")) {
      if (have_generators)
        throw ParseError(lineno, "duplicate generators line");
      size_t first = toks[0] == "generators:" ? 1 : 2;
      for (size_t i = first; i < toks.size(); ++i) {
        if (std::find(names.begin(), names.end(), toks[i]) != names.end())
          throw ParseError(lineno, "duplicate generator '" + toks[i] + "'");
        names.push_back(toks[i]);
      }
      if (names.empty()) throw ParseError(lineno, "no generators declared");
      if (names.size() > kMaxRank)
        throw ParseError(lineno, "too many generators (max 64)");
      have_generators = true;
      continue;
    }
    if (!have_generators)
      throw ParseError(lineno, "expected 'generators:' line first");

    if (toks[0] == "default") {
      if (toks.size() != 3 || toks[1] != "=" || toks[2] != "inf")
        throw ParseError(lineno, "only 'default = inf' is supported");
      continue;
    }
    if (toks[0] == "m") {
      if (toks.size() != 5 || toks[3] != "=")
        throw ParseError(lineno, "expected 'm s t = k'");
      auto lookup = [&](const std::string& n) {
        for (size_t i = 0; i < names.size(); ++i)
          if (names[i] == n) return static_cast<int>(i);
        throw ParseError(lineno, "unknown generator '" + n + "'");
      };
      int s = lookup(toks[1]);
      int t = lookup(toks[2]);
      if (s == t) throw ParseError(lineno, "label of a generator with itself");
      unsigned label = 0;
      if (toks[4] == "inf") {
        label = kInfLabel;
      } else {
        try {
          label = static_cast<unsigned>(std::stoul(toks[4]));
        } catch (...) {
          throw ParseError(lineno, "bad label '" + toks[4] + "'");
        }
        if (label < 2)
          throw ParseError(lineno, "label must be >= 2 (or inf)");
      }
      auto key = std::minmax(s, t);
      auto it = declared.find(key);
      if (it != declared.end()) {
        if (it->second.first != label)
          throw ParseError(lineno, "asymmetric: m " + toks[1] + " " + toks[2] +
                                       " conflicts with line " +
                                       std::to_string(it->second.second));
        continue;
      }
      declared[key] = {label, lineno};
      continue;
    }
    throw ParseError(lineno, "unrecognized line '" + toks[0] + " ...'");
  }
  if (!have_generators) throw ParseError(lineno, "missing 'generators:' line");

  int rank = static_cast<int>(names.size());
  std::vector<unsigned> m(rank * rank, kInfLabel);
  for (int s = 0; s < rank; ++s) m[s * rank + s] = 1;
  for (auto& [key, val] : declared) {
    m[key.first * rank + key.second] = val.first;
    m[key.second * rank + key.first] = val.first;
  }
  return CoxeterSystem(std::move(names), std::move(m));
}

std::string word_to_string(const CoxeterSystem& sys, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += sys.name(w[i]);
  }
  return out;
}

namespace {

// One pass of "delete the first adjacent equal pair", if any.
std::optional<Word> delete_pair(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1]) {
      Word u;
      u.reserve(w.size() - 2);
      u.insert(u.end(), w.begin(), w.begin() + i);
      u.insert(u.end(), w.begin() + i + 2, w.end());
      return u;
    }
  }
  return std::nullopt;
}

constexpr size_t kClosureCap = 1u << 21;

}  // namespace

Word word_reduce(const CoxeterSystem& sys, const Word& w, int max_length) {
  if (static_cast<int>(w.size()) > max_length)
    throw ResourceError("word too long for exact reduction (" +
                        std::to_string(w.size()) + " > " +
                        std::to_string(max_length) + ")");
  for (int s : w)
    if (s < 0 || s >= sys.rank())
      throw std::invalid_argument("letter out of range");

  Word current = w;
  for (;;) {
    // Saturate the braid-move closure of `current`; restart shorter whenever
    // a deletion becomes possible.
    std::set<Word> closure{current};
    std::deque<Word> queue{current};
    bool restarted = false;
    while (!queue.empty()) {
      Word u = queue.front();
      queue.pop_front();
      if (auto shorter = delete_pair(u)) {
        current = *shorter;
        restarted = true;
        break;
      }
      for (size_t i = 0; i + 1 < u.size(); ++i) {
        int s = u[i], t = u[i + 1];
        if (s == t) continue;
        unsigned m = sys.label(s, t);
        if (m == kInfLabel) continue;
        if (i + m > u.size()) continue;
        bool alternates = true;
        for (unsigned p = 0; p < m; ++p) {
          if (u[i + p] != ((p % 2 == 0) ? s : t)) {
            alternates = false;
            break;
          }
        }
        if (!alternates) continue;
        Word v = u;
        for (unsigned p = 0; p < m; ++p) v[i + p] = (p % 2 == 0) ? t : s;
        if (closure.insert(v).second) {
          if (closure.size() > kClosureCap)
            throw ResourceError("braid closure too large");
          queue.push_back(v);
        }
      }
    }
    if (!restarted) return *closure.begin();
  }
}

bool words_equal(const CoxeterSystem& sys, const Word& u, const Word& v,
                 int max_length) {
  return word_reduce(sys, u, max_length) == word_reduce(sys, v, max_length);
}

std::string finite_type_name(FiniteType t, int rank, unsigned label) {
  switch (t) {
    case FiniteType::A: return "A" + std::to_string(rank);
    case FiniteType::B: return "B" + std::to_string(rank);
    case FiniteType::D: return "D" + std::to_string(rank);
    case FiniteType::E6: return "E6";
    case FiniteType::E7: return "E7";
    case FiniteType::E8: return "E8";
    case FiniteType::F4: return "F4";
    case FiniteType::H3: return "H3";
    case FiniteType::H4: return "H4";
    case FiniteType::I2: return "I2(" + std::to_string(label) + ")";
  }
  return "?";
}

namespace {

std::optional<DiagramComponent> classify_component(
    const CoxeterSystem& sys, const std::vector<int>& comp) {
  DiagramComponent out;
  out.members = comp;
  out.label = 0;
  int k = static_cast<int>(comp.size());
  out.rank = k;

  // Any infinite label inside the component kills sphericity.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!sys.finite_label(comp[i], comp[j])) return std::nullopt;

  if (k == 1) {
    out.type = FiniteType::A;
    return out;
  }

  // Diagram edges: pairs with label >= 3.
  std::vector<std::pair<int, int>> edges;  // indices into comp
  std::vector<int> degree(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (sys.label(comp[i], comp[j]) >= 3) {
        edges.emplace_back(i, j);
        ++degree[i];
        ++degree[j];
      }

  if (k == 2) {
    out.type = FiniteType::I2;
    out.label = sys.label(comp[0], comp[1]);
    return out;
  }

  // Rank >= 3: the diagram must be a tree (the component is connected).
  if (static_cast<int>(edges.size()) != k - 1) return std::nullopt;

  std::vector<int> branch;
  for (int i = 0; i < k; ++i) {
    if (degree[i] >= 4) return std::nullopt;
    if (degree[i] == 3) branch.push_back(i);
  }
  if (branch.size() > 1) return std::nullopt;

  std::vector<unsigned> high;  // labels > 3
  for (auto [i, j] : edges) {
    unsigned m = sys.label(comp[i], comp[j]);
    if (m > 3) high.push_back(m);
  }
  if (high.size() > 1) return std::nullopt;

  auto neighbors = [&](int i) {
    std::vector<int> out_n;
    for (auto [a, b] : edges) {
      if (a == i) out_n.push_back(b);
      if (b == i) out_n.push_back(a);
    }
    return out_n;
  };

  if (!branch.empty()) {
    if (!high.empty()) return std::nullopt;
    // Legs from the unique branch vertex; only D_n, E6, E7, E8 qualify.
    std::vector<int> legs;
    for (int nb : neighbors(branch[0])) {
      int len = 1, prev = branch[0], cur = nb;
      for (;;) {
        auto ns = neighbors(cur);
        int next = -1;
        for (int x : ns)
          if (x != prev) next = x;
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs.size() != 3) return std::nullopt;
    if (legs[0] == 1 && legs[1] == 1) {
      out.type = FiniteType::D;  // rank = legs[2] + 3 >= 4
      return out;
    }
    if (legs[0] == 1 && legs[1] == 2 && legs[2] == 2) out.type = FiniteType::E6;
    else if (legs[0] == 1 && legs[1] == 2 && legs[2] == 3) out.type = FiniteType::E7;
    else if (legs[0] == 1 && legs[1] == 2 && legs[2] == 4) out.type = FiniteType::E8;
    else return std::nullopt;
    return out;
  }

  // A path; orient it from one endpoint.
  int start = -1;
  for (int i = 0; i < k; ++i)
    if (degree[i] == 1) start = i;
  if (start < 0) return std::nullopt;
  std::vector<int> path{start};
  int prev = -1, cur = start;
  while (static_cast<int>(path.size()) < k) {
    int next = -1;
    for (int nb : neighbors(cur))
      if (nb != prev) next = nb;
    if (next < 0) return std::nullopt;
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  std::vector<unsigned> labels(k - 1);
  for (int i = 0; i + 1 < k; ++i)
    labels[i] = sys.label(comp[path[i]], comp[path[i + 1]]);

  if (high.empty()) {
    out.type = FiniteType::A;
    return out;
  }
  unsigned m = high[0];
  int pos = -1;
  for (int i = 0; i + 1 < k; ++i)
    if (labels[i] == m) pos = i;
  bool at_end = (pos == 0 || pos == k - 2);
  if (m == 4) {
    if (at_end) {
      out.type = FiniteType::B;
      return out;
    }
    if (k == 4 && pos == 1) {
      out.type = FiniteType::F4;
      return out;
    }
    return std::nullopt;
  }
  if (m == 5 && at_end) {
    if (k == 3) {
      out.type = FiniteType::H3;
      return out;
    }
    if (k == 4) {
      out.type = FiniteType::H4;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<SphericalSubset> is_spherical(const CoxeterSystem& sys,
                                            GenSet t) {
  SphericalSubset out;
  out.members = t;
  auto members = gs_members(t);
  // Connected components of the diagram restricted to t (edges: m != 2).
  std::vector<int> comp_of(members.size(), -1);
  int ncomp = 0;
  for (size_t i = 0; i < members.size(); ++i) {
    if (comp_of[i] >= 0) continue;
    comp_of[i] = ncomp;
    std::vector<size_t> stack{i};
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < members.size(); ++j) {
        if (comp_of[j] >= 0) continue;
        unsigned m = sys.label(members[x], members[j]);
        if (m != 2) {  // joined in the diagram (finite >= 3 or infinite)
          comp_of[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> comp;
    for (size_t i = 0; i < members.size(); ++i)
      if (comp_of[i] == c) comp.push_back(members[i]);
    auto classified = classify_component(sys, comp);
    if (!classified) return std::nullopt;
    out.components.push_back(std::move(*classified));
  }
  return out;
}

BigInt finite_type_order(FiniteType type, int rank, unsigned label) {
  auto factorial = [](int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (type) {
    case FiniteType::A: return factorial(rank + 1);
    case FiniteType::B: return (BigInt(1) << rank) * factorial(rank);
    case FiniteType::D: return (BigInt(1) << (rank - 1)) * factorial(rank);
    case FiniteType::I2: return BigInt(2) * label;
    case FiniteType::H3: return 120;
    case FiniteType::H4: return 14400;
    case FiniteType::F4: return 1152;
    case FiniteType::E6: return 51840;
    case FiniteType::E7: return 2903040;
    case FiniteType::E8: return 696729600;
  }
  return 0;
}

BigInt spherical_order(const SphericalSubset& t) {
  BigInt order = 1;
  for (const auto& c : t.components)
    order *= finite_type_order(c.type, c.rank, c.label);
  return order;
}

// ---------------------------------------------------------------------------
// FiniteGroupTable

struct TableBuilder {
  static FiniteGroupTable build(int size, std::vector<int> gens,
                                std::vector<int> gen_action,
                                std::vector<Word> words, int dense_bound) {
    FiniteGroupTable g;
    g.size_ = size;
    g.gens_ = std::move(gens);
    g.gen_action_ = std::move(gen_action);
    g.words_ = std::move(words);
    int max_gen = -1;
    for (int s : g.gens_) max_gen = std::max(max_gen, s);
    g.gen_col_.assign(max_gen + 1, -1);
    for (size_t j = 0; j < g.gens_.size(); ++j) g.gen_col_[g.gens_[j]] = j;
    g.inv_.resize(size);
    for (int e = 0; e < size; ++e) {
      int x = 0;
      const Word& w = g.words_[e];
      for (auto it = w.rbegin(); it != w.rend(); ++it) x = g.apply_gen(x, *it);
      g.inv_[e] = x;
    }
    for (int e = 0; e < size; ++e)
      if (g.mulw(g.inv_[e], e) != 0)
        throw std::logic_error("inverse table inconsistent");
    if (size <= dense_bound) {
      g.mult_.resize(static_cast<size_t>(size) * size);
      for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
          g.mult_[static_cast<size_t>(a) * size + b] = g.mulw(a, b);
    }
    return g;
  }

  static FiniteGroupTable from_dense(std::vector<std::vector<int>> mult,
                                     std::vector<int> gens) {
    FiniteGroupTable g;
    int size = static_cast<int>(mult.size());
    g.size_ = size;
    g.mult_.resize(static_cast<size_t>(size) * size);
    for (int a = 0; a < size; ++a) {
      if (static_cast<int>(mult[a].size()) != size)
        throw std::invalid_argument("ragged multiplication table");
      for (int b = 0; b < size; ++b) {
        int c = mult[a][b];
        if (c < 0 || c >= size)
          throw std::invalid_argument("multiplication entry out of range");
        g.mult_[static_cast<size_t>(a) * size + b] = c;
      }
    }
    for (int b = 0; b < size; ++b)
      if (mult[0][b] != b || mult[b][0] != b)
        throw std::invalid_argument("element 0 is not the identity");
    g.inv_.assign(size, -1);
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        if (mult[a][b] == 0) g.inv_[a] = b;
    for (int a = 0; a < size; ++a)
      if (g.inv_[a] < 0) throw std::invalid_argument("element with no inverse");
    // Generator ids for dense tables are element indices: column j acts by
    // right multiplication with the element gens[j].
    g.gens_ = std::move(gens);
    int max_gen = -1;
    for (int s : g.gens_) max_gen = std::max(max_gen, s);
    g.gen_col_.assign(max_gen + 1, -1);
    g.gen_action_.resize(static_cast<size_t>(size) * g.gens_.size());
    for (size_t j = 0; j < g.gens_.size(); ++j) {
      g.gen_col_[g.gens_[j]] = j;
      for (int a = 0; a < size; ++a)
        g.gen_action_[a * g.gens_.size() + j] = mult[a][g.gens_[j]];
    }
    g.words_.clear();
    return g;
  }
};

int FiniteGroupTable::mul(int a, int b) const {
  if (!mult_.empty()) return mult_[static_cast<size_t>(a) * size_ + b];
  return mulw(a, b);
}

int FiniteGroupTable::mulw(int a, int b) const {
  const Word& w = words_[b];
  int x = a;
  for (int s : w) x = apply_gen(x, s);
  return x;
}

int FiniteGroupTable::gen_image(int s) const {
  int col = (s >= 0 && s < static_cast<int>(gen_col_.size())) ? gen_col_[s] : -1;
  if (col < 0) throw std::invalid_argument("not a generator of this table");
  return gen_action_[0 * gens_.size() + col];
}

int FiniteGroupTable::apply_gen(int e, int s) const {
  int col = (s >= 0 && s < static_cast<int>(gen_col_.size())) ? gen_col_[s] : -1;
  if (col < 0) throw std::invalid_argument("not a generator of this table");
  return gen_action_[static_cast<size_t>(e) * gens_.size() + col];
}

int FiniteGroupTable::eval_word(const Word& w) const {
  int x = 0;
  for (int s : w) x = apply_gen(x, s);
  return x;
}

FiniteGroupTable FiniteGroupTable::from_mult_table(
    std::vector<std::vector<int>> mult, std::vector<int> gens) {
  return TableBuilder::from_dense(std::move(mult), std::move(gens));
}

GroupPtr FiniteGroupTable::trivial() {
  return std::make_shared<FiniteGroupTable>(
      from_mult_table({{0}}, std::vector<int>{}));
}

GroupPtr FiniteGroupTable::cyclic(int order) {
  std::vector<std::vector<int>> mult(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) mult[a][b] = (a + b) % order;
  return std::make_shared<FiniteGroupTable>(
      from_mult_table(std::move(mult), order > 1 ? std::vector<int>{1}
                                                 : std::vector<int>{}));
}

// ---------------------------------------------------------------------------
// Todd-Coxeter enumeration (HLT with coincidence handling)

namespace {

class ToddCoxeter {
public:
  ToddCoxeter(const CoxeterSystem& sys, const std::vector<int>& gens,
              long long deduction_cap)
      : sys_(sys), gens_(gens), ngens_(static_cast<int>(gens.size())),
        cap_(deduction_cap) {
    for (int i = 0; i < ngens_; ++i)
      for (int j = i + 1; j < ngens_; ++j) {
        unsigned m = sys.label(gens[i], gens[j]);
        assert(m != kInfLabel);
        std::vector<int> rel;
        for (unsigned p = 0; p < 2 * m; ++p) rel.push_back(p % 2 ? j : i);
        relators_.push_back(std::move(rel));
      }
    new_coset();  // coset 0: the trivial subgroup
  }

  void run() {
    for (size_t c = 0; c < parent_.size(); ++c) {
      if (find(c) != static_cast<int>(c)) continue;
      for (const auto& rel : relators_) {
        scan_and_fill(static_cast<int>(c), rel);
        if (find(c) != static_cast<int>(c)) break;
      }
      if (find(c) != static_cast<int>(c)) continue;
      for (int j = 0; j < ngens_; ++j)
        if (entry(c, j) < 0) define(static_cast<int>(c), j, new_coset());
    }
  }

  // Final table, compacted and reordered breadth-first over ShortLex words.
  FiniteGroupTable finish(int dense_bound) {
    std::vector<int> order;   // old live coset -> bfs position
    std::vector<int> live;    // bfs position -> old coset
    order.assign(parent_.size(), -1);
    std::vector<Word> words;
    std::deque<int> queue;
    int root = find(0);
    order[root] = 0;
    live.push_back(root);
    words.push_back({});
    queue.push_back(root);
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (int j = 0; j < ngens_; ++j) {
        int d = find(entry(c, j));
        if (order[d] < 0) {
          order[d] = static_cast<int>(live.size());
          live.push_back(d);
          Word w = words[order[c]];
          w.push_back(gens_[j]);
          words.push_back(std::move(w));
          queue.push_back(d);
        }
      }
    }
    int size = static_cast<int>(live.size());
    std::vector<int> action(static_cast<size_t>(size) * ngens_);
    for (int e = 0; e < size; ++e)
      for (int j = 0; j < ngens_; ++j)
        action[static_cast<size_t>(e) * ngens_ + j] =
            order[find(entry(live[e], j))];
    return TableBuilder::build(size, gens_, std::move(action),
                               std::move(words), dense_bound);
  }

  long long live_count() const {
    long long n = 0;
    for (size_t c = 0; c < parent_.size(); ++c)
      if (find(c) == static_cast<int>(c)) ++n;
    return n;
  }

private:
  int new_coset() {
    if (defined_ >= cap_)
      throw ResourceError("coset enumeration exceeded deduction cap");
    ++defined_;
    parent_.push_back(static_cast<int>(parent_.size()));
    table_.insert(table_.end(), ngens_, -1);
    return parent_.back();
  }

  int find(int c) const {
    while (parent_[c] != c) c = parent_[c];
    return c;
  }

  int entry(int c, int j) const { return table_[static_cast<size_t>(c) * ngens_ + j]; }
  void set_entry(int c, int j, int d) { table_[static_cast<size_t>(c) * ngens_ + j] = d; }

  // All generators are involutions, so columns stay symmetric.
  void define(int c, int j, int d) {
    c = find(c);
    d = find(d);
    int cur = entry(c, j);
    if (cur >= 0) {
      coincide(find(cur), d);
      return;
    }
    int dur = entry(d, j);
    if (dur >= 0) {
      coincide(find(dur), c);
      c = find(c);
      d = find(d);
      if (entry(c, j) >= 0) {
        coincide(find(entry(c, j)), d);
        return;
      }
    }
    set_entry(c, j, d);
    set_entry(d, j, c);
  }

  void coincide(int a, int b) {
    std::vector<std::pair<int, int>> stack{{a, b}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent_[y] = x;
      for (int j = 0; j < ngens_; ++j) {
        int dy = entry(y, j);
        if (dy < 0) continue;
        dy = find(dy);
        int dx = entry(x, j);
        if (dx < 0) {
          set_entry(x, j, dy);
          set_entry(dy, j, x);
        } else {
          dx = find(dx);
          if (dx != dy) stack.emplace_back(dx, dy);
        }
      }
    }
  }

  void scan_and_fill(int c, const std::vector<int>& rel) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(rel.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, rel[i]) >= 0) f = find(entry(f, rel[i++]));
      if (i > j) {
        if (f != b) coincide(f, b);
        return;
      }
      while (j >= i && entry(b, rel[j]) >= 0) b = find(entry(b, rel[j--]));
      if (j < i) {
        if (f != b) coincide(f, b);
        return;
      }
      if (j == i) {
        define(f, rel[i], b);
        return;
      }
      define(f, rel[i], new_coset());
      f = find(entry(f, rel[i++]));
    }
  }

  const CoxeterSystem& sys_;
  std::vector<int> gens_;
  int ngens_;
  long long cap_;
  long long defined_ = 0;
  std::vector<std::vector<int>> relators_;  // positions into gens_
  std::vector<int> parent_;
  std::vector<int> table_;
};

}  // namespace

GroupPtr enumerate_group(const CoxeterSystem& sys, const SphericalSubset& t,
                         const EnumOptions& opts) {
  BigInt order = spherical_order(t);
  if (order > opts.max_order)
    throw ResourceError("group order " + order.str() +
                        " exceeds enumeration bound");
  auto gens = gs_members(t.members);
  if (gens.empty())
    return std::make_shared<FiniteGroupTable>(
        TableBuilder::build(1, {}, {}, {Word{}}, opts.dense_bound));
  ToddCoxeter tc(sys, gens, opts.deduction_cap);
  tc.run();
  return std::make_shared<FiniteGroupTable>(tc.finish(opts.dense_bound));
}

std::vector<int> subgroup_closure(const FiniteGroupTable& g,
                                  const std::vector<int>& generators) {
  std::vector<char> seen(g.size(), 0);
  std::vector<int> members{0};
  seen[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int x : generators) {
      int d = g.mul(e, x);
      if (!seen[d]) {
        seen[d] = 1;
        members.push_back(d);
        queue.push_back(d);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::optional<Subgroup> halving(const CoxeterSystem& sys,
                                const SphericalSubset& t, int s,
                                const EnumOptions& opts) {
  if (!gs_contains(t.members, s))
    throw std::invalid_argument("halving generator not in subset");
  GroupPtr g = enumerate_group(sys, t, opts);
  std::vector<int> gens;
  int gs = g->gen_image(s);
  for (int u : gs_members(gs_without(t.members, s))) {
    int gu = g->gen_image(u);
    gens.push_back(gu);
    gens.push_back(g->mul(g->mul(gs, gu), gs));
  }
  auto members = subgroup_closure(*g, gens);
  if (g->size() != 2 * static_cast<int>(members.size())) return std::nullopt;
  return Subgroup{g, std::move(members), 2};
}

std::vector<std::vector<int>> subgroup_cosets(const FiniteGroupTable& g,
                                              const Subgroup& h) {
  std::vector<int> coset_of(g.size(), -1);
  std::vector<std::vector<int>> cosets;
  for (int e = 0; e < g.size(); ++e) {
    if (coset_of[e] >= 0) continue;
    std::vector<int> coset;
    coset.reserve(h.members.size());
    for (int x : h.members) {
      int d = g.mul(e, x);
      assert(coset_of[d] < 0);
      coset_of[d] = static_cast<int>(cosets.size());
      coset.push_back(d);
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

SubgroupTable subgroup_table(GroupPtr parent, const std::vector<int>& members,
                             int dense_bound) {
  int n = static_cast<int>(members.size());
  if (n > dense_bound)
    throw ResourceError("subgroup too large for a dense table");
  std::vector<int> index(parent->size(), -1);
  for (int i = 0; i < n; ++i) index[members[i]] = i;
  if (members.empty() || members[0] != 0)
    throw std::invalid_argument("subgroup members must contain the identity");
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = index[parent->mul(members[a], members[b])];
      if (c < 0)
        throw std::invalid_argument("member set not closed under product");
      mult[a][b] = c;
    }
  SubgroupTable out;
  out.table = std::make_shared<FiniteGroupTable>(
      FiniteGroupTable::from_mult_table(std::move(mult), {}));
  out.embed = members;
  return out;
}

}  // namespace coxlat
