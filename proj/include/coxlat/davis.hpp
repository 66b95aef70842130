#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxlat/cog.hpp"
#include "coxlat/nerve.hpp"

namespace coxlat {

// Shared tables for the special subgroups W_T and their halvings, so that
// every complex of groups built over one system reuses identical GroupPtrs.
struct HalfTable {
  GroupPtr table;
  std::vector<int> embed;    // half element -> W_T element
  std::vector<int> members;  // sorted W_T elements (= image of embed)
};

class GroupCache {
public:
  explicit GroupCache(EnumOptions opts = {}) : opts_(std::move(opts)) {}
  GroupPtr full(const CoxeterSystem& sys, GenSet t);
  const HalfTable& half(const CoxeterSystem& sys, GenSet t, int s);
  const EnumOptions& options() const { return opts_; }

private:
  EnumOptions opts_;
  std::map<GenSet, GroupPtr> full_;
  std::map<std::pair<GenSet, int>, HalfTable> half_;
};

class NotHalvableError : public std::runtime_error {
public:
  NotHalvableError(const CoxeterSystem& sys, GenSet t, int s);
  GenSet subset;
  int gen;
};

struct ChamberId {
  int level = 1;
  std::vector<int> js;  // (j_{n-1}, ..., j_k); empty at level n

  bool operator==(const ChamberId&) const = default;
};

std::string chamber_name(const ChamberId& c);

// Y_n assembled from chambers glued along mirrors.  The scwol has the
// complex's vertices as objects, with an edge u -> v whenever the types
// satisfy T_u strictly inside T_v and u, v share a chamber.
struct ChamberComplex {
  CoxeterSystem sys;
  std::optional<Witness> witness;  // absent for Y_1 = K
  int n = 1;

  std::vector<GenSet> types;  // spherical subsets incl. empty, sorted
  std::map<GenSet, int> type_index;
  std::vector<ChamberId> chambers;

  // dual graph: child chamber (level k) to parent (level k+1)
  struct DualEdge {
    int child = -1, parent = -1;
    int gen = -1;  // mirror type
  };
  std::vector<DualEdge> dual_edges;

  // vertex classes of (chamber, type) pairs after gluing
  std::vector<std::vector<std::pair<int, int>>> members;  // class -> pairs
  std::vector<int> pair_class;       // chamber * |types| + type -> class
  std::vector<std::optional<int>> interior_gen;  // class -> mirror type

  Scwol scwol;
  std::map<std::pair<int, int>, int> edge_index;  // (class u, class v) -> edge
  std::vector<int> edge_chamber;                  // edge -> witness chamber

  Report structure_report;  // vertex-in-two-chambers and disjoint-mirror laws

  int vertex_of(int chamber, int type_idx) const {
    return pair_class[chamber * static_cast<int>(types.size()) + type_idx];
  }
  int chamber_count() const { return static_cast<int>(chambers.size()); }
  int level_of_class(int v) const;
  std::vector<int> chambers_of_class(int v) const;
  // vertices of the mirror K_s of one chamber
  std::vector<int> mirror_vertices(int chamber, int s) const;
  std::vector<int> chambers_per_level() const;
};

ChamberComplex build_chamber(const CoxeterSystem& sys);
ChamberComplex build_Yn(const Witness& wit, const CoxeterSystem& sys, int n);

// Word from the recursion w_n alpha^{j_{n-1}}(s_{n-1}) ... alpha^{...}(s_k).
Word w_word(const Witness& wit, int n, int k, const std::vector<int>& js);

struct DisjointnessReport {
  int word_count = 0;
  int collisions = 0;
  bool pass = false;
  std::vector<std::string> details;
};

// Brute-force pairwise distinctness of all level words through the word
// problem oracle.
DisjointnessReport verify_disjointness(const Witness& wit,
                                       const CoxeterSystem& sys, int n,
                                       int word_bound = 16);

// The isomorphism F^j from Y_{n-1} onto the leading-index-j subcomplex.
struct SubcomplexIso {
  int j = 0;
  std::vector<int> chamber_map;  // Y_{n-1} chamber -> Y_n chamber
  std::vector<int> vertex_map;   // Y_{n-1} class -> Y_n class
  std::vector<int> type_transport;  // the permutation alpha_{n-1}^j
};

std::vector<SubcomplexIso> subcomplex_isos(const ChamberComplex& prev,
                                           const ChamberComplex& cur);

// G(Y_n): W_T at vertices in a unique chamber, Half_s(W_T) on the interior
// s-mirrors; edge maps are inclusions except for the Ad(s) edges that cross
// from a chamber into the mirror it shares with the next level.
struct GYn {
  std::shared_ptr<const ChamberComplex> complex;
  CogPtr cog;

  enum class EdgeRule { Inclusion, AdS };
  std::vector<EdgeRule> rule;     // per scwol edge
  std::vector<int> rule_gen;      // the s of Ad(s); -1 otherwise
  std::vector<std::vector<int>> to_full;  // class: local index -> W_T index
};

GYn build_GY1(const CoxeterSystem& sys, GroupCache& cache);
GYn build_GYn(const Witness& wit, const CoxeterSystem& sys, int n,
              GroupCache& cache);

// The covering Phi_n: G(Y_n) -> G(Y_1) over the type-forgetting map.
CogMorphism build_covering_to_GY1(const GYn& gyn, const GYn& gy1);

// Barycentric subdivision of the chamber complex: one scwol object per
// simplex (= chain of vertices inside a chamber), oriented from a simplex to
// its faces, so group actions satisfy the no-inversion condition.
struct Subdivision {
  Scwol scwol;
  std::vector<std::vector<int>> chains;  // sd vertex -> classes by type size
  std::map<std::vector<int>, int> chain_index;
  std::vector<int> min_vertex;  // chain -> class of least type
  std::vector<int> chamber;     // chain -> least chamber containing it
  std::map<std::pair<int, int>, int> edge_index;
};

Subdivision subdivide(const ChamberComplex& y);

// The complex of groups over the subdivision: the local group of a simplex
// is the local group of its least vertex.
CogPtr subdivide_cog(const GYn& gyn, const Subdivision& sd);

// DOT export of the dual graph, chambers labeled level:js and edges by
// mirror type.
std::string dual_graph_dot(const ChamberComplex& y);

}  // namespace coxlat
