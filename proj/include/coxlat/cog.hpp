#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlat/coxeter.hpp"

namespace coxlat {

struct ScwolVertexData {
  std::optional<GenSet> point_type;  // set only on original complex vertices
  int level = 0;
  std::string name;
};

struct ScwolEdge {
  int from = -1;  // i(a)
  int to = -1;    // t(a)
};

// Small category without loops: oriented edges with a partial, associative
// composition defined exactly on pairs with i(a) = t(b).
struct Scwol {
  std::vector<ScwolVertexData> vdata;
  std::vector<ScwolEdge> edges;
  std::map<std::pair<int, int>, int> comp;  // (a, b) -> ab when i(a) = t(b)

  int vertex_count() const { return static_cast<int>(vdata.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int add_vertex(ScwolVertexData data = {});
  int add_edge(int from, int to);
  std::optional<int> compose(int a, int b) const;
  std::vector<std::pair<int, int>> composable_pairs() const;
};

struct Violation {
  std::string axiom;
  std::string location;
  std::string details;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::string location, std::string details);
  std::string summary() const;
};

Report validate_scwol(const Scwol& x);

// A group acting on a scwol: per-element vertex and edge permutations.
struct ScwolAction {
  GroupPtr group;
  std::vector<std::vector<int>> on_vertices;  // [element][vertex]
  std::vector<std::vector<int>> on_edges;     // [element][edge]
};

Report validate_action(const Scwol& x, const ScwolAction& act);

// Local group per vertex, monomorphism per edge, twist element per
// composable pair (identity everywhere for simple complexes).
struct ComplexOfGroups {
  Scwol base;
  std::vector<GroupPtr> local;                // per vertex
  std::vector<std::vector<int>> psi;          // per edge: index map
  std::map<std::pair<int, int>, int> twist;   // sparse; missing = identity

  int twist_of(int a, int b) const;
  bool is_simple() const;
};
using CogPtr = std::shared_ptr<const ComplexOfGroups>;

Report validate_cog(const ComplexOfGroups& c);

// Morphism of scwols; emap entries may be -1, collapsing the edge onto the
// common image of its endpoints.
struct ScwolMorphism {
  std::vector<int> vmap;
  std::vector<int> emap;

  bool nondegenerate() const;
};

struct CogMorphism {
  CogPtr source;
  CogPtr target;
  ScwolMorphism f;
  std::vector<std::vector<int>> local_maps;  // per source vertex
  std::vector<int> edge_elts;                // per source edge: phi(a)
};

CogMorphism identity_morphism(CogPtr c);

Report validate_morphism(const CogMorphism& m);
Report validate_covering(const CogMorphism& m);

struct QuotientScwol {
  Scwol scwol;
  std::vector<int> vproj, eproj;  // source cell -> orbit
  std::vector<int> vlift, elift;  // orbit -> least source cell
};

QuotientScwol quotient_scwol(const Scwol& x, const ScwolAction& act);

// element -> vertex -> index map G_v -> G_{h.v}
using LocalIsos = std::vector<std::vector<std::vector<int>>>;

struct CogAction {
  CogPtr cog;
  ScwolAction act;
  LocalIsos local_isos;
};

// Validates that the local isomorphisms extend the scwol action to an action
// on the complex of groups by simple morphisms.
Report extend_action_to_cog(const CogAction& ca);

// The decomposition of an induced local group H_tau = G_lift x| Stab(lift).
struct SemidirectInfo {
  int g_size = 1;
  std::vector<int> stab;  // sorted elements of the acting group
  int stab_size() const { return static_cast<int>(stab.size()); }
  int encode(int g, int stab_pos) const { return g * stab_size() + stab_pos; }
  int g_part(int idx) const { return idx / stab_size(); }
  int stab_pos(int idx) const { return idx % stab_size(); }
  int stab_elt(int idx) const { return stab[idx % stab_size()]; }
};

struct InducedQuotient {
  CogPtr hz;            // the induced complex of groups H(Z)
  CogMorphism lambda;   // covering C -> H(Z)
  QuotientScwol qs;
  std::vector<int> lifts;     // per quotient vertex (= qs.vlift)
  std::vector<int> h_edge;    // per quotient edge: chosen h_a
  std::vector<int> k_vertex;  // per source vertex: chosen k_sigma
  std::vector<SemidirectInfo> semi;  // per quotient vertex
  Report hz_report;       // validate_cog(H(Z))
  Report lambda_report;   // validate_covering(lambda)
};

// A group acting by simple morphisms on a simple complex of groups induces a
// complex of groups over the quotient scwol together with a covering onto
// it.  Deterministic choices: lifts are least-in-orbit, the transporters h_a
// and k_sigma are least in group order.
InducedQuotient induce_quotient_cog(const CogAction& ca, bool validate = true);

// The canonical morphism H(Z) -> H over the one-vertex scwol: trivial on the
// G-part, inclusion on the stabilizer part, phi(b) = h_b.
CogMorphism canonical_morphism_to_group(const InducedQuotient& iq,
                                        GroupPtr acting_group);

bool has_trivial_type0_groups(const ComplexOfGroups& c);

}  // namespace coxlat
