#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlat/coxeter.hpp"

namespace coxlat {

// The nerve: simplicial complex on the generators whose simplices are the
// nonempty spherical subsets, with edges labeled by the Coxeter matrix.
struct Nerve {
  CoxeterSystem sys;
  std::vector<GenSet> simplices;  // sorted by (size, bitset value)

  int vertex_count() const { return sys.rank(); }
  unsigned label(int s, int t) const { return sys.label(s, t); }
  bool has_simplex(GenSet t) const;
  std::vector<GenSet> simplices_containing(int s) const;
  // Vertices of the closed star of s: s itself plus every t with a common
  // simplex.
  std::vector<int> star_vertices(int s) const;
  int edge_count() const;
  // Graph distance in the 1-skeleton; -1 if disconnected.
  int distance(int s, int t) const;
};

Nerve build_nerve(const CoxeterSystem& sys);

// Label-preserving simplicial automorphism, as a vertex permutation.
struct LabelAut {
  std::vector<int> perm;
  int order = 1;

  int operator()(int v) const { return perm[v]; }
  GenSet apply(GenSet t) const;
  bool is_identity() const;
};

int perm_order(const std::vector<int>& perm);
LabelAut make_label_aut(std::vector<int> perm);

struct AutOptions {
  int max_vertices = 64;
};

// The full group of label-preserving automorphisms, by backtracking on
// vertex images with label-multiset pruning.  Identity first, then
// lexicographic on the image vector.
std::vector<LabelAut> label_automorphisms(const Nerve& nerve,
                                          const AutOptions& opts = {});

// True iff a fixes s and every simplex containing s pointwise.
bool fixes_star(const Nerve& nerve, const LabelAut& a, int s);

// A nontrivial automorphism fixing some vertex star, if one exists.
std::optional<std::pair<LabelAut, int>> nondiscreteness_check(
    const Nerve& nerve, const AutOptions& opts = {});

struct Witness {
  int s1 = -1, s2 = -1;
  LabelAut alpha1, alpha2;
  int q1 = 1, q2 = 1;

  // Periodic conventions: s_k alternates s1, s2; likewise alpha_k, q_k.
  int s(int k) const { return k % 2 ? s1 : s2; }
  const LabelAut& alpha(int k) const { return k % 2 ? alpha1 : alpha2; }
  int q(int k) const { return k % 2 ? q1 : q2; }
};

struct WitnessOptions {
  AutOptions aut;
  EnumOptions enumeration;
};

// True iff every spherical subset containing s is halvable along s.
bool all_containing_halvable(const CoxeterSystem& sys, const Nerve& nerve,
                             int s, const EnumOptions& opts = {});

// Condition (2): every t != s in the <alpha>-orbit of s has m_st infinite.
bool orbit_images_infinite(const CoxeterSystem& sys, const LabelAut& alpha,
                           int s);

// All witnesses (s1, s2, alpha1, alpha2) with the alphas of prime order, in
// lexicographic order of (s1, s2, alpha1 position, alpha2 position).
std::vector<Witness> find_witnesses(const CoxeterSystem& sys,
                                    const WitnessOptions& opts = {});
std::vector<Witness> find_witnesses(const Nerve& nerve,
                                    const WitnessOptions& opts = {});

// Example generators: named nerves from the catalog.
CoxeterSystem catalog(const std::string& name, const std::vector<int>& params);
// Parses "name(a,b,...)".
CoxeterSystem catalog_parse(const std::string& spec);

struct CatalogEntry {
  std::string name;
  std::string signature;
  std::string description;
};
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace coxlat
