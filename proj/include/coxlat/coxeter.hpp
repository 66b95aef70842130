#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coxlat {

using BigInt = boost::multiprecision::cpp_int;

// Set of generator indices, as a bitset.  Rank is capped at 64 generators,
// which is far beyond anything the finite computations here can handle anyway.
using GenSet = std::uint64_t;

inline constexpr int kMaxRank = 64;

inline bool gs_contains(GenSet t, int s) { return (t >> s) & 1u; }
inline GenSet gs_with(GenSet t, int s) { return t | (GenSet{1} << s); }
inline GenSet gs_without(GenSet t, int s) { return t & ~(GenSet{1} << s); }
inline int gs_size(GenSet t) { return __builtin_popcountll(t); }
GenSet gs_from(const std::vector<int>& members);
std::vector<int> gs_members(GenSet t);

// Coxeter matrix label: 1 on the diagonal, 0 encodes m = infinity,
// otherwise an integer >= 2.
inline constexpr unsigned kInfLabel = 0;

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

// Raised when a computation exceeds a configured resource bound. Never used
// to report a mathematical result.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CoxeterSystem {
public:
  CoxeterSystem(std::vector<std::string> names,
                std::vector<unsigned> matrix);  // row-major rank x rank

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int s) const { return names_[s]; }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(std::string_view name) const;  // -1 if unknown

  unsigned label(int s, int t) const { return m_[s * rank_ + t]; }
  bool finite_label(int s, int t) const { return label(s, t) != kInfLabel; }

private:
  std::vector<std::string> names_;
  std::vector<unsigned> m_;
  int rank_;
};

// Input document format: line oriented,
//   generators: s1 s2 s3
//   m s1 s2 = 4
//   # comment
// Unlisted off-diagonal pairs default to infinity.
CoxeterSystem parse_system(std::string_view text);

// A word in the generators, possibly empty.  Letters are generator indices.
using Word = std::vector<int>;

std::string word_to_string(const CoxeterSystem& sys, const Word& w);

// Tits' solution to the word problem: saturate the equivalence class of w
// under braid moves, deleting adjacent equal letters until a fixed point.
// Returns the lexicographically least reduced word equal to w.
// Throws ResourceError when |w| exceeds max_length.
Word word_reduce(const CoxeterSystem& sys, const Word& w, int max_length = 16);

bool words_equal(const CoxeterSystem& sys, const Word& u, const Word& v,
                 int max_length = 16);

// Irreducible finite Coxeter diagram types.
enum class FiniteType { A, B, D, E6, E7, E8, F4, H3, H4, I2 };

std::string finite_type_name(FiniteType t, int rank, unsigned label);

struct DiagramComponent {
  FiniteType type;
  int rank;
  unsigned label;  // edge label for I2(m), else 0
  std::vector<int> members;
};

struct SphericalSubset {
  GenSet members = 0;
  std::vector<DiagramComponent> components;
};

// Decides sphericity purely by diagram classification; total function.
std::optional<SphericalSubset> is_spherical(const CoxeterSystem& sys, GenSet t);

// Product of the classical orders of the components.
BigInt spherical_order(const SphericalSubset& t);
BigInt finite_type_order(FiniteType type, int rank, unsigned label);

class FiniteGroupTable;
using GroupPtr = std::shared_ptr<const FiniteGroupTable>;

// A fully enumerated finite group.  Element 0 is the identity.  Right
// multiplication by the distinguished generators is always tabulated; the
// full size x size multiplication table is materialized only up to
// dense_bound (larger groups multiply through stored generator words).
class FiniteGroupTable {
public:
  int size() const { return size_; }
  int identity() const { return 0; }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  bool has_dense_table() const { return !mult_.empty(); }

  // Generators, identified by indices of the ambient Coxeter system (or
  // arbitrary ids for non-Coxeter tables).
  const std::vector<int>& generators() const { return gens_; }
  int gen_image(int s) const;
  int apply_gen(int e, int s) const;  // e * s
  int eval_word(const Word& w) const; // product of generators

  // One reduced (geodesic, ShortLex-least) word per element.
  const Word& word_of(int e) const {
    if (words_.empty())
      throw std::logic_error("this group table carries no generator words");
    return words_[e];
  }

  // Builds a table from an explicit multiplication table; element 0 must be
  // the identity.  Generator action columns are derived from `gens`.
  static FiniteGroupTable from_mult_table(std::vector<std::vector<int>> mult,
                                          std::vector<int> gens);

  static GroupPtr trivial();
  static GroupPtr cyclic(int order);

  friend struct TableBuilder;

private:
  FiniteGroupTable() = default;
  int mulw(int a, int b) const;  // multiply through b's generator word

  int size_ = 1;
  std::vector<int> gens_;                 // distinguished generator ids
  std::vector<int> gen_col_;              // id -> column in gen_action_, or -1
  std::vector<int> gen_action_;           // size x |gens|, e * gens[j]
  std::vector<int> inv_;
  std::vector<int> mult_;                 // dense, size x size; may be empty
  std::vector<Word> words_;
};

struct EnumOptions {
  BigInt max_order = 1000000;
  long long deduction_cap = 10000000;  // Todd-Coxeter definition guard
  int dense_bound = 4096;              // largest dense multiplication table
};

// Todd-Coxeter coset enumeration of W_T over the trivial subgroup, with
// relators s^2 and (st)^{m_st}.  Elements are ordered breadth-first over
// ShortLex generator words, which makes every downstream choice
// deterministic.
GroupPtr enumerate_group(const CoxeterSystem& sys, const SphericalSubset& t,
                         const EnumOptions& opts = {});

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted element indices; contains 0
  int index = 1;
};

// Closure of {t : t in T-{s}} u {sts : t in T-{s}} inside W_T; returned only
// when its index is exactly 2.
std::optional<Subgroup> halving(const CoxeterSystem& sys,
                                const SphericalSubset& t, int s,
                                const EnumOptions& opts = {});

// Subgroup generated by the given element indices.
std::vector<int> subgroup_closure(const FiniteGroupTable& g,
                                  const std::vector<int>& generators);

// Partition of G into left cosets gH; the first coset is H itself.
std::vector<std::vector<int>> subgroup_cosets(const FiniteGroupTable& g,
                                              const Subgroup& h);

// Materializes a subgroup as a standalone table.  members() of the result
// map back to the parent's element indices via the returned embedding.
struct SubgroupTable {
  GroupPtr table;
  std::vector<int> embed;  // subgroup element -> parent element
};
SubgroupTable subgroup_table(GroupPtr parent, const std::vector<int>& members,
                             int dense_bound = 4096);

}  // namespace coxlat
