#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "coxlat/davis.hpp"

namespace coxlat {

using Rational = boost::multiprecision::cpp_rational;

// Recursive element of the iterated wreath product H_n: trivial at level 1,
// otherwise a q_{n-1}-tuple of level-(n-1) elements with a cyclic shift.
struct WreathElement {
  int level = 1;
  int shift = 0;
  std::vector<WreathElement> children;

  bool operator==(const WreathElement&) const = default;
};

WreathElement wreath_identity(const std::vector<int>& qs, int level);
// (c, s)(c', s') = (c * (s-shifted c'), s + s')
WreathElement wreath_mul(const WreathElement& a, const WreathElement& b);
WreathElement wreath_inv(const WreathElement& a);

BigInt wreath_order_formula(const std::vector<int>& qs);
BigInt wreath_order_recursive(const std::vector<int>& qs);

struct ActionOptions {
  BigInt wreath_elem_bound = 1000000;  // enumerate elements up to this order
  int act_bound = 4096;                // materialize permutations up to this
  bool validate = true;
  EnumOptions enumeration;
};

struct WreathGroup {
  int n = 1;
  std::vector<int> qs;  // q_1 .. q_{n-1}
  BigInt order = 1;
  std::vector<WreathElement> elements;  // when order <= wreath_elem_bound
  GroupPtr table;                       // when order <= act_bound
  bool enumerated() const { return !elements.empty(); }
};

WreathGroup wreath_group(const Witness& wit, int n,
                         const ActionOptions& opts = {});

// The H_n action on the subdivided Y_n, evaluated recursively: the shift
// permutes the q_{n-1} leading-index subcomplexes and acts on the top
// chamber through alpha_{n-1}; child j acts inside its subcomplex by
// conjugation with the subcomplex isomorphism, and as the identity outside.
struct YnAction {
  std::shared_ptr<const ChamberComplex> y;
  Subdivision sd;
  WreathGroup group;
  ScwolAction act;  // on sd.scwol

  // per element: image chamber and per-chamber type transport
  std::vector<std::vector<int>> chamber_image;               // [h][chamber]
  std::vector<std::vector<std::vector<int>>> chamber_alpha;  // [h][chamber]
  std::vector<std::vector<int>> class_perm;                  // [h][class]
};

YnAction act_on_Yn(const Witness& wit, const CoxeterSystem& sys, int n,
                   const ActionOptions& opts = {});

// Local transports t -> alpha(t), sts -> alpha(s)alpha(t)alpha(s) over the
// subdivided complex of groups; validated through extend_action_to_cog.
CogAction act_on_GYn(const GYn& gyn, const YnAction& yna, GroupCache& cache);

struct FundamentalDomain {
  QuotientScwol qs;
  int chamber_images = 1;          // number of K_i strata (= n)
  std::vector<int> type0_levels;   // levels of the type-empty vertex images
};

FundamentalDomain fundamental_domain(const Witness& wit,
                                     const CoxeterSystem& sys, int n,
                                     const ActionOptions& opts = {});

struct HZn {
  YnAction yna;
  CogPtr sd_gyn;        // G(Y_n) over the subdivision
  CogAction action;
  InducedQuotient iq;   // H(Z_n) and the covering Lambda_n
  CogMorphism to_group; // canonical morphism H(Z_n) -> H_n
  Report action_report;
  Report to_group_report;
};

HZn induce_HZn(const Witness& wit, const CoxeterSystem& sys, int n,
               GroupCache& cache, const ActionOptions& opts = {});

// Serre covolume with V the type-empty vertices: sum of 1/|local group|.
Rational covolume(const ComplexOfGroups& c);

struct CovolumeRow {
  int level = 1;
  long long stab_order = 1;
  long long orbit_size = 1;
};

struct CovolumeReport {
  int n = 1;
  Rational direct;     // from the constructed H(Z_n)
  Rational series;     // partial sum of 1/|H_k|
  std::vector<CovolumeRow> per_vertex;
  bool agree = false;
  Report consistency;  // orbit-stabilizer and chamber-count identities
};

CovolumeReport covolume_report(const Witness& wit, const CoxeterSystem& sys,
                               int n, GroupCache& cache,
                               const ActionOptions& opts = {});

std::string rational_string(const Rational& r);

}  // namespace coxlat
