#pragma once

#include <string>
#include <vector>

#include "coxlat/coxeter.hpp"

namespace coxlat::testfix {

// The rank-5 system with m(s_i, s4) = m, m(s_i, s5) = mp for i = 1,2,3 and
// every other off-diagonal label infinite.
inline CoxeterSystem example1(unsigned m = 4, unsigned mp = 4) {
  std::string doc = "generators: s1 s2 s3 s4 s5\n";
  for (int i = 1; i <= 3; ++i) {
    doc += "m s" + std::to_string(i) + " s4 = " + std::to_string(m) + "\n";
    doc += "m s" + std::to_string(i) + " s5 = " + std::to_string(mp) + "\n";
  }
  return parse_system(doc);
}

// A path/diagram builder: rank generators g0..g{rank-1}, labels[i] between
// g{i} and g{i+1}, everything else label 2 (commuting).
inline CoxeterSystem path_system(const std::vector<unsigned>& labels) {
  int rank = static_cast<int>(labels.size()) + 1;
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("g" + std::to_string(i));
  std::vector<unsigned> m(rank * rank, 2);
  for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
  for (int i = 0; i + 1 < rank; ++i) {
    m[i * rank + (i + 1)] = labels[i];
    m[(i + 1) * rank + i] = labels[i];
  }
  return CoxeterSystem(std::move(names), std::move(m));
}

inline CoxeterSystem dihedral(unsigned m) { return path_system({m}); }

// Arbitrary symmetric matrix; unspecified pairs get default_label
// (0 = infinity).
inline CoxeterSystem from_labels(int rank,
                                 const std::vector<std::vector<unsigned>>& l,
                                 unsigned default_label = kInfLabel) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("g" + std::to_string(i));
  std::vector<unsigned> m(rank * rank, default_label);
  for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
  for (const auto& row : l) {
    m[row[0] * rank + row[1]] = row[2];
    m[row[1] * rank + row[0]] = row[2];
  }
  return CoxeterSystem(std::move(names), std::move(m));
}

}  // namespace coxlat::testfix
