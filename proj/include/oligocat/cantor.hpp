#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

// Combinatorics of the homeomorphism group of {0,1}^inf acting on its
// boolean algebra of clopen sets: partition orbits X(n), ample-subset
// counts, multiplicative level, and the smallness-witness construction.

namespace oligo {

// The transitive set X(n) of ordered clopen partitions into n parts.
// Its multiplicative level is n, and products decompose by ample subsets.
struct CantorObj {
  int parts = 1;
  int mlev() const { return parts; }
  bool operator==(const CantorObj&) const = default;
};

// A clopen subset: a finite union of binary-prefix cylinders kept in
// canonical minimal form (no prefix an ancestor of another, no sibling
// pair left unmerged).  The empty set and the full space are allowed.
class CylinderSet {
 public:
  CylinderSet() = default;  // the empty set
  static CylinderSet empty_set();
  static CylinderSet full_space();
  static CylinderSet cylinder(const std::string& prefix);
  static CylinderSet from_prefixes(std::vector<std::string> prefixes);

  const std::vector<std::string>& prefixes() const { return pre_; }
  bool is_empty() const { return pre_.empty(); }
  bool is_full() const;

  CylinderSet complement() const;
  bool contains_cylinder(const std::string& word) const;  // [word] subset of this

  bool operator==(const CylinderSet&) const = default;
  auto operator<=>(const CylinderSet&) const = default;

 private:
  std::vector<std::string> pre_;  // canonical, sorted
};

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b);
CylinderSet set_intersection(const CylinderSet& a, const CylinderSet& b);

// A homeomorphism given by prefix replacement: the source prefixes form a
// complete antichain (a cylinder partition of the space), likewise the
// targets, and the map sends [src_i] to [dst_i] by substitution.
struct CylinderHomeo {
  std::vector<std::pair<std::string, std::string>> rules;  // src -> dst
  bool operator==(const CylinderHomeo&) const = default;
};

// Validates both antichains and returns the rules sorted by source.
CylinderHomeo make_homeo(std::vector<std::pair<std::string, std::string>> rules);
// The involution exchanging two disjoint cylinders and fixing the rest.
CylinderHomeo prefix_swap(const std::string& a, const std::string& b);
CylinderHomeo inverse_homeo(const CylinderHomeo& g);
bool is_identity(const CylinderHomeo& g);
CylinderSet apply_homeo(const CylinderHomeo& g, const CylinderSet& s);

// N_r(n): the number of subsets of an r-by-n grid surjecting onto both
// factors, by inclusion-exclusion.  Equals the orbit count of
// X(r) x X(n).  Requires r, n >= 1 and r*n <= 40.
long long ample_count(int r, int n);

// Multiplicities of X(r) inside X(n) x X(m): r -> number of ample subsets
// of the n-by-m grid of cardinality r.  Requires n*m <= 24.
std::map<int, long long> product_decompose_cantor(int n, int m);

// The level of the orbit of a pair of partitions: the number of pairs
// (i, j) with a[i] meeting b[j].  Both inputs must be genuine partitions
// of the full space.
int pair_level(const std::vector<CylinderSet>& a, const std::vector<CylinderSet>& b);

// The witness that a conjugacy set containing g != 1 is not small: a
// clopen U moved off itself, an n-part partition C of the space built
// from combs inside U and gU with every part of gC meeting every part of
// C, and the resulting pair level, which is exactly n^2.
struct WitnessResult {
  CylinderSet base;                    // U with gU disjoint from U
  std::vector<CylinderSet> partition;  // C, a partition of the space
  int level = 0;                       // pair_level(C, gC) = n^2
};
WitnessResult smallness_witness(const CylinderHomeo& g, int n);

// The smallest n such that X(r) x X(n) has more orbits than
// (sum of X(s_i)) x X(n); each s_i must be smaller than r.
int cantor_separation(int r, const std::vector<int>& ss);

}  // namespace oligo
