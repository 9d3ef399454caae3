#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "oligocat/scalars.hpp"

// Brute-force finite-group oracle: crossed G-sets and their half-braidings,
// graded modules with conjugation-compatible gradings, structure families
// beta^X_{x,y} with their axioms, support extraction, and center counting.
// Everything is checked exhaustively over registered test G-sets.

namespace oligo {

class FiniteGroup {
 public:
  // Multiplication table with verified group axioms.  Element ids are the
  // caller's indices; the identity is located automatically.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  // Closure of permutation generators; element 0 is the identity.
  static FiniteGroup from_permutations(int degree,
                                       std::vector<std::vector<int>> gens);
  // One-line names: "C6" cyclic, "S4" symmetric, "D4" dihedral of order 8,
  // "A4" alternating.
  static FiniteGroup named(const std::string& name);

  int order() const { return n_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  std::vector<int> centralizer(int g) const;
  std::vector<int> center() const;
  // All subgroups up to conjugacy, as sorted element lists, ordered by size
  // then lexicographically.
  std::vector<std::vector<int>> subgroup_reps() const;

 private:
  FiniteGroup() = default;
  void finish();  // inverse table, classes

  int n_ = 0, e_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct FinGSet {
  GroupPtr group;
  int size = 0;
  std::vector<std::vector<int>> action;  // action[g][x]
  std::vector<std::vector<int>> orbits;

  int act(int g, int x) const { return action[g][x]; }
  int orbit_of(int x) const;
  std::vector<int> stabilizer(int x) const;
};

FinGSet make_gset(GroupPtr g, std::vector<std::vector<int>> action);
FinGSet point_gset(GroupPtr g);
// Left cosets of the subgroup; for the trivial subgroup point i is element i.
FinGSet coset_gset(GroupPtr g, const std::vector<int>& subgroup);
FinGSet regular_gset(GroupPtr g);
FinGSet conjugation_gset(GroupPtr g);
// Point (x, y) is encoded as x * b.size + y.
FinGSet product_gset(const FinGSet& a, const FinGSet& b);

// All equivariant maps out of a transitive G-set, each as a point table.
std::vector<std::vector<int>> gset_maps(const FinGSet& from, const FinGSet& to);

// The registered test sets: every coset space G/H with H up to conjugacy,
// ordered by decreasing size.  Index 0 is the regular set (points = element
// ids), the last is the one-point set.  Products are formed on demand.
struct TestSets {
  GroupPtr group;
  std::vector<FinGSet> sets;
};
TestSets build_test_sets(GroupPtr g);

struct CheckReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// ---------------------------------------------------------------- crossed

struct CrossedGSet {
  FinGSet base;
  std::vector<int> degree;  // degree[m] is a group element
};
CrossedGSet make_crossed(FinGSet base, std::vector<int> degree);

// The induced half-braiding (x, m) -> (m, |m| x) on a test set.
std::pair<int, int> crossed_braiding(const CrossedGSet& m, const FinGSet& x,
                                     int pt, int elem);

// Degree equivariance |gm| = g|m|g^{-1}, then equivariance, bijectivity,
// naturality, and the tensor condition of the induced braiding over all
// registered test sets.  Failures are itemized, never thrown.
CheckReport crossed_check(const CrossedGSet& m);

// ------------------------------------------------------------- braidings

struct BraidingEnumeration {
  long long count = 0;  // families passing the half-braiding axioms
  std::vector<std::vector<int>> degree_functions;
  long long crossed_count = 0;  // independent count of crossed structures
};

// Enumerates all half-braiding families over the registered transitive test
// sets.  Candidates are parametrized by degree functions (the unit axiom and
// naturality force the module component, so this parametrization is
// complete); each candidate is then verified against the braiding axioms
// directly, and independently against the crossed-structure axiom.  The two
// counts must agree.  Requires |G| * |M| <= 64.
BraidingEnumeration enumerate_halfbraidings(const FinGSet& m);

// Raw |G|^|M| scan counting crossed structures, for cross-checks.
long long crossed_count_raw(const FinGSet& m);

// ------------------------------------------------------------------- YD

using QMat = std::vector<std::vector<Rat>>;

// A G-representation over Rat with a basis partition by group elements.
struct YDData {
  GroupPtr group;
  int dim = 0;
  std::vector<QMat> rep;   // rep[g] is dim x dim
  std::vector<int> grade;  // grade[basis index] = group element
};

YDData yd_module(GroupPtr g, std::vector<QMat> rep, std::vector<int> grade);
YDData yd_trivial(GroupPtr g);  // one-dimensional, graded at the identity
YDData yd_adjoint(GroupPtr g);  // basis G, conjugation action, grade g at g
// Function module on a conjugation-stable subset, graded by its elements.
YDData yd_class(GroupPtr g, std::vector<int> class_union);

// Identity and multiplicativity of the action matrices, and the grading
// compatibility h V_g <= V_{hgh^{-1}}.
CheckReport yd_check(const YDData& v);

// ------------------------------------------------------------ structures

// A family beta^X_{x,y} of module endomorphisms over the registered
// transitive test sets.
struct OPiStructure {
  GroupPtr group;
  TestSets sets;
  int dim = 0;
  std::vector<QMat> rep;                   // G-action matrices on the module
  std::vector<std::vector<QMat>> beta;     // beta[s][x * size + y]
};

// beta^X_{x,y} = sum over {g : y = g x} of the grading projector onto V_g.
OPiStructure yd_beta(const YDData& v);

// The four structure axioms with counting-measure fiber sums, plus derived
// idempotency and orthogonality.  Axiom (c) and orbit-locality are verified
// together on binary products: the product formula must agree with the
// transported transitive values orbit by orbit and vanish across orbits.
// Maps out of products then carry no independent content, so axiom (d) is
// quantified over maps with transitive source.
CheckReport opi_check(const OPiStructure& b);

// ---------------------------------------------------------------- support

struct SupportFunctor {
  // (x, y) with nonzero beta, per registered transitive set.
  std::vector<std::vector<std::pair<int, int>>> pairs;
  bool axioms_ok = false;  // c-functor axioms over transitive maps
  std::vector<std::string> failures;
};

SupportFunctor support_of(const OPiStructure& b);  // pre: opi_check passes

// Extracts D = {g : (1, g) in support(regular set)}, verifies conjugation
// stability and that the support equals the pair functor of D everywhere.
std::vector<int> support_roundtrip(const OPiStructure& b);

// ----------------------------------------------------------------- tensor

struct TensorReport {
  bool pass = true;
  std::vector<int> product_set;  // C = C2 C1, sorted
  std::vector<std::string> failures;
};

// Verifies elementwise, over all registered sets and their binary products,
// that the coproduct family on C(C1) (x) C(C2) equals the pullback of the
// family on C(C2 C1) along multiplication f(h1, h2) = h2 h1.
TensorReport yd_tensor_check(GroupPtr g, const std::vector<int>& c1,
                             const std::vector<int>& c2);

// ------------------------------------------------------------------ center

// Sum over conjugacy-class representatives g of the number of conjugacy
// classes of the centralizer Z(g); cross-checked internally against the
// number of orbits of G on commuting pairs under simultaneous conjugation.
// Requires |G| <= 200.
long long center_simple_count(const FiniteGroup& g);
long long commuting_pair_orbit_count(const FiniteGroup& g);

}  // namespace oligo
