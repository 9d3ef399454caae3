#pragma once

// Finitary permutations of the generic limit, their conjugacy classes, and
// the finite-stage correspondence between conjugacy sets and pair functors.
//
// A conjugacy set D assigns to every transitive smooth G-set X the G-stable
// pair set A_D(X) = {(x, gx) : g in D}.  Truncating to shapes of bounded size
// gives a finite table that can be checked against the defining axioms,
// measured for its level growth (smallness), and inverted: a finite-stage
// back-and-forth recovers the finitary class representatives from the table.

#include "oligocat/fraisse.hpp"
#include "oligocat/gset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oligo {

// ---------------------------------------------------------------------------
// Finitary permutations

// A permutation of the limit moving only finitely many points: the induced
// structure on the support together with a fixed-point-free automorphism of
// it.  Rank 0 encodes the identity.  Stored in conjugation-canonical form:
// the action is the lexicographically least conjugate under Aut(support).
struct FinitaryPerm {
  ClassTag cls = ClassTag::FinSet;
  Structure support;        // canonical shape; size == rank
  std::vector<int> action;  // fixed-point-free automorphism of the support

  int rank() const { return support.size; }

  friend bool operator==(const FinitaryPerm&, const FinitaryPerm&) = default;
  friend auto operator<=>(const FinitaryPerm&, const FinitaryPerm&) = default;
};

FinitaryPerm identity_perm(ClassTag cls);

// Validates that the action is a fixed-point-free automorphism of the
// support and returns the conjugation-canonical representative.
FinitaryPerm make_finitary(ClassTag cls, const Structure& support,
                           std::vector<int> action);

// Cycle lengths of the action on the support, sorted descending.
std::vector<int> cycle_type(const FinitaryPerm& g);

std::string perm_str(const FinitaryPerm& g);

// Semidecision for extendability to an automorphism of the limit fixing the
// complement of the support: checks every superset configuration with up to
// extra_depth added points.  A single failing configuration refutes; passing
// all of them is conclusive for the four registered classes at depth 3
// (pure sets always extend; orders, cyclic orders and trees never do).
bool realizable_to_depth(const FinitaryPerm& g, int extra_depth = 3);

// One conjugation-canonical representative per class of rank <= max_rank
// (rank 0 omitted unless requested).  Empty for rigid classes.
std::vector<FinitaryPerm> finitary_classes(ClassTag cls, int max_rank,
                                           bool include_identity = false);

// ---------------------------------------------------------------------------
// Cycle-count class functions (infinite symmetric group)

// The complete conjugacy invariant of a permutation of a countable set: the
// number of i-cycles for each i in {1, 2, ..., oo}, finitely described by an
// explicit prefix, a tail value, and the count of infinite cycles.  The
// value kInfinitely stands for infinity.
struct ClassFunctionN {
  static constexpr long long kInfinitely = -1;

  std::vector<long long> counts;  // counts[i-1] = N(i) for i <= counts.size()
  long long tail = 0;             // N(i) for every i > counts.size()
  long long inf_cycles = 0;       // N(oo)

  long long at(long long i) const;  // N(i) for finite i >= 1

  friend bool operator==(const ClassFunctionN&, const ClassFunctionN&) = default;
};

// N occurs for a permutation of a countable set iff N(oo) > 0 or the counts
// sum to infinity.
bool realizable(const ClassFunctionN& n);

// The class function of a finitary permutation: infinitely many fixed
// points, its finite cycle counts, and no infinite cycles.
ClassFunctionN class_function(const FinitaryPerm& g);

// Whether the class with invariant m lies in the closure of the class with
// invariant n: m(i) <= n(i) for all finite i, and if m has an infinite cycle
// then n has one too or has nontrivial cycles of unboundedly many lengths.
// Unrealizable inputs are rejected.
bool closure_relation(const ClassFunctionN& n, const ClassFunctionN& m);

// ---------------------------------------------------------------------------
// Conjugacy-set specifications

// A finite union of finitary conjugacy classes, given by pairwise
// non-conjugate representatives, with the identity optionally adjoined
// (the topological closure of a finitary class always adjoins it).
struct ConjugacySetSpec {
  ClassTag cls = ClassTag::FinSet;
  std::vector<FinitaryPerm> reps;  // canonical, nonzero rank, sorted
  bool closure_flag = false;       // whether the identity is adjoined

  friend bool operator==(const ConjugacySetSpec&, const ConjugacySetSpec&) = default;
};

// Validates ranks, realizability, and pairwise non-conjugacy; sorts reps.
// The identity is represented by the closure flag, not by a rank-0 rep.
ConjugacySetSpec make_spec(ClassTag cls, std::vector<FinitaryPerm> reps,
                           bool closure_flag);

// ---------------------------------------------------------------------------
// Truncated pair functors

// The table of a pair functor on shapes of size <= depth: for each base
// shape A, the set of orbit labels of pairs on the embedding set of A.  Each
// label is a two-cover decorated orbit (both covers are embeddings of A).
struct TruncatedCFunctor {
  ClassTag cls = ClassTag::FinSet;
  int depth = 0;
  std::vector<std::pair<Structure, std::vector<DecoratedOrbit>>> table;

  const std::vector<DecoratedOrbit>* row(const Structure& a) const;

  friend bool operator==(const TruncatedCFunctor&, const TruncatedCFunctor&) = default;
};

// Deterministic printable label, usable as a JSON key.
std::string pair_label_str(const DecoratedOrbit& lab);

// The table of pairs (x, gx) with g ranging over the conjugates of the
// spec's representatives (every placement of each support relative to the
// base shape) together with the identity when the closure flag is set.
TruncatedCFunctor build_cfunctor(const ConjugacySetSpec& d, int depth);

// The table of the identity conjugacy set: diagonal labels only.
TruncatedCFunctor diagonal_cfunctor(ClassTag cls, int depth);

// The table of the full group: every pair orbit on every base shape.
TruncatedCFunctor full_cfunctor(ClassTag cls, int depth);

struct AxiomsReport {
  bool pass = false;
  std::vector<std::string> violations;
  std::string summary;
};

// Checks the pair-functor axioms against every embedding-induced map of
// embedding sets within depth: (a) pushforwards of table pairs stay in the
// table, (b) the second member of a table pair lifts along any lift of the
// first, (c) symmetrically with the roles swapped.
AxiomsReport cfunctor_axioms_check(const TruncatedCFunctor& f);

struct SmallnessResult {
  int gap = 0;         // max over rows of lev(row) - |A|
  bool bounded = true; // false when the gap saturates the truncation depth
  std::string detail;
};

// The level excess of the table: the largest number of extra points a table
// label carries over its base shape.  Requires a strong amalgamation class.
// Monotone nondecreasing in depth; a gap equal to the depth cannot be
// distinguished from unbounded growth and is reported as such.
SmallnessResult smallness_gap(const TruncatedCFunctor& f);

struct RankBoundVerdict {
  bool violation = false;
  std::vector<int> witness;       // subset A with #(A u gA) > s + #A
  int witness_excess = 0;         // #(A u gA) - #A for the witness
  int bound = 0;                  // 3s
  int rank = 0;                   // stored rank of g
  bool rank_within_bound = false; // rank <= 3s, checked when no violation
  std::string detail;
};

// Exhaustively tests #(A u gA) <= s + #A over all subsets A of a window of
// at least 3s+1 points containing the support.  No violation certifies rank
// <= 3s, which is cross-checked against the stored rank.
RankBoundVerdict rank_bound_test(const FinitaryPerm& g, int s, int window);

struct ReconstructResult {
  ConjugacySetSpec spec;
  bool inconclusive = false;  // some branch was cut off by the rank budget
  long long states_explored = 0;
  long long branches_inconclusive = 0;
  std::vector<std::string> notes;
};

// Finite-stage back-and-forth: partial injections with witnesses in the
// table are extended (domain enlargement, then fresh growth at balanced
// states) until the support closes; closed states whose one-point
// extensions admit the fixed-point label are emitted as class reps of rank
// <= max_rank.  On tables built from finitary specs this recovers the
// closure: the input classes, everything below them in the closure order,
// and the identity flag.  Requires depth >= 2*max_rank + 2.
ReconstructResult reconstruct_classes(const TruncatedCFunctor& f, int max_rank);

// For each rep g with support A: whether the only element of D agreeing
// with g on all of A is g itself, decided by exhaustive placement of every
// rep's support against A.  The identity's entry (key "1") is present when
// the closure flag is set: it is isolated only in the identity-only set.
std::vector<std::pair<std::string, bool>> isolated_check(const ConjugacySetSpec& d);

}  // namespace oligo
