#pragma once

// Invariant measures presented by extension scalars: each one-point extension
// type of a finite structure carries a scalar, subject to additivity under
// stabilizers, multiplicativity along fiber maps, and conjugation invariance.
// Solving the resulting polynomial system (degree <= 2, exact arithmetic)
// enumerates every measure of a class to a given depth.

#include "oligocat/fraisse.hpp"
#include "oligocat/gset.hpp"
#include "oligocat/scalars.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oligo {

// A one-point extension type: the orbit of pairs (embedding of the base,
// extension point) with the base cover fixed.  covers[0] is the identity on
// the canonical base, covers[1] the extension point; total has base.size + 1
// points.
struct FiberType {
  Structure base;
  DecoratedOrbit orb;

  friend bool operator==(const FiberType&, const FiberType&) = default;
  friend auto operator<=>(const FiberType&, const FiberType&) = default;
};

// The type of point y over the listed base points inside an ambient
// structure; y must not be listed.  Canonical in the base: the result's
// covers[0] is the identity on canonical_form of the restriction.
FiberType fiber_type_in(const ConcreteStructure& ambient,
                        const std::vector<int>& base_pts, int y);

// All one-point extension types over the base, sorted.
const std::vector<FiberType>& fibers_over(const Structure& base);

// Normal form under moving the base: minimum over base automorphisms.
// Conjugate types share their extension scalar.
FiberType conjugacy_label(const FiberType& t);

// The smallest-support representative forced to carry the same scalar: points
// of the base are dropped while the restricted type determines the type
// uniquely and is not realized by the dropped point.  Conjugation-normalized.
FiberType minimal_label(const FiberType& t);

// Human-readable name of a type, e.g. "0<x<1" or "(0 x 1 2)" or "{0,1}+x".
std::string fiber_label_str(const FiberType& t);

struct ExtensionType {
  FiberType fiber;
  FiberType conj;     // conjugacy label
  FiberType minimal;  // aggregated unknown this type's scalar equals
  std::string label;  // fiber_label_str(conj)
};

// All one-point extensions of the base up to isomorphism over it, annotated
// with conjugacy labels.
std::vector<ExtensionType> extension_types(const Structure& base);

// One measure: extension scalars on the minimal labels of all types over
// bases of size <= depth.  Scalars are rational functions of t; they are
// constants unless a symbolic normalization was imposed.
struct MeasureSolution {
  ClassTag cls = ClassTag::FinSet;
  int depth = 0;
  std::vector<std::pair<FiberType, RatFunc>> values;  // sorted by label

  const RatFunc* find(const FiberType& minimal) const;
};

struct SolveResult {
  bool underdetermined = false;
  std::string detail;  // "underdetermined at depth N" report, branch notes
  std::vector<MeasureSolution> solutions;
};

// All measures of the class to the given depth (>= 3): every assignment of
// extension scalars satisfying the measure axioms on structures of size
// <= depth + 1.  Optional normalization pins measures of transitive sets,
// e.g. {(point shape, t)} imposes mu(Omega) = t.  An unsatisfiable
// normalization yields an empty solution list; a positive-dimensional
// solution variety yields an "underdetermined at depth" report.  Tree-class
// solving is experimental and must be enabled explicitly.
SolveResult solve_measures(ClassTag cls, int depth,
                           const std::vector<std::pair<Structure, RatFunc>>& normalization = {},
                           bool enable_tree = false);

// mu of the transitive set of embeddings of the shape: the product of
// extension scalars along a point-by-point chain (chain-independent for
// solutions of the axiom system).  Shapes must lie within the solved depth.
RatFunc eval_measure(const MeasureSolution& sol, const Structure& shape);
RatFunc eval_measure_sum(const MeasureSolution& sol, const GSetSum& x);

struct VerifyReport {
  bool pass = false;
  std::vector<std::string> failures;
  std::string summary;
};

// Surrogate verification to depth n: chain independence of eval_measure,
// the product identity mu(X) mu(Y) = sum of mu over orbits of X x Y, and a
// re-check of the full axiom system at the solution.
VerifyReport verify_measure(const MeasureSolution& sol, int n);

struct RegularityReport {
  bool regular = false;
  std::vector<Structure> vanishing;  // transitive sets with mu = 0, by size
};

// Searches all transitive sets of level <= n for vanishing measure.
RegularityReport regularity_check(const MeasureSolution& sol, int n);

}  // namespace oligo
