#pragma once

// The category of Schwartz spaces of smooth sets under a fixed measure:
// objects are finite sums of transitive-set function spaces, morphisms are
// G-invariant matrices indexed by orbits on products, composition integrates
// over the middle variable (a finite exact sum weighted by measure ratios),
// with tensor, duality by transpose, trace, and the Frobenius laws of the
// diagonal.

#include "oligocat/fraisse.hpp"
#include "oligocat/gset.hpp"
#include "oligocat/measures.hpp"
#include "oligocat/scalars.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace oligo {

// A finite direct sum of spaces C(orbit); components are listed explicitly
// so multiplicities stay distinguishable.
struct PermObject {
  ClassTag cls = ClassTag::FinSet;
  std::vector<Structure> comps;

  friend bool operator==(const PermObject&, const PermObject&) = default;
};

PermObject perm_object(const Structure& shape);
PermObject perm_object(ClassTag cls, const GSetSum& sum);
PermObject unit_object(ClassTag cls);

// A basis vector of Hom(C(comp of X), C(comp of Y)): an orbit on the
// product (Y component) x (X component).
struct HomLabel {
  int cod_comp = 0;
  int dom_comp = 0;
  DecoratedOrbit orb;  // factors ordered (codomain, domain)

  friend bool operator==(const HomLabel&, const HomLabel&) = default;
  friend auto operator<=>(const HomLabel&, const HomLabel&) = default;
};

// All basis labels of Hom(X, Y), grouped by component pair; dim Hom is the
// count.
std::vector<HomLabel> hom_basis(const PermObject& x, const PermObject& y);

std::string hom_label_str(const HomLabel& l);

struct PermMorphism {
  PermObject dom;
  PermObject cod;
  std::map<HomLabel, RatFunc> entries;  // zero entries omitted

  void set(const HomLabel& l, const RatFunc& v);
  RatFunc at(const HomLabel& l) const;  // zero when absent

  friend bool operator==(const PermMorphism&, const PermMorphism&) = default;
};

PermMorphism zero_morphism(const PermObject& x, const PermObject& y);
PermMorphism identity_morphism(const PermObject& x);
// All matrix entries equal to the given scalar.
PermMorphism ones_morphism(const PermObject& x, const PermObject& y,
                           const RatFunc& value = RatFunc(1));
PermMorphism scale(const RatFunc& c, const PermMorphism& a);
PermMorphism add(const PermMorphism& a, const PermMorphism& b);

// Composition by fiber integration: the entry of BA on a pair-orbit O of
// Z x X is the sum over triple-orbits T on Z x Y x X lying over O of
// B(T|_{ZY}) A(T|_{YX}) mu(T) / mu(O).  Requires mu nonvanishing on the
// pair-orbits of the component pairs that can receive contributions.
PermMorphism compose(const PermMorphism& b, const PermMorphism& a,
                     const MeasureSolution& mu);

// The tensor-product object together with the orbit provenance of each
// component: component k of obj is the orbit prov_orb[k] on
// (left component prov_left[k]) x (right component prov_right[k]).
struct TensorDecomp {
  PermObject obj;
  std::vector<int> prov_left;
  std::vector<int> prov_right;
  std::vector<DecoratedOrbit> prov_orb;
};

TensorDecomp tensor_object(const PermObject& a, const PermObject& b);

// Kronecker tensor of morphisms on the product objects.
PermMorphism tensor(const PermMorphism& a, const PermMorphism& b);

// Transpose: entries transported along the swap of the two factors.
PermMorphism dual(const PermMorphism& a);

// Pullback along the map to the point: the all-ones column 1 -> C(X).
PermMorphism unit_constants(const PermObject& x);
// Pushforward along the map to the point (integration): C(X) -> 1.
PermMorphism counit_integration(const PermObject& x);
// Restriction to the diagonal C(X (x) X) -> C(X): the graph matrix of the
// diagonal map.  xx must be tensor_object(x, x); its transpose (dual) is the
// extension-by-zero comultiplication.
PermMorphism diagonal_restriction(const PermObject& x, const TensorDecomp& xx);

// Categorical dimension: dim C(X) = mu(X).
RatFunc trace_dim(const PermObject& x, const MeasureSolution& mu);

// Trace of an endomorphism: the sum over components of the entry on the
// diagonal orbit times the measure of the component (the unit/counit
// composite collapses to this sum).
RatFunc trace(const PermMorphism& a, const MeasureSolution& mu);

struct FrobeniusReport {
  bool pass = false;
  std::vector<std::string> failures;
  std::string summary;
};

// Builds the diagonal and point maps of X as graph/transpose matrices and
// verifies the Frobenius-algebra laws of C(X): associativity, commutativity,
// unit and counit laws, the Frobenius interchange law, and specialness
// (multiplication after comultiplication is the identity, with no measure
// factor).
FrobeniusReport frobenius_check(const PermObject& x, const MeasureSolution& mu);

}  // namespace oligo
