#pragma once

// Transitive smooth G-sets presented by shapes: the set of embeddings of a
// finite structure into the generic limit.  Products and fiber products
// decompose into orbits indexed by amalgamations; the level of a sum is the
// largest shape size.

#include "oligocat/fraisse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oligo {

// The transitive G-set of embeddings of the shape into the limit structure.
using TransGSet = Structure;

// A finite formal sum of transitive G-sets (finitely many orbits).
struct GSetSum {
  std::vector<std::pair<Structure, long long>> terms;  // sorted, mult > 0

  void add(const Structure& s, long long mult = 1);
  long long total_orbits() const;

  friend bool operator==(const GSetSum&, const GSetSum&) = default;
};

bool has_strong_amalgamation(ClassTag cls);

// Orbits of X x Y, one term per amalgamation of the shapes over the empty base.
GSetSum product_decompose(const TransGSet& x, const TransGSet& y);
GSetSum product_decompose_sum(const GSetSum& x, const GSetSum& y);

// Orbits of the fiber product over the shared base a.
GSetSum fiber_product_decompose(const Structure& a, const Structure& b,
                                const Embedding& i, const Structure& ap,
                                const Embedding& j);

// Max shape size; empty sum has no level (minus infinity).
std::optional<int> level(const GSetSum& x);

struct LevelReport {
  bool pass = false;
  std::string detail;
};

// Verifies lev(X x Y) = lev X + lev Y (attained, never exceeded) for all
// transitive X, Y of level <= bound.
LevelReport check_level_additivity(ClassTag cls, int bound);

// Number of orbits on X x Y counted with multiplicity (the Hom dimension).
long long orbit_count(const GSetSum& x, const GSetSum& y);

struct SPrimeResult {
  bool found = false;
  Structure witness;
  long long lhs = 0;  // N_A(witness)
  long long rhs = 0;  // sum of N_{B_i}(witness)
  int bound = 0;
};

// Smallest structure C (by size, then canonical order) with
// N_A(C) > sum_i N_{B_i}(C), or an exhaustion report at the bound.
SPrimeResult property_S_prime_check(const Structure& a,
                                    const std::vector<Structure>& bs,
                                    int search_bound);

// ---------------------------------------------------------------------------
// Orbits on products of several factors, labelled canonically.
//
// An orbit of tuples (e_1, ..., e_k), e_i an embedding of shape S_i, is
// determined by the union structure D together with the k cover maps
// S_i -> D.  Points of D are relabelled by first occurrence along the
// concatenated covers, which makes the label independent of how the orbit
// was produced.

struct DecoratedOrbit {
  ConcreteStructure total;               // in first-occurrence labelling
  std::vector<std::vector<int>> covers;  // covers[i]: S_i point -> total point

  friend bool operator==(const DecoratedOrbit&, const DecoratedOrbit&) = default;
  friend auto operator<=>(const DecoratedOrbit&, const DecoratedOrbit&) = default;
};

// Relabel by first occurrence along the covers; the covers must jointly
// reach every point of the total structure.
DecoratedOrbit decorate(const ConcreteStructure& total,
                        std::vector<std::vector<int>> covers);

// All orbits on S_1 x ... x S_k, sorted by label.
std::vector<DecoratedOrbit> product_orbits(const std::vector<Structure>& shapes);

// The orbit obtained by keeping only the listed factors; the label agrees
// with what product_orbits over those factors alone would produce.
DecoratedOrbit restrict_orbit(const DecoratedOrbit& o, const std::vector<int>& factors);

}  // namespace oligo
