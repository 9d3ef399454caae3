#pragma once

// Registered amalgamation classes of finite structures: pure sets, linear
// orders, cyclic orders, and reduced leaf-labelled trees.  Provides canonical
// representatives, embedding enumeration, and exact amalgamation enumeration.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oligo {

enum class ClassTag { FinSet, LinOrd, CycOrd, Tree };

std::string class_name(ClassTag cls);
std::optional<ClassTag> class_from_name(std::string_view name);

// Largest structure size enumerate_structures will accept for a class.
// Honors the OLIGO_MAX_SIZE environment variable when set.
int size_bound(ClassTag cls);

// Canonical representative of an isomorphism class.
//   FinSet : points 0..size-1, no relations.
//   LinOrd : the identity order 0 < 1 < ... < size-1.
//   CycOrd : the standard cycle 0 -> 1 -> ... -> size-1 -> 0 (trivial if size<3).
//   Tree   : reduced leaf-labelled tree, encoded by its system of nontrivial
//            splits; each split is the bitmask of the side not containing
//            leaf 0, both sides have >= 2 leaves, masks sorted ascending.
struct Structure {
  ClassTag cls = ClassTag::FinSet;
  int size = 0;
  std::vector<std::uint32_t> splits;  // Tree only; empty otherwise

  friend bool operator==(const Structure&, const Structure&) = default;
  friend auto operator<=>(const Structure&, const Structure&) = default;

  // Human-readable encoding, e.g. "((0,1),(2,3))" for a tree.
  std::string enc() const;
};

// Canonical structure of the given size (any class; Tree only for size<=3,
// where the shape is unique).
Structure make_structure(ClassTag cls, int size);

// Canonicalize an arbitrary split system (pairwise compatible, normalized to
// the side avoiding leaf 0) into a tree Structure.
Structure tree_from_splits(int leaves, std::vector<std::uint32_t> splits);

// A not-necessarily-canonical structure on points 0..n-1, used while gluing.
//   LinOrd : order[p] = rank of point p.
//   CycOrd : cyc = points in cyclic sequence (size n when n>=3, else empty).
//   Tree   : splits over the points, normalized to the side avoiding point 0.
struct ConcreteStructure {
  ClassTag cls = ClassTag::FinSet;
  int n = 0;
  std::vector<int> order;
  std::vector<int> cyc;
  std::vector<std::uint32_t> splits;

  friend bool operator==(const ConcreteStructure&, const ConcreteStructure&) = default;
  friend auto operator<=>(const ConcreteStructure&, const ConcreteStructure&) = default;
};

ConcreteStructure to_concrete(const Structure& s);

// The same structure carried along a relabelling of its points; cyclic
// arrangements are rotated to start at point 0 and splits renormalized.
ConcreteStructure remap_concrete(const ConcreteStructure& c, const std::vector<int>& relab);

// Induced structure on the listed points, relabelled by list position.
ConcreteStructure restrict_concrete(const ConcreteStructure& c,
                                    const std::vector<int>& points);

// Canonical form of a concrete structure: the canonical Structure together
// with the relabelling map old point -> canonical point.  Deterministic.
std::pair<Structure, std::vector<int>> canonical_form(const ConcreteStructure& c);

struct Embedding {
  std::vector<int> map;  // map[i] = image of source point i

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

// One canonical representative per isomorphism class, deterministic order.
std::vector<Structure> enumerate_structures(ClassTag cls, int size);

// All injections preserving and reflecting the relations.
std::vector<Embedding> enumerate_embeddings(const Structure& a, const Structure& b);

bool is_embedding(const ConcreteStructure& a, const ConcreteStructure& b,
                  const std::vector<int>& map);

// Result of gluing b and ap over a common base.  Points of b keep their
// indices in the total structure; unmatched points of ap are appended.
struct ConcreteAmalgam {
  std::vector<std::pair<int, int>> theta;  // matched pairs (point of b, point of ap)
  ConcreteStructure total;
  std::vector<int> cover_left;   // b-point -> total point (the identity)
  std::vector<int> cover_right;  // ap-point -> total point
};

// All amalgamations of b and ap over the base identified by i_img / j_img
// (i_img[k] in b and j_img[k] in ap are images of the k-th base point).
// Exact: one entry per isomorphism class of gluings, with no repetition.
std::vector<ConcreteAmalgam> amalgamate(const ConcreteStructure& b,
                                        const ConcreteStructure& ap,
                                        const std::vector<int>& i_img,
                                        const std::vector<int>& j_img);

// Amalgam with the total structure put in canonical form (covers relabelled
// to match).
struct Amalgam {
  std::vector<std::pair<int, int>> theta;
  Structure total;
  std::vector<int> cover_left;
  std::vector<int> cover_right;
};

std::vector<Amalgam> enumerate_amalgamations(const Structure& a,
                                             const Structure& b, const Embedding& i,
                                             const Structure& ap, const Embedding& j);

// Number of amalgamations of a and b over the empty base.
long long amalgamation_count(const Structure& a, const Structure& b);

// True iff every pair of embeddings with a shared source (all sizes <= bound)
// admits a gluing identifying nothing beyond the base.
bool strong_amalgamation_check(ClassTag cls, int bound);

// The tree obtained by sprouting two fresh leaves at every leaf of a,
// together with the embedding sending each leaf to one of its sprouts.
std::pair<Structure, Embedding> tree_double(const Structure& a);

// True iff every automorphism of b fixing b minus the image of e pointwise
// is the identity.
bool rigidity_check(const Structure& a, const Structure& b, const Embedding& e);

// All relabellings of 0..size-1 preserving the structure.
std::vector<std::vector<int>> structure_automorphisms(const Structure& s);

// Restrict a split system to an ordered list of points; the result is over
// positions 0..|points|-1, normalized, trivial splits dropped, deduplicated.
std::vector<std::uint32_t> restricted_splits(const std::vector<std::uint32_t>& splits,
                                             const std::vector<int>& points);

}  // namespace oligo
