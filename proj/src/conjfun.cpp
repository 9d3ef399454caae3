#include "oligocat/conjfun.hpp"

#include "oligocat/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oligo {
namespace {

std::vector<int> iota_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

// cover composed with an embedding of a smaller shape: out[i] = c[e[i]].
std::vector<int> pull_cover(const std::vector<int>& c, const std::vector<int>& e) {
  std::vector<int> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = c[e[i]];
  return out;
}

// Orbit label of a pair of covers inside a larger configuration: restrict
// the total structure to the points the covers reach, then decorate.
DecoratedOrbit pair_label(const ConcreteStructure& total, const std::vector<int>& c1,
                          const std::vector<int>& c2) {
  std::vector<int> pts;
  pts.reserve(c1.size() + c2.size());
  pts.insert(pts.end(), c1.begin(), c1.end());
  pts.insert(pts.end(), c2.begin(), c2.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<int> pos(total.n, -1);
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = static_cast<int>(i);
  ConcreteStructure r = restrict_concrete(total, pts);
  auto remap = [&](const std::vector<int>& c) {
    std::vector<int> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = pos[c[i]];
    return out;
  };
  return decorate(r, {remap(c1), remap(c2)});
}

bool row_contains(const std::vector<DecoratedOrbit>& row, const DecoratedOrbit& lab) {
  return std::binary_search(row.begin(), row.end(), lab);
}

DecoratedOrbit diagonal_label(const Structure& a) {
  ConcreteStructure c = to_concrete(a);
  return decorate(c, {iota_map(a.size), iota_map(a.size)});
}

std::string cycles_str(const std::vector<int>& action) {
  const int n = static_cast<int>(action.size());
  std::vector<bool> seen(n, false);
  std::ostringstream os;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    os << '(' << i;
    seen[i] = true;
    for (int j = action[i]; j != i; j = action[j]) {
      seen[j] = true;
      os << ' ' << j;
    }
    os << ')';
  }
  return os.str();
}

// A fresh point adjoined to a concrete structure, in every structural
// position; transport maps old points into the extension.
struct OnePointExt {
  ConcreteStructure total;
  std::vector<int> transport;
  int fresh = 0;
};

std::vector<OnePointExt> one_point_extensions(ClassTag cls, const ConcreteStructure& c) {
  auto [shape, relab] = canonical_form(c);
  std::vector<OnePointExt> out;
  for (const DecoratedOrbit& w : product_orbits({shape, make_structure(cls, 1)})) {
    const int fresh = w.covers[1][0];
    if (std::find(w.covers[0].begin(), w.covers[0].end(), fresh) != w.covers[0].end())
      continue;  // the new point landed on an existing one
    OnePointExt e;
    e.total = w.total;
    e.transport.resize(c.n);
    for (int u = 0; u < c.n; ++u) e.transport[u] = w.covers[0][relab[u]];
    e.fresh = fresh;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Finitary permutations

FinitaryPerm identity_perm(ClassTag cls) {
  return FinitaryPerm{cls, make_structure(cls, 0), {}};
}

FinitaryPerm make_finitary(ClassTag cls, const Structure& support,
                           std::vector<int> action) {
  if (support.cls != cls) throw UsageError("support class mismatch");
  const int n = support.size;
  if (canonical_form(to_concrete(support)).first != support)
    throw UsageError("support shape is not canonical");
  if (static_cast<int>(action.size()) != n)
    throw UsageError("action size does not match the support");
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (action[i] < 0 || action[i] >= n || hit[action[i]])
      throw UsageError("action is not a permutation of the support");
    hit[action[i]] = true;
    if (action[i] == i)
      throw UsageError("action fixes a support point; shrink the support");
  }
  const auto auts = structure_automorphisms(support);
  if (std::find(auts.begin(), auts.end(), action) == auts.end())
    throw UsageError("action does not preserve the support structure");
  // conjugation-canonical representative
  std::vector<int> best = action;
  for (const auto& phi : auts) {
    std::vector<int> conj(n);
    for (int i = 0; i < n; ++i) conj[phi[i]] = phi[action[i]];
    best = std::min(best, conj);
  }
  return FinitaryPerm{cls, support, std::move(best)};
}

std::vector<int> cycle_type(const FinitaryPerm& g) {
  const int n = g.rank();
  std::vector<bool> seen(n, false);
  std::vector<int> type;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = g.action[j]) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::string perm_str(const FinitaryPerm& g) {
  if (g.rank() == 0) return class_name(g.cls) + ":1";
  return class_name(g.cls) + ":" + g.support.enc() + ":" + cycles_str(g.action);
}

bool realizable_to_depth(const FinitaryPerm& g, int extra_depth) {
  if (g.rank() == 0) return true;
  for (int extra = 1; extra <= extra_depth; ++extra) {
    const int size = g.rank() + extra;
    if (size > size_bound(g.cls)) break;
    for (const Structure& b : enumerate_structures(g.cls, size)) {
      const ConcreteStructure cb = to_concrete(b);
      for (const Embedding& e : enumerate_embeddings(g.support, b)) {
        std::vector<int> psi = iota_map(size);
        for (int i = 0; i < g.rank(); ++i) psi[e.map[i]] = e.map[g.action[i]];
        if (!is_embedding(cb, cb, psi)) return false;
      }
    }
  }
  return true;
}

std::vector<FinitaryPerm> finitary_classes(ClassTag cls, int max_rank,
                                           bool include_identity) {
  if (max_rank < 0) throw UsageError("negative rank bound");
  if (max_rank > size_bound(cls))
    throw ResourceError("rank bound exceeds the structure size bound");
  std::vector<FinitaryPerm> out;
  if (include_identity) out.push_back(identity_perm(cls));
  for (int k = 2; k <= max_rank; ++k) {
    for (const Structure& s : enumerate_structures(cls, k)) {
      const auto auts = structure_automorphisms(s);
      std::set<std::vector<int>> seen;
      for (const auto& alpha : auts) {
        bool fpf = true;
        for (int i = 0; i < k && fpf; ++i) fpf = alpha[i] != i;
        if (!fpf) continue;
        FinitaryPerm g = make_finitary(cls, s, alpha);
        if (!seen.insert(g.action).second) continue;
        if (realizable_to_depth(g)) out.push_back(std::move(g));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycle-count class functions

long long ClassFunctionN::at(long long i) const {
  if (i < 1) throw UsageError("cycle lengths start at 1");
  if (i <= static_cast<long long>(counts.size())) return counts[i - 1];
  return tail;
}

bool realizable(const ClassFunctionN& n) {
  if (n.inf_cycles != 0) return true;  // an infinite cycle carries the rest
  if (n.tail != 0) return true;        // nonzero counts for unboundedly many lengths
  for (long long c : n.counts)
    if (c == ClassFunctionN::kInfinitely) return true;
  return false;
}

ClassFunctionN class_function(const FinitaryPerm& g) {
  ClassFunctionN n;
  n.counts.assign(1, ClassFunctionN::kInfinitely);  // cofinitely many fixed points
  for (int len : cycle_type(g)) {
    if (static_cast<int>(n.counts.size()) < len) n.counts.resize(len, 0);
    ++n.counts[len - 1];
  }
  return n;
}

bool closure_relation(const ClassFunctionN& n, const ClassFunctionN& m) {
  if (!realizable(n)) throw UsageError("first class function is not realizable");
  if (!realizable(m)) throw UsageError("second class function is not realizable");
  auto le = [](long long a, long long b) {
    if (a == ClassFunctionN::kInfinitely) return b == ClassFunctionN::kInfinitely;
    return b == ClassFunctionN::kInfinitely || a <= b;
  };
  const long long len =
      std::max(n.counts.size(), m.counts.size());
  for (long long i = 1; i <= len; ++i)
    if (!le(m.at(i), n.at(i))) return false;
  if (!le(m.tail, n.tail)) return false;
  if (m.inf_cycles != 0) {
    const bool n_has_room = n.inf_cycles != 0 || n.tail != 0;
    if (!n_has_room) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Conjugacy-set specifications

ConjugacySetSpec make_spec(ClassTag cls, std::vector<FinitaryPerm> reps,
                           bool closure_flag) {
  for (auto& g : reps) {
    if (g.cls != cls) throw UsageError("rep class mismatch");
    if (g.rank() == 0)
      throw UsageError("represent the identity via the closure flag");
    g = make_finitary(cls, g.support, g.action);
    if (!realizable_to_depth(g))
      throw UsageError("rep is not realizable: " + perm_str(g));
  }
  std::sort(reps.begin(), reps.end());
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (reps[i] == reps[i - 1])
      throw UsageError("reps are conjugate: " + perm_str(reps[i]));
  return ConjugacySetSpec{cls, std::move(reps), closure_flag};
}

// ---------------------------------------------------------------------------
// Truncated pair functors

const std::vector<DecoratedOrbit>* TruncatedCFunctor::row(const Structure& a) const {
  for (const auto& [s, labs] : table)
    if (s == a) return &labs;
  return nullptr;
}

std::string pair_label_str(const DecoratedOrbit& lab) {
  auto [shape, relab] = canonical_form(lab.total);
  std::ostringstream os;
  os << shape.enc();
  for (const auto& cover : lab.covers) {
    os << '|';
    for (std::size_t i = 0; i < cover.size(); ++i)
      os << (i ? "," : "") << relab[cover[i]];
  }
  return os.str();
}

TruncatedCFunctor build_cfunctor(const ConjugacySetSpec& d, int depth) {
  if (depth < 0) throw UsageError("negative depth");
  const bool nonempty = d.closure_flag || !d.reps.empty();
  TruncatedCFunctor f{d.cls, depth, {}};
  for (int m = 0; m <= depth; ++m) {
    for (const Structure& a : enumerate_structures(d.cls, m)) {
      std::set<DecoratedOrbit> labs;
      if (nonempty) labs.insert(diagonal_label(a));
      if (m > 0) {
        for (const FinitaryPerm& g : d.reps) {
          for (const DecoratedOrbit& w : product_orbits({a, g.support})) {
            std::vector<int> pi = iota_map(w.total.n);
            for (int s = 0; s < g.rank(); ++s)
              pi[w.covers[1][s]] = w.covers[1][g.action[s]];
            std::vector<int> moved(m);
            for (int i = 0; i < m; ++i) moved[i] = pi[w.covers[0][i]];
            labs.insert(pair_label(w.total, w.covers[0], moved));
          }
        }
      }
      f.table.emplace_back(a, std::vector<DecoratedOrbit>(labs.begin(), labs.end()));
    }
  }
  return f;
}

TruncatedCFunctor diagonal_cfunctor(ClassTag cls, int depth) {
  return build_cfunctor(make_spec(cls, {}, true), depth);
}

TruncatedCFunctor full_cfunctor(ClassTag cls, int depth) {
  if (depth < 0) throw UsageError("negative depth");
  TruncatedCFunctor f{cls, depth, {}};
  for (int m = 0; m <= depth; ++m) {
    for (const Structure& a : enumerate_structures(cls, m)) {
      std::vector<DecoratedOrbit> labs;
      if (m == 0) {
        labs.push_back(diagonal_label(a));
      } else {
        labs = product_orbits({a, a});
        std::sort(labs.begin(), labs.end());
      }
      f.table.emplace_back(a, std::move(labs));
    }
  }
  return f;
}

namespace {

// Generators of the automorphism group of a shape, as point permutations.
// Pure sets get the standard two symmetric-group generators; other classes
// have small automorphism groups that are materialized outright.
std::vector<std::vector<int>> automorphism_generators(const Structure& s) {
  std::vector<std::vector<int>> gens;
  if (s.cls == ClassTag::FinSet) {
    if (s.size >= 2) {
      std::vector<int> t = iota_map(s.size);
      std::swap(t[0], t[1]);
      gens.push_back(std::move(t));
    }
    if (s.size >= 3) {
      std::vector<int> c(s.size);
      for (int i = 0; i < s.size; ++i) c[i] = (i + 1) % s.size;
      gens.push_back(std::move(c));
    }
    return gens;
  }
  for (auto& g : structure_automorphisms(s))
    if (g != iota_map(s.size)) gens.push_back(std::move(g));
  return gens;
}

}  // namespace

AxiomsReport cfunctor_axioms_check(const TruncatedCFunctor& f) {
  AxiomsReport rep;

  // Every value must be closed under reordering both covers by a shape
  // automorphism: the pairs (x, y) and (x a, y a) lie in the same G-stable
  // subset.  Checking the generators suffices, since the moved labels of a
  // closed set are closed under composition.
  bool stable = true;
  for (const auto& [a, row] : f.table) {
    for (const std::vector<int>& s : automorphism_generators(a)) {
      for (const DecoratedOrbit& lab : row) {
        const DecoratedOrbit moved = pair_label(
            lab.total, pull_cover(lab.covers[0], s), pull_cover(lab.covers[1], s));
        if (!row_contains(row, moved)) {
          stable = false;
          rep.violations.push_back("stability at " + a.enc() + ": reordering " +
                                   pair_label_str(lab) +
                                   " leaves the value set");
        }
      }
    }
  }

  for (const auto& [b, row_b] : f.table) {
    const ConcreteStructure cb = to_concrete(b);
    for (const auto& [a, row_a] : f.table) {
      if (a.size > b.size) continue;
      // For stable rows the three checks below are constant on
      // Aut(A) x Aut(B) double cosets of embeddings, because reordering a
      // cover permutes each row into itself and transports violations
      // bijectively.  All injections between pure sets form a single coset,
      // so one representative suffices; unstable tables (which can only
      // arise from corruption) fall back to the full enumeration.
      std::vector<Embedding> embs;
      if (stable && f.cls == ClassTag::FinSet)
        embs.push_back(Embedding{iota_map(a.size)});
      else
        embs = enumerate_embeddings(a, b);
      for (const Embedding& j : embs) {
        std::ostringstream ctx;
        ctx << a.enc() << " -> " << b.enc() << " via [";
        for (std::size_t i = 0; i < j.map.size(); ++i)
          ctx << (i ? "," : "") << j.map[i];
        ctx << "]";

        // (a) pushforwards of table pairs stay in the table
        for (const DecoratedOrbit& lab : row_b) {
          const DecoratedOrbit img = pair_label(
              lab.total, pull_cover(lab.covers[0], j.map), pull_cover(lab.covers[1], j.map));
          if (!row_contains(row_a, img))
            rep.violations.push_back("axiom (a) at " + ctx.str() + ": image " +
                                     pair_label_str(img) + " of " + pair_label_str(lab) +
                                     " is missing");
        }

        // configurations realized by table pairs: (first member, pushed
        // second member) and (pushed first member, second member)
        std::vector<DecoratedOrbit> with_second, with_first;
        for (const DecoratedOrbit& lab : row_b) {
          with_second.push_back(
              pair_label(lab.total, lab.covers[0], pull_cover(lab.covers[1], j.map)));
          with_first.push_back(
              pair_label(lab.total, pull_cover(lab.covers[0], j.map), lab.covers[1]));
        }
        std::sort(with_second.begin(), with_second.end());
        std::sort(with_first.begin(), with_first.end());

        for (const DecoratedOrbit& lab : row_a) {
          // (b) every lift of the first member extends to a table pair
          for (const ConcreteAmalgam& am :
               amalgamate(lab.total, cb, lab.covers[0], j.map)) {
            const DecoratedOrbit w = pair_label(
                am.total, am.cover_right, pull_cover(am.cover_left, lab.covers[1]));
            if (!std::binary_search(with_second.begin(), with_second.end(), w))
              rep.violations.push_back("axiom (b) at " + ctx.str() + ": lift " +
                                       pair_label_str(w) + " of " + pair_label_str(lab) +
                                       " admits no second member");
          }
          // (c) every lift of the second member extends to a table pair
          for (const ConcreteAmalgam& am :
               amalgamate(lab.total, cb, lab.covers[1], j.map)) {
            const DecoratedOrbit w = pair_label(
                am.total, pull_cover(am.cover_left, lab.covers[0]), am.cover_right);
            if (!std::binary_search(with_first.begin(), with_first.end(), w))
              rep.violations.push_back("axiom (c) at " + ctx.str() + ": lift " +
                                       pair_label_str(w) + " of " + pair_label_str(lab) +
                                       " admits no first member");
          }
        }
      }
    }
  }
  rep.pass = rep.violations.empty();
  std::ostringstream os;
  if (rep.pass)
    os << "pair-functor axioms hold on " << f.table.size() << " rows (depth "
       << f.depth << ")";
  else
    os << rep.violations.size() << " axiom violation(s) at depth " << f.depth;
  rep.summary = os.str();
  return rep;
}

SmallnessResult smallness_gap(const TruncatedCFunctor& f) {
  if (!has_strong_amalgamation(f.cls))
    throw UsageError("smallness gap requires a strong amalgamation class");
  SmallnessResult r;
  for (const auto& [a, row] : f.table)
    for (const DecoratedOrbit& lab : row)
      r.gap = std::max(r.gap, lab.total.n - a.size);
  r.bounded = r.gap < f.depth;
  std::ostringstream os;
  if (r.bounded)
    os << "level excess " << r.gap << " over all base shapes of size <= " << f.depth;
  else
    os << "level excess " << r.gap
       << " saturates the truncation depth: unbounded at this depth";
  r.detail = os.str();
  return r;
}

RankBoundVerdict rank_bound_test(const FinitaryPerm& g, int s, int window) {
  if (s < 0) throw UsageError("negative smallness parameter");
  if (window < 3 * s + 1)
    throw UsageError("window must be at least 3s+1");
  const int n = std::max(window, g.rank());
  if (n > 20) throw ResourceError("window too large for the exhaustive subset scan");
  std::vector<int> act = iota_map(n);
  for (int i = 0; i < g.rank(); ++i) act[i] = g.action[i];

  RankBoundVerdict v;
  v.bound = 3 * s;
  v.rank = g.rank();
  for (std::uint32_t mask = 1; mask < (1u << n) && !v.violation; ++mask) {
    std::uint32_t un = mask;
    for (int p = 0; p < n; ++p)
      if (mask & (1u << p)) un |= 1u << act[p];
    const int ka = __builtin_popcount(mask);
    const int ku = __builtin_popcount(un);
    if (ku > s + ka) {
      v.violation = true;
      v.witness_excess = ku - ka;
      for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) v.witness.push_back(p);
    }
  }
  std::ostringstream os;
  if (v.violation) {
    os << "violation: a subset of size " << v.witness.size() << " spreads to "
       << v.witness.size() + v.witness_excess << " points (allowed "
       << v.witness.size() + s << ")";
  } else {
    v.rank_within_bound = v.rank <= v.bound;
    os << "no violation among subsets of a " << n << "-point window; rank <= "
       << v.bound << " asserted; stored rank " << v.rank
       << (v.rank_within_bound ? " agrees" : " CONTRADICTS the bound");
  }
  v.detail = os.str();
  return v;
}

// ---------------------------------------------------------------------------
// Finite-stage reconstruction

namespace {

// A search state is a table label read as a partial injection: covers[0]
// lists the domain, covers[1] the matching images.  Every point of the
// total is moved (domain or image of a moved point), so the final support
// of any class reached through this state contains all its points.
struct StateView {
  std::vector<int> dom, im;       // cover entries in canonical shape order
  std::vector<int> dom_s, im_s;   // the same as sorted point sets
};

StateView view_of(const DecoratedOrbit& st) {
  StateView v{st.covers[0], st.covers[1], st.covers[0], st.covers[1]};
  std::sort(v.dom_s.begin(), v.dom_s.end());
  std::sort(v.im_s.begin(), v.im_s.end());
  return v;
}

// Renormalizes a partial injection on a concrete configuration into a table
// label: domain points ascending, reordered by the canonical labelling of
// the induced domain shape, then decorated.  Also reports the row shape.
std::pair<Structure, DecoratedOrbit> normalize_state(
    const ConcreteStructure& total, std::vector<std::pair<int, int>> sigma) {
  std::sort(sigma.begin(), sigma.end());
  std::vector<int> dompts(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) dompts[i] = sigma[i].first;
  auto [shape, relab] = canonical_form(restrict_concrete(total, dompts));
  std::vector<int> c1(sigma.size()), c2(sigma.size());
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    c1[relab[t]] = sigma[t].first;
    c2[relab[t]] = sigma[t].second;
  }
  return {shape, decorate(total, {std::move(c1), std::move(c2)})};
}

std::vector<std::pair<int, int>> sigma_of(const DecoratedOrbit& st) {
  std::vector<std::pair<int, int>> sigma;
  for (std::size_t i = 0; i < st.covers[0].size(); ++i)
    sigma.emplace_back(st.covers[0][i], st.covers[1][i]);
  return sigma;
}

}  // namespace

ReconstructResult reconstruct_classes(const TruncatedCFunctor& f, int max_rank) {
  if (max_rank < 0) throw UsageError("negative rank bound");
  if (f.depth < 2 * max_rank + 2)
    throw UsageError("reconstruction needs depth >= 2*max_rank + 2");

  ReconstructResult res;
  res.spec.cls = f.cls;
  const Structure one = make_structure(f.cls, 1);
  const std::vector<DecoratedOrbit>* row1 = f.row(one);
  const bool identity_witnessed =
      row1 != nullptr && row_contains(*row1, diagonal_label(one));

  std::set<DecoratedOrbit> visited;
  std::vector<DecoratedOrbit> stack;
  std::set<FinitaryPerm> emitted;
  bool dead_branch = false;

  // a candidate extension: keep it if the table witnesses it and it fits
  // the rank budget; a witnessed candidate beyond the budget means the
  // search horizon cut a branch off
  auto offer = [&](const ConcreteStructure& total,
                   std::vector<std::pair<int, int>> sigma) {
    auto [shape, cand] = normalize_state(total, std::move(sigma));
    const std::vector<DecoratedOrbit>* row = f.row(shape);
    if (row == nullptr || !row_contains(*row, cand)) return false;
    if (cand.total.n > max_rank) {
      ++res.branches_inconclusive;
      return true;
    }
    if (visited.insert(cand).second) stack.push_back(cand);
    return true;
  };

  // seeds: the off-diagonal labels on one-point shapes
  if (row1 != nullptr)
    for (const DecoratedOrbit& lab : *row1)
      if (lab.covers[0] != lab.covers[1] && lab.total.n <= max_rank &&
          visited.insert(lab).second)
        stack.push_back(lab);
  if (row1 != nullptr && max_rank < 2)
    for (const DecoratedOrbit& lab : *row1)
      if (lab.covers[0] != lab.covers[1]) ++res.branches_inconclusive;

  while (!stack.empty()) {
    const DecoratedOrbit st = stack.back();
    stack.pop_back();
    ++res.states_explored;
    const StateView v = view_of(st);

    if (v.dom_s == v.im_s) {
      // balanced: a fixed-point-free bijection of its own support
      auto [shape, relab] = canonical_form(st.total);
      std::vector<int> alpha(st.total.n);
      for (std::size_t i = 0; i < v.dom.size(); ++i)
        alpha[relab[v.dom[i]]] = relab[v.im[i]];
      const FinitaryPerm g = make_finitary(f.cls, shape, alpha);

      // the support closes iff every one-point extension admits the label
      // that fixes the new point
      bool closes = true;
      for (const OnePointExt& e : one_point_extensions(f.cls, st.total)) {
        std::vector<std::pair<int, int>> sigma;
        for (std::size_t i = 0; i < v.dom.size(); ++i)
          sigma.emplace_back(e.transport[v.dom[i]], e.transport[v.im[i]]);
        sigma.emplace_back(e.fresh, e.fresh);
        auto [rshape, cand] = normalize_state(e.total, std::move(sigma));
        const std::vector<DecoratedOrbit>* row = f.row(rshape);
        if (row == nullptr || !row_contains(*row, cand)) {
          closes = false;
          break;
        }
      }
      if (closes) emitted.insert(g);

      // growth: a fresh moved point with a fresh image, seeding the next
      // cycle of a larger class
      for (const OnePointExt& e1 : one_point_extensions(f.cls, st.total)) {
        for (const OnePointExt& e2 : one_point_extensions(f.cls, e1.total)) {
          std::vector<std::pair<int, int>> sigma;
          for (std::size_t i = 0; i < v.dom.size(); ++i)
            sigma.emplace_back(e2.transport[e1.transport[v.dom[i]]],
                               e2.transport[e1.transport[v.im[i]]]);
          sigma.emplace_back(e2.transport[e1.fresh], e2.fresh);
          offer(e2.total, std::move(sigma));
        }
      }
      continue;
    }

    // unbalanced: extend the domain at the least unmatched image point
    int p = -1;
    for (int q : v.im_s)
      if (!std::binary_search(v.dom_s.begin(), v.dom_s.end(), q)) {
        p = q;
        break;
      }
    bool extended = false;
    // images among existing points not yet hit
    for (int q = 0; q < st.total.n; ++q) {
      if (std::binary_search(v.im_s.begin(), v.im_s.end(), q)) continue;
      auto sigma = sigma_of(st);
      sigma.emplace_back(p, q);
      extended = offer(st.total, std::move(sigma)) || extended;
    }
    // or a fresh image point
    for (const OnePointExt& e : one_point_extensions(f.cls, st.total)) {
      std::vector<std::pair<int, int>> sigma;
      for (std::size_t i = 0; i < v.dom.size(); ++i)
        sigma.emplace_back(e.transport[v.dom[i]], e.transport[v.im[i]]);
      sigma.emplace_back(e.transport[p], e.fresh);
      extended = offer(e.total, std::move(sigma)) || extended;
    }
    if (!extended) dead_branch = true;
  }

  res.spec.reps.assign(emitted.begin(), emitted.end());
  res.spec.closure_flag = identity_witnessed;
  res.inconclusive = res.branches_inconclusive > 0;
  if (identity_witnessed && !res.spec.reps.empty())
    res.notes.push_back("identity adjoined: a non-isolated closure point");
  if (identity_witnessed && res.spec.reps.empty() && !res.inconclusive)
    res.notes.push_back("identity only; it is isolated");
  if (res.inconclusive)
    res.notes.push_back("witnessed extensions beyond the rank budget were cut off");
  if (dead_branch)
    res.notes.push_back("a witnessed state admitted no extension (table violates the axioms)");
  return res;
}

// ---------------------------------------------------------------------------
// Isolation

std::vector<std::pair<std::string, bool>> isolated_check(const ConjugacySetSpec& d) {
  std::vector<std::pair<std::string, bool>> out;
  for (const FinitaryPerm& g : d.reps) {
    if (g.rank() == 0) throw UsageError("reps must have nonzero rank");
    bool isolated = true;
    for (const FinitaryPerm& h : d.reps) {
      if (!isolated) break;
      for (const DecoratedOrbit& w : product_orbits({g.support, h.support})) {
        // the conjugate of h placed along cover 1, acting on the gluing
        std::vector<int> pi = iota_map(w.total.n);
        for (int s = 0; s < h.rank(); ++s)
          pi[w.covers[1][s]] = w.covers[1][h.action[s]];
        bool agrees = true;
        for (int a = 0; a < g.rank() && agrees; ++a)
          agrees = pi[w.covers[0][a]] == w.covers[0][g.action[a]];
        if (!agrees) continue;
        // it agrees with g on the whole support; any extra moved point
        // makes it a second element of the neighbourhood
        for (int s = 0; s < h.rank(); ++s) {
          const int q = w.covers[1][s];
          if (std::find(w.covers[0].begin(), w.covers[0].end(), q) ==
              w.covers[0].end()) {
            isolated = false;
            break;
          }
        }
        if (!isolated) break;
      }
    }
    out.emplace_back(perm_str(g), isolated);
  }
  if (d.closure_flag)
    out.emplace_back("1", d.reps.empty());
  return out;
}

}  // namespace oligo
