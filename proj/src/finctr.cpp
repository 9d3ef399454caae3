#include "oligocat/finctr.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "oligocat/errors.hpp"

namespace oligo {
namespace {

constexpr int kMaxGroupOrder = 256;
constexpr int kMaxFailures = 60;

void note(CheckReport& r, const std::string& msg) {
  r.pass = false;
  if (static_cast<int>(r.failures.size()) < kMaxFailures) r.failures.push_back(msg);
}

// ------------------------------------------------------------ Rat matrices

QMat qzero_mat(int n) { return QMat(n, std::vector<Rat>(n)); }

QMat qid_mat(int n) {
  QMat m = qzero_mat(n);
  for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
  return m;
}

QMat qmul(const QMat& a, const QMat& b) {
  const int n = static_cast<int>(a.size());
  QMat r = qzero_mat(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        r[i][j] += a[i][k] * b[k][j];
      }
    }
  return r;
}

void qadd_into(QMat& a, const QMat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
}

bool qis_zero(const QMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

}  // namespace

// -------------------------------------------------------------- FiniteGroup

void FiniteGroup::finish() {
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (table_[a][b] == e_ && table_[b][a] == e_) inv_[a] = b;
  class_of_.assign(n_, -1);
  for (int g = 0; g < n_; ++g) {
    if (class_of_[g] >= 0) continue;
    const int id = static_cast<int>(classes_.size());
    std::vector<int> cls;
    for (int h = 0; h < n_; ++h) {
      const int c = mul(mul(h, g), inv_[h]);
      if (class_of_[c] < 0) {
        class_of_[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw UsageError("empty multiplication table");
  if (n > kMaxGroupOrder) throw ResourceError("group order exceeds 256");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw UsageError("multiplication table must be square");
    for (int x : row)
      if (x < 0 || x >= n) throw UsageError("table entry out of range");
  }
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table[c][x] == x && table[x][c] == x;
    if (ok) e = c;
  }
  if (e < 0) throw UsageError("table has no identity element");
  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n && !has; ++b)
      has = table[a][b] == e && table[b][a] == e;
    if (!has) throw UsageError("table element has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw UsageError("table is not associative");
  FiniteGroup g;
  g.n_ = n;
  g.e_ = e;
  g.table_ = std::move(table);
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(int degree,
                                           std::vector<std::vector<int>> gens) {
  if (degree <= 0) throw UsageError("permutation degree must be positive");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw UsageError("generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int x : p) {
      if (x < 0 || x >= degree || seen[x])
        throw UsageError("generator is not a permutation");
      seen[x] = 1;
    }
  }
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::vector<std::vector<int>> els{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t i = 0; i < els.size(); ++i) {
    for (const auto& gperm : gens) {
      std::vector<int> prod(degree);
      for (int x = 0; x < degree; ++x) prod[x] = els[i][gperm[x]];
      if (index.emplace(prod, static_cast<int>(els.size())).second) {
        els.push_back(std::move(prod));
        if (static_cast<int>(els.size()) > kMaxGroupOrder)
          throw ResourceError("group order exceeds 256");
      }
    }
  }
  const int n = static_cast<int>(els.size());
  FiniteGroup g;
  g.n_ = n;
  g.e_ = 0;
  g.table_.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int x = 0; x < degree; ++x) prod[x] = els[a][els[b][x]];
      g.table_[a][b] = index.at(prod);
    }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::named(const std::string& name) {
  if (name.size() < 2) throw UsageError("unknown group name: " + name);
  const char kind = name[0];
  int n = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9')
      throw UsageError("unknown group name: " + name);
    n = n * 10 + (name[i] - '0');
  }
  if (n <= 0) throw UsageError("unknown group name: " + name);
  auto cycle = [](int d) {
    std::vector<int> p(d);
    for (int i = 0; i < d; ++i) p[i] = (i + 1) % d;
    return p;
  };
  switch (kind) {
    case 'C':
      if (n == 1) return from_permutations(1, {});
      return from_permutations(n, {cycle(n)});
    case 'S': {
      if (n == 1) return from_permutations(1, {});
      std::vector<int> t(n);
      for (int i = 0; i < n; ++i) t[i] = i;
      std::swap(t[0], t[1]);
      if (n == 2) return from_permutations(2, {t});
      return from_permutations(n, {t, cycle(n)});
    }
    case 'D': {
      if (n == 1) return from_permutations(2, {{1, 0}});
      if (n == 2) return from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
      std::vector<int> refl(n);
      for (int i = 0; i < n; ++i) refl[i] = (n - i) % n;
      return from_permutations(n, {cycle(n), refl});
    }
    case 'A': {
      if (n <= 2) return from_permutations(1, {});
      std::vector<std::vector<int>> gens;
      for (int i = 0; i + 2 < n; ++i) {
        std::vector<int> p(n);
        for (int j = 0; j < n; ++j) p[j] = j;
        p[i] = i + 1;
        p[i + 1] = i + 2;
        p[i + 2] = i;
        gens.push_back(std::move(p));
      }
      return from_permutations(n, gens);
    }
    default:
      throw UsageError("unknown group name: " + name);
  }
}

std::vector<int> FiniteGroup::centralizer(int g) const {
  std::vector<int> out;
  for (int h = 0; h < n_; ++h)
    if (mul(h, g) == mul(g, h)) out.push_back(h);
  return out;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  for (int h = 0; h < n_; ++h) {
    bool central = true;
    for (int g = 0; g < n_ && central; ++g) central = mul(h, g) == mul(g, h);
    if (central) out.push_back(h);
  }
  return out;
}

namespace {

std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> els;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      els.push_back(x);
    }
  };
  add(g.identity());
  for (int x : seed) add(x);
  for (size_t i = 0; i < els.size(); ++i)
    for (size_t j = 0; j < els.size(); ++j) {
      add(g.mul(els[i], els[j]));
      add(g.mul(els[j], els[i]));
    }
  std::sort(els.begin(), els.end());
  return els;
}

}  // namespace

std::vector<std::vector<int>> FiniteGroup::subgroup_reps() const {
  std::set<std::vector<int>> all;
  std::queue<std::vector<int>> work;
  const std::vector<int> triv{e_};
  all.insert(triv);
  work.push(triv);
  while (!work.empty()) {
    const std::vector<int> s = std::move(work.front());
    work.pop();
    std::vector<char> in(n_, 0);
    for (int x : s) in[x] = 1;
    for (int gx = 0; gx < n_; ++gx) {
      if (in[gx]) continue;
      std::vector<int> grown = s;
      grown.push_back(gx);
      grown = subgroup_closure(*this, std::move(grown));
      if (all.insert(grown).second) {
        if (all.size() > 4096) throw ResourceError("too many subgroups");
        work.push(std::move(grown));
      }
    }
  }
  std::set<std::vector<int>> canon;
  for (const auto& s : all) {
    std::vector<int> best;
    for (int h = 0; h < n_; ++h) {
      std::vector<int> img;
      img.reserve(s.size());
      for (int x : s) img.push_back(conj(h, x));
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = std::move(img);
    }
    canon.insert(best);
  }
  std::vector<std::vector<int>> reps(canon.begin(), canon.end());
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return reps;
}

// ------------------------------------------------------------------ FinGSet

int FinGSet::orbit_of(int x) const {
  for (size_t i = 0; i < orbits.size(); ++i)
    for (int p : orbits[i])
      if (p == x) return static_cast<int>(i);
  throw UsageError("point not in the set");
}

std::vector<int> FinGSet::stabilizer(int x) const {
  std::vector<int> out;
  for (int g = 0; g < group->order(); ++g)
    if (act(g, x) == x) out.push_back(g);
  return out;
}

FinGSet make_gset(GroupPtr g, std::vector<std::vector<int>> action) {
  if (!g) throw UsageError("missing group");
  const int n = g->order();
  if (static_cast<int>(action.size()) != n)
    throw UsageError("action table must have one row per group element");
  const int size = action.empty() ? 0 : static_cast<int>(action[0].size());
  for (const auto& row : action) {
    if (static_cast<int>(row.size()) != size)
      throw UsageError("action table rows must have equal length");
    for (int x : row)
      if (x < 0 || x >= size) throw UsageError("action entry out of range");
  }
  for (int x = 0; x < size; ++x)
    if (action[g->identity()][x] != x)
      throw UsageError("identity must act trivially");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g->mul(a, b);
      for (int x = 0; x < size; ++x)
        if (action[a][action[b][x]] != action[ab][x])
          throw UsageError("action is not compatible with multiplication");
    }
  FinGSet s;
  s.group = std::move(g);
  s.size = size;
  s.action = std::move(action);
  std::vector<char> seen(size, 0);
  for (int x = 0; x < size; ++x) {
    if (seen[x]) continue;
    std::vector<int> orbit;
    for (int gg = 0; gg < n; ++gg) {
      const int y = s.action[gg][x];
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    s.orbits.push_back(std::move(orbit));
  }
  return s;
}

FinGSet point_gset(GroupPtr g) {
  const int n = g->order();
  return make_gset(std::move(g), std::vector<std::vector<int>>(n, {0}));
}

FinGSet coset_gset(GroupPtr g, const std::vector<int>& subgroup) {
  const int n = g->order();
  std::vector<char> in(n, 0);
  for (int x : subgroup) {
    if (x < 0 || x >= n) throw UsageError("subgroup element out of range");
    in[x] = 1;
  }
  if (!in[g->identity()]) throw UsageError("subgroup must contain the identity");
  for (int a : subgroup) {
    if (!in[g->inv(a)]) throw UsageError("subgroup not closed under inverse");
    for (int b : subgroup)
      if (!in[g->mul(a, b)]) throw UsageError("subgroup not closed under product");
  }
  std::vector<int> coset_of(n, -1), rep;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    const int id = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int h : subgroup) coset_of[g->mul(x, h)] = id;
  }
  const int size = static_cast<int>(rep.size());
  std::vector<std::vector<int>> action(n, std::vector<int>(size));
  for (int gg = 0; gg < n; ++gg)
    for (int c = 0; c < size; ++c) action[gg][c] = coset_of[g->mul(gg, rep[c])];
  return make_gset(std::move(g), std::move(action));
}

FinGSet regular_gset(GroupPtr g) {
  const std::vector<int> triv{g->identity()};
  return coset_gset(std::move(g), triv);
}

FinGSet conjugation_gset(GroupPtr g) {
  const int n = g->order();
  std::vector<std::vector<int>> action(n, std::vector<int>(n));
  for (int gg = 0; gg < n; ++gg)
    for (int x = 0; x < n; ++x) action[gg][x] = g->conj(gg, x);
  return make_gset(std::move(g), std::move(action));
}

FinGSet product_gset(const FinGSet& a, const FinGSet& b) {
  if (a.group.get() != b.group.get())
    throw UsageError("product requires sets over the same group");
  const int n = a.group->order();
  std::vector<std::vector<int>> action(n, std::vector<int>(a.size * b.size));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < a.size; ++x)
      for (int y = 0; y < b.size; ++y)
        action[g][x * b.size + y] = a.act(g, x) * b.size + b.act(g, y);
  return make_gset(a.group, std::move(action));
}

std::vector<std::vector<int>> gset_maps(const FinGSet& from, const FinGSet& to) {
  if (from.orbits.size() != 1)
    throw UsageError("equivariant map enumeration requires a transitive source");
  const int n = from.group->order();
  const int x0 = from.orbits[0][0];
  const std::vector<int> stab = from.stabilizer(x0);
  std::vector<std::vector<int>> maps;
  for (int t = 0; t < to.size; ++t) {
    bool fixed = true;
    for (int h : stab)
      if (to.act(h, t) != t) {
        fixed = false;
        break;
      }
    if (!fixed) continue;
    std::vector<int> f(from.size, -1);
    for (int g = 0; g < n; ++g) f[from.act(g, x0)] = to.act(g, t);
    maps.push_back(std::move(f));
  }
  return maps;
}

TestSets build_test_sets(GroupPtr g) {
  TestSets ts;
  ts.group = g;
  for (const auto& sub : g->subgroup_reps()) ts.sets.push_back(coset_gset(g, sub));
  return ts;  // subgroups ascend in size, so coset spaces descend
}

// ------------------------------------------------------------------ crossed

CrossedGSet make_crossed(FinGSet base, std::vector<int> degree) {
  if (static_cast<int>(degree.size()) != base.size)
    throw UsageError("degree map must cover every point");
  for (int d : degree)
    if (d < 0 || d >= base.group->order())
      throw UsageError("degree value out of range");
  return CrossedGSet{std::move(base), std::move(degree)};
}

std::pair<int, int> crossed_braiding(const CrossedGSet& m, const FinGSet& x,
                                     int pt, int elem) {
  if (pt < 0 || pt >= x.size || elem < 0 || elem >= m.base.size)
    throw UsageError("braiding argument out of range");
  return {elem, x.act(m.degree[elem], pt)};
}

namespace {

// The braiding-side axioms for the family induced by a degree map:
// each component is an equivariant bijection, the one-point component is the
// identity, the family is natural along equivariant maps, and the product
// component is the composite of the factors.  Itemizes into `rep` when
// given, otherwise stops at the first failure.
bool braiding_axioms(const CrossedGSet& m, const TestSets& ts, CheckReport* rep) {
  const FiniteGroup& G = *m.base.group;
  bool ok = true;
  auto fail = [&](const std::string& msg) {
    ok = false;
    if (rep != nullptr) note(*rep, msg);
  };
  for (size_t s = 0; s < ts.sets.size(); ++s) {
    const FinGSet& X = ts.sets[s];
    for (int g = 0; g < G.order() && (ok || rep); ++g)
      for (int x = 0; x < X.size; ++x)
        for (int mm = 0; mm < m.base.size; ++mm) {
          const int lhs = X.act(m.degree[m.base.act(g, mm)], X.act(g, x));
          const int rhs = X.act(g, X.act(m.degree[mm], x));
          if (lhs != rhs) {
            fail("braiding on set " + std::to_string(s) +
                 " is not equivariant at g=" + std::to_string(g) +
                 " x=" + std::to_string(x) + " m=" + std::to_string(mm));
            if (rep == nullptr) return false;
          }
        }
    std::vector<char> hit(static_cast<size_t>(X.size) * m.base.size, 0);
    for (int x = 0; x < X.size; ++x)
      for (int mm = 0; mm < m.base.size; ++mm) {
        const auto [me, y] = crossed_braiding(m, X, x, mm);
        char& c = hit[static_cast<size_t>(me) * X.size + y];
        if (c) {
          fail("braiding on set " + std::to_string(s) + " is not bijective");
          if (rep == nullptr) return false;
        }
        c = 1;
      }
    if (X.size == 1)
      for (int mm = 0; mm < m.base.size; ++mm)
        if (crossed_braiding(m, X, 0, mm) != std::pair<int, int>{mm, 0}) {
          fail("one-point braiding is not the identity");
          if (rep == nullptr) return false;
        }
  }
  for (size_t sy = 0; sy < ts.sets.size(); ++sy)
    for (size_t sx = 0; sx < ts.sets.size(); ++sx) {
      const FinGSet& Y = ts.sets[sy];
      const FinGSet& X = ts.sets[sx];
      for (const auto& f : gset_maps(Y, X))
        for (int y = 0; y < Y.size; ++y)
          for (int mm = 0; mm < m.base.size; ++mm) {
            const int via_y = f[crossed_braiding(m, Y, y, mm).second];
            const int via_x = crossed_braiding(m, X, f[y], mm).second;
            if (via_y != via_x) {
              fail("braiding is not natural along a map from set " +
                   std::to_string(sy) + " to set " + std::to_string(sx));
              if (rep == nullptr) return false;
            }
          }
    }
  for (size_t si = 0; si < ts.sets.size(); ++si)
    for (size_t sj = 0; sj < ts.sets.size(); ++sj) {
      const FinGSet& X = ts.sets[si];
      const FinGSet& Y = ts.sets[sj];
      const FinGSet P = product_gset(X, Y);
      for (int x = 0; x < X.size; ++x)
        for (int y = 0; y < Y.size; ++y)
          for (int mm = 0; mm < m.base.size; ++mm) {
            const int direct = crossed_braiding(m, P, x * Y.size + y, mm).second;
            const int stepwise = crossed_braiding(m, X, x, mm).second * Y.size +
                                 crossed_braiding(m, Y, y, mm).second;
            if (direct != stepwise) {
              fail("tensor condition fails on the product of sets " +
                   std::to_string(si) + " and " + std::to_string(sj));
              if (rep == nullptr) return false;
            }
          }
    }
  return ok;
}

bool crossed_axiom(const FinGSet& base, const std::vector<int>& degree) {
  const FiniteGroup& G = *base.group;
  for (int g = 0; g < G.order(); ++g)
    for (int mm = 0; mm < base.size; ++mm)
      if (degree[base.act(g, mm)] != G.conj(g, degree[mm])) return false;
  return true;
}

}  // namespace

CheckReport crossed_check(const CrossedGSet& m) {
  CheckReport rep;
  const FiniteGroup& G = *m.base.group;
  for (int g = 0; g < G.order(); ++g)
    for (int mm = 0; mm < m.base.size; ++mm) {
      const int lhs = m.degree[m.base.act(g, mm)];
      const int rhs = G.conj(g, m.degree[mm]);
      if (lhs != rhs)
        note(rep, "degree equivariance fails at g=" + std::to_string(g) +
                      " m=" + std::to_string(mm));
    }
  const TestSets ts = build_test_sets(m.base.group);
  braiding_axioms(m, ts, &rep);
  return rep;
}

// ---------------------------------------------------------------- braidings

BraidingEnumeration enumerate_halfbraidings(const FinGSet& m) {
  const FiniteGroup& G = *m.group;
  const long long scale = static_cast<long long>(G.order()) * m.size;
  if (scale > 64) throw ResourceError("enumeration bound |G|*|M| <= 64 exceeded");
  const TestSets ts = build_test_sets(m.group);

  // Per-orbit candidates: the degree of an orbit representative must
  // centralize its stabilizer, and then extends equivariantly.
  std::vector<int> reps;
  std::vector<std::vector<int>> cands;
  long long total = 1;
  for (const auto& orbit : m.orbits) {
    const int r = orbit[0];
    const std::vector<int> stab = m.stabilizer(r);
    std::vector<int> zs;
    for (int z = 0; z < G.order(); ++z) {
      bool commutes = true;
      for (int h : stab)
        if (G.mul(z, h) != G.mul(h, z)) {
          commutes = false;
          break;
        }
      if (commutes) zs.push_back(z);
    }
    total *= static_cast<long long>(zs.size());
    if (total > 4'000'000) throw ResourceError("candidate family too large");
    reps.push_back(r);
    cands.push_back(std::move(zs));
  }

  BraidingEnumeration out;
  std::vector<size_t> pick(cands.size(), 0);
  while (true) {
    std::vector<int> degree(m.size, -1);
    for (size_t i = 0; i < reps.size(); ++i)
      for (int g = 0; g < G.order(); ++g)
        degree[m.act(g, reps[i])] = G.conj(g, cands[i][pick[i]]);
    CrossedGSet cand{m, degree};
    const bool crossed_ok = crossed_axiom(m, degree);
    const bool braid_ok = braiding_axioms(cand, ts, nullptr);
    if (crossed_ok) ++out.crossed_count;
    if (braid_ok) {
      ++out.count;
      out.degree_functions.push_back(std::move(degree));
    }
    size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == cands[pos].size()) {
      pick[pos] = 0;
      ++pos;
    }
    if (pos == pick.size()) break;
  }
  if (out.count != out.crossed_count)
    throw VerifyError("half-braiding and crossed-structure counts disagree");
  // Completeness of the orbit parametrization: when the raw scan over all
  // |G|^|M| degree functions is affordable, its count must coincide.
  long long raw_size = 1;
  bool raw_feasible = true;
  for (int i = 0; i < m.size && raw_feasible; ++i) {
    raw_size *= G.order();
    raw_feasible = raw_size <= 20'000'000;
  }
  if (raw_feasible && crossed_count_raw(m) != out.crossed_count)
    throw VerifyError("parametrized enumeration misses crossed structures");
  return out;
}

long long crossed_count_raw(const FinGSet& m) {
  const FiniteGroup& G = *m.group;
  const int n = G.order();
  long long total = 1;
  for (int i = 0; i < m.size; ++i) {
    total *= n;
    if (total > 20'000'000) throw ResourceError("raw scan too large");
  }
  long long count = 0;
  std::vector<int> degree(m.size, 0);
  for (long long it = 0; it < total; ++it) {
    if (crossed_axiom(m, degree)) ++count;
    int pos = 0;
    while (pos < m.size && ++degree[pos] == n) {
      degree[pos] = 0;
      ++pos;
    }
  }
  return count;
}

// ----------------------------------------------------------------------- YD

YDData yd_module(GroupPtr g, std::vector<QMat> rep, std::vector<int> grade) {
  if (!g) throw UsageError("missing group");
  const int dim = static_cast<int>(grade.size());
  if (dim == 0) throw UsageError("module must have positive dimension");
  if (static_cast<int>(rep.size()) != g->order())
    throw UsageError("need one action matrix per group element");
  for (const auto& mat : rep) {
    if (static_cast<int>(mat.size()) != dim)
      throw UsageError("action matrix has wrong size");
    for (const auto& row : mat)
      if (static_cast<int>(row.size()) != dim)
        throw UsageError("action matrix has wrong size");
  }
  for (int x : grade)
    if (x < 0 || x >= g->order()) throw UsageError("grading element out of range");
  return YDData{std::move(g), dim, std::move(rep), std::move(grade)};
}

YDData yd_trivial(GroupPtr g) {
  const int n = g->order();
  const int e = g->identity();
  return yd_module(std::move(g), std::vector<QMat>(n, qid_mat(1)), {e});
}

YDData yd_adjoint(GroupPtr g) {
  const int n = g->order();
  std::vector<QMat> rep(n, qzero_mat(n));
  std::vector<int> grade(n);
  for (int h = 0; h < n; ++h)
    for (int x = 0; x < n; ++x) rep[h][g->conj(h, x)][x] = Rat(1);
  for (int x = 0; x < n; ++x) grade[x] = x;
  return yd_module(std::move(g), std::move(rep), std::move(grade));
}

YDData yd_class(GroupPtr g, std::vector<int> class_union) {
  std::sort(class_union.begin(), class_union.end());
  class_union.erase(std::unique(class_union.begin(), class_union.end()),
                    class_union.end());
  if (class_union.empty()) throw UsageError("empty class union");
  const int n = g->order();
  std::vector<int> pos(n, -1);
  for (size_t i = 0; i < class_union.size(); ++i) {
    if (class_union[i] < 0 || class_union[i] >= n)
      throw UsageError("class element out of range");
    pos[class_union[i]] = static_cast<int>(i);
  }
  for (int c : class_union)
    for (int h = 0; h < n; ++h)
      if (pos[g->conj(h, c)] < 0)
        throw UsageError("set is not conjugation stable");
  const int dim = static_cast<int>(class_union.size());
  std::vector<QMat> rep(n, qzero_mat(dim));
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < dim; ++i) rep[h][pos[g->conj(h, class_union[i])]][i] = Rat(1);
  return yd_module(std::move(g), std::move(rep), std::move(class_union));
}

CheckReport yd_check(const YDData& v) {
  CheckReport rep;
  const FiniteGroup& G = *v.group;
  if (v.rep[G.identity()] != qid_mat(v.dim))
    note(rep, "identity does not act as the identity matrix");
  for (int g = 0; g < G.order(); ++g) {
    if (qmul(v.rep[g], v.rep[G.inv(g)]) != qid_mat(v.dim))
      note(rep, "action matrix for element " + std::to_string(g) +
                    " is not invertible");
    for (int h = 0; h < G.order(); ++h)
      if (qmul(v.rep[g], v.rep[h]) != v.rep[G.mul(g, h)])
        note(rep, "action is not multiplicative at (" + std::to_string(g) +
                      ", " + std::to_string(h) + ")");
  }
  for (int h = 0; h < G.order(); ++h)
    for (int j = 0; j < v.dim; ++j) {
      const int target = G.conj(h, v.grade[j]);
      for (int i = 0; i < v.dim; ++i)
        if (!v.rep[h][i][j].is_zero() && v.grade[i] != target)
          note(rep, "grading is not conjugation compatible: element " +
                        std::to_string(h) + " maps grade " +
                        std::to_string(v.grade[j]) + " outside grade " +
                        std::to_string(target));
    }
  return rep;
}

// ------------------------------------------------------------- structures

OPiStructure yd_beta(const YDData& v) {
  if (!yd_check(v).pass) throw UsageError("module fails its axioms");
  const FiniteGroup& G = *v.group;
  OPiStructure b;
  b.group = v.group;
  b.sets = build_test_sets(v.group);
  b.dim = v.dim;
  b.rep = v.rep;
  std::vector<QMat> projector(G.order(), qzero_mat(v.dim));
  for (int j = 0; j < v.dim; ++j) projector[v.grade[j]][j][j] = Rat(1);
  for (const FinGSet& X : b.sets.sets) {
    std::vector<QMat> bx(static_cast<size_t>(X.size) * X.size, qzero_mat(v.dim));
    for (int g = 0; g < G.order(); ++g)
      for (int x = 0; x < X.size; ++x)
        qadd_into(bx[static_cast<size_t>(x) * X.size + X.act(g, x)], projector[g]);
    b.beta.push_back(std::move(bx));
  }
  return b;
}

namespace {

const QMat& beta_at(const OPiStructure& b, int s, int x, int y) {
  return b.beta[s][static_cast<size_t>(x) * b.sets.sets[s].size + y];
}

}  // namespace

CheckReport opi_check(const OPiStructure& b) {
  CheckReport rep;
  const FiniteGroup& G = *b.group;
  const auto& sets = b.sets.sets;
  if (b.beta.size() != sets.size()) {
    note(rep, "family does not cover the registered sets");
    return rep;
  }

  // (b): the one-point set carries the unit.
  for (size_t s = 0; s < sets.size(); ++s)
    if (sets[s].size == 1 && beta_at(b, static_cast<int>(s), 0, 0) != qid_mat(b.dim))
      note(rep, "one-point value is not the identity");

  for (size_t s = 0; s < sets.size(); ++s) {
    const FinGSet& X = sets[s];
    // (a): equivariance rep[g] b_{x,y} = b_{gx,gy} rep[g].
    for (int g = 0; g < G.order(); ++g)
      for (int x = 0; x < X.size; ++x)
        for (int y = 0; y < X.size; ++y)
          if (qmul(b.rep[g], beta_at(b, s, x, y)) !=
              qmul(beta_at(b, s, X.act(g, x), X.act(g, y)), b.rep[g]))
            note(rep, "(a) equivariance fails on set " + std::to_string(s) +
                          " at g=" + std::to_string(g) + " (" +
                          std::to_string(x) + "," + std::to_string(y) + ")");
    // Derived: idempotency and orthogonality on transitive sets.
    for (int x = 0; x < X.size; ++x)
      for (int y = 0; y < X.size; ++y) {
        const QMat& m = beta_at(b, s, x, y);
        if (qmul(m, m) != m)
          note(rep, "idempotency fails on set " + std::to_string(s) + " at (" +
                        std::to_string(x) + "," + std::to_string(y) + ")");
        for (int z = 0; z < X.size; ++z)
          if (z != y && !qis_zero(qmul(m, beta_at(b, s, x, z))))
            note(rep, "orthogonality fails on set " + std::to_string(s) +
                          " at x=" + std::to_string(x));
      }
  }

  // (d): fiber sums along every equivariant map between registered sets.
  for (size_t sy = 0; sy < sets.size(); ++sy)
    for (size_t sx = 0; sx < sets.size(); ++sx) {
      const FinGSet& Y = sets[sy];
      const FinGSet& X = sets[sx];
      for (const auto& f : gset_maps(Y, X))
        for (int y = 0; y < Y.size; ++y)
          for (int x = 0; x < X.size; ++x) {
            QMat sum1 = qzero_mat(b.dim), sum2 = qzero_mat(b.dim);
            for (int z = 0; z < Y.size; ++z) {
              if (f[z] != x) continue;
              qadd_into(sum1, beta_at(b, sy, y, z));
              qadd_into(sum2, beta_at(b, sy, z, y));
            }
            if (sum1 != beta_at(b, sx, f[y], x) || sum2 != beta_at(b, sx, x, f[y]))
              note(rep, "(d) fiber sum fails along a map from set " +
                            std::to_string(sy) + " to set " + std::to_string(sx));
          }
    }

  // (c) with orbit-locality: on each binary product, the product formula
  // must match the transported transitive values inside each orbit and
  // vanish across orbits.
  for (size_t si = 0; si < sets.size(); ++si)
    for (size_t sj = 0; sj < sets.size(); ++sj) {
      const FinGSet& X = sets[si];
      const FinGSet& Y = sets[sj];
      const FinGSet P = product_gset(X, Y);
      std::vector<int> orbit_id(P.size);
      for (size_t o = 0; o < P.orbits.size(); ++o)
        for (int p : P.orbits[o]) orbit_id[p] = static_cast<int>(o);
      // Transport each orbit onto its registered transitive model.
      std::vector<int> model(P.orbits.size(), -1);
      std::vector<std::vector<int>> phi(P.orbits.size());
      for (size_t o = 0; o < P.orbits.size(); ++o) {
        const int p0 = P.orbits[o][0];
        const std::vector<int> stab = P.stabilizer(p0);
        for (size_t k = 0; k < sets.size() && model[o] < 0; ++k) {
          if (sets[k].size != static_cast<int>(P.orbits[o].size())) continue;
          for (int t = 0; t < sets[k].size && model[o] < 0; ++t)
            if (sets[k].stabilizer(t) == stab) {
              model[o] = static_cast<int>(k);
              phi[o].assign(P.size, -1);
              for (int g = 0; g < G.order(); ++g)
                phi[o][P.act(g, p0)] = sets[k].act(g, t);
            }
        }
        if (model[o] < 0)
          note(rep, "product orbit has no registered transitive model");
      }
      for (int p1 = 0; p1 < P.size; ++p1)
        for (int p2 = 0; p2 < P.size; ++p2) {
          const QMat prod = qmul(beta_at(b, si, p1 / Y.size, p2 / Y.size),
                                 beta_at(b, sj, p1 % Y.size, p2 % Y.size));
          const int o = orbit_id[p1];
          if (o == orbit_id[p2] && model[o] >= 0) {
            if (prod != beta_at(b, model[o], phi[o][p1], phi[o][p2]))
              note(rep, "(c) product formula disagrees with the orbit model on "
                        "sets " + std::to_string(si) + " x " + std::to_string(sj));
          } else if (!qis_zero(prod)) {
            note(rep, "cross-orbit product value is nonzero on sets " +
                          std::to_string(si) + " x " + std::to_string(sj));
          }
        }
    }
  return rep;
}

// ------------------------------------------------------------------ support

SupportFunctor support_of(const OPiStructure& b) {
  if (!opi_check(b).pass)
    throw UsageError("structure fails its axioms; support is undefined");
  const auto& sets = b.sets.sets;
  SupportFunctor sf;
  sf.axioms_ok = true;
  std::vector<std::vector<std::vector<char>>> nz(sets.size());
  for (size_t s = 0; s < sets.size(); ++s) {
    nz[s].assign(sets[s].size, std::vector<char>(sets[s].size, 0));
    std::vector<std::pair<int, int>> ps;
    for (int x = 0; x < sets[s].size; ++x)
      for (int y = 0; y < sets[s].size; ++y)
        if (!qis_zero(beta_at(b, s, x, y))) {
          nz[s][x][y] = 1;
          ps.emplace_back(x, y);
        }
    sf.pairs.push_back(std::move(ps));
  }
  auto fail = [&](const std::string& msg) {
    sf.axioms_ok = false;
    if (sf.failures.size() < 40) sf.failures.push_back(msg);
  };
  for (size_t sy = 0; sy < sets.size(); ++sy)
    for (size_t sx = 0; sx < sets.size(); ++sx)
      for (const auto& f : gset_maps(sets[sy], sets[sx])) {
        for (const auto& [y, z] : sf.pairs[sy])
          if (!nz[sx][f[y]][f[z]])
            fail("image of a support pair leaves the support");
        for (const auto& [x1, x2] : sf.pairs[sx])
          for (int y1 = 0; y1 < sets[sy].size; ++y1) {
            if (f[y1] != x1) continue;
            bool found = false;
            for (int y2 = 0; y2 < sets[sy].size && !found; ++y2)
              found = f[y2] == x2 && nz[sy][y1][y2];
            if (!found) fail("support pair has no first-coordinate lift");
          }
        for (const auto& [x1, x2] : sf.pairs[sx])
          for (int y2 = 0; y2 < sets[sy].size; ++y2) {
            if (f[y2] != x2) continue;
            bool found = false;
            for (int y1 = 0; y1 < sets[sy].size && !found; ++y1)
              found = f[y1] == x1 && nz[sy][y1][y2];
            if (!found) fail("support pair has no second-coordinate lift");
          }
      }
  return sf;
}

std::vector<int> support_roundtrip(const OPiStructure& b) {
  const SupportFunctor sf = support_of(b);
  if (!sf.axioms_ok)
    throw VerifyError("support of an axiom-passing structure is not a c-functor");
  const FiniteGroup& G = *b.group;
  const auto& sets = b.sets.sets;
  if (sets.empty() || sets[0].size != G.order())
    throw VerifyError("registered sets do not start with the regular set");
  const int e = G.identity();
  std::vector<int> d;
  for (const auto& [x, y] : sf.pairs[0])
    if (x == e) d.push_back(y);
  std::sort(d.begin(), d.end());
  std::set<int> ds(d.begin(), d.end());
  for (int g : d)
    for (int h = 0; h < G.order(); ++h)
      if (!ds.count(G.conj(h, g)))
        throw VerifyError("extracted set is not conjugation stable");
  for (size_t s = 0; s < sets.size(); ++s) {
    std::set<std::pair<int, int>> expect;
    for (int g : d)
      for (int x = 0; x < sets[s].size; ++x) expect.insert({x, sets[s].act(g, x)});
    const std::set<std::pair<int, int>> got(sf.pairs[s].begin(), sf.pairs[s].end());
    if (expect != got)
      throw VerifyError("support does not match its conjugacy set");
  }
  return d;
}

// ------------------------------------------------------------------- tensor

namespace {

std::vector<int> stable_union(const FiniteGroup& g, std::vector<int> c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.empty()) throw UsageError("empty class union");
  std::set<int> in(c.begin(), c.end());
  for (int x : c) {
    if (x < 0 || x >= g.order()) throw UsageError("class element out of range");
    for (int h = 0; h < g.order(); ++h)
      if (!in.count(g.conj(h, x)))
        throw UsageError("set is not conjugation stable");
  }
  return c;
}

}  // namespace

TensorReport yd_tensor_check(GroupPtr g, const std::vector<int>& c1,
                             const std::vector<int>& c2) {
  const std::vector<int> a = stable_union(*g, c1);
  const std::vector<int> b = stable_union(*g, c2);
  TensorReport rep;
  std::set<int> prod;
  for (int h1 : a)
    for (int h2 : b) prod.insert(g->mul(h2, h1));
  rep.product_set.assign(prod.begin(), prod.end());
  for (int x : rep.product_set)
    for (int h = 0; h < g->order(); ++h)
      if (!prod.count(g->conj(h, x)))
        throw VerifyError("product of stable sets is not stable");

  const TestSets ts = build_test_sets(g);
  std::vector<FinGSet> all = ts.sets;
  for (const FinGSet& x : ts.sets)
    for (const FinGSet& y : ts.sets) all.push_back(product_gset(x, y));

  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  for (size_t s = 0; s < all.size(); ++s) {
    const FinGSet& X = all[s];
    for (int x = 0; x < X.size; ++x)
      for (int y = 0; y < X.size; ++y)
        for (int i1 = 0; i1 < na; ++i1)
          for (int i2 = 0; i2 < nb; ++i2) {
            // Coproduct side: sum over the middle point.
            int lhs = 0;
            for (int u = 0; u < X.size; ++u)
              if (u == X.act(a[i1], x) && y == X.act(b[i2], u)) ++lhs;
            // Pullback side: evaluate at the product element.
            const int rhs = y == X.act(g->mul(b[i2], a[i1]), x) ? 1 : 0;
            if (lhs != rhs) {
              rep.pass = false;
              if (rep.failures.size() < 40)
                rep.failures.push_back(
                    "pullback comparison fails on registered set " +
                    std::to_string(s) + " at (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
            }
          }
  }
  return rep;
}

// ------------------------------------------------------------------- center

namespace {

long long class_count_within(const FiniteGroup& g, const std::vector<int>& sub) {
  std::set<int> seen;
  long long count = 0;
  for (int a : sub) {
    if (seen.count(a)) continue;
    ++count;
    for (int z : sub) seen.insert(g.conj(z, a));
  }
  return count;
}

}  // namespace

long long commuting_pair_orbit_count(const FiniteGroup& g) {
  const int n = g.order();
  if (n > 200) throw ResourceError("group order exceeds 200");
  std::vector<char> visited(static_cast<size_t>(n) * n, 0);
  long long orbits = 0;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      if (g.mul(a, bb) != g.mul(bb, a)) continue;
      if (visited[static_cast<size_t>(a) * n + bb]) continue;
      ++orbits;
      for (int k = 0; k < n; ++k)
        visited[static_cast<size_t>(g.conj(k, a)) * n + g.conj(k, bb)] = 1;
    }
  return orbits;
}

long long center_simple_count(const FiniteGroup& g) {
  if (g.order() > 200) throw ResourceError("group order exceeds 200");
  long long total = 0;
  for (const auto& cls : g.classes())
    total += class_count_within(g, g.centralizer(cls[0]));
  const long long oracle = commuting_pair_orbit_count(g);
  if (total != oracle)
    throw VerifyError("centralizer-class sum disagrees with the orbit oracle");
  return total;
}

}  // namespace oligo
