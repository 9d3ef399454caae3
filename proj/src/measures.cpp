#include "oligocat/measures.hpp"

#include "oligocat/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oligo {

// ---------------------------------------------------------------------------
// Fiber types.
// ---------------------------------------------------------------------------

FiberType fiber_type_in(const ConcreteStructure& ambient,
                        const std::vector<int>& base_pts, int y) {
  for (int p : base_pts)
    if (p == y) throw UsageError("fiber_type_in: point listed in its own base");
  std::vector<int> pts = base_pts;
  pts.push_back(y);
  ConcreteStructure u = restrict_concrete(ambient, pts);
  int k = static_cast<int>(base_pts.size());
  std::vector<int> base_idx(k);
  std::iota(base_idx.begin(), base_idx.end(), 0);
  auto [bcanon, relab] = canonical_form(restrict_concrete(u, base_idx));
  std::vector<int> cover0(k);
  for (int i = 0; i < k; ++i) cover0[relab[i]] = i;
  return FiberType{bcanon, decorate(u, {cover0, {k}})};
}

const std::vector<FiberType>& fibers_over(const Structure& base) {
  static std::map<Structure, std::vector<FiberType>> memo;
  auto it = memo.find(base);
  if (it != memo.end()) return it->second;
  std::vector<FiberType> out;
  for (const DecoratedOrbit& o : product_orbits({base, make_structure(base.cls, 1)}))
    if (o.total.n == base.size + 1) out.push_back(FiberType{base, o});
  return memo.emplace(base, std::move(out)).first->second;
}

FiberType conjugacy_label(const FiberType& t) {
  static std::map<FiberType, FiberType> memo;
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  std::optional<DecoratedOrbit> best;
  for (const auto& alpha : structure_automorphisms(t.base)) {
    std::vector<int> cover0(alpha.size());
    for (size_t j = 0; j < alpha.size(); ++j) cover0[j] = t.orb.covers[0][alpha[j]];
    DecoratedOrbit cand = decorate(t.orb.total, {cover0, t.orb.covers[1]});
    if (!best || cand < *best) best = std::move(cand);
  }
  FiberType res{t.base, *best};
  memo.emplace(t, res);
  return res;
}

FiberType minimal_label(const FiberType& t) {
  static std::map<FiberType, FiberType> memo;
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  FiberType cur = conjugacy_label(t);
  for (;;) {
    int k = cur.base.size;
    if (k == 0) break;
    const auto& fa = fibers_over(cur.base);
    bool reduced = false;
    for (int p = 0; p < k && !reduced; ++p) {
      std::vector<int> sl;
      for (int i = 0; i < k; ++i)
        if (i != p) sl.push_back(cur.orb.covers[0][i]);
      FiberType tau0 = fiber_type_in(cur.orb.total, sl, cur.orb.covers[1][0]);
      // The dropped point must not itself realize the restricted type ...
      if (fiber_type_in(cur.orb.total, sl, cur.orb.covers[0][p]) == tau0) continue;
      // ... and the restricted type must determine the type uniquely.
      int cnt = 0;
      for (const FiberType& f : fa) {
        std::vector<int> fsl;
        for (int i = 0; i < k; ++i)
          if (i != p) fsl.push_back(f.orb.covers[0][i]);
        if (fiber_type_in(f.orb.total, fsl, f.orb.covers[1][0]) == tau0) ++cnt;
      }
      if (cnt == 1) {
        cur = tau0;
        reduced = true;
      }
    }
    if (!reduced) break;
  }
  FiberType res = conjugacy_label(cur);
  memo.emplace(t, res);
  return res;
}

std::string fiber_label_str(const FiberType& t) {
  const ConcreteStructure& total = t.orb.total;
  int k = t.base.size;
  int x = t.orb.covers[1][0];
  switch (t.base.cls) {
    case ClassTag::FinSet:
      return t.base.enc() + "+x";
    case ClassTag::LinOrd: {
      std::vector<int> byrank(total.n);
      for (int p = 0; p < total.n; ++p) byrank[total.order[p]] = p;
      std::string s;
      for (int r = 0; r < total.n; ++r) {
        if (r) s += "<";
        s += byrank[r] == x ? "x" : std::to_string(byrank[r]);
      }
      return s;
    }
    case ClassTag::CycOrd: {
      if (total.n < 3) return t.base.enc() + "+x";
      std::string s = "(";
      for (int i = 0; i < total.n; ++i) {
        if (i) s += " ";
        s += total.cyc[i] == x ? "x" : std::to_string(total.cyc[i]);
      }
      return s + ")";
    }
    case ClassTag::Tree: {
      auto [canon, relab] = canonical_form(total);
      return canon.enc() + "#x=" + std::to_string(relab[x]);
    }
  }
  (void)k;
  return "?";
}

std::vector<ExtensionType> extension_types(const Structure& base) {
  std::vector<ExtensionType> out;
  for (const FiberType& f : fibers_over(base)) {
    ExtensionType e;
    e.fiber = f;
    e.conj = conjugacy_label(f);
    e.minimal = minimal_label(f);
    e.label = fiber_label_str(e.conj);
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial system over the extension unknowns (degree <= 2, few variables).
// ---------------------------------------------------------------------------

namespace {

using Mono = std::vector<int>;          // exponent per unknown
using MPoly = std::map<Mono, RatFunc>;  // monomial -> coefficient

void mp_add(MPoly& p, const Mono& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

MPoly mp_mul(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      mp_add(r, m, ca * cb);
    }
  return r;
}

int mono_deg(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Substitute unknown v := value.
MPoly mp_subst(const MPoly& p, int v, const RatFunc& val) {
  MPoly r;
  for (const auto& [m, c] : p) {
    Mono m2 = m;
    m2[v] = 0;
    RatFunc c2 = c;
    for (int i = 0; i < m[v]; ++i) c2 *= val;
    mp_add(r, m2, c2);
  }
  return r;
}

// Substitute unknown v := polynomial rep.
MPoly mp_subst_poly(const MPoly& p, int v, const MPoly& rep) {
  MPoly r;
  for (const auto& [m, c] : p) {
    Mono m2 = m;
    m2[v] = 0;
    MPoly term;
    term.emplace(m2, c);
    for (int i = 0; i < m[v]; ++i) term = mp_mul(term, rep);
    for (const auto& [mm, cc] : term) mp_add(r, mm, cc);
  }
  return r;
}

RatFunc mp_eval(const MPoly& p, const std::vector<RatFunc>& vals) {
  RatFunc acc(0);
  for (const auto& [m, c] : p) {
    RatFunc term = c;
    for (size_t v = 0; v < m.size(); ++v)
      for (int i = 0; i < m[v]; ++i) term *= vals[v];
    acc += term;
  }
  return acc;
}

std::string mp_key(const MPoly& p) {
  std::ostringstream os;
  for (const auto& [m, c] : p) {
    for (int e : m) os << e << ',';
    os << '=' << c.str() << ';';
  }
  return os.str();
}

// --- exact square roots, for quadratic branching --------------------------

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < Rat(0)) return std::nullopt;
  mpz_class n = r.num(), d = r.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rat::parse(sn.get_str() + "/" + sd.get_str());
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  int d = p.degree();
  if (d % 2) return std::nullopt;
  int h = d / 2;
  auto lead = rat_sqrt(p.lead());
  if (!lead) return std::nullopt;
  std::vector<Rat> q(h + 1);
  q[h] = *lead;
  for (int i = h - 1; i >= 0; --i) {
    Rat s(0);
    for (int j = i + 1; j <= h - 1; ++j) {
      int k = h + i - j;
      if (k > h - 1 || k < i + 1) continue;
      s += q[j] * q[k];
    }
    Rat ci = h + i <= d ? p[h + i] : Rat(0);
    q[i] = (ci - s) / (q[h] * Rat(2));
  }
  Poly qq{std::vector<Rat>(q)};
  if (qq * qq != p) return std::nullopt;
  return qq;
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
  auto sn = poly_sqrt(f.num());
  if (!sn) return std::nullopt;
  auto sd = poly_sqrt(f.den());
  if (!sd) return std::nullopt;
  RatFunc r(*sn, *sd);
  if (r * r != f) return std::nullopt;
  return r;
}

// --- deterministic elimination solver --------------------------------------

struct SolverState {
  std::vector<std::optional<RatFunc>> assigned;
  std::vector<std::pair<int, MPoly>> bindings;  // var = linear form over later-solved vars
  std::vector<char> bound;
};

struct SolverOut {
  std::vector<std::vector<RatFunc>> solutions;
  bool underdetermined = false;
  std::vector<std::string> notes;
};

void eq_profile(const MPoly& e, size_t nvars, int& deg, std::set<int>& vars) {
  deg = 0;
  vars.clear();
  for (const auto& [m, c] : e) {
    deg = std::max(deg, mono_deg(m));
    for (size_t v = 0; v < nvars; ++v)
      if (m[v]) vars.insert(static_cast<int>(v));
  }
}

void solve_rec(std::vector<MPoly> eqs, SolverState st, size_t nvars, SolverOut& out) {
  for (;;) {
    std::vector<MPoly> kept;
    for (auto& e : eqs) {
      if (e.empty()) continue;
      if (e.size() == 1 && mono_deg(e.begin()->first) == 0) return;  // contradiction
      kept.push_back(std::move(e));
    }
    eqs = std::move(kept);

    bool progress = false;
    int deg;
    std::set<int> vars;
    // Linear equation in a single unknown: assign it.
    for (size_t ei = 0; ei < eqs.size() && !progress; ++ei) {
      eq_profile(eqs[ei], nvars, deg, vars);
      if (deg != 1 || vars.size() != 1) continue;
      int v = *vars.begin();
      RatFunc a(0), b(0);
      for (const auto& [m, c] : eqs[ei]) (m[v] ? a : b) = c;
      RatFunc val = -b / a;
      for (auto& q : eqs) q = mp_subst(q, v, val);
      for (auto& [bv, rep] : st.bindings) rep = mp_subst(rep, v, val);
      st.assigned[v] = val;
      progress = true;
    }
    if (progress) continue;
    // Linear equation in several unknowns: eliminate the lowest one.
    for (size_t ei = 0; ei < eqs.size() && !progress; ++ei) {
      eq_profile(eqs[ei], nvars, deg, vars);
      if (deg != 1 || vars.size() < 2) continue;
      int v = *vars.begin();
      RatFunc a(0);
      MPoly rest;
      for (const auto& [m, c] : eqs[ei]) {
        if (m[v])
          a = c;
        else
          rest.emplace(m, c);
      }
      MPoly rep;
      for (const auto& [m, c] : rest) rep.emplace(m, -c / a);
      std::vector<MPoly> neqs;
      for (size_t j = 0; j < eqs.size(); ++j)
        if (j != ei) neqs.push_back(mp_subst_poly(eqs[j], v, rep));
      eqs = std::move(neqs);
      for (auto& [bv, r2] : st.bindings) r2 = mp_subst_poly(r2, v, rep);
      st.bindings.emplace_back(v, std::move(rep));
      st.bound[v] = 1;
      progress = true;
    }
    if (!progress) break;
  }

  if (!eqs.empty()) {
    // Quadratic in a single unknown: branch over its roots in the field.
    int deg;
    std::set<int> vars;
    for (size_t ei = 0; ei < eqs.size(); ++ei) {
      eq_profile(eqs[ei], nvars, deg, vars);
      if (deg != 2 || vars.size() != 1) continue;
      int v = *vars.begin();
      RatFunc a(0), b(0), c(0);
      for (const auto& [m, co] : eqs[ei]) {
        if (m[v] == 2)
          a = co;
        else if (m[v] == 1)
          b = co;
        else
          c = co;
      }
      RatFunc disc = b * b - RatFunc(4) * a * c;
      std::vector<RatFunc> roots;
      if (auto s = ratfunc_sqrt(disc)) {
        RatFunc r1 = (-b + *s) / (RatFunc(2) * a);
        RatFunc r2 = (-b - *s) / (RatFunc(2) * a);
        roots.push_back(r1);
        if (r2 != r1) roots.push_back(r2);
      } else {
        out.notes.push_back("dropped branch with no root in the scalar field (discriminant " +
                            disc.str() + ")");
      }
      for (const RatFunc& r : roots) {
        std::vector<MPoly> beqs;
        beqs.reserve(eqs.size());
        for (size_t j = 0; j < eqs.size(); ++j)
          if (j != ei) beqs.push_back(mp_subst(eqs[j], v, r));
        SolverState st2 = st;
        for (auto& [bv, rep] : st2.bindings) rep = mp_subst(rep, v, r);
        st2.assigned[v] = r;
        solve_rec(std::move(beqs), std::move(st2), nvars, out);
      }
      return;
    }
    out.underdetermined = true;
    out.notes.push_back("nonlinear constraints could not be reduced further");
    return;
  }

  std::vector<int> free_vars;
  for (size_t v = 0; v < nvars; ++v)
    if (!st.assigned[v] && !st.bound[v]) free_vars.push_back(static_cast<int>(v));
  if (!free_vars.empty()) {
    out.underdetermined = true;
    std::string fv;
    for (int v : free_vars) {
      if (!fv.empty()) fv += ", ";
      fv += "#" + std::to_string(v);
    }
    out.notes.push_back(std::to_string(free_vars.size()) + " free extension scalar(s): " + fv);
    return;
  }
  std::vector<RatFunc> vals(nvars);
  for (size_t v = 0; v < nvars; ++v)
    if (st.assigned[v]) vals[v] = *st.assigned[v];
  for (auto it = st.bindings.rbegin(); it != st.bindings.rend(); ++it)
    vals[it->first] = mp_eval(it->second, vals);
  out.solutions.push_back(std::move(vals));
}

// --- equation generation ----------------------------------------------------

struct System {
  std::vector<FiberType> unknowns;  // minimal labels, sorted
  std::map<FiberType, int> index;
  std::vector<MPoly> eqs;
  std::set<std::string> seen;

  size_t nvars() const { return unknowns.size(); }

  int idx(const FiberType& f) const {
    auto it = index.find(f);
    if (it == index.end()) throw UsageError("extension scalar outside the solved range");
    return it->second;
  }

  void push(MPoly eq) {
    if (eq.empty()) return;
    if (seen.insert(mp_key(eq)).second) eqs.push_back(std::move(eq));
  }

  Mono mono1(int v) const {
    Mono m(nvars(), 0);
    m[v] = 1;
    return m;
  }
};

System build_system(ClassTag cls, int depth) {
  System sys;
  std::set<FiberType> labels;
  for (int sz = 0; sz <= depth; ++sz)
    for (const Structure& a : enumerate_structures(cls, sz))
      for (const FiberType& f : fibers_over(a)) labels.insert(minimal_label(f));
  sys.unknowns.assign(labels.begin(), labels.end());
  if (sys.unknowns.size() > 8)
    throw ResourceError("measure system has " + std::to_string(sys.unknowns.size()) +
                        " unknowns (limit 8) at depth " + std::to_string(depth));
  for (size_t i = 0; i < sys.unknowns.size(); ++i)
    sys.index.emplace(sys.unknowns[i], static_cast<int>(i));

  // Additivity under stabilizers: the fiber of a type over a sub-base splits
  // into realizing base points (measure-1 singletons) and the finer fibers.
  for (int sz = 1; sz <= depth; ++sz)
    for (const Structure& a : enumerate_structures(cls, sz)) {
      ConcreteStructure ca = to_concrete(a);
      const auto& fa = fibers_over(a);
      for (unsigned mask = 0; mask + 1 < (1u << sz); ++mask) {
        std::vector<int> sl;
        for (int i = 0; i < sz; ++i)
          if (mask >> i & 1) sl.push_back(i);
        std::map<FiberType, std::pair<int, std::vector<int>>> buckets;
        for (size_t fi = 0; fi < fa.size(); ++fi) {
          std::vector<int> fsl;
          for (int i : sl) fsl.push_back(fa[fi].orb.covers[0][i]);
          buckets[fiber_type_in(fa[fi].orb.total, fsl, fa[fi].orb.covers[1][0])]
              .second.push_back(static_cast<int>(fi));
        }
        for (int p = 0; p < sz; ++p)
          if (!(mask >> p & 1)) buckets[fiber_type_in(ca, sl, p)].first += 1;
        for (const auto& [tau0, br] : buckets) {
          MPoly eq;
          mp_add(eq, Mono(sys.nvars(), 0), RatFunc(br.first));
          mp_add(eq, sys.mono1(sys.idx(minimal_label(tau0))), RatFunc(-1));
          for (int fi : br.second)
            mp_add(eq, sys.mono1(sys.idx(minimal_label(fa[fi]))), RatFunc(1));
          sys.push(std::move(eq));
        }
      }
    }

  // Pairs of fibers over a shared base: the product of two extension scalars
  // decomposes over the two-point relative orbits (multiplicativity along
  // fiber maps), and the two chains through each orbit must agree.
  Structure pt = make_structure(cls, 1);
  for (int sz = 0; sz + 2 <= depth; ++sz)
    for (const Structure& a0 : enumerate_structures(cls, sz)) {
      const auto& f0 = fibers_over(a0);
      auto orb_index = [&](const DecoratedOrbit& o) {
        for (size_t i = 0; i < f0.size(); ++i)
          if (f0[i].orb == o) return static_cast<int>(i);
        throw UsageError("restricted orbit is not a known fiber type");
      };
      int k = a0.size;
      std::vector<int> bl(k);
      std::iota(bl.begin(), bl.end(), 0);
      std::map<std::pair<int, int>, std::vector<MPoly>> off;
      for (const auto& o : product_orbits({a0, pt, pt})) {
        int x = o.covers[1][0], y = o.covers[2][0];
        if (x < k || y < k) continue;  // absorbed into the base
        if (x == y) continue;          // diagonal handled per pair below
        int si = orb_index(restrict_orbit(o, {0, 1}));
        int ti = orb_index(restrict_orbit(o, {0, 2}));
        std::vector<int> blx = bl;
        blx.push_back(x);
        std::vector<int> bly = bl;
        bly.push_back(y);
        int vs = sys.idx(minimal_label(f0[si]));
        int vt = sys.idx(minimal_label(f0[ti]));
        int vyx = sys.idx(minimal_label(fiber_type_in(o.total, blx, y)));
        int vxy = sys.idx(minimal_label(fiber_type_in(o.total, bly, x)));
        MPoly xchain, ychain;
        {
          Mono m(sys.nvars(), 0);
          m[vs] += 1;
          m[vyx] += 1;
          xchain.emplace(m, RatFunc(1));
        }
        {
          Mono m(sys.nvars(), 0);
          m[vt] += 1;
          m[vxy] += 1;
          ychain.emplace(m, RatFunc(1));
        }
        MPoly chain_eq = xchain;
        for (const auto& [m, c] : ychain) mp_add(chain_eq, m, -c);
        sys.push(std::move(chain_eq));
        off[{si, ti}].push_back(xchain);
      }
      for (size_t si = 0; si < f0.size(); ++si)
        for (size_t ti = 0; ti < f0.size(); ++ti) {
          int vs = sys.idx(minimal_label(f0[si]));
          int vt = sys.idx(minimal_label(f0[ti]));
          MPoly eq;
          Mono m(sys.nvars(), 0);
          m[vs] += 1;
          m[vt] += 1;
          mp_add(eq, m, RatFunc(1));
          if (si == ti) mp_add(eq, sys.mono1(vs), RatFunc(-1));
          auto it = off.find({static_cast<int>(si), static_cast<int>(ti)});
          if (it != off.end())
            for (const MPoly& pr : it->second)
              for (const auto& [mm, cc] : pr) mp_add(eq, mm, -cc);
          sys.push(std::move(eq));
        }
    }
  return sys;
}

std::string solution_key(const MeasureSolution& s) {
  std::string k;
  for (const auto& [f, v] : s.values) {
    k += v.str();
    k += ';';
  }
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

const RatFunc* MeasureSolution::find(const FiberType& minimal) const {
  for (const auto& [f, v] : values)
    if (f == minimal) return &v;
  return nullptr;
}

SolveResult solve_measures(ClassTag cls, int depth,
                           const std::vector<std::pair<Structure, RatFunc>>& normalization,
                           bool enable_tree) {
  if (depth < 3) throw UsageError("solve_measures requires depth >= 3");
  if (cls == ClassTag::Tree && !enable_tree)
    throw UsageError("tree-class measure solving is experimental; enable it explicitly");

  System sys = build_system(cls, depth);
  for (const auto& [shape, val] : normalization) {
    if (shape.cls != cls) throw UsageError("normalization shape from a different class");
    if (shape.size > depth + 1)
      throw UsageError("normalization shape beyond the solved depth");
    ConcreteStructure c = to_concrete(shape);
    Mono m(sys.nvars(), 0);
    std::vector<int> prefix;
    for (int p = 0; p < shape.size; ++p) {
      m[sys.idx(minimal_label(fiber_type_in(c, prefix, p)))] += 1;
      prefix.push_back(p);
    }
    MPoly eq;
    mp_add(eq, m, RatFunc(1));
    mp_add(eq, Mono(sys.nvars(), 0), -val);
    sys.push(std::move(eq));
  }

  SolverState st;
  st.assigned.resize(sys.nvars());
  st.bound.assign(sys.nvars(), 0);
  SolverOut out;
  solve_rec(sys.eqs, std::move(st), sys.nvars(), out);

  SolveResult res;
  res.underdetermined = out.underdetermined;
  std::vector<std::string> detail_parts;
  if (out.underdetermined)
    detail_parts.push_back("underdetermined at depth " + std::to_string(depth));
  for (const auto& n : out.notes) detail_parts.push_back(n);
  for (size_t i = 0; i < detail_parts.size(); ++i) {
    if (i) res.detail += "; ";
    res.detail += detail_parts[i];
  }

  for (auto& vals : out.solutions) {
    MeasureSolution s;
    s.cls = cls;
    s.depth = depth;
    for (size_t i = 0; i < sys.unknowns.size(); ++i)
      s.values.emplace_back(sys.unknowns[i], vals[i]);
    res.solutions.push_back(std::move(s));
  }
  std::sort(res.solutions.begin(), res.solutions.end(),
            [](const MeasureSolution& a, const MeasureSolution& b) {
              return solution_key(a) < solution_key(b);
            });
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end(),
                                  [](const MeasureSolution& a, const MeasureSolution& b) {
                                    return solution_key(a) == solution_key(b);
                                  }),
                      res.solutions.end());
  return res;
}

RatFunc eval_measure(const MeasureSolution& sol, const Structure& shape) {
  if (shape.cls != sol.cls) throw UsageError("eval_measure: class mismatch");
  if (shape.size > sol.depth + 1)
    throw UsageError("shape of size " + std::to_string(shape.size) +
                     " is beyond the solved depth " + std::to_string(sol.depth));
  ConcreteStructure c = to_concrete(shape);
  RatFunc acc(1);
  std::vector<int> prefix;
  for (int p = 0; p < shape.size; ++p) {
    FiberType m = minimal_label(fiber_type_in(c, prefix, p));
    const RatFunc* v = sol.find(m);
    if (!v)
      throw UsageError("extension scalar not solved for " + fiber_label_str(m));
    acc *= *v;
    prefix.push_back(p);
  }
  return acc;
}

RatFunc eval_measure_sum(const MeasureSolution& sol, const GSetSum& x) {
  RatFunc acc(0);
  for (const auto& [shape, mult] : x.terms)
    acc += RatFunc(static_cast<long>(mult)) * eval_measure(sol, shape);
  return acc;
}

VerifyReport verify_measure(const MeasureSolution& sol, int n) {
  if (n < 1) throw UsageError("verify_measure requires depth >= 1");
  if (n > sol.depth)
    throw UsageError("verification depth exceeds the solved depth");
  VerifyReport rep;
  long chains = 0, products = 0, equations = 0;

  // Chain independence: every insertion order yields the same measure.
  int chain_cap = std::min(n, 6);
  for (int s = 1; s <= chain_cap; ++s)
    for (const Structure& shape : enumerate_structures(sol.cls, s)) {
      ConcreteStructure c = to_concrete(shape);
      std::vector<int> perm(s);
      std::iota(perm.begin(), perm.end(), 0);
      std::optional<RatFunc> ref;
      do {
        RatFunc acc(1);
        std::vector<int> prefix;
        for (int i = 0; i < s; ++i) {
          const RatFunc* v = sol.find(minimal_label(fiber_type_in(c, prefix, perm[i])));
          if (!v) throw UsageError("extension scalar missing during verification");
          acc *= *v;
          prefix.push_back(perm[i]);
        }
        ++chains;
        if (!ref)
          ref = acc;
        else if (acc != *ref)
          rep.failures.push_back("chain dependence on " + shape.enc());
      } while (std::next_permutation(perm.begin(), perm.end()));
    }

  // Product identity: mu(X) mu(Y) equals the sum of mu over orbits of X x Y.
  for (int la = 1; la <= n; ++la)
    for (int lb = la; lb <= n; ++lb) {
      if (la + lb > sol.depth + 1) continue;
      for (const Structure& xs : enumerate_structures(sol.cls, la))
        for (const Structure& ys : enumerate_structures(sol.cls, lb)) {
          RatFunc lhs = eval_measure(sol, xs) * eval_measure(sol, ys);
          RatFunc rhs = eval_measure_sum(sol, product_decompose(xs, ys));
          ++products;
          if (lhs != rhs)
            rep.failures.push_back("product identity fails on " + xs.enc() + " x " +
                                   ys.enc());
        }
    }

  // Re-check the full axiom system at this depth.
  System sys = build_system(sol.cls, n);
  std::vector<RatFunc> vals;
  vals.reserve(sys.nvars());
  bool have_all = true;
  for (const FiberType& u : sys.unknowns) {
    const RatFunc* v = sol.find(u);
    if (!v) {
      rep.failures.push_back("solution lacks a value for " + fiber_label_str(u));
      have_all = false;
      break;
    }
    vals.push_back(*v);
  }
  if (have_all)
    for (const MPoly& eq : sys.eqs) {
      ++equations;
      if (!mp_eval(eq, vals).is_zero()) {
        rep.failures.push_back("axiom equation violated at depth " + std::to_string(n));
        break;
      }
    }

  rep.pass = rep.failures.empty();
  std::ostringstream os;
  os << "chains checked: " << chains << "; product identities: " << products
     << "; axiom equations: " << equations
     << "; conjugation invariance holds by label aggregation";
  rep.summary = os.str();
  return rep;
}

RegularityReport regularity_check(const MeasureSolution& sol, int n) {
  if (n < 1) throw UsageError("regularity_check requires depth >= 1");
  if (n > sol.depth + 1)
    throw UsageError("regularity depth exceeds the solved depth");
  RegularityReport rep;
  for (int s = 1; s <= n; ++s)
    for (const Structure& shape : enumerate_structures(sol.cls, s))
      if (eval_measure(sol, shape).is_zero()) rep.vanishing.push_back(shape);
  rep.regular = rep.vanishing.empty();
  return rep;
}

}  // namespace oligo
