#include "oligocat/permcat.hpp"

#include "oligocat/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oligo {

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

std::vector<int> inverse_map(const std::vector<int>& m) {
  std::vector<int> inv(m.size(), -1);
  for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = static_cast<int>(i);
  return inv;
}

// The same tuples in two labellings: read src-point -> img-point off the
// parallel cover lists.
std::vector<int> cover_point_map(int src_n,
                                 const std::vector<std::vector<int>>& src_covers,
                                 const std::vector<std::vector<int>>& img_covers) {
  std::vector<int> m(src_n, -1);
  for (std::size_t f = 0; f < src_covers.size(); ++f)
    for (std::size_t p = 0; p < src_covers[f].size(); ++p)
      m[src_covers[f][p]] = img_covers[f][p];
  return m;
}

DecoratedOrbit diagonal_orbit(const Structure& s) {
  const ConcreteStructure c = to_concrete(s);
  const std::vector<int> id = identity_map(c.n);
  return decorate(c, {id, id});
}

DecoratedOrbit swap_factors(const DecoratedOrbit& o) {
  return decorate(o.total, {o.covers[1], o.covers[0]});
}

Structure orbit_shape(const DecoratedOrbit& o) { return canonical_form(o.total).first; }

std::string orbit_str(const DecoratedOrbit& o) {
  auto [shape, relab] = canonical_form(o.total);
  std::ostringstream out;
  out << shape.enc();
  for (const auto& cov : o.covers) {
    out << '|';
    for (std::size_t p = 0; p < cov.size(); ++p) {
      if (p) out << ',';
      out << relab[cov[p]];
    }
  }
  return out.str();
}

void check_object(const PermObject& x) {
  for (const auto& s : x.comps)
    if (s.cls != x.cls) throw UsageError("object component class mismatch");
}

// The cover of the component shape inside a realization total, read through
// the component's provenance orbit w: shape point q sits at pm[rinv[q]],
// where pm carries w.total into the realization and r is the canonical
// relabelling of w.total.
std::vector<int> shape_cover(const DecoratedOrbit& w, const std::vector<int>& pm) {
  const std::vector<int> rinv = inverse_map(canonical_form(w.total).second);
  std::vector<int> cov(w.total.n);
  for (int q = 0; q < w.total.n; ++q) cov[q] = pm[rinv[q]];
  return cov;
}

std::map<std::tuple<int, int, DecoratedOrbit>, int> comp_index(const TensorDecomp& td) {
  std::map<std::tuple<int, int, DecoratedOrbit>, int> idx;
  for (int c = 0; c < static_cast<int>(td.obj.comps.size()); ++c)
    idx[{td.prov_left[c], td.prov_right[c], td.prov_orb[c]}] = c;
  return idx;
}

}  // namespace

PermObject perm_object(const Structure& shape) { return PermObject{shape.cls, {shape}}; }

PermObject perm_object(ClassTag cls, const GSetSum& sum) {
  PermObject x;
  x.cls = cls;
  for (const auto& [shape, mult] : sum.terms) {
    if (shape.cls != cls) throw UsageError("class mismatch in sum");
    for (long long m = 0; m < mult; ++m) x.comps.push_back(shape);
  }
  return x;
}

PermObject unit_object(ClassTag cls) { return PermObject{cls, {make_structure(cls, 0)}}; }

std::vector<HomLabel> hom_basis(const PermObject& x, const PermObject& y) {
  if (x.cls != y.cls) throw UsageError("hom_basis: class mismatch");
  check_object(x);
  check_object(y);
  std::vector<HomLabel> basis;
  for (int j = 0; j < static_cast<int>(y.comps.size()); ++j)
    for (int i = 0; i < static_cast<int>(x.comps.size()); ++i)
      for (const auto& orb : product_orbits({y.comps[j], x.comps[i]}))
        basis.push_back(HomLabel{j, i, orb});
  return basis;
}

std::string hom_label_str(const HomLabel& l) {
  return "Y" + std::to_string(l.cod_comp) + ".X" + std::to_string(l.dom_comp) + "." +
         orbit_str(l.orb);
}

void PermMorphism::set(const HomLabel& l, const RatFunc& v) {
  if (v.is_zero())
    entries.erase(l);
  else
    entries[l] = v;
}

RatFunc PermMorphism::at(const HomLabel& l) const {
  auto it = entries.find(l);
  return it == entries.end() ? RatFunc(0) : it->second;
}

PermMorphism zero_morphism(const PermObject& x, const PermObject& y) {
  if (x.cls != y.cls) throw UsageError("class mismatch");
  return PermMorphism{x, y, {}};
}

PermMorphism identity_morphism(const PermObject& x) {
  PermMorphism m{x, x, {}};
  for (int i = 0; i < static_cast<int>(x.comps.size()); ++i)
    m.entries[HomLabel{i, i, diagonal_orbit(x.comps[i])}] = RatFunc(1);
  return m;
}

PermMorphism ones_morphism(const PermObject& x, const PermObject& y, const RatFunc& value) {
  PermMorphism m{x, y, {}};
  if (value.is_zero()) return m;
  for (const auto& l : hom_basis(x, y)) m.entries[l] = value;
  return m;
}

PermMorphism scale(const RatFunc& c, const PermMorphism& a) {
  PermMorphism r{a.dom, a.cod, {}};
  if (c.is_zero()) return r;
  for (const auto& [l, v] : a.entries) r.entries[l] = c * v;
  return r;
}

PermMorphism add(const PermMorphism& a, const PermMorphism& b) {
  if (a.dom != b.dom || a.cod != b.cod) throw UsageError("add: object mismatch");
  PermMorphism r = a;
  for (const auto& [l, v] : b.entries) r.set(l, r.at(l) + v);
  return r;
}

PermMorphism compose(const PermMorphism& b, const PermMorphism& a,
                     const MeasureSolution& mu) {
  if (a.cod != b.dom) throw UsageError("compose: middle object mismatch");
  if (a.dom.cls != mu.cls) throw UsageError("compose: measure class mismatch");
  PermMorphism r{a.dom, b.cod, {}};

  // Component pairs of cod x dom that can receive contributions.
  std::set<std::pair<int, int>> involved;
  for (const auto& [bl, bv] : b.entries)
    for (const auto& [al, av] : a.entries)
      if (bl.dom_comp == al.cod_comp) involved.insert({bl.cod_comp, al.dom_comp});

  // The integral divides by the measure of each receiving pair-orbit; demand
  // regularity there up front.
  for (const auto& [k, i] : involved)
    for (const auto& o : product_orbits({b.cod.comps[k], a.dom.comps[i]}))
      if (eval_measure(mu, orbit_shape(o)).is_zero())
        throw UsageError("measure not regular on orbit " + orbit_str(o));

  // Entry of BA on a pair-orbit O: sum over triple-orbits T over O of
  // B(T|ZY) A(T|YX) mu(T) / mu(O).  The triples meeting both entries are the
  // amalgamations of the two entry orbits over the shared middle shape.
  std::map<HomLabel, RatFunc> acc;
  for (const auto& [bl, bv] : b.entries)
    for (const auto& [al, av] : a.entries) {
      if (bl.dom_comp != al.cod_comp) continue;
      const DecoratedOrbit& p = bl.orb;  // (Z component, Y component)
      const DecoratedOrbit& q = al.orb;  // (Y component, X component)
      for (const auto& am : amalgamate(p.total, q.total, p.covers[1], q.covers[0])) {
        std::vector<int> ck(p.covers[0].size()), cm(p.covers[1].size()),
            ci(q.covers[1].size());
        for (std::size_t t = 0; t < ck.size(); ++t) ck[t] = am.cover_left[p.covers[0][t]];
        for (std::size_t t = 0; t < cm.size(); ++t) cm[t] = am.cover_left[p.covers[1][t]];
        for (std::size_t t = 0; t < ci.size(); ++t) ci[t] = am.cover_right[q.covers[1][t]];
        DecoratedOrbit trip = decorate(am.total, {ck, cm, ci});
        RatFunc w = eval_measure(mu, canonical_form(trip.total).first);
        if (w.is_zero()) continue;
        acc[HomLabel{bl.cod_comp, al.dom_comp, restrict_orbit(trip, {0, 2})}] +=
            bv * av * w;
      }
    }

  for (const auto& [lab, v] : acc) {
    if (v.is_zero()) continue;
    r.entries[lab] = v / eval_measure(mu, orbit_shape(lab.orb));
  }
  return r;
}

TensorDecomp tensor_object(const PermObject& a, const PermObject& b) {
  if (a.cls != b.cls) throw UsageError("tensor: class mismatch");
  check_object(a);
  check_object(b);
  TensorDecomp td;
  td.obj.cls = a.cls;
  for (int i = 0; i < static_cast<int>(a.comps.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.comps.size()); ++j)
      for (const auto& orb : product_orbits({a.comps[i], b.comps[j]})) {
        td.obj.comps.push_back(orbit_shape(orb));
        td.prov_left.push_back(i);
        td.prov_right.push_back(j);
        td.prov_orb.push_back(orb);
      }
  return td;
}

PermMorphism tensor(const PermMorphism& a, const PermMorphism& b) {
  const TensorDecomp cc = tensor_object(a.cod, b.cod);
  const TensorDecomp dd = tensor_object(a.dom, b.dom);
  const auto cidx = comp_index(cc);
  const auto didx = comp_index(dd);
  PermMorphism r{dd.obj, cc.obj, {}};
  for (const auto& [al, av] : a.entries)
    for (const auto& [bl, bv] : b.entries) {
      const DecoratedOrbit& p = al.orb;  // (YA, XA)
      const DecoratedOrbit& q = bl.orb;  // (YB, XB)
      // All joint positions of the two entry orbits: gluings over nothing.
      for (const auto& am : amalgamate(p.total, q.total, {}, {})) {
        auto lift = [](const std::vector<int>& carry, const std::vector<int>& cov) {
          std::vector<int> out(cov.size());
          for (std::size_t t = 0; t < cov.size(); ++t) out[t] = carry[cov[t]];
          return out;
        };
        DecoratedOrbit quad =
            decorate(am.total, {lift(am.cover_left, p.covers[0]), lift(am.cover_right, q.covers[0]),
                                lift(am.cover_left, p.covers[1]), lift(am.cover_right, q.covers[1])});
        DecoratedOrbit wy = restrict_orbit(quad, {0, 1});
        DecoratedOrbit wx = restrict_orbit(quad, {2, 3});
        const int c = cidx.at({al.cod_comp, bl.cod_comp, wy});
        const int d = didx.at({al.dom_comp, bl.dom_comp, wx});
        std::vector<int> pmy =
            cover_point_map(wy.total.n, wy.covers, {quad.covers[0], quad.covers[1]});
        std::vector<int> pmx =
            cover_point_map(wx.total.n, wx.covers, {quad.covers[2], quad.covers[3]});
        DecoratedOrbit o = decorate(quad.total, {shape_cover(wy, pmy), shape_cover(wx, pmx)});
        HomLabel lab{c, d, o};
        if (r.entries.count(lab)) throw std::logic_error("tensor: label collision");
        r.entries[lab] = av * bv;
      }
    }
  return r;
}

PermMorphism dual(const PermMorphism& a) {
  PermMorphism r{a.cod, a.dom, {}};
  for (const auto& [l, v] : a.entries)
    r.entries[HomLabel{l.dom_comp, l.cod_comp, swap_factors(l.orb)}] = v;
  return r;
}

PermMorphism unit_constants(const PermObject& x) {
  check_object(x);
  PermMorphism r{unit_object(x.cls), x, {}};
  for (int i = 0; i < static_cast<int>(x.comps.size()); ++i) {
    const ConcreteStructure c = to_concrete(x.comps[i]);
    r.entries[HomLabel{i, 0, decorate(c, {identity_map(c.n), {}})}] = RatFunc(1);
  }
  return r;
}

PermMorphism counit_integration(const PermObject& x) { return dual(unit_constants(x)); }

RatFunc trace_dim(const PermObject& x, const MeasureSolution& mu) {
  if (x.cls != mu.cls) throw UsageError("trace_dim: measure class mismatch");
  RatFunc acc(0);
  for (const auto& s : x.comps) acc += eval_measure(mu, s);
  return acc;
}

RatFunc trace(const PermMorphism& a, const MeasureSolution& mu) {
  if (a.dom != a.cod) throw UsageError("trace requires an endomorphism");
  if (a.dom.cls != mu.cls) throw UsageError("trace: measure class mismatch");
  RatFunc acc(0);
  for (int i = 0; i < static_cast<int>(a.dom.comps.size()); ++i) {
    RatFunc v = a.at(HomLabel{i, i, diagonal_orbit(a.dom.comps[i])});
    if (!v.is_zero()) acc += v * eval_measure(mu, a.dom.comps[i]);
  }
  return acc;
}

namespace {

// Alignment between the two bracketings of a triple tensor product: matching
// components carry the same flattened triple-orbit label, and tau records the
// shape permutation between the two labelled realizations.
struct Reassoc {
  std::vector<int> comp_map;
  std::vector<std::vector<int>> tau;
};

// Expand the given factor of a tower component's orbit by the inner
// provenance orbit.  Returns the flat label together with the cover of the
// component shape inside the flat total.
std::pair<DecoratedOrbit, std::vector<int>> flatten_comp(const DecoratedOrbit& outer,
                                                         int factor,
                                                         const DecoratedOrbit& inner) {
  const std::vector<int> irel = canonical_form(inner.total).second;
  std::vector<std::vector<int>> covers;
  for (int f = 0; f < static_cast<int>(outer.covers.size()); ++f) {
    if (f == factor) {
      for (const auto& icov : inner.covers) {
        std::vector<int> cov(icov.size());
        for (std::size_t t = 0; t < icov.size(); ++t)
          cov[t] = outer.covers[factor][irel[icov[t]]];
        covers.push_back(std::move(cov));
      }
    } else {
      covers.push_back(outer.covers[f]);
    }
  }
  DecoratedOrbit flat = decorate(outer.total, covers);
  std::vector<int> rho = cover_point_map(outer.total.n, covers, flat.covers);
  return {flat, shape_cover(outer, rho)};
}

Reassoc reassociator(const TensorDecomp& ab, const TensorDecomp& left,
                     const TensorDecomp& bc, const TensorDecomp& right) {
  std::map<std::tuple<int, int, int, DecoratedOrbit>, std::pair<int, std::vector<int>>>
      rmap;
  for (int c = 0; c < static_cast<int>(right.obj.comps.size()); ++c) {
    const int i = right.prov_left[c];
    const int cw = right.prov_right[c];
    auto [flat, cov] = flatten_comp(right.prov_orb[c], 1, bc.prov_orb[cw]);
    rmap[{i, bc.prov_left[cw], bc.prov_right[cw], flat}] = {c, std::move(cov)};
  }
  Reassoc ra;
  ra.comp_map.resize(left.obj.comps.size());
  ra.tau.resize(left.obj.comps.size());
  for (int c = 0; c < static_cast<int>(left.obj.comps.size()); ++c) {
    const int cw = left.prov_left[c];
    const int k = left.prov_right[c];
    auto [flat, covl] = flatten_comp(left.prov_orb[c], 0, ab.prov_orb[cw]);
    auto it = rmap.find({ab.prov_left[cw], ab.prov_right[cw], k, flat});
    if (it == rmap.end()) throw std::logic_error("reassociator: unmatched component");
    ra.comp_map[c] = it->second.first;
    const std::vector<int>& covr = it->second.second;
    const std::vector<int> covlinv = inverse_map(covl);
    std::vector<int> tau(covl.size());
    for (std::size_t qq = 0; qq < tau.size(); ++qq) tau[qq] = covlinv[covr[qq]];
    ra.tau[c] = std::move(tau);
  }
  return ra;
}

Reassoc invert(const Reassoc& ra) {
  Reassoc inv;
  inv.comp_map.resize(ra.comp_map.size());
  inv.tau.resize(ra.tau.size());
  for (std::size_t c = 0; c < ra.comp_map.size(); ++c) {
    inv.comp_map[ra.comp_map[c]] = static_cast<int>(c);
    inv.tau[ra.comp_map[c]] = inverse_map(ra.tau[c]);
  }
  return inv;
}

PermMorphism transport_dom(const PermMorphism& f, const PermObject& nd, const Reassoc& ra) {
  PermMorphism r{nd, f.cod, {}};
  for (const auto& [l, v] : f.entries) {
    const std::vector<int>& tau = ra.tau[l.dom_comp];
    std::vector<int> cov(l.orb.covers[1].size());
    for (std::size_t qq = 0; qq < cov.size(); ++qq) cov[qq] = l.orb.covers[1][tau[qq]];
    r.entries[HomLabel{l.cod_comp, ra.comp_map[l.dom_comp],
                       decorate(l.orb.total, {l.orb.covers[0], cov})}] = v;
  }
  return r;
}

PermMorphism transport_cod(const PermMorphism& f, const PermObject& nc, const Reassoc& ra) {
  PermMorphism r{f.dom, nc, {}};
  for (const auto& [l, v] : f.entries) {
    const std::vector<int>& tau = ra.tau[l.cod_comp];
    std::vector<int> cov(l.orb.covers[0].size());
    for (std::size_t qq = 0; qq < cov.size(); ++qq) cov[qq] = l.orb.covers[0][tau[qq]];
    r.entries[HomLabel{ra.comp_map[l.cod_comp], l.dom_comp,
                       decorate(l.orb.total, {cov, l.orb.covers[1]})}] = v;
  }
  return r;
}

// The swap of the two tensor factors as a graph matrix on the product object.
PermMorphism braiding(const TensorDecomp& td) {
  const auto idx = comp_index(td);
  PermMorphism r{td.obj, td.obj, {}};
  for (int w = 0; w < static_cast<int>(td.obj.comps.size()); ++w) {
    const DecoratedOrbit& orb = td.prov_orb[w];
    DecoratedOrbit swapped = swap_factors(orb);
    const int w2 = idx.at({td.prov_right[w], td.prov_left[w], swapped});
    const std::vector<int> covdom = inverse_map(canonical_form(orb.total).second);
    const std::vector<int> rhoinv = inverse_map(cover_point_map(
        orb.total.n, {orb.covers[1], orb.covers[0]}, swapped.covers));
    const std::vector<int> r2inv = inverse_map(canonical_form(swapped.total).second);
    std::vector<int> covcod(orb.total.n);
    for (int qq = 0; qq < orb.total.n; ++qq) covcod[qq] = rhoinv[r2inv[qq]];
    r.entries[HomLabel{w2, w, decorate(orb.total, {covcod, covdom})}] = RatFunc(1);
  }
  return r;
}

}  // namespace

PermMorphism diagonal_restriction(const PermObject& x, const TensorDecomp& xx) {
  if (xx.obj.cls != x.cls) throw UsageError("diagonal_restriction: class mismatch");
  const auto idx = comp_index(xx);
  PermMorphism r{xx.obj, x, {}};
  for (int i = 0; i < static_cast<int>(x.comps.size()); ++i) {
    const ConcreteStructure c = to_concrete(x.comps[i]);
    const std::vector<int> id = identity_map(c.n);
    const DecoratedOrbit wdiag = decorate(c, {id, id});
    auto it = idx.find({i, i, wdiag});
    if (it == idx.end())
      throw UsageError("diagonal_restriction: decomposition does not match the object");
    const std::vector<int> covdom = inverse_map(canonical_form(c).second);
    r.entries[HomLabel{i, it->second, decorate(c, {id, covdom})}] = RatFunc(1);
  }
  return r;
}

FrobeniusReport frobenius_check(const PermObject& x, const MeasureSolution& mu) {
  if (x.cls != mu.cls) throw UsageError("frobenius_check: measure class mismatch");
  check_object(x);
  FrobeniusReport rep;
  auto record = [&rep](const std::string& law, bool ok) {
    if (!ok) rep.failures.push_back(law);
  };

  const TensorDecomp t2 = tensor_object(x, x);
  const PermMorphism m = diagonal_restriction(x, t2);
  const PermMorphism w = dual(m);
  const PermMorphism u = unit_constants(x);
  const PermMorphism cu = counit_integration(x);
  const PermMorphism one = identity_morphism(x);

  const TensorDecomp t3l = tensor_object(t2.obj, x);
  const TensorDecomp t3r = tensor_object(x, t2.obj);
  const Reassoc ra = reassociator(t2, t3l, t2, t3r);

  {
    PermMorphism lhs = compose(m, tensor(m, one), mu);
    PermMorphism rhs = compose(m, tensor(one, m), mu);
    record("associativity", transport_dom(lhs, t3r.obj, ra) == rhs);
  }
  record("commutativity", compose(m, braiding(t2), mu) == m);
  record("unit law (left)", compose(m, tensor(u, one), mu) == one);
  record("unit law (right)", compose(m, tensor(one, u), mu) == one);
  record("counit law (left)", compose(tensor(cu, one), w, mu) == one);
  record("counit law (right)", compose(tensor(one, cu), w, mu) == one);
  {
    PermMorphism both = compose(w, m, mu);
    record("frobenius law (left)",
           compose(tensor(one, m), transport_cod(tensor(w, one), t3r.obj, ra), mu) == both);
    record("frobenius law (right)",
           compose(tensor(m, one), transport_cod(tensor(one, w), t3l.obj, invert(ra)), mu) ==
               both);
  }
  record("specialness", compose(m, w, mu) == one);
  record("counit-unit pairing",
         compose(cu, u, mu) ==
             scale(trace_dim(x, mu), identity_morphism(unit_object(x.cls))));

  rep.pass = rep.failures.empty();
  std::ostringstream out;
  out << "frobenius laws on " << x.comps.size() << " component(s): ";
  if (rep.pass) {
    out << "all 10 checks pass";
  } else {
    out << rep.failures.size() << " failure(s):";
    for (const auto& f : rep.failures) out << ' ' << f;
  }
  rep.summary = out.str();
  return rep;
}

}  // namespace oligo
