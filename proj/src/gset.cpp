#include "oligocat/gset.hpp"

#include "oligocat/errors.hpp"

#include <algorithm>
#include <numeric>

namespace oligo {

void GSetSum::add(const Structure& s, long long mult) {
  if (mult == 0) return;
  for (auto& [t, m] : terms)
    if (t == s) {
      m += mult;
      if (m == 0) {
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [&](const auto& p) { return p.second == 0; }),
                    terms.end());
      }
      return;
    }
  terms.emplace_back(s, mult);
  std::sort(terms.begin(), terms.end());
}

long long GSetSum::total_orbits() const {
  long long n = 0;
  for (const auto& [s, m] : terms) n += m;
  return n;
}

bool has_strong_amalgamation(ClassTag) {
  return true;  // all four registered classes
}

GSetSum product_decompose(const TransGSet& x, const TransGSet& y) {
  if (x.cls != y.cls) throw UsageError("class mismatch");
  GSetSum out;
  for (const auto& am : amalgamate(to_concrete(x), to_concrete(y), {}, {}))
    out.add(canonical_form(am.total).first);
  return out;
}

GSetSum product_decompose_sum(const GSetSum& x, const GSetSum& y) {
  GSetSum out;
  for (const auto& [sx, mx] : x.terms)
    for (const auto& [sy, my] : y.terms) {
      const GSetSum p = product_decompose(sx, sy);
      for (const auto& [s, m] : p.terms) out.add(s, m * mx * my);
    }
  return out;
}

GSetSum fiber_product_decompose(const Structure& a, const Structure& b,
                                const Embedding& i, const Structure& ap,
                                const Embedding& j) {
  GSetSum out;
  for (const auto& am : enumerate_amalgamations(a, b, i, ap, j)) out.add(am.total);
  return out;
}

std::optional<int> level(const GSetSum& x) {
  if (x.terms.empty()) return std::nullopt;
  int lev = 0;
  for (const auto& [s, m] : x.terms) lev = std::max(lev, s.size);
  return lev;
}

LevelReport check_level_additivity(ClassTag cls, int bound) {
  if (!has_strong_amalgamation(cls))
    throw UsageError("level arithmetic needs strong amalgamation");
  LevelReport rep;
  for (int na = 0; na <= bound; ++na)
    for (const auto& x : enumerate_structures(cls, na))
      for (int nb = 0; nb <= bound; ++nb)
        for (const auto& y : enumerate_structures(cls, nb)) {
          const GSetSum p = product_decompose(x, y);
          const auto lv = level(p);
          if (!lv || *lv != na + nb) {
            rep.pass = false;
            rep.detail = "level not attained for " + x.enc() + " x " + y.enc();
            return rep;
          }
          for (const auto& [s, m] : p.terms)
            if (s.size > na + nb || s.size < std::max(na, nb)) {
              rep.pass = false;
              rep.detail = "orbit level out of range for " + x.enc() + " x " + y.enc();
              return rep;
            }
        }
  rep.pass = true;
  rep.detail = "levels additive for all transitive sets of level <= " +
               std::to_string(bound);
  return rep;
}

long long orbit_count(const GSetSum& x, const GSetSum& y) {
  long long n = 0;
  for (const auto& [sx, mx] : x.terms)
    for (const auto& [sy, my] : y.terms) n += mx * my * amalgamation_count(sx, sy);
  return n;
}

SPrimeResult property_S_prime_check(const Structure& a,
                                    const std::vector<Structure>& bs,
                                    int search_bound) {
  for (const auto& b : bs) {
    if (b.cls != a.cls) throw UsageError("class mismatch");
    if (b.size >= a.size) throw UsageError("each B_i must be smaller than A");
  }
  SPrimeResult res;
  res.bound = search_bound;
  for (int n = 0; n <= search_bound; ++n) {
    for (const auto& c : enumerate_structures(a.cls, n)) {
      const long long lhs = amalgamation_count(a, c);
      long long rhs = 0;
      for (const auto& b : bs) rhs += amalgamation_count(b, c);
      if (lhs > rhs) {
        res.found = true;
        res.witness = c;
        res.lhs = lhs;
        res.rhs = rhs;
        return res;
      }
    }
  }
  return res;
}

DecoratedOrbit decorate(const ConcreteStructure& total,
                        std::vector<std::vector<int>> covers) {
  std::vector<int> relab(total.n, -1);
  int next = 0;
  for (const auto& cov : covers)
    for (int p : cov) {
      if (p < 0 || p >= total.n) throw UsageError("cover out of range");
      if (relab[p] < 0) relab[p] = next++;
    }
  if (next != total.n) throw UsageError("covers do not reach every point");
  DecoratedOrbit d;
  d.total = remap_concrete(total, relab);
  d.covers = std::move(covers);
  for (auto& cov : d.covers)
    for (int& p : cov) p = relab[p];
  return d;
}

std::vector<DecoratedOrbit> product_orbits(const std::vector<Structure>& shapes) {
  if (shapes.empty()) throw UsageError("empty product");
  for (const auto& s : shapes)
    if (s.cls != shapes[0].cls) throw UsageError("class mismatch");
  std::vector<DecoratedOrbit> cur;
  {
    const ConcreteStructure c0 = to_concrete(shapes[0]);
    std::vector<int> id(c0.n);
    std::iota(id.begin(), id.end(), 0);
    cur.push_back(decorate(c0, {id}));
  }
  for (std::size_t k = 1; k < shapes.size(); ++k) {
    const ConcreteStructure cs = to_concrete(shapes[k]);
    std::vector<DecoratedOrbit> nx;
    for (const auto& o : cur)
      for (const auto& am : amalgamate(o.total, cs, {}, {})) {
        auto covers = o.covers;  // cover_left is the identity inclusion
        covers.push_back(am.cover_right);
        nx.push_back(decorate(am.total, std::move(covers)));
      }
    cur = std::move(nx);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

DecoratedOrbit restrict_orbit(const DecoratedOrbit& o, const std::vector<int>& factors) {
  std::vector<char> keep(o.total.n, 0);
  for (int f : factors) {
    if (f < 0 || f >= static_cast<int>(o.covers.size()))
      throw UsageError("factor index out of range");
    for (int p : o.covers[f]) keep[p] = 1;
  }
  std::vector<int> points;
  for (int p = 0; p < o.total.n; ++p)
    if (keep[p]) points.push_back(p);
  std::vector<int> pos(o.total.n, -1);
  for (std::size_t i = 0; i < points.size(); ++i) pos[points[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> covers;
  for (int f : factors) {
    std::vector<int> cov;
    for (int p : o.covers[f]) cov.push_back(pos[p]);
    covers.push_back(std::move(cov));
  }
  return decorate(restrict_concrete(o.total, points), std::move(covers));
}

}  // namespace oligo
