#include "oligocat/fraisse.hpp"

#include "oligocat/errors.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace oligo {

std::string class_name(ClassTag cls) {
  switch (cls) {
    case ClassTag::FinSet: return "finset";
    case ClassTag::LinOrd: return "linord";
    case ClassTag::CycOrd: return "cycord";
    case ClassTag::Tree: return "tree";
  }
  return "?";
}

std::optional<ClassTag> class_from_name(std::string_view name) {
  if (name == "finset") return ClassTag::FinSet;
  if (name == "linord") return ClassTag::LinOrd;
  if (name == "cycord") return ClassTag::CycOrd;
  if (name == "tree") return ClassTag::Tree;
  return std::nullopt;
}

int size_bound(ClassTag cls) {
  if (const char* e = std::getenv("OLIGO_MAX_SIZE")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  return cls == ClassTag::Tree ? 8 : 10;
}

std::vector<std::uint32_t> restricted_splits(const std::vector<std::uint32_t>& splits,
                                             const std::vector<int>& points) {
  const int k = static_cast<int>(points.size());
  const std::uint32_t full = k >= 32 ? ~0u : ((1u << k) - 1);
  std::set<std::uint32_t> out;
  for (std::uint32_t s : splits) {
    std::uint32_t m = 0;
    for (int i = 0; i < k; ++i)
      if (s >> points[i] & 1u) m |= 1u << i;
    if (m & 1u) m = full & ~m;
    const int c = std::popcount(m);
    if (c >= 2 && k - c >= 2) out.insert(m);
  }
  return {out.begin(), out.end()};
}

namespace {

constexpr int kMaxGluedPoints = 20;

// ---------------------------------------------------------------------------
// Reduced leaf-labelled trees as graphs.

struct TreeGraph {
  std::vector<std::vector<int>> adj;
  std::vector<int> label;  // external point id, or -1 for internal vertices

  int V() const { return static_cast<int>(adj.size()); }
  int add_vertex(int lab) {
    adj.emplace_back();
    label.push_back(lab);
    return V() - 1;
  }
  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
};

// Nontrivial splits of the tree, as bitmasks over the external labels,
// normalized to the side avoiding the smallest present label.
std::vector<std::uint32_t> splits_of(const TreeGraph& g) {
  const int V = g.V();
  if (V == 0) return {};
  std::vector<int> par(V, -1), order;
  order.reserve(V);
  std::vector<int> stack{0};
  par[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : g.adj[v])
      if (w != par[v]) {
        par[w] = v;
        stack.push_back(w);
      }
  }
  std::uint32_t all = 0;
  for (int v = 0; v < V; ++v)
    if (g.label[v] >= 0) all |= 1u << g.label[v];
  const int leaves = std::popcount(all);
  if (leaves == 0) return {};
  const int minlab = std::countr_zero(all);
  std::vector<std::uint32_t> sub(V, 0);
  for (int i = V - 1; i >= 0; --i) {
    const int v = order[i];
    if (g.label[v] >= 0) sub[v] |= 1u << g.label[v];
    if (v != 0) sub[par[v]] |= sub[v];
  }
  std::set<std::uint32_t> out;
  for (int v = 1; v < V; ++v) {
    std::uint32_t m = sub[v];
    if (m >> minlab & 1u) m = all & ~m;
    const int c = std::popcount(m);
    if (c >= 2 && leaves - c >= 2) out.insert(m);
  }
  return {out.begin(), out.end()};
}

// Every tree obtained by adding one new leaf labelled x: subdivide an edge
// and hang x off the new vertex, or attach x to an internal vertex.  Distinct
// positions give distinct trees, and every extension arises exactly once.
std::vector<TreeGraph> leaf_insertions(const TreeGraph& g, int x) {
  std::vector<TreeGraph> res;
  const int V = g.V();
  if (V == 0) {
    TreeGraph h;
    h.add_vertex(x);
    res.push_back(std::move(h));
    return res;
  }
  if (V == 1) {
    TreeGraph h = g;
    const int v = h.add_vertex(x);
    h.add_edge(0, v);
    res.push_back(std::move(h));
    return res;
  }
  for (int u = 0; u < V; ++u)
    for (int w : g.adj[u])
      if (w > u) {
        TreeGraph h = g;
        auto rm = [&h](int a, int b) {
          auto& lst = h.adj[a];
          lst.erase(std::find(lst.begin(), lst.end(), b));
        };
        rm(u, w);
        rm(w, u);
        const int mid = h.add_vertex(-1);
        const int leaf = h.add_vertex(x);
        h.add_edge(u, mid);
        h.add_edge(mid, w);
        h.add_edge(mid, leaf);
        res.push_back(std::move(h));
      }
  for (int v = 0; v < V; ++v)
    if (g.label[v] < 0 && g.adj[v].size() >= 3) {
      TreeGraph h = g;
      const int leaf = h.add_vertex(x);
      h.add_edge(v, leaf);
      res.push_back(std::move(h));
    }
  return res;
}

// Rebuild the unique reduced tree on leaves 0..n-1 realizing the given split
// system, by sequential leaf insertion (each step has a unique valid spot).
TreeGraph graph_from_splits(const std::vector<std::uint32_t>& splits, int n) {
  TreeGraph g;
  std::vector<int> placed;
  for (int x = 0; x < n; ++x) {
    placed.push_back(x);
    if (x == 0) {
      g = TreeGraph{};
      g.add_vertex(0);
      continue;
    }
    const auto target = restricted_splits(splits, placed);
    bool found = false;
    for (auto& h : leaf_insertions(g, x)) {
      if (restricted_splits(splits_of(h), placed) == target) {
        g = std::move(h);
        found = true;
        break;
      }
    }
    if (!found) throw UsageError("split system does not describe a tree");
  }
  return g;
}

// Canonical leaf relabelling of a tree on leaves 0..n-1: root at the center
// (edge midpoint if the center is an edge), order children by subtree shape
// string, and number leaves in traversal order.  The resulting split system
// is an isomorphism invariant.
std::pair<std::vector<std::uint32_t>, std::vector<int>> canonical_tree(const TreeGraph& g,
                                                                       int n) {
  std::vector<int> relab(n);
  if (n <= 3) {
    std::iota(relab.begin(), relab.end(), 0);
    return {{}, relab};
  }
  const int V = g.V();
  // Center by leaf peeling.
  std::vector<int> deg(V);
  for (int v = 0; v < V; ++v) deg[v] = static_cast<int>(g.adj[v].size());
  std::vector<int> layer;
  std::vector<char> removed(V, 0);
  int remaining = V;
  for (int v = 0; v < V; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (int w : g.adj[v])
        if (!removed[w] && --deg[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  std::vector<int> centers;
  for (int v = 0; v < V; ++v)
    if (!removed[v]) centers.push_back(v);

  std::map<std::pair<int, int>, std::string> smemo;
  std::function<std::string(int, int)> shape = [&](int v, int p) -> std::string {
    auto key = std::make_pair(v, p);
    auto it = smemo.find(key);
    if (it != smemo.end()) return it->second;
    std::vector<std::string> cs;
    for (int w : g.adj[v])
      if (w != p) cs.push_back(shape(w, v));
    std::string r;
    if (cs.empty()) {
      r = "L";
    } else {
      std::sort(cs.begin(), cs.end());
      r = "(";
      for (auto& c : cs) r += c;
      r += ")";
    }
    smemo.emplace(key, r);
    return r;
  };
  std::map<std::pair<int, int>, int> mmemo;
  std::function<int(int, int)> minleaf = [&](int v, int p) -> int {
    auto key = std::make_pair(v, p);
    auto it = mmemo.find(key);
    if (it != mmemo.end()) return it->second;
    int m = g.label[v] >= 0 ? g.label[v] : INT_MAX;
    for (int w : g.adj[v])
      if (w != p) m = std::min(m, minleaf(w, v));
    mmemo.emplace(key, m);
    return m;
  };
  int next = 0;
  std::function<void(int, int)> assign = [&](int v, int p) {
    std::vector<std::tuple<std::string, int, int>> cs;
    for (int w : g.adj[v])
      if (w != p) cs.emplace_back(shape(w, v), minleaf(w, v), w);
    if (cs.empty()) {
      relab[g.label[v]] = next++;
      return;
    }
    std::sort(cs.begin(), cs.end());
    for (auto& [s, m, w] : cs) assign(w, v);
  };
  if (centers.size() == 1) {
    assign(centers[0], -1);
  } else {
    const int c1 = centers[0], c2 = centers[1];
    const auto k1 = std::make_pair(shape(c1, c2), minleaf(c1, c2));
    const auto k2 = std::make_pair(shape(c2, c1), minleaf(c2, c1));
    if (k1 <= k2) {
      assign(c1, c2);
      assign(c2, c1);
    } else {
      assign(c2, c1);
      assign(c1, c2);
    }
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t m : splits_of(g)) {
    std::uint32_t nm = 0;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1u) nm |= 1u << relab[i];
    if (nm & 1u) nm = full & ~nm;
    out.push_back(nm);
  }
  std::sort(out.begin(), out.end());
  return {out, relab};
}

bool splits_compatible(std::uint32_t a, std::uint32_t b, int n) {
  const std::uint32_t full = (1u << n) - 1;
  return (a & b) == 0 || (a & ~b & full) == 0 || (~a & b & full) == 0 ||
         ((full & ~a) & (full & ~b)) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Structures and canonical forms.

std::string Structure::enc() const {
  auto join = [](int n, const char* sep) {
    std::string r;
    for (int i = 0; i < n; ++i) {
      if (i) r += sep;
      r += std::to_string(i);
    }
    return r;
  };
  switch (cls) {
    case ClassTag::FinSet: return "{" + join(size, ",") + "}";
    case ClassTag::LinOrd: return join(size, "<");
    case ClassTag::CycOrd:
      if (size < 3) return "{" + join(size, ",") + "}";
      return "(" + join(size, " ") + ")";
    case ClassTag::Tree: break;
  }
  if (size == 0) return "()";
  if (size == 1) return "0";
  TreeGraph g = graph_from_splits(splits, size);
  std::function<std::pair<std::string, int>(int, int)> emit = [&](int v,
                                                                  int p) -> std::pair<std::string, int> {
    std::vector<std::pair<int, std::string>> cs;  // (min leaf, text)
    for (int w : g.adj[v])
      if (w != p) {
        auto [txt, ml] = emit(w, v);
        cs.emplace_back(ml, txt);
      }
    if (cs.empty()) return {std::to_string(g.label[v]), g.label[v]};
    std::sort(cs.begin(), cs.end());
    std::string r = "(";
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) r += ",";
      r += cs[i].second;
    }
    r += ")";
    return {r, cs[0].first};
  };
  // Center rooting, as in canonicalization.
  const int V = g.V();
  std::vector<int> deg(V);
  for (int v = 0; v < V; ++v) deg[v] = static_cast<int>(g.adj[v].size());
  std::vector<char> removed(V, 0);
  std::vector<int> layer;
  int remaining = V;
  for (int v = 0; v < V; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  while (remaining > 2 && !layer.empty()) {
    std::vector<int> nx;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (int w : g.adj[v])
        if (!removed[w] && --deg[w] == 1) nx.push_back(w);
    }
    layer = std::move(nx);
  }
  std::vector<int> centers;
  for (int v = 0; v < V; ++v)
    if (!removed[v]) centers.push_back(v);
  if (centers.size() == 1) return emit(centers[0], -1).first;
  auto a = emit(centers[0], centers[1]);
  auto b = emit(centers[1], centers[0]);
  if (a.second > b.second) std::swap(a, b);
  return "(" + a.first + "," + b.first + ")";
}

Structure make_structure(ClassTag cls, int size) {
  if (size < 0) throw UsageError("negative size");
  if (cls == ClassTag::Tree && size > 3)
    throw UsageError("tree shape is not unique beyond 3 leaves");
  return Structure{cls, size, {}};
}

Structure tree_from_splits(int leaves, std::vector<std::uint32_t> splits) {
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  for (std::size_t i = 0; i < splits.size(); ++i) {
    const int c = std::popcount(splits[i]);
    if ((splits[i] & 1u) || c < 2 || leaves - c < 2 ||
        (splits[i] >> leaves) != 0)
      throw UsageError("malformed split");
    for (std::size_t j = i + 1; j < splits.size(); ++j)
      if (!splits_compatible(splits[i], splits[j], leaves))
        throw UsageError("incompatible splits");
  }
  ConcreteStructure c{ClassTag::Tree, leaves, {}, {}, splits};
  return canonical_form(c).first;
}

ConcreteStructure to_concrete(const Structure& s) {
  ConcreteStructure c;
  c.cls = s.cls;
  c.n = s.size;
  if (s.cls == ClassTag::LinOrd) {
    c.order.resize(s.size);
    std::iota(c.order.begin(), c.order.end(), 0);
  } else if (s.cls == ClassTag::CycOrd && s.size >= 3) {
    c.cyc.resize(s.size);
    std::iota(c.cyc.begin(), c.cyc.end(), 0);
  } else if (s.cls == ClassTag::Tree) {
    c.splits = s.splits;
  }
  return c;
}

ConcreteStructure remap_concrete(const ConcreteStructure& c, const std::vector<int>& relab) {
  ConcreteStructure r;
  r.cls = c.cls;
  r.n = c.n;
  switch (c.cls) {
    case ClassTag::FinSet: break;
    case ClassTag::LinOrd: {
      r.order.resize(c.n);
      for (int p = 0; p < c.n; ++p) r.order[relab[p]] = c.order[p];
      break;
    }
    case ClassTag::CycOrd: {
      if (c.n >= 3) {
        std::vector<int> cy(c.n);
        for (int i = 0; i < c.n; ++i) cy[i] = relab[c.cyc[i]];
        int k0 = 0;
        for (int i = 0; i < c.n; ++i)
          if (cy[i] == 0) k0 = i;
        r.cyc.resize(c.n);
        for (int i = 0; i < c.n; ++i) r.cyc[i] = cy[(k0 + i) % c.n];
      }
      break;
    }
    case ClassTag::Tree: {
      const std::uint32_t full = c.n >= 32 ? ~0u : ((1u << c.n) - 1);
      for (std::uint32_t m : c.splits) {
        std::uint32_t nm = 0;
        for (int p = 0; p < c.n; ++p)
          if (m >> p & 1u) nm |= 1u << relab[p];
        if (nm & 1u) nm = full & ~nm;
        r.splits.push_back(nm);
      }
      std::sort(r.splits.begin(), r.splits.end());
      break;
    }
  }
  return r;
}

ConcreteStructure restrict_concrete(const ConcreteStructure& c,
                                    const std::vector<int>& points) {
  const int k = static_cast<int>(points.size());
  ConcreteStructure r;
  r.cls = c.cls;
  r.n = k;
  switch (c.cls) {
    case ClassTag::FinSet: break;
    case ClassTag::LinOrd: {
      std::vector<std::pair<int, int>> byrank;
      for (int i = 0; i < k; ++i) byrank.emplace_back(c.order[points[i]], i);
      std::sort(byrank.begin(), byrank.end());
      r.order.resize(k);
      for (int rnk = 0; rnk < k; ++rnk) r.order[byrank[rnk].second] = rnk;
      break;
    }
    case ClassTag::CycOrd: {
      if (k >= 3 && c.n >= 3) {
        std::vector<int> pos(c.n, -1);
        for (int i = 0; i < k; ++i) pos[points[i]] = i;
        std::vector<int> cy;
        for (int p : c.cyc)
          if (pos[p] >= 0) cy.push_back(pos[p]);
        int k0 = 0;
        for (int i = 0; i < k; ++i)
          if (cy[i] == 0) k0 = i;
        r.cyc.resize(k);
        for (int i = 0; i < k; ++i) r.cyc[i] = cy[(k0 + i) % k];
      }
      break;
    }
    case ClassTag::Tree:
      r.splits = restricted_splits(c.splits, points);
      break;
  }
  return r;
}

std::pair<Structure, std::vector<int>> canonical_form(const ConcreteStructure& c) {
  Structure s;
  s.cls = c.cls;
  s.size = c.n;
  std::vector<int> relab(c.n);
  switch (c.cls) {
    case ClassTag::FinSet:
      std::iota(relab.begin(), relab.end(), 0);
      break;
    case ClassTag::LinOrd:
      relab = c.order;
      break;
    case ClassTag::CycOrd: {
      if (c.n < 3) {
        std::iota(relab.begin(), relab.end(), 0);
      } else {
        int k0 = 0;
        for (int i = 0; i < c.n; ++i)
          if (c.cyc[i] == 0) k0 = i;
        for (int i = 0; i < c.n; ++i) relab[c.cyc[(k0 + i) % c.n]] = i;
      }
      break;
    }
    case ClassTag::Tree: {
      TreeGraph g = graph_from_splits(c.splits, c.n);
      auto [sp, rl] = canonical_tree(g, c.n);
      s.splits = std::move(sp);
      relab = std::move(rl);
      break;
    }
  }
  return {s, relab};
}

std::vector<Structure> enumerate_structures(ClassTag cls, int size) {
  if (size < 0) throw UsageError("negative size");
  if (size > size_bound(cls))
    throw ResourceError("size " + std::to_string(size) + " exceeds bound " +
                        std::to_string(size_bound(cls)));
  if (cls != ClassTag::Tree || size <= 3) return {make_structure(cls, size)};
  std::vector<Structure> cur = {make_structure(cls, 3)};
  for (int k = 4; k <= size; ++k) {
    std::set<Structure> nx;
    for (const auto& s : cur) {
      TreeGraph g = graph_from_splits(s.splits, k - 1);
      for (auto& h : leaf_insertions(g, k - 1)) {
        ConcreteStructure cc{ClassTag::Tree, k, {}, {}, splits_of(h)};
        nx.insert(canonical_form(cc).first);
      }
    }
    cur.assign(nx.begin(), nx.end());
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Embeddings.

bool is_embedding(const ConcreteStructure& a, const ConcreteStructure& b,
                  const std::vector<int>& map) {
  if (a.cls != b.cls) return false;
  if (static_cast<int>(map.size()) != a.n) return false;
  std::vector<char> used(b.n, 0);
  for (int img : map) {
    if (img < 0 || img >= b.n || used[img]) return false;
    used[img] = 1;
  }
  switch (a.cls) {
    case ClassTag::FinSet: return true;
    case ClassTag::LinOrd: {
      for (int p = 0; p < a.n; ++p)
        for (int q = 0; q < a.n; ++q)
          if ((a.order[p] < a.order[q]) != (b.order[map[p]] < b.order[map[q]]))
            return false;
      return true;
    }
    case ClassTag::CycOrd: {
      if (a.n < 3) return true;
      std::vector<int> pa(a.n), pb(b.n);
      for (int i = 0; i < a.n; ++i) pa[a.cyc[i]] = i;
      for (int i = 0; i < b.n; ++i) pb[b.cyc[i]] = i;
      auto orient = [](int x, int y, int z, int n) {
        return ((y - x + n) % n) < ((z - x + n) % n);
      };
      for (int p = 0; p < a.n; ++p)
        for (int q = p + 1; q < a.n; ++q)
          for (int r = q + 1; r < a.n; ++r)
            if (orient(pa[p], pa[q], pa[r], a.n) !=
                orient(pb[map[p]], pb[map[q]], pb[map[r]], b.n))
              return false;
      return true;
    }
    case ClassTag::Tree: {
      std::vector<int> src(a.n);
      std::iota(src.begin(), src.end(), 0);
      return restricted_splits(b.splits, map) == restricted_splits(a.splits, src);
    }
  }
  return false;
}

std::vector<Embedding> enumerate_embeddings(const Structure& a, const Structure& b) {
  if (a.cls != b.cls) throw UsageError("class mismatch");
  std::vector<Embedding> res;
  if (a.size > b.size) return res;
  const int an = a.size, bn = b.size;
  if (a.cls == ClassTag::LinOrd ||
      (a.cls == ClassTag::CycOrd && an >= 3)) {
    // Choose the image set; LinOrd admits one order-preserving map per set,
    // CycOrd one per rotation.
    std::vector<int> comb(an);
    std::function<void(int, int)> rec = [&](int idx, int from) {
      if (idx == an) {
        if (a.cls == ClassTag::LinOrd) {
          res.push_back(Embedding{comb});
        } else {
          for (int r = 0; r < an; ++r) {
            Embedding e;
            e.map.resize(an);
            for (int i = 0; i < an; ++i) e.map[i] = comb[(r + i) % an];
            res.push_back(std::move(e));
          }
        }
        return;
      }
      for (int v = from; v < bn; ++v) {
        comb[idx] = v;
        rec(idx + 1, v + 1);
      }
    };
    rec(0, 0);
    if (a.cls == ClassTag::CycOrd)
      std::sort(res.begin(), res.end(),
                [](const Embedding& x, const Embedding& y) { return x.map < y.map; });
    return res;
  }
  // FinSet, trivial CycOrd, Tree: all injections, with split pruning for trees.
  std::vector<int> src(an);
  std::iota(src.begin(), src.end(), 0);
  std::vector<int> img;
  std::vector<char> used(bn, 0);
  std::function<void()> rec = [&]() {
    const int d = static_cast<int>(img.size());
    if (a.cls == ClassTag::Tree && d >= 4) {
      std::vector<int> pre(src.begin(), src.begin() + d);
      if (restricted_splits(b.splits, img) != restricted_splits(a.splits, pre)) return;
    }
    if (d == an) {
      res.push_back(Embedding{img});
      return;
    }
    for (int v = 0; v < bn; ++v)
      if (!used[v]) {
        used[v] = 1;
        img.push_back(v);
        rec();
        img.pop_back();
        used[v] = 0;
      }
  };
  rec();
  if (a.cls == ClassTag::Tree) {
    // The prefix test only prunes; confirm full split agreement.
    std::vector<Embedding> ok;
    for (auto& e : res)
      if (is_embedding(to_concrete(a), to_concrete(b), e.map)) ok.push_back(e);
    res = std::move(ok);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Amalgamation.

namespace {

// Linear-order extensions: all total orders on dn points containing the two
// image chains.
std::vector<ConcreteStructure> linord_extensions(const ConcreteStructure& b,
                                                 const ConcreteStructure& ap,
                                                 const std::vector<int>& cover_right,
                                                 int dn) {
  std::set<std::pair<int, int>> edges;
  std::vector<int> ordb(b.n), orda(ap.n);
  for (int p = 0; p < b.n; ++p) ordb[b.order[p]] = p;
  for (int p = 0; p < ap.n; ++p) orda[ap.order[p]] = p;
  for (int r = 0; r + 1 < b.n; ++r) edges.insert({ordb[r], ordb[r + 1]});
  for (int r = 0; r + 1 < ap.n; ++r)
    edges.insert({cover_right[orda[r]], cover_right[orda[r + 1]]});
  std::vector<std::vector<int>> adj(dn);
  std::vector<int> indeg(dn, 0);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    ++indeg[v];
  }
  std::vector<ConcreteStructure> res;
  std::vector<int> pos(dn, -1);
  int placed = 0;
  std::function<void()> rec = [&]() {
    if (placed == dn) {
      ConcreteStructure t;
      t.cls = ClassTag::LinOrd;
      t.n = dn;
      t.order = pos;
      res.push_back(std::move(t));
      return;
    }
    for (int v = 0; v < dn; ++v)
      if (indeg[v] == 0 && pos[v] < 0) {
        pos[v] = placed++;
        for (int w : adj[v]) --indeg[w];
        rec();
        for (int w : adj[v]) ++indeg[w];
        --placed;
        pos[v] = -1;
      }
  };
  rec();
  return res;
}

// Cyclic-order extensions: all cyclic arrangements of dn points containing
// both image cycles, built by gap insertion with incremental triple checks.
std::vector<ConcreteStructure> cycord_extensions(const ConcreteStructure& b,
                                                 const ConcreteStructure& ap,
                                                 const std::vector<int>& cover_right,
                                                 int dn) {
  // Positions within each input cycle, for orientation queries.
  std::vector<int> posb(b.n, -1), posa(ap.n, -1);
  for (std::size_t i = 0; i < b.cyc.size(); ++i) posb[b.cyc[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < ap.cyc.size(); ++i) posa[ap.cyc[i]] = static_cast<int>(i);
  auto orient = [](int x, int y, int z, int n) {
    return ((y - x + n) % n) < ((z - x + n) % n);
  };
  // d-point -> ap-point mapped onto it (or -1).
  std::vector<int> ap_of(dn, -1);
  for (int q = 0; q < ap.n; ++q) ap_of[cover_right[q]] = q;
  std::vector<int> b_of(dn, -1);
  for (int p = 0; p < b.n; ++p) b_of[p] = p;

  std::vector<int> base;  // starting circular sequence
  std::vector<char> inbase(dn, 0);
  if (b.n >= 3) {
    base = b.cyc;
  } else if (ap.n >= 3) {
    for (int i = 0; i < ap.n; ++i) base.push_back(cover_right[ap.cyc[i]]);
  }
  for (int d : base) inbase[d] = 1;
  std::vector<int> rest;
  for (int d = 0; d < dn; ++d)
    if (!inbase[d]) rest.push_back(d);

  std::vector<ConcreteStructure> res;
  std::vector<int> arr = base;
  auto consistent_with = [&](const std::vector<int>& of, const std::vector<int>& pos,
                             int n, int newcomer) {
    // Check all triples (u, v, newcomer) of points of that input structure
    // present in arr.
    if (n < 3) return true;
    const int m = static_cast<int>(arr.size());
    std::vector<int> dpos(dn, -1);
    for (int i = 0; i < m; ++i) dpos[arr[i]] = i;
    std::vector<int> present;
    for (int d : arr)
      if (of[d] >= 0) present.push_back(d);
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        const int u = present[i], v = present[j];
        if (u == newcomer || v == newcomer) continue;
        if (orient(dpos[u], dpos[v], dpos[newcomer], m) !=
            orient(pos[of[u]], pos[of[v]], pos[of[newcomer]], n))
          return false;
      }
    return true;
  };
  auto check_all_present = [&](const std::vector<int>& of, const std::vector<int>& pos,
                               int n) {
    if (n < 3) return true;
    const int m = static_cast<int>(arr.size());
    std::vector<int> dpos(dn, -1);
    for (int i = 0; i < m; ++i) dpos[arr[i]] = i;
    std::vector<int> present;
    for (int d : arr)
      if (of[d] >= 0) present.push_back(d);
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = i + 1; j < present.size(); ++j)
        for (std::size_t k = j + 1; k < present.size(); ++k) {
          const int u = present[i], v = present[j], w = present[k];
          if (orient(dpos[u], dpos[v], dpos[w], m) !=
              orient(pos[of[u]], pos[of[v]], pos[of[w]], n))
            return false;
        }
    return true;
  };
  if (!check_all_present(b_of, posb, b.n) || !check_all_present(ap_of, posa, ap.n))
    return res;

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == rest.size()) {
      ConcreteStructure t;
      t.cls = ClassTag::CycOrd;
      t.n = dn;
      if (dn >= 3) t.cyc = arr;
      res.push_back(std::move(t));
      return;
    }
    const int d = rest[idx];
    if (arr.empty()) {
      arr.push_back(d);
      rec(idx + 1);
      arr.pop_back();
      return;
    }
    const int m = static_cast<int>(arr.size());
    for (int gap = 0; gap < std::max(m, 1); ++gap) {
      arr.insert(arr.begin() + gap + 1, d);
      bool ok = true;
      if (b_of[d] >= 0) ok = consistent_with(b_of, posb, b.n, d);
      if (ok && ap_of[d] >= 0) ok = ok && consistent_with(ap_of, posa, ap.n, d);
      if (ok) rec(idx + 1);
      arr.erase(arr.begin() + gap + 1);
    }
  };
  rec(0);
  return res;
}

// Tree extensions: grow the left tree by inserting the unmatched points of ap
// in every position, pruning by split agreement on the ap side.
std::vector<ConcreteStructure> tree_extensions(const ConcreteStructure& b,
                                               const ConcreteStructure& ap,
                                               const std::vector<int>& cover_right,
                                               int dn) {
  std::vector<int> ap_pts;  // ap-points, ascending; covers aligned below
  std::vector<int> cov_pts;
  std::vector<ConcreteStructure> res;
  auto ap_matches = [&](const TreeGraph& g) {
    return restricted_splits(splits_of(g), cov_pts) ==
           restricted_splits(ap.splits, ap_pts);
  };
  TreeGraph g;
  // Left tree over points 0..b.n-1.
  for (int x = 0; x < b.n; ++x) {
    if (x == 0) {
      g.add_vertex(0);
      continue;
    }
    std::vector<int> placed(x + 1);
    std::iota(placed.begin(), placed.end(), 0);
    const auto target = restricted_splits(b.splits, placed);
    bool found = false;
    for (auto& h : leaf_insertions(g, x))
      if (restricted_splits(splits_of(h), placed) == target) {
        g = std::move(h);
        found = true;
        break;
      }
    if (!found) return res;  // malformed input
  }
  for (int q = 0; q < ap.n; ++q)
    if (cover_right[q] < b.n) {
      ap_pts.push_back(q);
      cov_pts.push_back(cover_right[q]);
    }
  if (b.n > 0 && !ap_matches(g)) return res;  // incompatible matching
  // Points to insert, in ascending total index; each is some ap-point's cover.
  std::vector<int> new_ap(dn, -1);
  for (int q = 0; q < ap.n; ++q)
    if (cover_right[q] >= b.n) new_ap[cover_right[q]] = q;
  std::function<void(int, TreeGraph&)> rec = [&](int d, TreeGraph& cur) {
    if (d == dn) {
      ConcreteStructure t;
      t.cls = ClassTag::Tree;
      t.n = dn;
      t.splits = splits_of(cur);
      res.push_back(std::move(t));
      return;
    }
    ap_pts.push_back(new_ap[d]);
    cov_pts.push_back(d);
    for (auto& h : leaf_insertions(cur, d)) {
      if (ap_matches(h)) rec(d + 1, h);
    }
    ap_pts.pop_back();
    cov_pts.pop_back();
  };
  rec(b.n, g);
  return res;
}

bool is_partial_iso(const ConcreteStructure& b, const std::vector<int>& bi,
                    const ConcreteStructure& ap, const std::vector<int>& aj) {
  const int k = static_cast<int>(bi.size());
  switch (b.cls) {
    case ClassTag::FinSet: return true;
    case ClassTag::LinOrd: {
      for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
          if ((b.order[bi[s]] < b.order[bi[t]]) != (ap.order[aj[s]] < ap.order[aj[t]]))
            return false;
      return true;
    }
    case ClassTag::CycOrd: {
      if (b.n < 3 || ap.n < 3 || k < 3) return true;
      std::vector<int> pb(b.n), pa(ap.n);
      for (int i = 0; i < b.n; ++i) pb[b.cyc[i]] = i;
      for (int i = 0; i < ap.n; ++i) pa[ap.cyc[i]] = i;
      auto orient = [](int x, int y, int z, int n) {
        return ((y - x + n) % n) < ((z - x + n) % n);
      };
      for (int s = 0; s < k; ++s)
        for (int t = s + 1; t < k; ++t)
          for (int u = t + 1; u < k; ++u)
            if (orient(pb[bi[s]], pb[bi[t]], pb[bi[u]], b.n) !=
                orient(pa[aj[s]], pa[aj[t]], pa[aj[u]], ap.n))
              return false;
      return true;
    }
    case ClassTag::Tree:
      return restricted_splits(b.splits, bi) == restricted_splits(ap.splits, aj);
  }
  return false;
}

std::vector<ConcreteAmalgam> amalgamate_impl(const ConcreteStructure& b,
                                             const ConcreteStructure& ap,
                                             const std::vector<int>& i_img,
                                             const std::vector<int>& j_img,
                                             bool only_disjoint) {
  if (b.cls != ap.cls) throw UsageError("class mismatch");
  if (i_img.size() != j_img.size()) throw UsageError("base size mismatch");
  if (!is_partial_iso(b, i_img, ap, j_img))
    throw UsageError("embeddings do not agree on the base");
  if (b.n + ap.n - static_cast<int>(i_img.size()) > kMaxGluedPoints)
    throw ResourceError("glued structure would exceed " +
                        std::to_string(kMaxGluedPoints) + " points");

  std::vector<char> in_ib(b.n, 0), in_ja(ap.n, 0);
  for (int p : i_img) in_ib[p] = 1;
  for (int q : j_img) in_ja[q] = 1;
  std::vector<int> freeb, freea;
  for (int p = 0; p < b.n; ++p)
    if (!in_ib[p]) freeb.push_back(p);
  for (int q = 0; q < ap.n; ++q)
    if (!in_ja[q]) freea.push_back(q);

  std::vector<ConcreteAmalgam> res;
  std::vector<std::pair<int, int>> theta;
  std::vector<char> used_a(ap.n, 0);

  auto emit = [&]() {
    std::vector<int> cover_right(ap.n, -1);
    for (std::size_t k = 0; k < j_img.size(); ++k) cover_right[j_img[k]] = i_img[k];
    for (auto [p, q] : theta) cover_right[q] = p;
    int next = b.n;
    for (int q = 0; q < ap.n; ++q)
      if (cover_right[q] < 0) cover_right[q] = next++;
    const int dn = next;
    std::vector<ConcreteStructure> exts;
    switch (b.cls) {
      case ClassTag::FinSet: {
        ConcreteStructure t;
        t.cls = ClassTag::FinSet;
        t.n = dn;
        exts.push_back(std::move(t));
        break;
      }
      case ClassTag::LinOrd:
        exts = linord_extensions(b, ap, cover_right, dn);
        break;
      case ClassTag::CycOrd:
        exts = cycord_extensions(b, ap, cover_right, dn);
        break;
      case ClassTag::Tree:
        exts = tree_extensions(b, ap, cover_right, dn);
        break;
    }
    std::vector<int> cover_left(b.n);
    std::iota(cover_left.begin(), cover_left.end(), 0);
    for (auto& t : exts) {
      ConcreteAmalgam am;
      am.theta = theta;
      am.total = std::move(t);
      am.cover_left = cover_left;
      am.cover_right = cover_right;
      res.push_back(std::move(am));
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == freeb.size()) {
      emit();
      return;
    }
    rec(idx + 1);  // leave freeb[idx] unmatched
    if (only_disjoint) return;
    for (int q : freea)
      if (!used_a[q]) {
        used_a[q] = 1;
        theta.emplace_back(freeb[idx], q);
        rec(idx + 1);
        theta.pop_back();
        used_a[q] = 0;
      }
  };
  if (only_disjoint) {
    emit();
  } else {
    rec(0);
  }
  return res;
}

}  // namespace

std::vector<ConcreteAmalgam> amalgamate(const ConcreteStructure& b,
                                        const ConcreteStructure& ap,
                                        const std::vector<int>& i_img,
                                        const std::vector<int>& j_img) {
  return amalgamate_impl(b, ap, i_img, j_img, false);
}

std::vector<Amalgam> enumerate_amalgamations(const Structure& a, const Structure& b,
                                             const Embedding& i, const Structure& ap,
                                             const Embedding& j) {
  if (a.cls != b.cls || a.cls != ap.cls) throw UsageError("class mismatch");
  const ConcreteStructure cb = to_concrete(b), ca = to_concrete(ap);
  if (!is_embedding(to_concrete(a), cb, i.map) ||
      !is_embedding(to_concrete(a), ca, j.map))
    throw UsageError("invalid embedding");
  std::vector<Amalgam> out;
  for (const auto& cam : amalgamate(cb, ca, i.map, j.map)) {
    auto [total, relab] = canonical_form(cam.total);
    Amalgam am;
    am.theta = cam.theta;
    am.total = std::move(total);
    am.cover_left.resize(cam.cover_left.size());
    am.cover_right.resize(cam.cover_right.size());
    for (std::size_t k = 0; k < cam.cover_left.size(); ++k)
      am.cover_left[k] = relab[cam.cover_left[k]];
    for (std::size_t k = 0; k < cam.cover_right.size(); ++k)
      am.cover_right[k] = relab[cam.cover_right[k]];
    out.push_back(std::move(am));
  }
  std::sort(out.begin(), out.end(), [](const Amalgam& x, const Amalgam& y) {
    return std::tie(x.theta, x.total, x.cover_left, x.cover_right) <
           std::tie(y.theta, y.total, y.cover_left, y.cover_right);
  });
  return out;
}

long long amalgamation_count(const Structure& a, const Structure& b) {
  if (a.cls != b.cls) throw UsageError("class mismatch");
  return static_cast<long long>(
      amalgamate(to_concrete(a), to_concrete(b), {}, {}).size());
}

bool strong_amalgamation_check(ClassTag cls, int bound) {
  if (bound > size_bound(cls)) throw ResourceError("bound exceeds size limit");
  for (int na = 0; na <= bound; ++na) {
    for (const auto& a : enumerate_structures(cls, na)) {
      const ConcreteStructure ca = to_concrete(a);
      for (int nb = na; nb <= bound; ++nb) {
        for (const auto& b : enumerate_structures(cls, nb)) {
          const auto embs_b = enumerate_embeddings(a, b);
          for (int nc = na; nc <= bound; ++nc) {
            for (const auto& c : enumerate_structures(cls, nc)) {
              const auto embs_c = enumerate_embeddings(a, c);
              for (const auto& i : embs_b)
                for (const auto& j : embs_c) {
                  auto disjoint = amalgamate_impl(to_concrete(b), to_concrete(c),
                                                  i.map, j.map, true);
                  if (disjoint.empty()) return false;
                }
            }
          }
        }
      }
    }
  }
  return true;
}

std::pair<Structure, Embedding> tree_double(const Structure& a) {
  if (a.cls != ClassTag::Tree) throw UsageError("tree_double requires a tree");
  const int n = a.size;
  if (n < 1) throw UsageError("tree_double requires at least one leaf");
  TreeGraph g;
  if (n == 1) {
    g.add_vertex(0);
    const int v = g.add_vertex(1);
    g.add_edge(0, v);
  } else {
    g = graph_from_splits(a.splits, n);
    const int V = g.V();
    for (int v = 0; v < V; ++v)
      if (g.label[v] >= 0) {
        const int p = g.label[v];
        g.label[v] = -1;
        const int u1 = g.add_vertex(p);
        const int u2 = g.add_vertex(n + p);
        g.add_edge(v, u1);
        g.add_edge(v, u2);
      }
  }
  ConcreteStructure c{ClassTag::Tree, 2 * n, {}, {}, splits_of(g)};
  auto [s, relab] = canonical_form(c);
  Embedding e;
  e.map.resize(n);
  for (int p = 0; p < n; ++p) e.map[p] = relab[p];
  return {s, e};
}

namespace {

// Automorphisms of a tree structure that restrict to the identity on `fixed`,
// by backtracking with split-prefix pruning.  Stops early when `first_nonid`
// and a non-identity witness is found.
void tree_autos_fixing(const Structure& s, const std::vector<char>& fixed,
                       bool first_nonid, std::vector<std::vector<int>>& out) {
  const int n = s.size;
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  std::vector<int> srcs, imgs;
  std::function<bool(int)> rec = [&](int d) -> bool {
    if (!srcs.empty() &&
        restricted_splits(s.splits, srcs) != restricted_splits(s.splits, imgs))
      return false;
    if (d == n) {
      bool isid = true;
      for (int p = 0; p < n; ++p)
        if (perm[p] != p) isid = false;
      if (!(first_nonid && isid)) out.push_back(perm);
      return first_nonid && !isid;
    }
    if (fixed[d]) {
      if (used[d]) return false;
      perm[d] = d;
      used[d] = 1;
      srcs.push_back(d);
      imgs.push_back(d);
      const bool stop = rec(d + 1);
      srcs.pop_back();
      imgs.pop_back();
      used[d] = 0;
      perm[d] = -1;
      return stop;
    }
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        perm[d] = v;
        used[v] = 1;
        srcs.push_back(d);
        imgs.push_back(v);
        const bool stop = rec(d + 1);
        srcs.pop_back();
        imgs.pop_back();
        used[v] = 0;
        perm[d] = -1;
        if (stop) return true;
      }
    return false;
  };
  rec(0);
}

}  // namespace

std::vector<std::vector<int>> structure_automorphisms(const Structure& s) {
  const int n = s.size;
  std::vector<std::vector<int>> out;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  switch (s.cls) {
    case ClassTag::FinSet:
      break;
    case ClassTag::LinOrd:
      out.push_back(id);
      return out;
    case ClassTag::CycOrd:
      if (n >= 3) {
        for (int r = 0; r < n; ++r) {
          std::vector<int> p(n);
          for (int i = 0; i < n; ++i) p[i] = (i + r) % n;
          out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end());
        return out;
      }
      break;
    case ClassTag::Tree: {
      std::vector<char> fixed(n, 0);
      tree_autos_fixing(s, fixed, false, out);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  // Symmetric group on n points.
  if (n > 8) throw ResourceError("too many automorphisms to materialize");
  std::vector<int> perm = id;
  std::sort(perm.begin(), perm.end());
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool rigidity_check(const Structure& a, const Structure& b, const Embedding& e) {
  if (a.cls != b.cls) throw UsageError("class mismatch");
  if (!is_embedding(to_concrete(a), to_concrete(b), e.map))
    throw UsageError("invalid embedding");
  const int n = b.size;
  std::vector<char> in_img(n, 0);
  for (int p : e.map) in_img[p] = 1;
  int img_count = 0;
  for (int p = 0; p < n; ++p) img_count += in_img[p];
  switch (b.cls) {
    case ClassTag::FinSet:
      // Any permutation of the image fixing the rest is an automorphism.
      return img_count <= 1;
    case ClassTag::LinOrd:
      return true;
    case ClassTag::CycOrd:
      if (n < 3) return img_count <= 1;
      // Non-identity rotations are fixed-point-free.
      return img_count < n;
    case ClassTag::Tree: {
      std::vector<char> fixed(n, 0);
      for (int p = 0; p < n; ++p) fixed[p] = !in_img[p];
      std::vector<std::vector<int>> witness;
      tree_autos_fixing(b, fixed, true, witness);
      return witness.empty();
    }
  }
  return true;
}

}  // namespace oligo
