#include "oligocat/cantor.hpp"

#include "oligocat/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace oligo {
namespace {

void check_binary(const std::string& w) {
  for (char c : w)
    if (c != '0' && c != '1') throw UsageError("prefix must be a binary word");
}

// canonical form of a union of cylinders: {} is empty, {""} is the full
// space; otherwise no word is an ancestor of another and no sibling pair
// is left unmerged
std::vector<std::string> canon_words(std::vector<std::string> ws) {
  if (ws.empty()) return {};
  for (const std::string& w : ws)
    if (w.empty()) return {""};
  std::vector<std::string> zero, one;
  for (const std::string& w : ws)
    (w[0] == '0' ? zero : one).push_back(w.substr(1));
  const std::vector<std::string> l = canon_words(std::move(zero));
  const std::vector<std::string> r = canon_words(std::move(one));
  if (l.size() == 1 && l[0].empty() && r.size() == 1 && r[0].empty()) return {""};
  std::vector<std::string> out;
  out.reserve(l.size() + r.size());
  for (const std::string& w : l) out.push_back("0" + w);
  for (const std::string& w : r) out.push_back("1" + w);
  return out;
}

std::vector<std::string> inter_words(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1 && a[0].empty()) return b;
  if (b.size() == 1 && b[0].empty()) return a;
  auto split = [](const std::vector<std::string>& ws, char c) {
    std::vector<std::string> out;
    for (const std::string& w : ws)
      if (w[0] == c) out.push_back(w.substr(1));
    return out;
  };
  const std::vector<std::string> l = inter_words(split(a, '0'), split(b, '0'));
  const std::vector<std::string> r = inter_words(split(a, '1'), split(b, '1'));
  if (l.size() == 1 && l[0].empty() && r.size() == 1 && r[0].empty()) return {""};
  std::vector<std::string> out;
  for (const std::string& w : l) out.push_back("0" + w);
  for (const std::string& w : r) out.push_back("1" + w);
  return out;
}

bool is_prefix(const std::string& p, const std::string& w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

bool comparable(const std::string& a, const std::string& b) {
  return is_prefix(a, b) || is_prefix(b, a);
}

// a complete antichain: pairwise incomparable prefixes covering the space
void check_complete_antichain(std::vector<std::string> ws, const char* what) {
  for (const std::string& w : ws) check_binary(w);
  std::sort(ws.begin(), ws.end());
  for (std::size_t i = 1; i < ws.size(); ++i)
    if (is_prefix(ws[i - 1], ws[i]))
      throw UsageError(std::string(what) + " prefixes overlap");
  const std::vector<std::string> c = canon_words(ws);
  if (!(c.size() == 1 && c[0].empty()))
    throw UsageError(std::string(what) + " prefixes do not cover the space");
}

mpz_class binom(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// the n-by-m grid count of ample subsets, optionally of one cardinality
// (card < 0 means all), by inclusion-exclusion over missed rows/columns
mpz_class ample_ie(int r, int n, int card) {
  mpz_class total = 0;
  for (int i = 0; i <= r; ++i) {
    for (int j = 0; j <= n; ++j) {
      const int cells = (r - i) * (n - j);
      mpz_class term;
      if (card < 0) {
        term = mpz_class(1) << cells;
      } else {
        if (card > cells) continue;
        term = binom(cells, card);
      }
      term *= binom(r, i) * binom(n, j);
      if ((i + j) % 2 == 0)
        total += term;
      else
        total -= term;
    }
  }
  return total;
}

// [base] split into k comb pieces: base0, base10, ..., base1^{k-2}0, base1^{k-1}
std::vector<std::string> comb_pieces(const std::string& base, int k) {
  std::vector<std::string> out;
  std::string ones;
  for (int i = 0; i < k - 1; ++i) {
    out.push_back(base + ones + "0");
    ones += "1";
  }
  out.push_back(base + ones);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CylinderSet

CylinderSet CylinderSet::empty_set() { return CylinderSet{}; }

CylinderSet CylinderSet::full_space() {
  CylinderSet s;
  s.pre_ = {""};
  return s;
}

CylinderSet CylinderSet::cylinder(const std::string& prefix) {
  check_binary(prefix);
  CylinderSet s;
  s.pre_ = {prefix};
  return s;
}

CylinderSet CylinderSet::from_prefixes(std::vector<std::string> prefixes) {
  for (const std::string& w : prefixes) check_binary(w);
  CylinderSet s;
  s.pre_ = canon_words(std::move(prefixes));
  return s;
}

bool CylinderSet::is_full() const { return pre_.size() == 1 && pre_[0].empty(); }

CylinderSet CylinderSet::complement() const {
  // recursive complement of a canonical set
  std::function<std::vector<std::string>(const std::vector<std::string>&)> comp =
      [&](const std::vector<std::string>& ws) -> std::vector<std::string> {
    if (ws.empty()) return {""};
    if (ws.size() == 1 && ws[0].empty()) return {};
    std::vector<std::string> zero, one;
    for (const std::string& w : ws)
      (w[0] == '0' ? zero : one).push_back(w.substr(1));
    std::vector<std::string> out;
    for (const std::string& w : comp(zero)) out.push_back("0" + w);
    for (const std::string& w : comp(one)) out.push_back("1" + w);
    return out;
  };
  CylinderSet s;
  s.pre_ = comp(pre_);
  return s;
}

bool CylinderSet::contains_cylinder(const std::string& word) const {
  check_binary(word);
  for (const std::string& p : pre_)
    if (is_prefix(p, word)) return true;
  return false;
}

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b) {
  std::vector<std::string> ws = a.prefixes();
  ws.insert(ws.end(), b.prefixes().begin(), b.prefixes().end());
  return CylinderSet::from_prefixes(std::move(ws));
}

CylinderSet set_intersection(const CylinderSet& a, const CylinderSet& b) {
  return CylinderSet::from_prefixes(inter_words(a.prefixes(), b.prefixes()));
}

// ---------------------------------------------------------------------------
// CylinderHomeo

CylinderHomeo make_homeo(std::vector<std::pair<std::string, std::string>> rules) {
  if (rules.empty()) throw UsageError("a homeomorphism needs at least one rule");
  std::vector<std::string> srcs, dsts;
  for (const auto& [s, d] : rules) {
    srcs.push_back(s);
    dsts.push_back(d);
  }
  check_complete_antichain(srcs, "source");
  check_complete_antichain(dsts, "target");
  std::sort(rules.begin(), rules.end());
  return CylinderHomeo{std::move(rules)};
}

CylinderHomeo prefix_swap(const std::string& a, const std::string& b) {
  if (comparable(a, b)) throw UsageError("swap cylinders must be disjoint");
  // exchange [a] and [b]; fix the complement, written canonically
  std::vector<std::pair<std::string, std::string>> rules = {{a, b}, {b, a}};
  const CylinderSet rest =
      set_union(CylinderSet::cylinder(a), CylinderSet::cylinder(b)).complement();
  for (const std::string& w : rest.prefixes()) rules.emplace_back(w, w);
  return make_homeo(std::move(rules));
}

CylinderHomeo inverse_homeo(const CylinderHomeo& g) {
  std::vector<std::pair<std::string, std::string>> rules;
  for (const auto& [s, d] : g.rules) rules.emplace_back(d, s);
  return make_homeo(std::move(rules));
}

bool is_identity(const CylinderHomeo& g) {
  for (const auto& [s, d] : g.rules)
    if (s != d) return false;
  return true;
}

CylinderSet apply_homeo(const CylinderHomeo& g, const CylinderSet& s) {
  std::vector<std::string> out;
  for (const std::string& w : s.prefixes()) {
    bool inside = false;
    for (const auto& [src, dst] : g.rules) {
      if (is_prefix(src, w)) {
        out.push_back(dst + w.substr(src.size()));
        inside = true;
        break;  // sources are an antichain: at most one match
      }
    }
    if (!inside)
      for (const auto& [src, dst] : g.rules)
        if (is_prefix(w, src)) out.push_back(dst);  // [src] inside [w]
  }
  return CylinderSet::from_prefixes(std::move(out));
}

// ---------------------------------------------------------------------------
// Counting

long long ample_count(int r, int n) {
  if (r < 1 || n < 1) throw UsageError("ample counts need r, n >= 1");
  if (static_cast<long long>(r) * n > 40)
    throw ResourceError("grid larger than 40 cells");
  const mpz_class total = ample_ie(r, n, -1);
  return static_cast<long long>(total.get_si());
}

std::map<int, long long> product_decompose_cantor(int n, int m) {
  if (n < 1 || m < 1) throw UsageError("partition objects need n, m >= 1");
  if (n * m > 24) throw ResourceError("grid larger than 24 cells");
  std::map<int, long long> mult;
  for (int r = 1; r <= n * m; ++r) {
    const mpz_class c = ample_ie(n, m, r);
    if (c != 0) mult[r] = static_cast<long long>(c.get_si());
  }
  return mult;
}

int pair_level(const std::vector<CylinderSet>& a, const std::vector<CylinderSet>& b) {
  auto check_partition = [](const std::vector<CylinderSet>& parts, const char* which) {
    if (parts.empty()) throw UsageError(std::string(which) + ": empty partition");
    CylinderSet acc = CylinderSet::empty_set();
    for (const CylinderSet& p : parts) {
      if (p.is_empty()) throw UsageError(std::string(which) + ": empty part");
      if (!set_intersection(acc, p).is_empty())
        throw UsageError(std::string(which) + ": parts overlap");
      acc = set_union(acc, p);
    }
    if (!acc.is_full())
      throw UsageError(std::string(which) + ": parts do not cover the space");
  };
  check_partition(a, "first argument");
  check_partition(b, "second argument");
  int level = 0;
  for (const CylinderSet& ai : a)
    for (const CylinderSet& bj : b)
      if (!set_intersection(ai, bj).is_empty()) ++level;
  return level;
}

// ---------------------------------------------------------------------------
// The smallness witness

WitnessResult smallness_witness(const CylinderHomeo& g0, int n) {
  if (n < 1) throw UsageError("witness needs n >= 1");
  const CylinderHomeo g = make_homeo(g0.rules);
  if (is_identity(g)) throw UsageError("the identity moves no clopen set");

  // find a cylinder [u] with g[u] = [v] disjoint from [u]: refine until the
  // word sits inside one source part and its substituted image clears it
  std::string u, v;
  std::deque<std::string> bfs{""};
  while (!bfs.empty()) {
    const std::string w = bfs.front();
    bfs.pop_front();
    const std::pair<std::string, std::string>* rule = nullptr;
    for (const auto& rl : g.rules)
      if (is_prefix(rl.first, w)) rule = &rl;
    if (rule != nullptr) {
      const std::string img = rule->second + w.substr(rule->first.size());
      if (img == w) continue;  // g fixes [w] pointwise: nothing below
      if (!comparable(w, img)) {
        u = w;
        v = img;
        break;
      }
    }
    bfs.push_back(w + "0");
    bfs.push_back(w + "1");
  }

  // combs: U = A_1 u ... u A_n, and each g A_j split into n pieces B_{i,j};
  // B_i = u_j B_{i,j} meets every g A_j
  const std::vector<std::string> apart = comb_pieces(u, n);
  std::vector<std::vector<std::string>> bpart(n);  // bpart[i]: pieces of B_i
  for (int j = 0; j < n; ++j) {
    // g[apart[j]] is the single cylinder with u replaced by v
    const std::string gaj = v + apart[j].substr(u.size());
    const std::vector<std::string> pieces = comb_pieces(gaj, n);
    for (int i = 0; i < n; ++i) bpart[i].push_back(pieces[i]);
  }

  WitnessResult res;
  res.base = CylinderSet::cylinder(u);
  const CylinderSet uv =
      set_union(res.base, CylinderSet::cylinder(v));
  for (int i = 0; i < n; ++i) {
    CylinderSet ci = set_union(CylinderSet::cylinder(apart[i]),
                               CylinderSet::from_prefixes(bpart[i]));
    if (i == 0) ci = set_union(ci, uv.complement());
    res.partition.push_back(std::move(ci));
  }
  std::vector<CylinderSet> gc;
  for (const CylinderSet& ci : res.partition) gc.push_back(apply_homeo(g, ci));
  res.level = pair_level(res.partition, gc);
  return res;
}

int cantor_separation(int r, const std::vector<int>& ss) {
  if (r < 1) throw UsageError("separation needs r >= 1");
  for (int s : ss)
    if (s < 1 || s >= r) throw UsageError("each lower level must satisfy 1 <= s < r");
  for (int n = 1;; ++n) {
    long long rhs = 0;
    for (int s : ss) rhs += ample_count(s, n);
    if (ample_count(r, n) > rhs) return n;
  }
}

}  // namespace oligo
