#include "oligocat/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "oligocat/cantor.hpp"
#include "oligocat/conjfun.hpp"
#include "oligocat/errors.hpp"
#include "oligocat/finctr.hpp"
#include "oligocat/fraisse.hpp"
#include "oligocat/glfq.hpp"
#include "oligocat/gset.hpp"
#include "oligocat/measures.hpp"
#include "oligocat/permcat.hpp"
#include "oligocat/scalars.hpp"

namespace oligo {
namespace {

using njson = nlohmann::ordered_json;

// ---------------------------------------------------------------- requests

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string Request::canonical() const { return path + "\n" + params.dump(); }

std::string Request::key() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

namespace {

// ------------------------------------------------------------------- cache

std::string cache_dir() {
  if (const char* d = std::getenv("OLIGO_CACHE_DIR")) return d;
  return ".oligocache";
}

std::string module_of(const std::string& path) {
  return path.substr(0, path.find('.'));
}

std::optional<njson> cache_lookup(const Request& req) {
  const std::filesystem::path file =
      std::filesystem::path(cache_dir()) / (module_of(req.path) + ".jsonl");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  const std::string key = req.key();
  std::optional<njson> found;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    njson rec = njson::parse(line, nullptr, false);
    if (rec.is_discarded()) continue;
    if (rec.value("key", "") == key && rec.value("version", "") == kCliVersion)
      found = rec["result"];
  }
  return found;
}

void cache_store(const Request& req, const njson& result) {
  const std::filesystem::path dir = cache_dir();
  std::filesystem::create_directories(dir);
  njson rec;
  rec["key"] = req.key();
  rec["version"] = kCliVersion;
  rec["time"] = std::to_string(static_cast<long long>(std::time(nullptr)));
  rec["result"] = result;
  std::ofstream out(dir / (module_of(req.path) + ".jsonl"), std::ios::app);
  out << rec.dump() << "\n";
}

// --------------------------------------------------------- plain rendering

bool uniform_object_array(const njson& a) {
  if (!a.is_array() || a.empty() || !a[0].is_object()) return false;
  std::vector<std::string> keys;
  for (const auto& [k, v] : a[0].items()) keys.push_back(k);
  for (const auto& el : a) {
    if (!el.is_object()) return false;
    std::vector<std::string> ks;
    for (const auto& [k, v] : el.items()) ks.push_back(k);
    if (ks != keys) return false;
  }
  return true;
}

std::string cell_text(const njson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& el : v) {
      if (!s.empty()) s += ", ";
      s += cell_text(el);
    }
    return s;
  }
  if (v.is_object()) {
    std::string s;
    for (const auto& [k, val] : v.items()) {
      if (!s.empty()) s += " ";
      s += k + "=" + cell_text(val);
    }
    return s;
  }
  return v.dump();
}

void render_table(const njson& rows, std::ostream& out, int indent) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
  std::vector<std::vector<std::string>> grid;
  grid.push_back(keys);
  for (const auto& row : rows) {
    std::vector<std::string> r;
    for (const auto& k : keys) r.push_back(cell_text(row[k]));
    grid.push_back(std::move(r));
  }
  std::vector<size_t> width(keys.size(), 0);
  for (const auto& r : grid)
    for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  const std::string pad(indent, ' ');
  for (size_t i = 0; i < grid.size(); ++i) {
    out << pad;
    for (size_t c = 0; c < grid[i].size(); ++c) {
      out << grid[i][c] << std::string(width[c] - grid[i][c].size(), ' ');
      if (c + 1 < grid[i].size()) out << "  ";
    }
    out << "\n";
    if (i == 0) {
      out << pad;
      for (size_t c = 0; c < width.size(); ++c) {
        out << std::string(width[c], '-');
        if (c + 1 < width.size()) out << "  ";
      }
      out << "\n";
    }
  }
}

void render_grid(const njson& rows, std::ostream& out, int indent) {
  std::vector<std::vector<std::string>> grid;
  size_t cols = 0;
  for (const auto& row : rows) {
    std::vector<std::string> r;
    for (const auto& el : row) r.push_back(cell_text(el));
    cols = std::max(cols, r.size());
    grid.push_back(std::move(r));
  }
  std::vector<size_t> width(cols, 0);
  for (const auto& r : grid)
    for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  const std::string pad(indent, ' ');
  for (const auto& r : grid) {
    out << pad;
    for (size_t c = 0; c < r.size(); ++c) {
      out << std::string(width[c] - r[c].size(), ' ') << r[c];
      if (c + 1 < r.size()) out << "  ";
    }
    out << "\n";
  }
}

void render_plain(const njson& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << pad << k << ":\n";
      render_plain(v, out, indent + 2);
    } else if (v.is_array()) {
      if (v.empty()) {
        out << pad << k << ": (none)\n";
      } else if (uniform_object_array(v)) {
        out << pad << k << ":\n";
        render_table(v, out, indent + 2);
      } else if (v[0].is_array()) {
        out << pad << k << ":\n";
        render_grid(v, out, indent + 2);
      } else {
        out << pad << k << ": " << cell_text(v) << "\n";
      }
    } else {
      out << pad << k << ": " << cell_text(v) << "\n";
    }
  }
}

// -------------------------------------------------------- shared utilities

std::string bstr(bool b) { return b ? "true" : "false"; }

ClassTag parse_class(const std::string& name) {
  if (auto c = class_from_name(name)) return *c;
  throw UsageError("unknown class: " + name);
}

njson value_rows(const MeasureSolution& sol) {
  njson rows = njson::array();
  for (const auto& [type, value] : sol.values) {
    njson row;
    row["type"] = fiber_label_str(type);
    row["value"] = value.str();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<Structure, RatFunc>> default_normalization(ClassTag cls) {
  if (cls == ClassTag::FinSet)
    return {{make_structure(ClassTag::FinSet, 1), RatFunc::t()}};
  return {};
}

SolveResult solve_for(ClassTag cls, int depth) {
  return solve_measures(cls, depth, default_normalization(cls));
}

// The solution used by category-level ops: an explicit index, or for LinOrd
// the first regular solution when no index is given.
MeasureSolution pick_measure(ClassTag cls, int depth, int id, std::string* how) {
  const SolveResult res = solve_for(cls, depth);
  if (res.solutions.empty()) throw UsageError("class admits no measure here");
  if (id >= 0) {
    if (id >= static_cast<int>(res.solutions.size()))
      throw UsageError("measure id out of range");
    if (how) *how = "id " + std::to_string(id);
    return res.solutions[id];
  }
  if (cls == ClassTag::LinOrd) {
    for (size_t i = 0; i < res.solutions.size(); ++i)
      if (regularity_check(res.solutions[i], std::min(depth, 4)).regular) {
        if (how) *how = "auto-regular id " + std::to_string(i);
        return res.solutions[i];
      }
  }
  if (how) *how = "id 0";
  return res.solutions[0];
}

FinitaryPerm perm_by_type(ClassTag cls, const std::string& type) {
  std::vector<int> lens;
  std::stringstream ss(type);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    try {
      lens.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad cycle type: " + type);
    }
  }
  if (lens.empty()) throw UsageError("bad cycle type: " + type);
  std::sort(lens.rbegin(), lens.rend());
  int rank = 0;
  for (int l : lens) {
    if (l < 2) throw UsageError("cycle lengths must be >= 2");
    rank += l;
  }
  for (const FinitaryPerm& g : finitary_classes(cls, rank))
    if (g.rank() == rank && cycle_type(g) == lens) return g;
  throw UsageError("no finitary class of cycle type " + type + " in " +
                   class_name(cls));
}

ConjugacySetSpec spec_from_types(ClassTag cls, const std::vector<std::string>& types,
                                 bool closure) {
  std::vector<FinitaryPerm> reps;
  for (const auto& t : types) reps.push_back(perm_by_type(cls, t));
  return make_spec(cls, std::move(reps), closure);
}

Mat parse_matrix(const std::string& text) {
  Mat m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        r.push_back(std::stoi(cell));
      } catch (const std::exception&) {
        throw UsageError("bad matrix entry: " + cell);
      }
    }
    m.push_back(std::move(r));
  }
  if (m.empty()) throw UsageError("empty matrix");
  return m;
}

std::string matrix_str(const Mat& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(m[i][j]);
    }
  }
  return s;
}

GroupPtr named_group(const std::string& name) {
  return std::make_shared<FiniteGroup>(FiniteGroup::named(name));
}

std::vector<int> elements_of_order(const FiniteGroup& g, int k) {
  if (k < 1) throw UsageError("element order must be >= 1");
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    int o = 1, y = x;
    while (y != g.identity()) {
      y = g.mul(y, x);
      ++o;
    }
    if (o == k) out.push_back(x);
  }
  if (out.empty())
    throw UsageError("no elements of order " + std::to_string(k));
  return out;
}

YDData module_for(GroupPtr g, const std::string& spec) {
  if (spec == "trivial") return yd_trivial(g);
  if (spec == "adjoint") return yd_adjoint(g);
  if (spec.rfind("order:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad module spec: " + spec);
    }
    return yd_class(g, elements_of_order(*g, k));
  }
  throw UsageError("unknown module spec: " + spec +
                   " (use trivial, adjoint, or order:<k>)");
}

FinGSet set_for(GroupPtr g, const std::string& spec) {
  if (spec == "regular") return regular_gset(g);
  if (spec == "point") return point_gset(g);
  if (spec == "conjugation") return conjugation_gset(g);
  throw UsageError("unknown set spec: " + spec +
                   " (use regular, point, or conjugation)");
}

// ----------------------------------------------------------- op executors

njson op_orbits(const std::string& cls_name, int n, int m) {
  const ClassTag cls = parse_class(cls_name);
  GSetSum x, y;
  x.add(make_structure(cls, n));
  y.add(make_structure(cls, m));
  njson r;
  r["class"] = class_name(cls);
  r["n"] = std::to_string(n);
  r["m"] = std::to_string(m);
  r["orbits"] = std::to_string(orbit_count(x, y));
  return r;
}

njson op_gset_product(const std::string& cls_name, int n, int m) {
  const ClassTag cls = parse_class(cls_name);
  const GSetSum dec =
      product_decompose(make_structure(cls, n), make_structure(cls, m));
  njson r;
  r["class"] = class_name(cls);
  r["n"] = std::to_string(n);
  r["m"] = std::to_string(m);
  njson terms = njson::array();
  for (const auto& [shape, mult] : dec.terms) {
    njson row;
    row["shape"] = shape.enc();
    row["size"] = std::to_string(shape.size);
    row["mult"] = std::to_string(mult);
    terms.push_back(std::move(row));
  }
  r["terms"] = std::move(terms);
  r["orbits"] = std::to_string(dec.total_orbits());
  return r;
}

njson op_gset_level(const std::string& cls_name, int bound) {
  const LevelReport rep = check_level_additivity(parse_class(cls_name), bound);
  njson r;
  r["class"] = cls_name;
  r["bound"] = std::to_string(bound);
  r["pass"] = bstr(rep.pass);
  r["detail"] = rep.detail;
  return r;
}

njson op_fraisse_enumerate(const std::string& cls_name, int size) {
  const ClassTag cls = parse_class(cls_name);
  const auto list = enumerate_structures(cls, size);
  njson r;
  r["class"] = class_name(cls);
  r["size"] = std::to_string(size);
  r["count"] = std::to_string(list.size());
  njson encs = njson::array();
  for (const auto& s : list) encs.push_back(s.enc());
  r["structures"] = std::move(encs);
  return r;
}

njson op_fraisse_amalgams(const std::string& cls_name, int a, int b) {
  const ClassTag cls = parse_class(cls_name);
  njson r;
  r["class"] = class_name(cls);
  r["a"] = std::to_string(a);
  r["b"] = std::to_string(b);
  r["amalgamations"] = std::to_string(
      amalgamation_count(make_structure(cls, a), make_structure(cls, b)));
  return r;
}

njson op_fraisse_strong(const std::string& cls_name, int bound) {
  const ClassTag cls = parse_class(cls_name);
  const bool ok = strong_amalgamation_check(cls, bound);
  njson r;
  r["class"] = class_name(cls);
  r["bound"] = std::to_string(bound);
  r["pass"] = bstr(ok);
  return r;
}

njson op_fraisse_rigidity(int leaves) {
  njson rows = njson::array();
  bool all = true;
  for (int k = 2; k <= leaves; ++k)
    for (const Structure& t : enumerate_structures(ClassTag::Tree, k)) {
      const auto [dbl, emb] = tree_double(t);
      const bool ok = rigidity_check(t, dbl, emb);
      all = all && ok;
      njson row;
      row["tree"] = t.enc();
      row["double"] = dbl.enc();
      row["rigid"] = bstr(ok);
      rows.push_back(std::move(row));
    }
  njson r;
  r["leaves"] = std::to_string(leaves);
  r["pass"] = bstr(all);
  r["rows"] = std::move(rows);
  return r;
}

njson op_measure_solve(const std::string& cls_name, int depth) {
  const ClassTag cls = parse_class(cls_name);
  const SolveResult res = solve_for(cls, depth);
  njson r;
  r["class"] = class_name(cls);
  r["depth"] = std::to_string(depth);
  if (cls == ClassTag::FinSet) r["normalization"] = "mu(point set) = t";
  r["solutions"] = std::to_string(res.solutions.size());
  if (res.underdetermined) {
    r["underdetermined"] = "true";
    r["detail"] = res.detail;
  }
  njson list = njson::array();
  for (size_t i = 0; i < res.solutions.size(); ++i) {
    njson sol;
    sol["id"] = std::to_string(i);
    sol["values"] = value_rows(res.solutions[i]);
    list.push_back(std::move(sol));
  }
  r["list"] = std::move(list);
  return r;
}

njson op_measure_eval(const std::string& cls_name, int depth, int id, int size) {
  const ClassTag cls = parse_class(cls_name);
  std::string how;
  const MeasureSolution sol = pick_measure(cls, depth, id, &how);
  njson r;
  r["class"] = class_name(cls);
  r["measure"] = how;
  r["shape"] = make_structure(cls, size).enc();
  r["value"] = eval_measure(sol, make_structure(cls, size)).str();
  return r;
}

njson op_measure_regular(const std::string& cls_name, int depth, int bound) {
  const ClassTag cls = parse_class(cls_name);
  const SolveResult res = solve_for(cls, depth);
  njson rows = njson::array();
  for (size_t i = 0; i < res.solutions.size(); ++i) {
    const RegularityReport rep = regularity_check(res.solutions[i], bound);
    njson row;
    row["id"] = std::to_string(i);
    row["regular"] = bstr(rep.regular);
    njson vanish = njson::array();
    for (const auto& s : rep.vanishing) vanish.push_back(s.enc());
    row["vanishing"] = std::move(vanish);
    rows.push_back(std::move(row));
  }
  njson r;
  r["class"] = class_name(cls);
  r["depth"] = std::to_string(depth);
  r["bound"] = std::to_string(bound);
  r["rows"] = std::move(rows);
  return r;
}

njson op_measure_verify(const std::string& cls_name, int depth, int id, int check) {
  const ClassTag cls = parse_class(cls_name);
  std::string how;
  const MeasureSolution sol = pick_measure(cls, depth, id, &how);
  const VerifyReport rep = verify_measure(sol, check);
  njson r;
  r["class"] = class_name(cls);
  r["measure"] = how;
  r["check_depth"] = std::to_string(check);
  r["pass"] = bstr(rep.pass);
  r["summary"] = rep.summary;
  r["failures"] = rep.failures;
  return r;
}

njson op_permcat_dim(const std::string& cls_name, int depth, int id, int size) {
  const ClassTag cls = parse_class(cls_name);
  std::string how;
  const MeasureSolution sol = pick_measure(cls, depth, id, &how);
  const Structure shape = make_structure(cls, size);
  const RatFunc dim = trace_dim(perm_object(shape), sol);
  njson r;
  r["class"] = class_name(cls);
  r["measure"] = how;
  r["shape"] = shape.enc();
  r["dim"] = dim.str();
  r["equals_measure"] = bstr(dim == eval_measure(sol, shape));
  return r;
}

njson op_permcat_frobenius(const std::string& cls_name, int depth, int id,
                           int level) {
  const ClassTag cls = parse_class(cls_name);
  std::string how;
  const MeasureSolution sol = pick_measure(cls, depth, id, &how);
  njson rows = njson::array();
  bool all = true;
  for (int n = 1; n <= level; ++n) {
    const Structure shape = make_structure(cls, n);
    const FrobeniusReport rep = frobenius_check(perm_object(shape), sol);
    all = all && rep.pass;
    njson row;
    row["shape"] = shape.enc();
    row["pass"] = bstr(rep.pass);
    row["summary"] = rep.summary;
    rows.push_back(std::move(row));
  }
  njson r;
  r["class"] = class_name(cls);
  r["measure"] = how;
  r["level"] = std::to_string(level);
  r["pass"] = bstr(all);
  r["rows"] = std::move(rows);
  return r;
}

njson op_conj_classes(const std::string& cls_name, int rank) {
  const ClassTag cls = parse_class(cls_name);
  njson rows = njson::array();
  for (const FinitaryPerm& g : finitary_classes(cls, rank)) {
    njson row;
    row["perm"] = perm_str(g);
    row["rank"] = std::to_string(g.rank());
    std::string ct;
    for (int l : cycle_type(g)) {
      if (!ct.empty()) ct += "+";
      ct += std::to_string(l);
    }
    row["cycles"] = ct;
    rows.push_back(std::move(row));
  }
  njson r;
  r["class"] = class_name(cls);
  r["max_rank"] = std::to_string(rank);
  r["count"] = std::to_string(rows.size());
  r["rows"] = std::move(rows);
  return r;
}

njson op_conj_cfunctor(const std::string& cls_name,
                       const std::vector<std::string>& types, bool closure,
                       int depth) {
  const ClassTag cls = parse_class(cls_name);
  const ConjugacySetSpec spec = spec_from_types(cls, types, closure);
  const TruncatedCFunctor f = build_cfunctor(spec, depth);
  const AxiomsReport ax = cfunctor_axioms_check(f);
  const SmallnessResult sm = smallness_gap(f);
  njson r;
  r["class"] = class_name(cls);
  njson reps = njson::array();
  for (const auto& g : spec.reps) reps.push_back(perm_str(g));
  r["reps"] = std::move(reps);
  r["closure"] = bstr(spec.closure_flag);
  r["depth"] = std::to_string(depth);
  r["pass"] = bstr(ax.pass);
  r["axioms"] = ax.summary;
  r["violations"] = ax.violations;
  r["gap"] = std::to_string(sm.gap);
  r["bounded"] = bstr(sm.bounded);
  return r;
}

njson op_conj_reconstruct(const std::string& cls_name,
                          const std::vector<std::string>& types, bool closure,
                          int depth, int max_rank) {
  const ClassTag cls = parse_class(cls_name);
  const ConjugacySetSpec spec = spec_from_types(cls, types, closure);
  const ReconstructResult rec =
      reconstruct_classes(build_cfunctor(spec, depth), max_rank);
  njson r;
  r["class"] = class_name(cls);
  njson in = njson::array();
  for (const auto& g : spec.reps) in.push_back(perm_str(g));
  r["input"] = std::move(in);
  njson out = njson::array();
  for (const auto& g : rec.spec.reps) out.push_back(perm_str(g));
  r["recovered"] = std::move(out);
  r["closure"] = bstr(rec.spec.closure_flag);
  r["inconclusive"] = bstr(rec.inconclusive);
  r["states_explored"] = std::to_string(rec.states_explored);
  return r;
}

njson op_conj_isolated(const std::string& cls_name,
                       const std::vector<std::string>& types, bool closure) {
  const ClassTag cls = parse_class(cls_name);
  const ConjugacySetSpec spec = spec_from_types(cls, types, closure);
  njson rows = njson::array();
  for (const auto& [name, isolated] : isolated_check(spec)) {
    njson row;
    row["rep"] = name;
    row["isolated"] = bstr(isolated);
    rows.push_back(std::move(row));
  }
  njson r;
  r["class"] = class_name(cls);
  r["rows"] = std::move(rows);
  return r;
}

njson op_conj_rankbound(const std::string& cls_name, const std::string& type,
                        int slack, int window) {
  const ClassTag cls = parse_class(cls_name);
  const FinitaryPerm g = perm_by_type(cls, type);
  if (window <= 0) window = std::max(3 * slack + 1, g.rank());
  const RankBoundVerdict v = rank_bound_test(g, slack, window);
  njson r;
  r["class"] = class_name(cls);
  r["perm"] = perm_str(g);
  r["slack"] = std::to_string(slack);
  r["window"] = std::to_string(window);
  r["violation"] = bstr(v.violation);
  r["bound"] = std::to_string(v.bound);
  r["rank"] = std::to_string(v.rank);
  r["rank_within_bound"] = bstr(v.rank_within_bound);
  r["detail"] = v.detail;
  return r;
}

njson op_cantor_ample(int rr, int n) {
  njson r;
  r["r"] = std::to_string(rr);
  r["n"] = std::to_string(n);
  r["ample"] = std::to_string(ample_count(rr, n));
  return r;
}

njson op_cantor_product(int n, int m) {
  njson rows = njson::array();
  long long total = 0;
  for (const auto& [k, mult] : product_decompose_cantor(n, m)) {
    njson row;
    row["parts"] = std::to_string(k);
    row["mult"] = std::to_string(mult);
    rows.push_back(std::move(row));
    total += mult;
  }
  njson r;
  r["n"] = std::to_string(n);
  r["m"] = std::to_string(m);
  r["terms"] = std::move(rows);
  r["orbits"] = std::to_string(total);
  return r;
}

njson op_cantor_witness(const std::string& swap, int parts) {
  const auto colon = swap.find(':');
  if (colon == std::string::npos)
    throw UsageError("swap must be <prefix>:<prefix>, e.g. 0:1");
  const CylinderHomeo g =
      prefix_swap(swap.substr(0, colon), swap.substr(colon + 1));
  const WitnessResult w = smallness_witness(g, parts);
  njson r;
  r["swap"] = swap;
  r["parts"] = std::to_string(parts);
  njson base = njson::array();
  for (const auto& p : w.base.prefixes()) base.push_back(p);
  r["base"] = std::move(base);
  njson part = njson::array();
  for (const auto& c : w.partition)
    part.push_back(std::to_string(c.prefixes().size()));
  r["partition_sizes"] = std::move(part);
  r["level"] = std::to_string(w.level);
  return r;
}

njson op_cantor_separation(int rr, const std::vector<int>& ss) {
  njson r;
  r["r"] = std::to_string(rr);
  njson parts = njson::array();
  for (int s : ss) parts.push_back(std::to_string(s));
  r["against"] = std::move(parts);
  r["n"] = std::to_string(cantor_separation(rr, ss));
  return r;
}

njson op_glfq_classify(int q, int tail, const std::string& matrix) {
  const GLWindowElem g = make_window_elem(q, parse_matrix(matrix), tail);
  const ClassifyResult c = csmooth_classify(g);
  njson r;
  r["q"] = std::to_string(q);
  r["tail"] = std::to_string(tail);
  r["alpha"] = std::to_string(c.alpha);
  r["rank"] = std::to_string(c.rank);
  return r;
}

njson op_glfq_compress(int q, int tail, const std::string& matrix) {
  const GLWindowElem g = make_window_elem(q, parse_matrix(matrix), tail);
  const BlockResult b = conjugate_into_block(g);
  njson r;
  r["q"] = std::to_string(q);
  r["block"] = std::to_string(b.block);
  r["conjugator"] = matrix_str(b.conjugator);
  r["window"] = matrix_str(b.h.window);
  r["tail"] = std::to_string(b.h.tail);
  return r;
}

njson op_glfq_growth(int q, int tail, int slack, const std::string& matrix) {
  const GLWindowElem g = make_window_elem(q, parse_matrix(matrix), tail);
  const GrowthResult res = subspace_growth(g, slack);
  njson r;
  r["q"] = std::to_string(q);
  r["slack"] = std::to_string(slack);
  r["certificate"] = bstr(res.certificate);
  if (res.certificate) {
    r["alpha"] = std::to_string(res.alpha);
    r["rank"] = std::to_string(res.rank);
  } else {
    njson wit = njson::array();
    for (const auto& v : res.witness) {
      std::string s;
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
      }
      wit.push_back(s);
    }
    r["witness"] = std::move(wit);
    r["extended_dim"] = std::to_string(res.extended_dim);
    r["span_dim"] = std::to_string(res.span_dim);
  }
  return r;
}

njson op_finctr_count(const std::string& group) {
  const auto g = FiniteGroup::named(group);
  njson r;
  r["group"] = group;
  r["order"] = std::to_string(g.order());
  r["classes"] = std::to_string(g.classes().size());
  r["simples"] = std::to_string(center_simple_count(g));
  return r;
}

njson op_finctr_braidings(const std::string& group, const std::string& set) {
  const GroupPtr g = named_group(group);
  const BraidingEnumeration e = enumerate_halfbraidings(set_for(g, set));
  njson r;
  r["group"] = group;
  r["set"] = set;
  r["count"] = std::to_string(e.count);
  r["crossed"] = std::to_string(e.crossed_count);
  return r;
}

njson op_finctr_opi(const std::string& group, const std::string& module) {
  const GroupPtr g = named_group(group);
  const YDData v = module_for(g, module);
  const CheckReport rep = opi_check(yd_beta(v));
  njson r;
  r["group"] = group;
  r["module"] = module;
  r["dim"] = std::to_string(v.dim);
  r["pass"] = bstr(rep.pass);
  r["failures"] = rep.failures;
  return r;
}

njson op_finctr_support(const std::string& group, const std::string& module) {
  const GroupPtr g = named_group(group);
  const std::vector<int> d = support_roundtrip(yd_beta(module_for(g, module)));
  njson r;
  r["group"] = group;
  r["module"] = module;
  njson els = njson::array();
  for (int x : d) els.push_back(std::to_string(x));
  r["support_set"] = std::move(els);
  r["size"] = std::to_string(d.size());
  r["trivial"] = bstr(d == std::vector<int>{g->identity()});
  return r;
}

njson op_finctr_tensor(const std::string& group, int order1, int order2) {
  const GroupPtr g = named_group(group);
  const TensorReport rep = yd_tensor_check(g, elements_of_order(*g, order1),
                                           elements_of_order(*g, order2));
  njson r;
  r["group"] = group;
  r["order1"] = std::to_string(order1);
  r["order2"] = std::to_string(order2);
  r["pass"] = bstr(rep.pass);
  njson prod = njson::array();
  for (int x : rep.product_set) prod.push_back(std::to_string(x));
  r["product_set"] = std::move(prod);
  return r;
}

// ----------------------------------------------------------------- reports

njson report_delannoy(int bound) {
  njson table = njson::array();
  for (int n = 0; n <= bound; ++n) {
    njson row = njson::array();
    for (int m = 0; m <= bound; ++m) {
      GSetSum x, y;
      x.add(make_structure(ClassTag::LinOrd, n));
      y.add(make_structure(ClassTag::LinOrd, m));
      row.push_back(std::to_string(orbit_count(x, y)));
    }
    table.push_back(std::move(row));
  }
  njson r;
  r["kind"] = "delannoy-table";
  r["bound"] = std::to_string(bound);
  r["table"] = std::move(table);
  return r;
}

njson report_measure_summary(const std::string& cls_name) {
  const ClassTag cls = parse_class(cls_name);
  const int depth = 6;
  const SolveResult res = solve_for(cls, depth);
  njson rows = njson::array();
  for (size_t i = 0; i < res.solutions.size(); ++i) {
    const MeasureSolution& sol = res.solutions[i];
    njson row;
    row["id"] = std::to_string(i);
    njson vals = njson::array();
    for (int n = 1; n <= 4; ++n)
      vals.push_back(eval_measure(sol, make_structure(cls, n)).str());
    row["values_1_to_4"] = std::move(vals);
    row["regular"] = bstr(regularity_check(sol, 4).regular);
    rows.push_back(std::move(row));
  }
  njson r;
  r["kind"] = "measure-summary";
  r["class"] = class_name(cls);
  r["depth"] = std::to_string(depth);
  if (cls == ClassTag::FinSet) r["normalization"] = "mu(point set) = t";
  r["measures"] = std::to_string(res.solutions.size());
  r["rows"] = std::move(rows);
  return r;
}

njson report_smallness_audit(const std::string& cls_name, int rank, int depth) {
  const ClassTag cls = parse_class(cls_name);
  njson rows = njson::array();
  for (const FinitaryPerm& g : finitary_classes(cls, rank)) {
    const ConjugacySetSpec spec = make_spec(cls, {g}, true);
    const SmallnessResult sm = smallness_gap(build_cfunctor(spec, depth));
    bool isolated = false;
    for (const auto& [name, flag] : isolated_check(spec))
      if (name == perm_str(g)) isolated = flag;
    njson row;
    row["rep"] = perm_str(g);
    row["rank"] = std::to_string(g.rank());
    row["gap"] = std::to_string(sm.gap);
    row["bounded"] = bstr(sm.bounded);
    row["isolated"] = bstr(isolated);
    rows.push_back(std::move(row));
  }
  njson r;
  r["kind"] = "smallness-audit";
  r["class"] = class_name(cls);
  r["max_rank"] = std::to_string(rank);
  r["depth"] = std::to_string(depth);
  r["rows"] = std::move(rows);
  return r;
}

// ------------------------------------------------------------------ driver

struct Pending {
  Request request;
  std::function<njson()> compute;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact computations in oligomorphic permutation categories"};
  app.require_subcommand(1);
  bool json_out = false;
  std::string cache_mode = "off";
  app.add_flag("--json", json_out, "emit results as JSON");
  app.add_option("--cache", cache_mode, "result cache: on or off (default off)")
      ->check(CLI::IsMember({"on", "off"}));

  Pending pending;
  auto leaf = [&](CLI::App* sub, const std::string& path, auto make_request,
                  auto compute) {
    sub->callback([&pending, path, make_request, compute]() {
      pending.request = Request{path, make_request()};
      pending.compute = compute;
    });
  };
  auto add_module = [&](const std::string& name, const std::string& desc) {
    CLI::App* m = app.add_subcommand(name, desc);
    m->require_subcommand(1);
    m->fallthrough();
    return m;
  };

  // Shared option storage; bound by reference into CLI11.
  struct {
    std::string cls = "linord", cls2 = "finset";
    int n = 0, m = 0, size = 1, a = 1, b = 1;
    int depth = 3, bound = 3, check = 3, id = -1, level = 1;
    int rank = 2, max_rank = 2, slack = 0, window = 0;
    int r = 1, order1 = 2, order2 = 2, parts = 2, q = 2, tail = 1;
    std::vector<int> ss;
    std::vector<std::string> types;
    bool closure = false;
    std::string type = "2", swap = "0:1", matrix, group = "S3";
    std::string module_spec = "trivial", set_spec = "regular", kind;
  } o;

  // -- orbit counting (also exposed at top level) --
  auto add_orbits = [&](CLI::App* parent) {
    CLI::App* c = parent->add_subcommand(
        "orbits", "count orbits on a product of embedding sets");
    c->fallthrough();
    c->add_option("--class", o.cls, "structure class")->capture_default_str();
    c->add_option("n", o.n, "first shape size")->required();
    c->add_option("m", o.m, "second shape size")->required();
    leaf(
        c, "gset.orbits",
        [&] { return njson{{"class", o.cls}, {"n", o.n}, {"m", o.m}}; },
        [&] { return op_orbits(o.cls, o.n, o.m); });
  };
  add_orbits(&app);

  CLI::App* gset = add_module("gset", "smooth G-sets and their products");
  add_orbits(gset);
  {
    CLI::App* c = gset->add_subcommand("product", "orbit decomposition of a product");
    c->fallthrough();
    c->add_option("--class", o.cls)->capture_default_str();
    c->add_option("n", o.n)->required();
    c->add_option("m", o.m)->required();
    leaf(
        c, "gset.product",
        [&] { return njson{{"class", o.cls}, {"n", o.n}, {"m", o.m}}; },
        [&] { return op_gset_product(o.cls, o.n, o.m); });
    CLI::App* l = gset->add_subcommand("level", "check level additivity");
    l->fallthrough();
    l->add_option("--class", o.cls)->capture_default_str();
    l->add_option("--bound", o.bound)->capture_default_str();
    leaf(
        l, "gset.level",
        [&] { return njson{{"class", o.cls}, {"bound", o.bound}}; },
        [&] { return op_gset_level(o.cls, o.bound); });
  }

  CLI::App* fra = add_module("fraisse", "finite structures and amalgamation");
  {
    CLI::App* c = fra->add_subcommand("enumerate", "structures of a size");
    c->fallthrough();
    c->add_option("--class", o.cls)->capture_default_str();
    c->add_option("size", o.size)->required();
    leaf(
        c, "fraisse.enumerate",
        [&] { return njson{{"class", o.cls}, {"size", o.size}}; },
        [&] { return op_fraisse_enumerate(o.cls, o.size); });
    CLI::App* am = fra->add_subcommand("amalgams", "count empty-base amalgamations");
    am->fallthrough();
    am->add_option("--class", o.cls)->capture_default_str();
    am->add_option("a", o.a)->required();
    am->add_option("b", o.b)->required();
    leaf(
        am, "fraisse.amalgams",
        [&] { return njson{{"class", o.cls}, {"a", o.a}, {"b", o.b}}; },
        [&] { return op_fraisse_amalgams(o.cls, o.a, o.b); });
    CLI::App* st = fra->add_subcommand("strong", "strong amalgamation check");
    st->fallthrough();
    st->add_option("--class", o.cls)->capture_default_str();
    st->add_option("--bound", o.bound)->capture_default_str();
    leaf(
        st, "fraisse.strong",
        [&] { return njson{{"class", o.cls}, {"bound", o.bound}}; },
        [&] { return op_fraisse_strong(o.cls, o.bound); });
    CLI::App* rg = fra->add_subcommand("rigidity", "tree-double rigidity");
    rg->fallthrough();
    rg->add_option("--leaves", o.n, "max leaf count")->required();
    leaf(
        rg, "fraisse.rigidity", [&] { return njson{{"leaves", o.n}}; },
        [&] { return op_fraisse_rigidity(o.n); });
  }

  CLI::App* mea = add_module("measure", "invariant measures");
  {
    CLI::App* c = mea->add_subcommand("solve", "all measures to a depth");
    c->fallthrough();
    c->add_option("--class", o.cls)->capture_default_str();
    c->add_option("--depth", o.depth)->capture_default_str();
    leaf(
        c, "measure.solve",
        [&] { return njson{{"class", o.cls}, {"depth", o.depth}}; },
        [&] { return op_measure_solve(o.cls, o.depth); });
    CLI::App* ev = mea->add_subcommand("eval", "measure of an embedding set");
    ev->fallthrough();
    ev->add_option("--class", o.cls)->capture_default_str();
    ev->add_option("--depth", o.depth)->capture_default_str();
    ev->add_option("--measure", o.id, "solution id (default: regular/first)");
    ev->add_option("size", o.size)->required();
    leaf(
        ev, "measure.eval",
        [&] {
          return njson{
              {"class", o.cls}, {"depth", o.depth}, {"id", o.id}, {"size", o.size}};
        },
        [&] { return op_measure_eval(o.cls, o.depth, o.id, o.size); });
    CLI::App* rg = mea->add_subcommand("regular", "regularity of each solution");
    rg->fallthrough();
    rg->add_option("--class", o.cls)->capture_default_str();
    rg->add_option("--depth", o.depth)->capture_default_str();
    rg->add_option("--bound", o.bound)->capture_default_str();
    leaf(
        rg, "measure.regular",
        [&] {
          return njson{{"class", o.cls}, {"depth", o.depth}, {"bound", o.bound}};
        },
        [&] { return op_measure_regular(o.cls, o.depth, o.bound); });
    CLI::App* vf = mea->add_subcommand("verify", "re-check the axioms");
    vf->fallthrough();
    vf->add_option("--class", o.cls)->capture_default_str();
    vf->add_option("--depth", o.depth)->capture_default_str();
    vf->add_option("--measure", o.id);
    vf->add_option("--check-depth", o.check)->capture_default_str();
    leaf(
        vf, "measure.verify",
        [&] {
          return njson{
              {"class", o.cls}, {"depth", o.depth}, {"id", o.id}, {"check", o.check}};
        },
        [&] { return op_measure_verify(o.cls, o.depth, o.id, o.check); });
  }

  CLI::App* pc = add_module("permcat", "the measured category of Schwartz spaces");
  {
    CLI::App* c = pc->add_subcommand("dim", "categorical dimension of C(X)");
    c->fallthrough();
    c->add_option("--class", o.cls)->capture_default_str();
    c->add_option("--depth", o.depth)->capture_default_str();
    c->add_option("--measure", o.id);
    c->add_option("size", o.size)->required();
    leaf(
        c, "permcat.dim",
        [&] {
          return njson{
              {"class", o.cls}, {"depth", o.depth}, {"id", o.id}, {"size", o.size}};
        },
        [&] { return op_permcat_dim(o.cls, o.depth, o.id, o.size); });
    CLI::App* fr = pc->add_subcommand("frobenius", "Frobenius laws of diagonals");
    fr->fallthrough();
    fr->add_option("--class", o.cls)->capture_default_str();
    fr->add_option("--depth", o.depth)->capture_default_str();
    fr->add_option("--measure", o.id);
    fr->add_option("--level", o.level)->capture_default_str();
    leaf(
        fr, "permcat.frobenius",
        [&] {
          return njson{
              {"class", o.cls}, {"depth", o.depth}, {"id", o.id}, {"level", o.level}};
        },
        [&] { return op_permcat_frobenius(o.cls, o.depth, o.id, o.level); });
  }

  CLI::App* cj = add_module("conj", "finitary conjugacy sets and pair functors");
  {
    CLI::App* c = cj->add_subcommand("classes", "finitary classes by rank");
    c->fallthrough();
    c->add_option("--class", o.cls2)->capture_default_str();
    c->add_option("--rank", o.rank)->capture_default_str();
    leaf(
        c, "conj.classes",
        [&] { return njson{{"class", o.cls2}, {"rank", o.rank}}; },
        [&] { return op_conj_classes(o.cls2, o.rank); });
    CLI::App* cf = cj->add_subcommand("cfunctor", "build and audit a pair table");
    cf->fallthrough();
    cf->add_option("--class", o.cls2)->capture_default_str();
    cf->add_option("--types", o.types, "cycle types, e.g. 2 2+2")->required();
    cf->add_flag("--closure", o.closure, "adjoin the identity");
    cf->add_option("--depth", o.depth)->capture_default_str();
    leaf(
        cf, "conj.cfunctor",
        [&] {
          return njson{{"class", o.cls2},
                       {"types", o.types},
                       {"closure", o.closure},
                       {"depth", o.depth}};
        },
        [&] { return op_conj_cfunctor(o.cls2, o.types, o.closure, o.depth); });
    CLI::App* rc = cj->add_subcommand("reconstruct", "recover classes from a table");
    rc->fallthrough();
    rc->add_option("--class", o.cls2)->capture_default_str();
    rc->add_option("--types", o.types)->required();
    rc->add_flag("--closure", o.closure);
    rc->add_option("--depth", o.depth)->capture_default_str();
    rc->add_option("--max-rank", o.max_rank)->capture_default_str();
    leaf(
        rc, "conj.reconstruct",
        [&] {
          return njson{{"class", o.cls2},
                       {"types", o.types},
                       {"closure", o.closure},
                       {"depth", o.depth},
                       {"max_rank", o.max_rank}};
        },
        [&] {
          return op_conj_reconstruct(o.cls2, o.types, o.closure, o.depth,
                                     o.max_rank);
        });
    CLI::App* is = cj->add_subcommand("isolated", "isolation of each class");
    is->fallthrough();
    is->add_option("--class", o.cls2)->capture_default_str();
    is->add_option("--types", o.types)->required();
    is->add_flag("--closure", o.closure);
    leaf(
        is, "conj.isolated",
        [&] {
          return njson{
              {"class", o.cls2}, {"types", o.types}, {"closure", o.closure}};
        },
        [&] { return op_conj_isolated(o.cls2, o.types, o.closure); });
    CLI::App* rb = cj->add_subcommand("rankbound", "window test for rank bounds");
    rb->fallthrough();
    rb->add_option("--class", o.cls2)->capture_default_str();
    rb->add_option("--type", o.type)->capture_default_str();
    rb->add_option("--slack", o.slack)->capture_default_str();
    rb->add_option("--window", o.window, "window size (default 3*slack+1)");
    leaf(
        rb, "conj.rankbound",
        [&] {
          return njson{{"class", o.cls2},
                       {"type", o.type},
                       {"slack", o.slack},
                       {"window", o.window}};
        },
        [&] { return op_conj_rankbound(o.cls2, o.type, o.slack, o.window); });
  }

  CLI::App* ca = add_module("cantor", "clopen combinatorics of the Cantor group");
  {
    CLI::App* c = ca->add_subcommand("ample", "doubly surjective grid subsets");
    c->fallthrough();
    c->add_option("r", o.r)->required();
    c->add_option("n", o.n)->required();
    leaf(
        c, "cantor.ample", [&] { return njson{{"r", o.r}, {"n", o.n}}; },
        [&] { return op_cantor_ample(o.r, o.n); });
    CLI::App* pr = ca->add_subcommand("product", "decompose X(n) x X(m)");
    pr->fallthrough();
    pr->add_option("n", o.n)->required();
    pr->add_option("m", o.m)->required();
    leaf(
        pr, "cantor.product", [&] { return njson{{"n", o.n}, {"m", o.m}}; },
        [&] { return op_cantor_product(o.n, o.m); });
    CLI::App* wi = ca->add_subcommand("witness", "non-smallness witness partition");
    wi->fallthrough();
    wi->add_option("--swap", o.swap, "two disjoint prefixes a:b")
        ->capture_default_str();
    wi->add_option("--n", o.parts, "partition parts")->capture_default_str();
    leaf(
        wi, "cantor.witness",
        [&] { return njson{{"swap", o.swap}, {"n", o.parts}}; },
        [&] { return op_cantor_witness(o.swap, o.parts); });
    CLI::App* se = ca->add_subcommand("separation", "first separating X(n)");
    se->fallthrough();
    se->add_option("r", o.r)->required();
    se->add_option("against", o.ss, "smaller part counts")->required();
    leaf(
        se, "cantor.separation",
        [&] { return njson{{"r", o.r}, {"against", o.ss}}; },
        [&] { return op_cantor_separation(o.r, o.ss); });
  }

  CLI::App* gl = add_module("glfq", "finite-field window elements");
  {
    CLI::App* c = gl->add_subcommand("classify", "scalar and rank of a window");
    c->fallthrough();
    c->add_option("--q", o.q)->capture_default_str();
    c->add_option("--tail", o.tail)->capture_default_str();
    c->add_option("matrix", o.matrix, "rows as r1;r2;... entries comma-separated")
        ->required();
    leaf(
        c, "glfq.classify",
        [&] { return njson{{"q", o.q}, {"tail", o.tail}, {"matrix", o.matrix}}; },
        [&] { return op_glfq_classify(o.q, o.tail, o.matrix); });
    CLI::App* cp = gl->add_subcommand("compress", "conjugate into a minimal block");
    cp->fallthrough();
    cp->add_option("--q", o.q)->capture_default_str();
    cp->add_option("--tail", o.tail)->capture_default_str();
    cp->add_option("matrix", o.matrix)->required();
    leaf(
        cp, "glfq.compress",
        [&] { return njson{{"q", o.q}, {"tail", o.tail}, {"matrix", o.matrix}}; },
        [&] { return op_glfq_compress(o.q, o.tail, o.matrix); });
    CLI::App* gr = gl->add_subcommand("growth", "subspace growth dichotomy");
    gr->fallthrough();
    gr->add_option("--q", o.q)->capture_default_str();
    gr->add_option("--tail", o.tail)->capture_default_str();
    gr->add_option("--slack", o.slack)->capture_default_str();
    gr->add_option("matrix", o.matrix)->required();
    leaf(
        gr, "glfq.growth",
        [&] {
          return njson{
              {"q", o.q}, {"tail", o.tail}, {"slack", o.slack}, {"matrix", o.matrix}};
        },
        [&] { return op_glfq_growth(o.q, o.tail, o.slack, o.matrix); });
  }

  CLI::App* fc = add_module("finctr", "finite-group center oracle");
  {
    CLI::App* c = fc->add_subcommand("count", "simple count of the center");
    c->fallthrough();
    c->add_option("group", o.group, "group name, e.g. S3, C6, D4, A4")
        ->required();
    leaf(
        c, "finctr.count", [&] { return njson{{"group", o.group}}; },
        [&] { return op_finctr_count(o.group); });
    CLI::App* br = fc->add_subcommand("braidings", "half-braiding enumeration");
    br->fallthrough();
    br->add_option("group", o.group)->required();
    br->add_option("--set", o.set_spec, "regular, point, or conjugation")
        ->capture_default_str();
    leaf(
        br, "finctr.braidings",
        [&] { return njson{{"group", o.group}, {"set", o.set_spec}}; },
        [&] { return op_finctr_braidings(o.group, o.set_spec); });
    CLI::App* op = fc->add_subcommand("opi", "structure-family axioms");
    op->fallthrough();
    op->add_option("group", o.group)->required();
    op->add_option("--module", o.module_spec, "trivial, adjoint, or order:<k>")
        ->capture_default_str();
    leaf(
        op, "finctr.opi",
        [&] { return njson{{"group", o.group}, {"module", o.module_spec}}; },
        [&] { return op_finctr_opi(o.group, o.module_spec); });
    CLI::App* su = fc->add_subcommand("support", "support conjugacy set");
    su->fallthrough();
    su->add_option("group", o.group)->required();
    su->add_option("--module", o.module_spec)->capture_default_str();
    leaf(
        su, "finctr.support",
        [&] { return njson{{"group", o.group}, {"module", o.module_spec}}; },
        [&] { return op_finctr_support(o.group, o.module_spec); });
    CLI::App* te = fc->add_subcommand("tensor", "class-module tensor comparison");
    te->fallthrough();
    te->add_option("group", o.group)->required();
    te->add_option("--order1", o.order1, "element order of the first class")
        ->capture_default_str();
    te->add_option("--order2", o.order2, "element order of the second class")
        ->capture_default_str();
    leaf(
        te, "finctr.tensor",
        [&] {
          return njson{
              {"group", o.group}, {"order1", o.order1}, {"order2", o.order2}};
        },
        [&] { return op_finctr_tensor(o.group, o.order1, o.order2); });
  }

  CLI::App* rp = add_module("report", "deterministic summary documents");
  {
    CLI::App* c = rp->add_subcommand("delannoy-table", "orbit-count table");
    c->fallthrough();
    c->add_option("--bound", o.bound)->capture_default_str();
    leaf(
        c, "report.delannoy-table", [&] { return njson{{"bound", o.bound}}; },
        [&] { return report_delannoy(o.bound); });
    CLI::App* ms = rp->add_subcommand("measure-summary", "measures of a class");
    ms->fallthrough();
    ms->add_option("class", o.cls)->required();
    leaf(
        ms, "report.measure-summary", [&] { return njson{{"class", o.cls}}; },
        [&] { return report_measure_summary(o.cls); });
    CLI::App* sa = rp->add_subcommand("smallness-audit", "gap and isolation table");
    sa->fallthrough();
    sa->add_option("class", o.cls2)->required();
    sa->add_option("--rank", o.rank)->capture_default_str();
    sa->add_option("--depth", o.depth, "table depth (default 6)");
    leaf(
        sa, "report.smallness-audit",
        [&] {
          return njson{{"class", o.cls2}, {"rank", o.rank}, {"depth", o.depth}};
        },
        [&] {
          return report_smallness_audit(o.cls2, o.rank,
                                        o.depth == 3 ? 6 : o.depth);
        });
  }

  std::vector<std::string> argv_copy(args);
  try {
    std::vector<const char*> argv;
    argv.push_back("oligocat");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (!pending.compute) {
    err << "usage error: no operation selected\n";
    return 2;
  }

  try {
    njson result;
    bool from_cache = false;
    if (cache_mode == "on") {
      if (auto hit = cache_lookup(pending.request)) {
        result = std::move(*hit);
        from_cache = true;
      }
    }
    if (!from_cache) result = pending.compute();
    if (cache_mode == "on" && !from_cache) cache_store(pending.request, result);
    if (json_out)
      out << result.dump(2) << "\n";
    else
      render_plain(result, out, 0);
    if (result.contains("pass") && result["pass"] == "false") return 1;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const VerifyError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oligo
