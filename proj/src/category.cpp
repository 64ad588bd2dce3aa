#include "frobcat/category.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace frobcat {

int FinCategory::morphism_index(const std::string& name) const {
  for (int m = 0; m < n_morphisms(); ++m)
    if (morphisms[m].name == name) return m;
  return -1;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (n_objects != other.n_objects || identity != other.identity || comp != other.comp)
    return false;
  if (morphisms.size() != other.morphisms.size()) return false;
  for (size_t m = 0; m < morphisms.size(); ++m) {
    if (morphisms[m].name != other.morphisms[m].name || morphisms[m].dom != other.morphisms[m].dom ||
        morphisms[m].cod != other.morphisms[m].cod)
      return false;
  }
  return true;
}

HomIndex hom_index(const FinCategory& cat) {
  HomIndex idx;
  idx.n_objects = cat.n_objects;
  idx.hom.assign(static_cast<size_t>(cat.n_objects) * cat.n_objects, {});
  for (int m = 0; m < cat.n_morphisms(); ++m)
    idx.hom[static_cast<size_t>(cat.dom(m)) * cat.n_objects + cat.cod(m)].push_back(m);
  return idx;
}

ValidationReport validate(const FinCategory& cat) {
  ValidationReport report;
  auto issue = [&report](const std::string& msg) { report.issues.push_back(msg); };
  const int nm = cat.n_morphisms();

  if (static_cast<int>(cat.identity.size()) != cat.n_objects)
    issue("identity table has " + std::to_string(cat.identity.size()) + " entries for " +
          std::to_string(cat.n_objects) + " objects");
  if (cat.comp.size() != static_cast<size_t>(nm) * nm)
    issue("composition table has wrong size");
  if (!report.ok()) return report;  // sizes must be right before indexing

  for (int m = 0; m < nm; ++m) {
    if (cat.dom(m) < 0 || cat.dom(m) >= cat.n_objects || cat.cod(m) < 0 || cat.cod(m) >= cat.n_objects)
      issue("morphism '" + cat.name(m) + "' (" + std::to_string(m) + ") has out-of-range endpoints");
  }
  for (int i = 0; i < cat.n_objects; ++i) {
    const int e = cat.identity[i];
    if (e < 0 || e >= nm) {
      issue("identity of object " + std::to_string(i) + " is out of range");
      continue;
    }
    if (cat.dom(e) != i || cat.cod(e) != i)
      issue("identity of object " + std::to_string(i) + " is '" + cat.name(e) + "' with dom " +
            std::to_string(cat.dom(e)) + ", cod " + std::to_string(cat.cod(e)));
  }
  if (!report.ok()) return report;

  for (int g = 0; g < nm; ++g) {
    for (int f = 0; f < nm; ++f) {
      const int h = cat.compose(g, f);
      const bool composable = cat.cod(f) == cat.dom(g);
      if (!composable) {
        if (h != -1)
          issue("composition defined for non-composable pair ('" + cat.name(g) + "', '" + cat.name(f) + "')");
        continue;
      }
      if (h == -1) {
        issue("missing composition '" + cat.name(g) + "'∘'" + cat.name(f) + "' (" + std::to_string(g) + "," +
              std::to_string(f) + ")");
        continue;
      }
      if (h < 0 || h >= nm) {
        issue("composition '" + cat.name(g) + "'∘'" + cat.name(f) + "' is out of range");
        continue;
      }
      if (cat.dom(h) != cat.dom(f) || cat.cod(h) != cat.cod(g))
        issue("composite '" + cat.name(g) + "'∘'" + cat.name(f) + "' = '" + cat.name(h) +
              "' has wrong endpoints");
    }
  }
  if (!report.ok()) return report;

  for (int f = 0; f < nm; ++f) {
    const int le = cat.identity[cat.cod(f)];
    const int re = cat.identity[cat.dom(f)];
    if (cat.compose(le, f) != f)
      issue("left identity law fails: '" + cat.name(le) + "'∘'" + cat.name(f) + "' = '" +
            cat.name(cat.compose(le, f)) + "'");
    if (cat.compose(f, re) != f)
      issue("right identity law fails: '" + cat.name(f) + "'∘'" + cat.name(re) + "' = '" +
            cat.name(cat.compose(f, re)) + "'");
  }

  for (int h = 0; h < nm; ++h) {
    for (int g = 0; g < nm; ++g) {
      if (cat.cod(g) != cat.dom(h)) continue;
      const int hg = cat.compose(h, g);
      for (int f = 0; f < nm; ++f) {
        if (cat.cod(f) != cat.dom(g)) continue;
        const int gf = cat.compose(g, f);
        if (cat.compose(h, gf) != cat.compose(hg, f))
          issue("associativity fails on ('" + cat.name(h) + "', '" + cat.name(g) + "', '" + cat.name(f) +
                "'): (" + std::to_string(h) + "," + std::to_string(g) + "," + std::to_string(f) + ")");
      }
    }
  }
  return report;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);  // keep the smallest member as root
    parent[y] = x;
  }
};

}  // namespace

ComponentPartition connected_components(const FinCategory& cat) {
  UnionFind uf(cat.n_objects);
  for (int m = 0; m < cat.n_morphisms(); ++m) uf.unite(cat.dom(m), cat.cod(m));
  ComponentPartition parts;
  parts.component.assign(cat.n_objects, -1);
  for (int i = 0; i < cat.n_objects; ++i) {
    const int root = uf.find(i);
    if (parts.component[root] == -1) parts.component[root] = parts.count++;
    parts.component[i] = parts.component[root];
  }
  return parts;
}

StrongConnectivity is_strongly_connected(const FinCategory& cat) {
  if (connected_components(cat).count != 1)
    throw std::invalid_argument("is_strongly_connected: category is not connected");

  const int n = cat.n_objects;
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (int m = 0; m < cat.n_morphisms(); ++m) edge[cat.dom(m)][cat.cod(m)] = true;

  StrongConnectivity result;
  bool all = true;
  for (int i = 0; i < n && all; ++i)
    for (int j = 0; j < n && all; ++j)
      if (!edge[i][j]) all = false;
  result.strongly_connected = all;
  if (all) return result;

  // Condensation: mutual reachability classes of the (transitive) hom graph.
  std::vector<std::vector<bool>> reach = edge;
  for (int i = 0; i < n; ++i) reach[i][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<int> scc(n, -1);
  int n_scc = 0;
  for (int i = 0; i < n; ++i) {
    if (scc[i] != -1) continue;
    scc[i] = n_scc;
    for (int j = i + 1; j < n; ++j)
      if (reach[i][j] && reach[j][i]) scc[j] = n_scc;
    ++n_scc;
  }

  std::vector<bool> has_incoming(n_scc, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (edge[i][j] && scc[i] != scc[j]) has_incoming[scc[j]] = true;

  int source = -1;  // SCC ids are assigned by smallest object, so take the first source
  for (int c = 0; c < n_scc && source == -1; ++c)
    if (!has_incoming[c]) source = c;

  for (int i = 0; i < n; ++i)
    (scc[i] == source ? result.a : result.b).push_back(i);
  return result;
}

// --------------------------- builders -------------------------------------

namespace {

std::string fresh_name(std::string base, const std::set<std::string>& used) {
  while (used.count(base)) base += "'";
  return base;
}

}  // namespace

FinCategory from_monoid_table(const std::vector<std::vector<int>>& table,
                              const std::vector<std::string>& names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("from_monoid_table: empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("from_monoid_table: ragged table");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("from_monoid_table: entry out of range");
  }
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw std::invalid_argument("from_monoid_table: wrong number of names");

  int unit = -1;
  for (int e = 0; e < n && unit == -1; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) unit = e;
  }
  if (unit == -1) throw std::invalid_argument("from_monoid_table: no two-sided identity element");

  FinCategory cat;
  cat.n_objects = 1;
  for (int m = 0; m < n; ++m)
    cat.morphisms.push_back({names.empty() ? "m" + std::to_string(m) : names[m], 0, 0});
  cat.identity = {unit};
  cat.comp.assign(static_cast<size_t>(n) * n, -1);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) cat.comp[static_cast<size_t>(g) * n + f] = table[g][f];

  const ValidationReport report = validate(cat);
  if (!report.ok())
    throw std::invalid_argument("from_monoid_table: not a monoid: " + report.issues.front());
  return cat;
}

FinCategory from_group_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("from_group_cyclic: order must be >= 1");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  names.push_back("e");
  if (n > 1) names.push_back("g");
  for (int k = 2; k < n; ++k) names.push_back("g" + std::to_string(k));
  return from_monoid_table(table, names);
}

FinCategory discrete(int n) {
  if (n < 0) throw std::invalid_argument("discrete: negative object count");
  FinCategory cat;
  cat.n_objects = n;
  for (int i = 0; i < n; ++i) {
    cat.morphisms.push_back({"id" + std::to_string(i), i, i});
    cat.identity.push_back(i);
  }
  cat.comp.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) cat.comp[static_cast<size_t>(i) * n + i] = i;
  return cat;
}

FinCategory arrow() { return parallel(1); }

FinCategory parallel(int k) {
  if (k < 1) throw std::invalid_argument("parallel: need at least one arrow");
  FinCategory cat;
  cat.n_objects = 2;
  cat.morphisms.push_back({"id0", 0, 0});
  cat.morphisms.push_back({"id1", 1, 1});
  for (int t = 0; t < k; ++t) cat.morphisms.push_back({"a" + std::to_string(t), 0, 1});
  cat.identity = {0, 1};
  const int nm = cat.n_morphisms();
  cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  cat.comp[0 * nm + 0] = 0;
  cat.comp[1 * nm + 1] = 1;
  for (int t = 0; t < k; ++t) {
    cat.comp[static_cast<size_t>(2 + t) * nm + 0] = 2 + t;  // a∘id0
    cat.comp[static_cast<size_t>(1) * nm + 2 + t] = 2 + t;  // id1∘a
  }
  return cat;
}

FinCategory idempotent_monoid() {
  return from_monoid_table({{0, 1}, {1, 1}}, {"1", "e"});
}

FinCategory adjoin_unit(const FinCategory& monoid) {
  if (monoid.n_objects != 1) throw std::invalid_argument("adjoin_unit: input must have one object");
  const int n = monoid.n_morphisms();
  std::set<std::string> used;
  for (const auto& m : monoid.morphisms) used.insert(m.name);

  FinCategory cat;
  cat.n_objects = 1;
  cat.morphisms.push_back({fresh_name("1", used), 0, 0});
  for (const auto& m : monoid.morphisms) cat.morphisms.push_back(m);
  cat.identity = {0};
  const int nm = n + 1;
  cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int x = 0; x < nm; ++x) {
    cat.comp[static_cast<size_t>(0) * nm + x] = x;
    cat.comp[static_cast<size_t>(x) * nm + 0] = x;
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      cat.comp[static_cast<size_t>(g + 1) * nm + (f + 1)] = monoid.compose(g, f) + 1;
  return cat;
}

FinCategory disjoint_union(const FinCategory& x, const FinCategory& y) {
  FinCategory cat;
  cat.n_objects = x.n_objects + y.n_objects;
  std::set<std::string> used;
  for (const auto& m : x.morphisms) {
    cat.morphisms.push_back(m);
    used.insert(m.name);
  }
  for (const auto& m : y.morphisms) {
    Morphism shifted{fresh_name(m.name, used), m.dom + x.n_objects, m.cod + x.n_objects};
    used.insert(shifted.name);
    cat.morphisms.push_back(shifted);
  }
  for (int i = 0; i < x.n_objects; ++i) cat.identity.push_back(x.identity[i]);
  for (int i = 0; i < y.n_objects; ++i) cat.identity.push_back(y.identity[i] + x.n_morphisms());
  const int nm = cat.n_morphisms();
  const int nx = x.n_morphisms();
  cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nx; ++g)
    for (int f = 0; f < nx; ++f) cat.comp[static_cast<size_t>(g) * nm + f] = x.compose(g, f);
  for (int g = 0; g < y.n_morphisms(); ++g)
    for (int f = 0; f < y.n_morphisms(); ++f) {
      const int h = y.compose(g, f);
      cat.comp[static_cast<size_t>(g + nx) * nm + (f + nx)] = h == -1 ? -1 : h + nx;
    }
  return cat;
}

FinCategory from_preorder(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0) throw std::invalid_argument("from_preorder: negative object count");
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("from_preorder: pair out of range");
    rel[i][j] = true;
  }
  for (int i = 0; i < n; ++i) rel[i][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (rel[i][k])
        for (int j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;

  FinCategory cat;
  cat.n_objects = n;
  std::vector<std::vector<int>> at(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    at[i][i] = cat.n_morphisms();
    cat.morphisms.push_back({"id" + std::to_string(i), i, i});
    cat.identity.push_back(at[i][i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j] && i != j) {
        at[i][j] = cat.n_morphisms();
        cat.morphisms.push_back({"le_" + std::to_string(i) + "_" + std::to_string(j), i, j});
      }
  const int nm = cat.n_morphisms();
  cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (cat.cod(f) == cat.dom(g)) cat.comp[static_cast<size_t>(g) * nm + f] = at[cat.dom(f)][cat.cod(g)];
  return cat;
}

// ------------------------- subcategories ----------------------------------

SubCategory full_subcategory(const FinCategory& cat, const std::vector<int>& objects) {
  SubCategory sub;
  sub.object_map = objects;
  std::sort(sub.object_map.begin(), sub.object_map.end());
  std::vector<int> obj_inv(cat.n_objects, -1);
  for (size_t k = 0; k < sub.object_map.size(); ++k) obj_inv[sub.object_map[k]] = static_cast<int>(k);

  std::vector<int> mor_inv(cat.n_morphisms(), -1);
  sub.cat.n_objects = static_cast<int>(sub.object_map.size());
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    if (obj_inv[cat.dom(m)] == -1 || obj_inv[cat.cod(m)] == -1) continue;
    mor_inv[m] = static_cast<int>(sub.morphism_map.size());
    sub.morphism_map.push_back(m);
    sub.cat.morphisms.push_back({cat.name(m), obj_inv[cat.dom(m)], obj_inv[cat.cod(m)]});
  }
  for (int obj : sub.object_map) sub.cat.identity.push_back(mor_inv[cat.identity[obj]]);
  const int nm = sub.cat.n_morphisms();
  sub.cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      const int h = cat.compose(sub.morphism_map[g], sub.morphism_map[f]);
      if (h != -1) sub.cat.comp[static_cast<size_t>(g) * nm + f] = mor_inv[h];
    }
  return sub;
}

SubCategory component_subcategory(const FinCategory& cat, const ComponentPartition& parts, int component) {
  std::vector<int> objects;
  for (int i = 0; i < cat.n_objects; ++i)
    if (parts.component[i] == component) objects.push_back(i);
  return full_subcategory(cat, objects);
}

SubCategory endo_subcategory(const FinCategory& cat, int obj, const std::vector<int>& endos) {
  std::vector<int> mors = endos;
  std::sort(mors.begin(), mors.end());
  const int id = cat.identity[obj];
  if (!std::binary_search(mors.begin(), mors.end(), id)) {
    mors.push_back(id);
    std::sort(mors.begin(), mors.end());
  }
  SubCategory sub;
  sub.object_map = {obj};
  sub.morphism_map = mors;
  std::vector<int> mor_inv(cat.n_morphisms(), -1);
  for (size_t k = 0; k < mors.size(); ++k) {
    const int m = mors[k];
    if (cat.dom(m) != obj || cat.cod(m) != obj)
      throw std::invalid_argument("endo_subcategory: morphism is not an endomorphism of the object");
    mor_inv[m] = static_cast<int>(k);
    sub.cat.morphisms.push_back({cat.name(m), 0, 0});
  }
  sub.cat.n_objects = 1;
  sub.cat.identity = {mor_inv[id]};
  const int nm = static_cast<int>(mors.size());
  sub.cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      const int h = cat.compose(mors[g], mors[f]);
      if (h == -1 || mor_inv[h] == -1)
        throw std::invalid_argument("endo_subcategory: morphism set is not closed under composition");
      sub.cat.comp[static_cast<size_t>(g) * nm + f] = mor_inv[h];
    }
  return sub;
}

// --------------------------- text format ----------------------------------

namespace {

std::vector<std::vector<std::string>> tokenize_lines(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

int parse_int(const std::string& tok, const std::string& what) {
  size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse error: expected integer for " + what + ", got '" + tok + "'");
  }
  if (pos != tok.size())
    throw std::invalid_argument("parse error: expected integer for " + what + ", got '" + tok + "'");
  return value;
}

}  // namespace

FinCategory parse_category(std::istream& in) {
  const auto lines = tokenize_lines(in);
  FinCategory cat;
  bool saw_objects = false;
  bool saw_end = false;
  std::map<std::string, int> by_name;
  std::vector<std::tuple<int, int, int>> comp_lines;
  std::vector<std::pair<int, std::string>> id_lines;

  for (const auto& tokens : lines) {
    if (saw_end) throw std::invalid_argument("parse error: content after 'end'");
    const std::string& kw = tokens[0];
    if (kw == "objects") {
      if (saw_objects || tokens.size() != 2) throw std::invalid_argument("parse error: bad 'objects' line");
      cat.n_objects = parse_int(tokens[1], "object count");
      if (cat.n_objects < 0) throw std::invalid_argument("parse error: negative object count");
      saw_objects = true;
    } else if (kw == "mor") {
      if (!saw_objects) throw std::invalid_argument("parse error: 'mor' before 'objects'");
      if (tokens.size() != 4) throw std::invalid_argument("parse error: bad 'mor' line");
      if (by_name.count(tokens[1])) throw std::invalid_argument("parse error: duplicate morphism name '" + tokens[1] + "'");
      const int dom = parse_int(tokens[2], "dom");
      const int cod = parse_int(tokens[3], "cod");
      if (dom < 0 || dom >= cat.n_objects || cod < 0 || cod >= cat.n_objects)
        throw std::invalid_argument("parse error: morphism '" + tokens[1] + "' has out-of-range endpoints");
      by_name[tokens[1]] = cat.n_morphisms();
      cat.morphisms.push_back({tokens[1], dom, cod});
    } else if (kw == "id") {
      if (tokens.size() != 3) throw std::invalid_argument("parse error: bad 'id' line");
      id_lines.emplace_back(parse_int(tokens[1], "object"), tokens[2]);
    } else if (kw == "comp") {
      if (tokens.size() != 4) throw std::invalid_argument("parse error: bad 'comp' line");
      std::array<int, 3> ref{};
      for (int t = 0; t < 3; ++t) {
        auto it = by_name.find(tokens[t + 1]);
        if (it == by_name.end())
          throw std::invalid_argument("parse error: unknown morphism '" + tokens[t + 1] + "' in comp line");
        ref[t] = it->second;
      }
      comp_lines.emplace_back(ref[0], ref[1], ref[2]);
    } else if (kw == "end") {
      if (tokens.size() != 1) throw std::invalid_argument("parse error: bad 'end' line");
      saw_end = true;
    } else {
      throw std::invalid_argument("parse error: unknown directive '" + kw + "'");
    }
  }
  if (!saw_objects) throw std::invalid_argument("parse error: missing 'objects' line");
  if (!saw_end) throw std::invalid_argument("parse error: missing 'end'");

  cat.identity.assign(cat.n_objects, -1);
  for (const auto& [obj, name] : id_lines) {
    if (obj < 0 || obj >= cat.n_objects) throw std::invalid_argument("parse error: 'id' object out of range");
    auto it = by_name.find(name);
    if (it == by_name.end()) throw std::invalid_argument("parse error: unknown identity morphism '" + name + "'");
    if (cat.identity[obj] != -1) throw std::invalid_argument("parse error: duplicate 'id' line for object " + std::to_string(obj));
    cat.identity[obj] = it->second;
  }
  for (int i = 0; i < cat.n_objects; ++i)
    if (cat.identity[i] == -1)
      throw std::invalid_argument("parse error: missing 'id' line for object " + std::to_string(i));

  const int nm = cat.n_morphisms();
  cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  // identity compositions are inferred, everything else comes from comp lines
  for (int f = 0; f < nm; ++f) {
    cat.comp[static_cast<size_t>(cat.identity[cat.cod(f)]) * nm + f] = f;
    cat.comp[static_cast<size_t>(f) * nm + cat.identity[cat.dom(f)]] = f;
  }
  for (const auto& [g, f, h] : comp_lines) {
    if (cat.cod(f) != cat.dom(g))
      throw std::invalid_argument("parse error: comp line for non-composable pair ('" + cat.name(g) + "', '" +
                                  cat.name(f) + "')");
    int& slot = cat.comp[static_cast<size_t>(g) * nm + f];
    if (slot != -1 && slot != h)
      throw std::invalid_argument("parse error: conflicting comp entries for ('" + cat.name(g) + "', '" +
                                  cat.name(f) + "')");
    slot = h;
  }
  return cat;
}

FinCategory parse_category_string(const std::string& text) {
  std::istringstream in(text);
  return parse_category(in);
}

std::string serialize_category(const FinCategory& cat) {
  std::ostringstream out;
  out << "objects " << cat.n_objects << "\n";
  for (const auto& m : cat.morphisms) out << "mor " << m.name << " " << m.dom << " " << m.cod << "\n";
  for (int i = 0; i < cat.n_objects; ++i) out << "id " << i << " " << cat.name(cat.identity[i]) << "\n";
  const int nm = cat.n_morphisms();
  for (int g = 0; g < nm; ++g) {
    if (cat.is_identity(g)) continue;
    for (int f = 0; f < nm; ++f) {
      if (cat.is_identity(f)) continue;
      const int h = cat.compose(g, f);
      if (h != -1) out << "comp " << cat.name(g) << " " << cat.name(f) << " " << cat.name(h) << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

}  // namespace frobcat
