#include "frobcat/set_oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace frobcat {

std::optional<std::string> check_set_functor(const FinCategory& cat, const SetFunctor& F) {
  if (static_cast<int>(F.size.size()) != cat.n_objects) return "size table has wrong length";
  for (int s : F.size)
    if (s < 0) return "negative set size";
  if (static_cast<int>(F.action.size()) != cat.n_morphisms()) return "action table has wrong length";
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const auto& table = F.action[m];
    if (static_cast<int>(table.size()) != F.size[cat.dom(m)])
      return "action of '" + cat.name(m) + "' has wrong domain size";
    for (int v : table)
      if (v < 0 || v >= F.size[cat.cod(m)]) return "action of '" + cat.name(m) + "' is out of range";
  }
  for (int i = 0; i < cat.n_objects; ++i) {
    const auto& table = F.action[cat.identity[i]];
    for (int x = 0; x < F.size[i]; ++x)
      if (table[x] != x) return "action of identity of object " + std::to_string(i) + " is not the identity";
  }
  for (int g = 0; g < cat.n_morphisms(); ++g)
    for (int f = 0; f < cat.n_morphisms(); ++f) {
      const int h = cat.compose(g, f);
      if (h == -1) continue;
      for (int x = 0; x < F.size[cat.dom(f)]; ++x)
        if (F.action[h][x] != F.action[g][F.action[f][x]])
          return "functoriality fails on '" + cat.name(g) + "'∘'" + cat.name(f) + "'";
    }
  return std::nullopt;
}

SetFunctor make_set_functor(const FinCategory& cat, std::vector<int> size,
                            std::vector<std::vector<int>> action) {
  SetFunctor F{std::move(size), std::move(action)};
  if (const auto err = check_set_functor(cat, F)) throw std::invalid_argument("make_set_functor: " + *err);
  return F;
}

std::optional<std::string> check_set_nat(const FinCategory& cat, const SetFunctor& F, const SetFunctor& G,
                                         const SetNatTransform& eta) {
  if (static_cast<int>(eta.component.size()) != cat.n_objects) return "component table has wrong length";
  for (int i = 0; i < cat.n_objects; ++i) {
    if (static_cast<int>(eta.component[i].size()) != F.size[i])
      return "component at object " + std::to_string(i) + " has wrong domain size";
    for (int v : eta.component[i])
      if (v < 0 || v >= G.size[i]) return "component at object " + std::to_string(i) + " is out of range";
  }
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const int i = cat.dom(m), j = cat.cod(m);
    for (int x = 0; x < F.size[i]; ++x)
      if (eta.component[j][F.action[m][x]] != G.action[m][eta.component[i][x]])
        return "naturality fails at '" + cat.name(m) + "'";
  }
  return std::nullopt;
}

// ----------------------------- limits -------------------------------------

namespace {

struct ObjectArrows {
  std::vector<std::vector<int>> out;  // object -> morphisms with that dom
  std::vector<std::vector<int>> in;   // object -> morphisms with that cod
};

ObjectArrows object_arrows(const FinCategory& cat) {
  ObjectArrows arrows;
  arrows.out.resize(cat.n_objects);
  arrows.in.resize(cat.n_objects);
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    arrows.out[cat.dom(m)].push_back(m);
    arrows.in[cat.cod(m)].push_back(m);
  }
  return arrows;
}

}  // namespace

std::vector<std::vector<int>> limit_set(const FinCategory& cat, const SetFunctor& F) {
  const int n = cat.n_objects;
  const ObjectArrows arrows = object_arrows(cat);
  std::vector<std::vector<int>> tuples;
  std::vector<int> x(n, -1);

  // Assign x[obj] = v, propagate forced values forward along morphisms and
  // check consistency; newly assigned objects land on the trail for undo.
  auto try_assign = [&](int obj, int v, std::vector<int>& trail) -> bool {
    x[obj] = v;
    trail.push_back(obj);
    std::deque<int> queue{obj};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (int m : arrows.out[a]) {
        const int b = cat.cod(m);
        const int w = F.action[m][x[a]];
        if (x[b] == -1) {
          x[b] = w;
          trail.push_back(b);
          queue.push_back(b);
        } else if (x[b] != w) {
          return false;
        }
      }
      for (int m : arrows.in[a]) {
        const int b = cat.dom(m);
        if (x[b] != -1 && F.action[m][x[b]] != x[a]) return false;
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, int k) -> void {
    if (k == n) {
      tuples.push_back(x);
      return;
    }
    if (x[k] != -1) {
      self(self, k + 1);
      return;
    }
    for (int v = 0; v < F.size[k]; ++v) {
      std::vector<int> trail;
      if (try_assign(k, v, trail)) self(self, k + 1);
      for (int obj : trail) x[obj] = -1;
    }
  };
  dfs(dfs, 0);
  return tuples;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

SetColimit colimit_set(const FinCategory& cat, const SetFunctor& F) {
  SetColimit colim;
  colim.offset.resize(cat.n_objects);
  int total = 0;
  for (int i = 0; i < cat.n_objects; ++i) {
    colim.offset[i] = total;
    total += F.size[i];
  }
  UnionFind uf(total);
  for (int m = 0; m < cat.n_morphisms(); ++m)
    for (int v = 0; v < F.size[cat.dom(m)]; ++v)
      uf.unite(colim.offset[cat.dom(m)] + v, colim.offset[cat.cod(m)] + F.action[m][v]);
  colim.class_of.assign(total, -1);
  for (int v = 0; v < total; ++v) {
    const int root = uf.find(v);
    if (colim.class_of[root] == -1) colim.class_of[root] = colim.n_classes++;
    colim.class_of[v] = colim.class_of[root];
  }
  return colim;
}

SetCanonical canonical_map(const FinCategory& cat, const SetFunctor&,
                           const std::vector<std::vector<int>>& limit, const SetColimit& colim) {
  SetCanonical canonical;
  canonical.parts = connected_components(cat);
  std::vector<int> base(canonical.parts.count, -1);
  for (int i = cat.n_objects - 1; i >= 0; --i) base[canonical.parts.component[i]] = i;

  canonical.per_component.assign(canonical.parts.count, {});
  for (int c = 0; c < canonical.parts.count; ++c) {
    auto& img = canonical.per_component[c];
    img.reserve(limit.size());
    for (const auto& tuple : limit) {
      const int cls = colim.class_at(base[c], tuple[base[c]]);
      for (int i = 0; i < cat.n_objects; ++i)
        if (canonical.parts.component[i] == c && colim.class_at(i, tuple[i]) != cls)
          throw std::logic_error("canonical_map: image class depends on the chosen object of a component");
      img.push_back(cls);
    }
  }
  return canonical;
}

SetLimColim compute_lim_colim(const FinCategory& cat, const SetFunctor& F) {
  SetLimColim data;
  data.limit = limit_set(cat, F);
  data.colimit = colimit_set(cat, F);
  data.canonical = canonical_map(cat, F, data.limit, data.colimit);
  return data;
}

bool canonical_bijective(const SetLimColim& data) {
  if (data.canonical.per_component.empty())
    return data.limit.size() == static_cast<size_t>(data.colimit.n_classes);  // empty category: 1 vs 0
  const auto& img = data.canonical.per_component[0];
  if (img.size() != static_cast<size_t>(data.colimit.n_classes)) return false;
  std::vector<bool> hit(data.colimit.n_classes, false);
  for (int cls : img) {
    if (hit[cls]) return false;
    hit[cls] = true;
  }
  return true;
}

// ----------------------------- witnesses -----------------------------------

namespace {

SetFunctor empty_vs_singleton(const FinCategory& cat, const std::vector<bool>& empty_side) {
  SetFunctor F;
  F.size.resize(cat.n_objects);
  for (int i = 0; i < cat.n_objects; ++i) F.size[i] = empty_side[i] ? 0 : 1;
  F.action.resize(cat.n_morphisms());
  for (int m = 0; m < cat.n_morphisms(); ++m)
    if (F.size[cat.dom(m)] == 1) {
      if (F.size[cat.cod(m)] == 0)
        throw std::logic_error("witness: arrow from the singleton side into the empty side");
      F.action[m] = {0};
    }
  return F;
}

}  // namespace

SetFunctor witness_not_strongly_connected(const FinCategory& cat, const std::vector<int>& a,
                                          const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("witness_not_strongly_connected: empty part");
  std::vector<bool> empty_side(cat.n_objects, false);
  for (int i : a) empty_side[i] = true;
  return empty_vs_singleton(cat, empty_side);
}

SetFunctor witness_not_connected(const FinCategory& cat, const ComponentPartition& parts) {
  if (parts.count < 2) throw std::invalid_argument("witness_not_connected: category is connected");
  std::vector<bool> empty_side(cat.n_objects, false);
  for (int i = 0; i < cat.n_objects; ++i) empty_side[i] = parts.component[i] == 0;
  return empty_vs_singleton(cat, empty_side);
}

SetFunctor representable(const FinCategory& cat, int i) {
  const HomIndex hom = hom_index(cat);
  SetFunctor F;
  F.size.resize(cat.n_objects);
  for (int j = 0; j < cat.n_objects; ++j) F.size[j] = static_cast<int>(hom(i, j).size());
  F.action.resize(cat.n_morphisms());
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const auto& from = hom(i, cat.dom(m));
    const auto& to = hom(i, cat.cod(m));
    auto& table = F.action[m];
    table.resize(from.size());
    for (size_t k = 0; k < from.size(); ++k) {
      const int composed = cat.compose(m, from[k]);
      const auto it = std::lower_bound(to.begin(), to.end(), composed);
      table[k] = static_cast<int>(it - to.begin());
    }
  }
  return F;
}

std::optional<std::pair<int, SetFunctor>> representable_witness(const FinCategory& cat) {
  for (int i = 0; i < cat.n_objects; ++i) {
    SetFunctor F = representable(cat, i);
    if (limit_set(cat, F).size() != 1) return std::make_pair(i, std::move(F));
  }
  return std::nullopt;
}

std::optional<SetWitness> witness_for_verdict(const FinCategory& cat, const Verdict& verdict) {
  if (verdict.frobenius) return std::nullopt;
  if (verdict.cert<CertEmptyCategory>())
    return SetWitness{SetFunctor{{}, {}}, "empty diagram (limit a singleton, colimit empty)"};
  if (const auto* cert = verdict.cert<CertNotConnected>())
    return SetWitness{witness_not_connected(cat, cert->partition),
                      "empty set on component 0, singletons elsewhere"};
  if (const auto* cert = verdict.cert<CertNotStronglyConnected>())
    return SetWitness{witness_not_strongly_connected(cat, cert->a, cert->b),
                      "empty set on the source part, singletons on the rest"};
  // No invariant system, or none with singleton slots: some representable
  // must fail the singleton-limit criterion.
  if (auto witness = representable_witness(cat))
    return SetWitness{std::move(witness->second),
                      "representable functor at object " + std::to_string(witness->first)};
  return std::nullopt;
}

SetFunctor restrict_functor(const SubCategory& sub, const SetFunctor& F) {
  SetFunctor out;
  out.size.reserve(sub.object_map.size());
  for (int obj : sub.object_map) out.size.push_back(F.size[obj]);
  out.action.reserve(sub.morphism_map.size());
  for (int m : sub.morphism_map) out.action.push_back(F.action[m]);
  return out;
}

// ----------------------------- sampling ------------------------------------

SpanningData spanning_data(const FinCategory& cat) {
  SpanningData span;
  const int nm = cat.n_morphisms();
  span.derivation.resize(nm);
  std::vector<bool> reachable(nm, false);

  auto close = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int g = 0; g < nm; ++g) {
        if (!reachable[g]) continue;
        for (int f = 0; f < nm; ++f) {
          if (!reachable[f]) continue;
          const int h = cat.compose(g, f);
          if (h == -1 || reachable[h]) continue;
          span.derivation[h] = {SpanningData::Derivation::Kind::composite, g, f};
          reachable[h] = true;
          span.order.push_back(h);
          changed = true;
        }
      }
    }
  };

  for (int i = 0; i < cat.n_objects; ++i) {
    const int id = cat.identity[i];
    if (reachable[id]) continue;
    span.derivation[id] = {SpanningData::Derivation::Kind::identity, -1, -1};
    reachable[id] = true;
    span.order.push_back(id);
  }
  close();
  for (int m = 0; m < nm; ++m) {
    if (reachable[m]) continue;
    span.derivation[m] = {SpanningData::Derivation::Kind::generator, -1, -1};
    reachable[m] = true;
    span.order.push_back(m);
    span.generators.push_back(m);
    close();
  }
  return span;
}

std::optional<SetFunctor> sample_set_functor(const FinCategory& cat, const SpanningData& span, Rng& rng,
                                             int max_size, int max_retries) {
  const int nm = cat.n_morphisms();
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    SetFunctor F;
    F.size.resize(cat.n_objects);
    for (int i = 0; i < cat.n_objects; ++i) F.size[i] = rng.below(max_size + 1);

    bool feasible = true;  // no function from a nonempty set into the empty set
    for (int m = 0; m < nm && feasible; ++m)
      if (F.size[cat.dom(m)] > 0 && F.size[cat.cod(m)] == 0) feasible = false;
    if (!feasible) continue;

    F.action.assign(nm, {});
    for (int m : span.order) {
      const auto& d = span.derivation[m];
      auto& table = F.action[m];
      const int dom_size = F.size[cat.dom(m)];
      table.resize(dom_size);
      switch (d.kind) {
        case SpanningData::Derivation::Kind::identity:
          std::iota(table.begin(), table.end(), 0);
          break;
        case SpanningData::Derivation::Kind::generator: {
          const int cod_size = F.size[cat.cod(m)];
          for (int x = 0; x < dom_size; ++x) table[x] = rng.below(cod_size);
          break;
        }
        case SpanningData::Derivation::Kind::composite:
          for (int x = 0; x < dom_size; ++x) table[x] = F.action[d.g][F.action[d.f][x]];
          break;
      }
    }
    if (!check_set_functor(cat, F)) return F;
  }
  return std::nullopt;
}

std::optional<SetNatTransform> sample_set_nat(const FinCategory& cat, const SetFunctor& F, const SetFunctor& G,
                                              Rng& rng, int64_t node_budget) {
  const int n = cat.n_objects;
  const ObjectArrows arrows = object_arrows(cat);
  SetNatTransform eta;
  eta.component.assign(n, {});
  std::vector<bool> assigned(n, false);
  int64_t nodes = 0;

  // Component at object k: points forced through incoming morphisms from
  // assigned objects, free points enumerated in a shuffled order.
  auto dfs = [&](auto&& self, int k) -> bool {
    if (k == n) return true;
    if (++nodes > node_budget) return false;

    std::vector<int> forced(F.size[k], -1);
    for (int m : arrows.in[k]) {
      const int j = cat.dom(m);
      if (!assigned[j]) continue;
      for (int x = 0; x < F.size[j]; ++x) {
        const int point = F.action[m][x];
        const int value = G.action[m][eta.component[j][x]];
        if (forced[point] == -1)
          forced[point] = value;
        else if (forced[point] != value)
          return false;
      }
    }
    std::vector<int> free_points;
    for (int x = 0; x < F.size[k]; ++x)
      if (forced[x] == -1) free_points.push_back(x);
    if (!free_points.empty() && G.size[k] == 0) return false;

    uint64_t candidates = 1;
    for (size_t t = 0; t < free_points.size(); ++t) {
      candidates *= static_cast<uint64_t>(G.size[k]);
      if (candidates > static_cast<uint64_t>(node_budget)) return false;
    }
    std::vector<uint64_t> order(candidates);
    std::iota(order.begin(), order.end(), 0);
    for (size_t t = order.size(); t > 1; --t) std::swap(order[t - 1], order[rng.below(static_cast<int>(t))]);

    for (uint64_t code : order) {
      if (++nodes > node_budget) return false;
      eta.component[k] = forced;
      uint64_t rest = code;
      for (int point : free_points) {
        eta.component[k][point] = static_cast<int>(rest % G.size[k]);
        rest /= G.size[k];
      }
      assigned[k] = true;
      // check squares whose endpoints are both assigned and involve k
      bool ok = true;
      for (int m = 0; m < cat.n_morphisms() && ok; ++m) {
        const int i = cat.dom(m), j = cat.cod(m);
        if (!(assigned[i] && assigned[j])) continue;
        if (i != k && j != k) continue;
        for (int x = 0; x < F.size[i] && ok; ++x)
          if (eta.component[j][F.action[m][x]] != G.action[m][eta.component[i][x]]) ok = false;
      }
      if (ok && self(self, k + 1)) return true;
      assigned[k] = false;
    }
    eta.component[k].clear();
    return false;
  };

  if (!dfs(dfs, 0)) return std::nullopt;
  return eta;
}

// ----------------------------- oracle run ----------------------------------

namespace {

// lim(eta) and colim(eta) evaluated against the canonical maps of F and G:
// for every limit tuple t of F, class_G(eta(ψ_F-preimage)) must match.
std::optional<std::string> check_canonical_naturality(const FinCategory& cat, const SetFunctor& F,
                                                      const SetFunctor&, const SetNatTransform& eta,
                                                      const SetLimColim& dataF, const SetLimColim& dataG) {
  // colim(eta): class of F-colimit -> class of G-colimit, defined elementwise.
  std::vector<int> colim_eta(dataF.colimit.n_classes, -1);
  for (int i = 0; i < cat.n_objects; ++i)
    for (int x = 0; x < F.size[i]; ++x) {
      const int from = dataF.colimit.class_at(i, x);
      const int to = dataG.colimit.class_at(i, eta.component[i][x]);
      if (colim_eta[from] == -1)
        colim_eta[from] = to;
      else if (colim_eta[from] != to)
        return "colim(eta) is not well-defined";
    }

  for (size_t t = 0; t < dataF.limit.size(); ++t) {
    // lim(eta) of the tuple `t`
    std::vector<int> mapped(cat.n_objects);
    for (int i = 0; i < cat.n_objects; ++i) mapped[i] = eta.component[i][dataF.limit[t][i]];
    const auto it = std::lower_bound(dataG.limit.begin(), dataG.limit.end(), mapped);
    if (it == dataG.limit.end() || *it != mapped) return "lim(eta) leaves the limit";
    const size_t tg = static_cast<size_t>(it - dataG.limit.begin());
    const int lhs = colim_eta[dataF.canonical.per_component[0][t]];
    const int rhs = dataG.canonical.per_component[0][tg];
    if (lhs != rhs) return "canonical map is not natural for the sampled transform";
  }
  return std::nullopt;
}

}  // namespace

SetOracleReport sample_check_set(const FinCategory& cat, const SetOracleOptions& options) {
  SetOracleReport report;
  report.options = options;
  report.verdict = decide_set(cat);

  const SpanningData span = spanning_data(cat);
  std::vector<std::optional<SetFunctor>> samples(options.n_samples);
  for_each_index(options.n_samples, options.mode, [&](int64_t k) {
    Rng rng = Rng::stream(options.seed, static_cast<uint64_t>(k));
    samples[k] = sample_set_functor(cat, span, rng, options.max_size, options.max_retries);
  });
  for (int k = 0; k < options.n_samples; ++k)
    if (!samples[k])
      throw std::runtime_error("sample_check_set: functor sampling failed after " +
                               std::to_string(options.max_retries) + " retries (sample " + std::to_string(k) + ")");
  report.n_generated = options.n_samples;

  std::vector<SetLimColim> data(options.n_samples);
  std::vector<uint8_t> bijective(options.n_samples, 0);
  for_each_index(options.n_samples, options.mode, [&](int64_t k) {
    data[k] = compute_lim_colim(cat, *samples[k]);
    bijective[k] = canonical_bijective(data[k]) ? 1 : 0;
  });

  if (report.verdict.frobenius) {
    for (int k = 0; k < options.n_samples; ++k) {
      if (bijective[k]) {
        ++report.n_canonical_bijective;
      } else {
        report.consistent = false;
        report.failures.push_back("sample " + std::to_string(k) + ": canonical map is not bijective (" +
                                  std::to_string(data[k].limit.size()) + " limit tuples vs " +
                                  std::to_string(data[k].colimit.n_classes) + " colimit classes)");
      }
    }
    std::vector<std::optional<std::string>> nat_failures(std::max(0, options.n_samples - 1));
    std::vector<uint8_t> nat_checked(std::max(0, options.n_samples - 1), 0);
    for_each_index(options.n_samples - 1, options.mode, [&](int64_t k) {
      Rng rng = Rng::stream(options.seed, static_cast<uint64_t>(options.n_samples + k));
      const auto eta = sample_set_nat(cat, *samples[k], *samples[k + 1], rng);
      if (!eta) return;
      nat_checked[k] = 1;
      if (const auto err = check_set_nat(cat, *samples[k], *samples[k + 1], *eta)) {
        nat_failures[k] = "sample pair " + std::to_string(k) + ": sampled transform is not natural: " + *err;
        return;
      }
      nat_failures[k] = check_canonical_naturality(cat, *samples[k], *samples[k + 1], *eta, data[k], data[k + 1]);
      if (nat_failures[k]) *nat_failures[k] = "sample pair " + std::to_string(k) + ": " + *nat_failures[k];
    });
    for (int k = 0; k + 1 < options.n_samples; ++k) {
      if (!nat_checked[k]) {
        ++report.n_transforms_skipped;
        continue;
      }
      ++report.n_transforms_checked;
      if (nat_failures[k]) {
        report.consistent = false;
        report.failures.push_back(*nat_failures[k]);
      }
    }
  } else {
    for (int k = 0; k < options.n_samples; ++k)
      if (data[k].limit.size() != static_cast<size_t>(data[k].colimit.n_classes)) ++report.n_lim_neq_colim;

    const auto witness = witness_for_verdict(cat, report.verdict);
    if (!witness) {
      report.consistent = false;
      report.failures.push_back("no executable witness found for the negative verdict");
    } else {
      report.witness_checked = true;
      report.witness_description = witness->description;
      if (const auto err = check_set_functor(cat, witness->functor)) {
        report.consistent = false;
        report.failures.push_back("witness functor is not functorial: " + *err);
      } else {
        report.witness_lim = limit_set(cat, witness->functor).size();
        report.witness_colim = static_cast<size_t>(colimit_set(cat, witness->functor).n_classes);
        if (report.witness_lim == report.witness_colim) {
          report.consistent = false;
          report.failures.push_back("witness functor has |lim| = |colim| = " + std::to_string(report.witness_lim));
        }
      }
    }
  }
  return report;
}

}  // namespace frobcat
