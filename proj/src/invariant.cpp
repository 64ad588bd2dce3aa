#include "frobcat/invariant.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace frobcat {

namespace {

bool slot_subset_of_hom(const FinCategory& cat, const InvariantSystem& family, int i, int j) {
  for (int m : family.slot(i, j))
    if (m < 0 || m >= cat.n_morphisms() || cat.dom(m) != i || cat.cod(m) != j) return false;
  return true;
}

// Does s -> compose(ctx, s) (or compose(s, ctx)) map `from` bijectively onto `to`?
bool maps_bijectively(const FinCategory& cat, const std::vector<int>& from, const std::vector<int>& to,
                      int ctx, bool left) {
  if (from.size() != to.size()) return false;
  std::vector<int> image;
  image.reserve(from.size());
  for (int s : from) image.push_back(left ? cat.compose(ctx, s) : cat.compose(s, ctx));
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  return image == to;  // `to` slots are kept sorted
}

}  // namespace

IsCheck verify_is(const FinCategory& cat, const InvariantSystem& family) {
  const int n = cat.n_objects;
  if (family.n_objects != n || family.sets.size() != static_cast<size_t>(n) * n)
    return {false, "family has the wrong shape"};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (family.slot(i, j).empty())
        return {false, "empty slot S(" + std::to_string(i) + "," + std::to_string(j) + ")"};
      if (!slot_subset_of_hom(cat, family, i, j))
        return {false, "slot S(" + std::to_string(i) + "," + std::to_string(j) + ") is not a subset of hom(" +
                           std::to_string(i) + "," + std::to_string(j) + ")"};
    }
  // LS: f: j -> k sends S(i, j) bijectively onto S(i, k).
  for (int f = 0; f < cat.n_morphisms(); ++f) {
    const int j = cat.dom(f), k = cat.cod(f);
    for (int i = 0; i < n; ++i)
      if (!maps_bijectively(cat, family.slot(i, j), family.slot(i, k), f, /*left=*/true))
        return {false, "LS violated: '" + cat.name(f) + "' does not map S(" + std::to_string(i) + "," +
                           std::to_string(j) + ") bijectively onto S(" + std::to_string(i) + "," +
                           std::to_string(k) + ")"};
  }
  // RS: f: k -> i sends S(i, j) bijectively onto S(k, j).
  for (int f = 0; f < cat.n_morphisms(); ++f) {
    const int k = cat.dom(f), i = cat.cod(f);
    for (int j = 0; j < n; ++j)
      if (!maps_bijectively(cat, family.slot(i, j), family.slot(k, j), f, /*left=*/false))
        return {false, "RS violated: '" + cat.name(f) + "' does not map S(" + std::to_string(i) + "," +
                           std::to_string(j) + ") bijectively onto S(" + std::to_string(k) + "," +
                           std::to_string(j) + ")"};
  }
  return {true, ""};
}

InvariantSystem closure(const FinCategory& cat, int seed) {
  const int n = cat.n_objects;
  InvariantSystem family;
  family.n_objects = n;
  family.sets.assign(static_cast<size_t>(n) * n, {});

  std::vector<bool> member(cat.n_morphisms(), false);
  std::deque<int> work;
  auto add = [&](int m) {
    if (m == -1 || member[m]) return;
    member[m] = true;
    work.push_back(m);
  };
  add(seed);
  while (!work.empty()) {
    const int s = work.front();
    work.pop_front();
    for (int f = 0; f < cat.n_morphisms(); ++f) {
      add(cat.compose(f, s));
      add(cat.compose(s, f));
    }
  }
  for (int m = 0; m < cat.n_morphisms(); ++m)
    if (member[m]) family.slot(cat.dom(m), cat.cod(m)).push_back(m);
  return family;  // slots come out sorted: morphisms are scanned in index order
}

FindIsResult find_is(const FinCategory& cat) {
  if (connected_components(cat).count != 1)
    throw std::invalid_argument("find_is: category is not connected");
  FindIsResult result;
  const StrongConnectivity sc = is_strongly_connected(cat);
  if (!sc.strongly_connected) {
    result.strongly_connected = false;
    result.witness_a = sc.a;
    result.witness_b = sc.b;
    return result;
  }

  const HomIndex hom = hom_index(cat);
  for (int seed : hom(0, 0)) {
    SeedOutcome outcome;
    outcome.seed = seed;
    const InvariantSystem family = closure(cat, seed);
    const IsCheck check = verify_is(cat, family);
    if (!check.ok) {
      outcome.note = check.violation;
      result.trace.push_back(outcome);
      continue;
    }
    outcome.passed = true;
    outcome.cardinality = family.cardinality();
    if (std::find(result.all.begin(), result.all.end(), family) != result.all.end())
      outcome.note = "duplicate of an earlier closure";
    else
      result.all.push_back(family);
    result.trace.push_back(outcome);
  }
  for (const InvariantSystem& family : result.all)
    if (!result.preferred || family.cardinality() < result.preferred->cardinality())
      result.preferred = family;
  return result;
}

std::vector<InvariantSystem> brute_force_find_is(const FinCategory& cat, int budget, Exec mode) {
  if (cat.n_morphisms() > budget)
    throw std::invalid_argument("brute_force_find_is: " + std::to_string(cat.n_morphisms()) +
                                " morphisms exceed the budget of " + std::to_string(budget));
  const int n = cat.n_objects;
  const HomIndex hom = hom_index(cat);

  // Mixed-radix enumeration: one digit per slot, counting the nonempty
  // subsets of that hom-set. Any empty hom-set means no candidate family.
  std::vector<uint64_t> radix(static_cast<size_t>(n) * n, 0);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const uint64_t r = (uint64_t{1} << hom(i, j).size()) - 1;
      radix[static_cast<size_t>(i) * n + j] = r;
      total *= r;
      if (r == 0) total = 0;
    }
  if (total == 0) return {};

  std::vector<uint8_t> passed(total, 0);
  for_each_index(static_cast<int64_t>(total), mode, [&](int64_t index) {
    InvariantSystem family;
    family.n_objects = n;
    family.sets.assign(static_cast<size_t>(n) * n, {});
    uint64_t rest = static_cast<uint64_t>(index);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const size_t slot = static_cast<size_t>(i) * n + j;
        const uint64_t mask = rest % radix[slot] + 1;  // 1 .. 2^h - 1
        rest /= radix[slot];
        const auto& homs = hom(i, j);
        for (size_t b = 0; b < homs.size(); ++b)
          if (mask & (uint64_t{1} << b)) family.slot(i, j).push_back(homs[b]);
      }
    if (verify_is(cat, family).ok) passed[index] = 1;
  });

  std::vector<InvariantSystem> found;
  for (uint64_t index = 0; index < total; ++index) {
    if (!passed[index]) continue;
    InvariantSystem family;
    family.n_objects = n;
    family.sets.assign(static_cast<size_t>(n) * n, {});
    uint64_t rest = index;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const size_t slot = static_cast<size_t>(i) * n + j;
        const uint64_t mask = rest % radix[slot] + 1;
        rest /= radix[slot];
        const auto& homs = hom(i, j);
        for (size_t b = 0; b < homs.size(); ++b)
          if (mask & (uint64_t{1} << b)) family.slot(i, j).push_back(homs[b]);
      }
    found.push_back(std::move(family));
  }
  return found;
}

std::vector<int> idempotents(const FinCategory& cat, const InvariantSystem& is) {
  std::vector<int> e(cat.n_objects, -1);
  for (int i = 0; i < cat.n_objects; ++i) {
    for (int s : is.slot(i, i)) {
      if (cat.compose(s, s) != s) continue;
      if (e[i] != -1)
        throw std::logic_error("idempotents: two idempotents in S(" + std::to_string(i) + "," +
                               std::to_string(i) + "): '" + cat.name(e[i]) + "' and '" + cat.name(s) + "'");
      e[i] = s;
    }
    if (e[i] == -1)
      throw std::logic_error("idempotents: no idempotent in S(" + std::to_string(i) + "," + std::to_string(i) + ")");
  }
  return e;
}

int GroupData::inverse(int a) const {
  for (int b = 0; b < order; ++b)
    if (mult(a, b) == unit && mult(b, a) == unit) return b;
  return -1;
}

GroupData group_of(const FinCategory& cat, const InvariantSystem& is) {
  GroupData group;
  group.elems = is.slot(0, 0);
  group.order = static_cast<int>(group.elems.size());
  group.table.assign(static_cast<size_t>(group.order) * group.order, -1);
  auto pos = [&group](int m) {
    const auto it = std::lower_bound(group.elems.begin(), group.elems.end(), m);
    return it != group.elems.end() && *it == m ? static_cast<int>(it - group.elems.begin()) : -1;
  };
  for (int a = 0; a < group.order; ++a)
    for (int b = 0; b < group.order; ++b) {
      const int c = pos(cat.compose(group.elems[a], group.elems[b]));
      if (c == -1) throw std::logic_error("group_of: S(0,0) is not closed under composition");
      group.table[static_cast<size_t>(a) * group.order + b] = c;
    }

  const std::vector<int> e = idempotents(cat, is);
  group.unit = pos(e[0]);
  for (int a = 0; a < group.order; ++a) {
    if (group.mult(group.unit, a) != a || group.mult(a, group.unit) != a)
      throw std::logic_error("group_of: idempotent is not a unit on S(0,0)");
    if (group.inverse(a) == -1)
      throw std::logic_error("group_of: element '" + cat.name(group.elems[a]) + "' has no inverse");
  }
  for (int a = 0; a < group.order; ++a)
    for (int b = 0; b < group.order; ++b)
      for (int c = 0; c < group.order; ++c)
        if (group.mult(group.mult(a, b), c) != group.mult(a, group.mult(b, c)))
          throw std::logic_error("group_of: multiplication is not associative");
  return group;
}

Groupoid groupoid(const FinCategory& cat, const InvariantSystem& is) {
  Groupoid gpd;
  gpd.parent_to_groupoid.assign(cat.n_morphisms(), -1);
  gpd.cat.n_objects = cat.n_objects;
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const auto& slot = is.slot(cat.dom(m), cat.cod(m));
    if (!std::binary_search(slot.begin(), slot.end(), m)) continue;
    gpd.parent_to_groupoid[m] = static_cast<int>(gpd.morphism_map.size());
    gpd.morphism_map.push_back(m);
    gpd.cat.morphisms.push_back(cat.morphisms[m]);
  }
  const std::vector<int> e = idempotents(cat, is);
  for (int i = 0; i < cat.n_objects; ++i) gpd.cat.identity.push_back(gpd.parent_to_groupoid[e[i]]);
  const int nm = static_cast<int>(gpd.morphism_map.size());
  gpd.cat.comp.assign(static_cast<size_t>(nm) * nm, -1);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      const int h = cat.compose(gpd.morphism_map[g], gpd.morphism_map[f]);
      if (h == -1) continue;
      if (gpd.parent_to_groupoid[h] == -1)
        throw std::logic_error("groupoid: slots are not closed under composition");
      gpd.cat.comp[static_cast<size_t>(g) * nm + f] = gpd.parent_to_groupoid[h];
    }
  return gpd;
}

std::vector<int> tau(const FinCategory& cat, const InvariantSystem& is) {
  const std::vector<int> e = idempotents(cat, is);
  std::vector<int> image(cat.n_morphisms(), -1);
  for (int f = 0; f < cat.n_morphisms(); ++f) {
    const int fe = cat.compose(f, e[cat.dom(f)]);
    image[f] = cat.compose(e[cat.cod(f)], fe);
    const auto& slot = is.slot(cat.dom(f), cat.cod(f));
    if (!std::binary_search(slot.begin(), slot.end(), image[f]))
      throw std::logic_error("tau: image of '" + cat.name(f) + "' is not in its slot");
  }
  return image;
}

}  // namespace frobcat
