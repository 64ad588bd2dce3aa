#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "frobcat/invariant.hpp"
#include "frobcat/set_oracle.hpp"

using namespace frobcat;
using namespace frobcat::tests;

namespace {

SetFunctor constant_singleton(const FinCategory& cat) {
  SetFunctor F;
  F.size.assign(cat.n_objects, 1);
  F.action.assign(cat.n_morphisms(), {0});
  return F;
}

SetFunctor regular_action(const FinCategory& group_cat) {
  // a one-object group acting on itself by left multiplication
  const int n = group_cat.n_morphisms();
  SetFunctor F;
  F.size = {n};
  F.action.assign(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) F.action[g][x] = group_cat.compose(g, x);
  return F;
}

// direct fixed-point / orbit computation, the oracle for group actions
std::vector<int> fixed_points(const FinCategory& cat, const SetFunctor& F) {
  std::vector<int> fixed;
  for (int x = 0; x < F.size[0]; ++x) {
    bool ok = true;
    for (int m = 0; m < cat.n_morphisms() && ok; ++m) ok = F.action[m][x] == x;
    if (ok) fixed.push_back(x);
  }
  return fixed;
}

int orbit_count(const FinCategory& cat, const SetFunctor& F) {
  std::vector<bool> seen(F.size[0], false);
  int orbits = 0;
  for (int x = 0; x < F.size[0]; ++x) {
    if (seen[x]) continue;
    ++orbits;
    std::vector<int> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      const int y = stack.back();
      stack.pop_back();
      for (int m = 0; m < cat.n_morphisms(); ++m)
        if (!seen[F.action[m][y]]) {
          seen[F.action[m][y]] = true;
          stack.push_back(F.action[m][y]);
        }
    }
  }
  return orbits;
}

}  // namespace

TEST_CASE("functoriality is validated on construction") {
  const FinCategory c2 = from_group_cyclic(2);
  CHECK_THROWS_AS(make_set_functor(c2, {2}, {{0, 1}, {0, 0}}), std::invalid_argument);  // g∘g != id
  CHECK_NOTHROW(make_set_functor(c2, {2}, {{0, 1}, {1, 0}}));
}

TEST_CASE("limit of a constant singleton is one tuple") {
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    CAPTURE(entry.name);
    CHECK(limit_set(entry.cat, constant_singleton(entry.cat)).size() == 1);
  }
}

TEST_CASE("regular action of a cyclic group has no fixed tuple and one class") {
  const FinCategory c2 = from_group_cyclic(2);
  const SetFunctor F = make_set_functor(c2, {2}, {{0, 1}, {1, 0}});
  CHECK(limit_set(c2, F).empty());
  CHECK(colimit_set(c2, F).n_classes == 1);
}

TEST_CASE("parallel pair example") {
  const FinCategory pp = parallel(2);
  // F(0) = {x, y}, F(1) = {u, v}, a = (x->u, y->v), b = (x->u, y->u)
  const SetFunctor F = make_set_functor(pp, {2, 2}, {{0, 1}, {0, 1}, {0, 1}, {0, 0}});
  const auto tuples = limit_set(pp, F);
  REQUIRE(tuples.size() == 1);
  CHECK(tuples[0] == std::vector<int>{0, 0});
  CHECK(colimit_set(pp, F).n_classes == 1);
}

TEST_CASE("coproduct on a discrete category") {
  const FinCategory d2 = discrete(2);
  const SetFunctor F = make_set_functor(d2, {2, 3}, {{0, 1}, {0, 1, 2}});
  CHECK(colimit_set(d2, F).n_classes == 5);
  CHECK(limit_set(d2, F).size() == 6);  // the product
}

TEST_CASE("canonical map for an idempotent action") {
  const FinCategory m = idempotent_monoid();
  // e collapses 4 points onto the 2 fixed ones
  const SetFunctor F = make_set_functor(m, {4}, {{0, 1, 2, 3}, {0, 0, 2, 2}});
  const SetLimColim data = compute_lim_colim(m, F);
  CHECK(data.limit.size() == 2);
  CHECK(data.colimit.n_classes == 2);
  CHECK(canonical_bijective(data));
}

TEST_CASE("canonical map on the constant singleton and the regular action") {
  const FinCategory c2 = from_group_cyclic(2);
  CHECK(canonical_bijective(compute_lim_colim(c2, constant_singleton(c2))));
  const SetLimColim reg = compute_lim_colim(c2, regular_action(c2));
  CHECK(reg.limit.empty());
  CHECK(reg.colimit.n_classes == 1);
  CHECK_FALSE(canonical_bijective(reg));
}

TEST_CASE("limit tuples come out in lexicographic order") {
  Rng rng(61);
  for (const auto& entry : standard_corpus()) {
    const SpanningData span = spanning_data(entry.cat);
    for (int trial = 0; trial < 10; ++trial) {
      const auto F = sample_set_functor(entry.cat, span, rng, 3, 5000);
      REQUIRE(F.has_value());
      const auto tuples = limit_set(entry.cat, *F);
      CAPTURE(entry.name);
      CHECK(std::is_sorted(tuples.begin(), tuples.end()));
      CHECK(std::adjacent_find(tuples.begin(), tuples.end()) == tuples.end());
    }
  }
}

TEST_CASE("limit of the empty diagram is a singleton, its colimit is empty") {
  const FinCategory empty = discrete(0);
  const SetFunctor none{{}, {}};
  CHECK(limit_set(empty, none).size() == 1);
  CHECK(colimit_set(empty, none).n_classes == 0);
}

TEST_CASE("witness functors have mismatched cardinalities") {
  const StrongConnectivity sc = is_strongly_connected(arrow());
  const SetFunctor w = witness_not_strongly_connected(arrow(), sc.a, sc.b);
  CHECK(limit_set(arrow(), w).empty());
  CHECK(colimit_set(arrow(), w).n_classes == 1);

  const StrongConnectivity scp = is_strongly_connected(parallel(2));
  const SetFunctor wp = witness_not_strongly_connected(parallel(2), scp.a, scp.b);
  CHECK(limit_set(parallel(2), wp).empty());
  CHECK(colimit_set(parallel(2), wp).n_classes == 1);

  const FinCategory d2 = discrete(2);
  const SetFunctor wd = witness_not_connected(d2, connected_components(d2));
  CHECK(limit_set(d2, wd).empty());
  CHECK(colimit_set(d2, wd).n_classes == 1);
}

TEST_CASE("representable functors: singleton colimit always, singleton limit iff the verdict is yes") {
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    if (!is_strongly_connected(entry.cat).strongly_connected) continue;
    CAPTURE(entry.name);
    const bool yes = decide_set(entry.cat).frobenius;
    for (int i = 0; i < entry.cat.n_objects; ++i) {
      const SetFunctor F = representable(entry.cat, i);
      CHECK_FALSE(check_set_functor(entry.cat, F).has_value());
      CHECK(colimit_set(entry.cat, F).n_classes == 1);
      if (yes) CHECK(limit_set(entry.cat, F).size() == 1);
    }
    if (!yes) CHECK(representable_witness(entry.cat).has_value());
  }
}

TEST_CASE("representable limit values on the named examples") {
  const FinCategory c2 = from_group_cyclic(2);
  CHECK(limit_set(c2, representable(c2, 0)).empty());

  const FinCategory m = idempotent_monoid();
  const auto tuples = limit_set(m, representable(m, 0));
  REQUIRE(tuples.size() == 1);
  CHECK(tuples[0] == std::vector<int>{m.morphism_index("e")});
}

TEST_CASE("group actions: limits are fixed points, colimits are orbits") {
  Rng rng(41);
  std::vector<FinCategory> groups;
  for (int n = 1; n <= 6; ++n) groups.push_back(from_group_cyclic(n));
  groups.push_back(klein_four());
  groups.push_back(sym3());
  for (const FinCategory& group : groups) {
    const SpanningData span = spanning_data(group);
    for (int trial = 0; trial < 20; ++trial) {
      const auto F = sample_set_functor(group, span, rng, 4, 20000);
      REQUIRE(F.has_value());
      CHECK(limit_set(group, *F).size() == fixed_points(group, *F).size());
      CHECK(colimit_set(group, *F).n_classes == orbit_count(group, *F));
    }
  }
}

TEST_CASE("sampling failure surfaces as an explicit error") {
  const FinCategory c8 = from_group_cyclic(8);
  SetOracleOptions options;
  options.n_samples = 1;
  options.seed = 2;       // first draw is non-functorial for this stream
  options.max_retries = 1;
  CHECK_THROWS_AS(sample_check_set(c8, options), std::runtime_error);
}

TEST_CASE("component decomposition of limits and colimits") {
  Rng rng(17);
  for (const auto& entry : standard_corpus()) {
    const ComponentPartition parts = connected_components(entry.cat);
    if (parts.count < 2) continue;
    const SpanningData span = spanning_data(entry.cat);
    for (int trial = 0; trial < 25; ++trial) {
      const auto F = sample_set_functor(entry.cat, span, rng, 3, 5000);
      REQUIRE(F.has_value());
      size_t product = 1;
      int classes = 0;
      for (int c = 0; c < parts.count; ++c) {
        const SubCategory sub = component_subcategory(entry.cat, parts, c);
        const SetFunctor restricted = restrict_functor(sub, *F);
        product *= limit_set(sub.cat, restricted).size();
        classes += colimit_set(sub.cat, restricted).n_classes;
      }
      CAPTURE(entry.name);
      CHECK(limit_set(entry.cat, *F).size() == product);
      CHECK(colimit_set(entry.cat, *F).n_classes == classes);
    }
  }
}

TEST_CASE("restriction to the slot monoid preserves the limit cardinality") {
  Rng rng(23);
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    const FindIsResult found = find_is(entry.cat);
    if (!found.preferred) continue;
    const SpanningData span = spanning_data(entry.cat);
    for (int i = 0; i < entry.cat.n_objects; ++i) {
      std::vector<int> endos = found.preferred->slot(i, i);
      const SubCategory monoid = endo_subcategory(entry.cat, i, endos);
      for (int trial = 0; trial < 15; ++trial) {
        const auto F = sample_set_functor(entry.cat, span, rng, 3, 5000);
        REQUIRE(F.has_value());
        CAPTURE(entry.name);
        CHECK(limit_set(entry.cat, *F).size() ==
              limit_set(monoid.cat, restrict_functor(monoid, *F)).size());
      }
    }
  }
}

TEST_CASE("sampled functors are functorial and spanning data covers every morphism") {
  Rng rng(5);
  for (const auto& entry : standard_corpus()) {
    const SpanningData span = spanning_data(entry.cat);
    CHECK(span.order.size() == static_cast<size_t>(entry.cat.n_morphisms()));
    const auto F = sample_set_functor(entry.cat, span, rng, 4, 5000);
    REQUIRE(F.has_value());
    CHECK_FALSE(check_set_functor(entry.cat, *F).has_value());
  }
}

TEST_CASE("sampled natural transformations satisfy naturality") {
  Rng rng(77);
  const FinCategory m = idempotent_monoid();
  const SpanningData span = spanning_data(m);
  int found = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto F = sample_set_functor(m, span, rng, 3, 5000);
    const auto G = sample_set_functor(m, span, rng, 3, 5000);
    REQUIRE(F.has_value());
    REQUIRE(G.has_value());
    const auto eta = sample_set_nat(m, *F, *G, rng);
    if (!eta) continue;
    ++found;
    CHECK_FALSE(check_set_nat(m, *F, *G, *eta).has_value());
  }
  CHECK(found > 10);
}

TEST_CASE("oracle run is consistent on every corpus category") {
  for (const auto& entry : standard_corpus()) {
    SetOracleOptions options;
    options.n_samples = 40;
    options.seed = 2025;
    const SetOracleReport report = sample_check_set(entry.cat, options);
    CAPTURE(entry.name);
    CHECK_MESSAGE(report.consistent, entry.name, ": ",
                  report.failures.empty() ? "" : report.failures.front());
    if (report.verdict.frobenius) CHECK(report.n_canonical_bijective == report.n_generated);
  }
}
