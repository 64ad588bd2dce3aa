#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "frobcat/invariant.hpp"

using namespace frobcat;
using namespace frobcat::tests;

namespace {

InvariantSystem single_slot(const FinCategory& cat, std::vector<int> members) {
  InvariantSystem family;
  family.n_objects = cat.n_objects;
  family.sets.assign(static_cast<size_t>(cat.n_objects) * cat.n_objects, {});
  std::sort(members.begin(), members.end());
  family.slot(0, 0) = std::move(members);
  return family;
}

}  // namespace

TEST_CASE("verify_is on the two-element monoid") {
  const FinCategory m = idempotent_monoid();
  CHECK(verify_is(m, single_slot(m, {m.morphism_index("e")})).ok);
  const IsCheck bad = verify_is(m, single_slot(m, {m.morphism_index("1")}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.find("'e'") != std::string::npos);
}

TEST_CASE("verify_is on the cyclic group of order two") {
  const FinCategory c2 = from_group_cyclic(2);
  CHECK(verify_is(c2, single_slot(c2, {0, 1})).ok);
  CHECK_FALSE(verify_is(c2, single_slot(c2, {0})).ok);
}

TEST_CASE("verify_is reports the violated side") {
  // left-zero fails the left axiom on {e}; right-zero fails the right axiom on {e, f}
  const FinCategory lz = left_zero_monoid();
  const IsCheck left = verify_is(lz, single_slot(lz, {lz.morphism_index("e")}));
  CHECK_FALSE(left.ok);
  CHECK(left.violation.rfind("LS", 0) == 0);
  const FinCategory rz = right_zero_monoid();
  const IsCheck right =
      verify_is(rz, single_slot(rz, {rz.morphism_index("e"), rz.morphism_index("f")}));
  CHECK_FALSE(right.ok);
  CHECK(right.violation.rfind("RS", 0) == 0);
}

TEST_CASE("verify_is rejects empty slots") {
  const FinCategory a = arrow();
  InvariantSystem family;
  family.n_objects = 2;
  family.sets.assign(4, {});
  family.slot(0, 0) = {0};
  family.slot(1, 1) = {1};
  family.slot(0, 1) = {2};
  const IsCheck check = verify_is(a, family);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("empty slot") != std::string::npos);
}

TEST_CASE("closure worklist examples") {
  const FinCategory m = idempotent_monoid();
  CHECK(closure(m, m.morphism_index("e")).slot(0, 0) == std::vector<int>{m.morphism_index("e")});

  const FinCategory c5 = from_group_cyclic(5);
  for (int seed = 0; seed < 5; ++seed)
    CHECK(closure(c5, seed).slot(0, 0) == std::vector<int>{0, 1, 2, 3, 4});

  const FinCategory plus = adjoin_unit(from_group_cyclic(2));
  const std::vector<int> embedded{plus.morphism_index("e"), plus.morphism_index("g")};
  CHECK(closure(plus, plus.morphism_index("e")).slot(0, 0) == embedded);
}

TEST_CASE("find_is on the standard examples") {
  const FindIsResult m = find_is(idempotent_monoid());
  REQUIRE(m.preferred.has_value());
  CHECK(m.preferred->cardinality() == 1);
  CHECK(m.all.size() == 1);

  const FindIsResult c2 = find_is(from_group_cyclic(2));
  REQUIRE(c2.preferred.has_value());
  CHECK(c2.preferred->cardinality() == 2);

  const FindIsResult lz = find_is(left_zero_monoid());
  CHECK_FALSE(lz.preferred.has_value());
  CHECK(lz.all.empty());
  CHECK(lz.trace.size() == 3);  // every seed of End(0) leaves a note

  const FindIsResult rz = find_is(right_zero_monoid());
  CHECK_FALSE(rz.preferred.has_value());
}

TEST_CASE("find_is returns the not-strongly-connected witness") {
  const FindIsResult a = find_is(arrow());
  CHECK_FALSE(a.strongly_connected);
  CHECK(a.witness_a == std::vector<int>{0});
  CHECK_FALSE(a.preferred.has_value());
}

TEST_CASE("brute force IS enumeration") {
  CHECK(brute_force_find_is(idempotent_monoid()).size() == 1);
  CHECK(brute_force_find_is(from_group_cyclic(3)).size() == 1);
  CHECK(brute_force_find_is(arrow()).empty());
  CHECK(brute_force_find_is(left_zero_monoid()).empty());
  CHECK_THROWS_AS(brute_force_find_is(from_group_cyclic(5), 4), std::invalid_argument);
}

TEST_CASE("oracle agreement: closure search vs brute force on the corpus") {
  for (const auto& entry : standard_corpus()) {
    CAPTURE(entry.name);
    const std::vector<InvariantSystem> all = brute_force_find_is(entry.cat);
    if (connected_components(entry.cat).count != 1) continue;
    const FindIsResult found = find_is(entry.cat);
    CHECK(found.preferred.has_value() == !all.empty());
    size_t min_closure = SIZE_MAX, min_all = SIZE_MAX;
    for (const InvariantSystem& is : found.all) {
      min_closure = std::min(min_closure, is.cardinality());
      // every closure family appears in the brute-force list
      CHECK(std::find(all.begin(), all.end(), is) != all.end());
    }
    for (const InvariantSystem& is : all) {
      // slot cardinalities of any invariant system agree
      for (int i = 0; i < is.n_objects; ++i)
        for (int j = 0; j < is.n_objects; ++j) CHECK(is.slot(i, j).size() == is.cardinality());
      min_all = std::min(min_all, is.cardinality());
    }
    CHECK(min_closure == min_all);
  }
}

TEST_CASE("group, idempotents, groupoid and tau on every corpus system") {
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    const FindIsResult found = find_is(entry.cat);
    for (const InvariantSystem& is : found.all) {
      CAPTURE(entry.name);
      const FinCategory& cat = entry.cat;

      // group_of re-checks closure, unit, inverses and associativity internally
      const GroupData group = group_of(cat, is);
      CHECK(group.order == static_cast<int>(is.cardinality()));

      const std::vector<int> e = idempotents(cat, is);
      for (int i = 0; i < cat.n_objects; ++i) {
        // e_i acts as the identity on S(i, j) from the right and on S(j, i) from the left
        for (int j = 0; j < cat.n_objects; ++j) {
          for (int s : is.slot(i, j)) CHECK(cat.compose(s, e[i]) == s);
          for (int s : is.slot(j, i)) CHECK(cat.compose(e[i], s) == s);
        }
      }

      const Groupoid gpd = groupoid(cat, is);
      CHECK(validate(gpd.cat).ok());
      for (int m = 0; m < gpd.cat.n_morphisms(); ++m) {
        bool has_inverse = false;
        for (int w = 0; w < gpd.cat.n_morphisms() && !has_inverse; ++w)
          has_inverse = gpd.cat.compose(m, w) == gpd.cat.identity[gpd.cat.cod(m)] &&
                        gpd.cat.compose(w, m) == gpd.cat.identity[gpd.cat.dom(m)];
        CHECK(has_inverse);
      }

      const std::vector<int> t = tau(cat, is);
      for (int i = 0; i < cat.n_objects; ++i) CHECK(t[cat.identity[i]] == e[i]);
      for (int g = 0; g < cat.n_morphisms(); ++g)
        for (int f = 0; f < cat.n_morphisms(); ++f) {
          const int h = cat.compose(g, f);
          if (h != -1) CHECK(t[h] == cat.compose(t[g], t[f]));
        }
      for (int m : gpd.morphism_map) CHECK(t[m] == m);  // identity on the groupoid subgraph
    }
  }
}

TEST_CASE("group and tau values on the named examples") {
  const FinCategory m = idempotent_monoid();
  const FindIsResult fm = find_is(m);
  const GroupData gm = group_of(m, *fm.preferred);
  CHECK(gm.order == 1);
  CHECK(idempotents(m, *fm.preferred)[0] == m.morphism_index("e"));
  CHECK(tau(m, *fm.preferred) == std::vector<int>{m.morphism_index("e"), m.morphism_index("e")});

  const FinCategory c2 = from_group_cyclic(2);
  const FindIsResult fc = find_is(c2);
  CHECK(group_of(c2, *fc.preferred).order == 2);
  CHECK(idempotents(c2, *fc.preferred)[0] == c2.identity[0]);
  CHECK(tau(c2, *fc.preferred) == std::vector<int>{0, 1});

  const FinCategory plus = adjoin_unit(c2);
  const FindIsResult fp = find_is(plus);
  CHECK(group_of(plus, *fp.preferred).order == 2);
  CHECK(idempotents(plus, *fp.preferred)[0] == plus.morphism_index("e"));
  CHECK(tau(plus, *fp.preferred)[plus.morphism_index("1")] == plus.morphism_index("e"));
}

TEST_CASE("closure of any element of an invariant system is one, slotwise inside it") {
  // together with S(0,0) being nonempty, this is what makes the End(0) seed
  // scan complete; checked against the exhaustive list instead of trusted
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    for (const InvariantSystem& is : brute_force_find_is(entry.cat)) {
      CHECK_FALSE(is.slot(0, 0).empty());
      for (int i = 0; i < is.n_objects; ++i)
        for (int j = 0; j < is.n_objects; ++j)
          for (int seed : is.slot(i, j)) {
            const InvariantSystem closed = closure(entry.cat, seed);
            CAPTURE(entry.name);
            CHECK(verify_is(entry.cat, closed).ok);
            for (int a = 0; a < is.n_objects; ++a)
              for (int b = 0; b < is.n_objects; ++b)
                for (int m : closed.slot(a, b)) {
                  const auto& outer = is.slot(a, b);
                  CHECK(std::binary_search(outer.begin(), outer.end(), m));
                }
          }
    }
  }
}

TEST_CASE("indiscrete category carries a singleton system over two objects") {
  const FinCategory ind = from_preorder(2, {{0, 1}, {1, 0}});
  const FindIsResult found = find_is(ind);
  REQUIRE(found.preferred.has_value());
  CHECK(found.preferred->cardinality() == 1);
  const Groupoid gpd = groupoid(ind, *found.preferred);
  CHECK(gpd.cat.n_morphisms() == 4);
}
