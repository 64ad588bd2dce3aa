#include "corpus.hpp"
#include "doctest.h"
#include "frobcat/decision.hpp"

using namespace frobcat;
using namespace frobcat::tests;

namespace {

const std::vector<RingSpec> kRings = {RingSpec::integers(),      RingSpec::rationals(),
                                      RingSpec::integers_mod(6), RingSpec::prime_field(2),
                                      RingSpec::prime_field(3),  RingSpec::prime_field(5)};

}  // namespace

TEST_CASE("ring spec parsing and printing") {
  CHECK(RingSpec::parse("z") == RingSpec::integers());
  CHECK(RingSpec::parse("q") == RingSpec::rationals());
  CHECK(RingSpec::parse("zmod:6") == RingSpec::integers_mod(6));
  CHECK(RingSpec::parse("fp:7") == RingSpec::prime_field(7));
  CHECK(RingSpec::parse("fp:7").to_string() == "fp:7");
  CHECK_THROWS_AS(RingSpec::parse("fp:6"), std::invalid_argument);
  CHECK_THROWS_AS(RingSpec::parse("zmod:1"), std::invalid_argument);
  CHECK_THROWS_AS(RingSpec::parse("gf:2"), std::invalid_argument);
}

TEST_CASE("integer invertibility per ring") {
  CHECK(invertible(RingSpec::integers_mod(6), 5));
  CHECK_FALSE(invertible(RingSpec::integers_mod(6), 2));
  CHECK_FALSE(invertible(RingSpec::prime_field(2), 2));
  CHECK(invertible(RingSpec::rationals(), 7));
  CHECK(invertible(RingSpec::integers(), 1));
  CHECK_FALSE(invertible(RingSpec::integers(), 3));
  CHECK_THROWS_AS(invertible(RingSpec::integers(), 0), std::invalid_argument);
}

TEST_CASE("decide_set on the named examples") {
  const Verdict yes = decide_set(idempotent_monoid());
  CHECK(yes.frobenius);
  REQUIRE(yes.cert<CertInvariantSystems>() != nullptr);
  CHECK(yes.cert<CertInvariantSystems>()->per_component[0].cardinality == 1);

  const Verdict no = decide_set(from_group_cyclic(2));
  CHECK_FALSE(no.frobenius);
  REQUIRE(no.cert<CertCardinalityNotInvertible>() != nullptr);
  CHECK(no.cert<CertCardinalityNotInvertible>()->cardinalities == std::vector<size_t>{2});

  const Verdict disc = decide_set(discrete(2));
  CHECK_FALSE(disc.frobenius);
  CHECK(disc.cert<CertNotConnected>() != nullptr);

  const Verdict empty = decide_set(discrete(0));
  CHECK_FALSE(empty.frobenius);
  REQUIRE(empty.cert<CertEmptyCategory>() != nullptr);
  CHECK_FALSE(empty.cert<CertEmptyCategory>()->target_has_zero_object);

  const Verdict zero = decide_set(zero_adjoined_c3());
  CHECK(zero.frobenius);  // the absorbing element is a two-sided fixed point
}

TEST_CASE("decide_mod on the named examples") {
  CHECK_FALSE(decide_mod(from_group_cyclic(2), RingSpec::prime_field(2)).frobenius);
  const Verdict c2f3 = decide_mod(from_group_cyclic(2), RingSpec::prime_field(3));
  CHECK(c2f3.frobenius);
  CHECK(c2f3.cert<CertInvariantSystems>()->per_component[0].cardinality == 2);

  CHECK(decide_mod(discrete(3), RingSpec::integers()).frobenius);

  const Verdict plus = decide_mod(adjoin_unit(from_group_cyclic(2)), RingSpec::prime_field(3));
  CHECK(plus.frobenius);
  CHECK(plus.cert<CertInvariantSystems>()->per_component[0].cardinality == 2);

  const Verdict empty = decide_mod(discrete(0), RingSpec::prime_field(2));
  CHECK(empty.frobenius);
  CHECK(empty.cert<CertEmptyCategory>()->target_has_zero_object);

  const Verdict arrow_verdict = decide_mod(arrow(), RingSpec::rationals());
  CHECK_FALSE(arrow_verdict.frobenius);
  CHECK(arrow_verdict.cert<CertNotStronglyConnected>() != nullptr);

  const Verdict lz = decide_mod(left_zero_monoid(), RingSpec::rationals());
  CHECK_FALSE(lz.frobenius);
  CHECK(lz.cert<CertNoInvariantSystem>() != nullptr);
}

TEST_CASE("decide_group") {
  CHECK(decide_group(1, RingSpec::integers()));
  CHECK(decide_group(4, RingSpec::integers_mod(9)));
  CHECK_FALSE(decide_group(2, RingSpec::prime_field(2)));
  CHECK_THROWS_AS(decide_group(0, RingSpec::integers()), std::invalid_argument);
}

TEST_CASE("certificates carry per-component data on disjoint unions") {
  const FinCategory du = disjoint_union(idempotent_monoid(), from_group_cyclic(2));
  const Verdict v = decide_mod(du, RingSpec::prime_field(3));
  REQUIRE(v.frobenius);
  const auto* cert = v.cert<CertInvariantSystems>();
  REQUIRE(cert != nullptr);
  REQUIRE(cert->per_component.size() == 2);
  CHECK(cert->per_component[0].cardinality == 1);
  CHECK(cert->per_component[1].cardinality == 2);
  // the second component's system is expressed in parent indices
  CHECK(cert->per_component[1].is.slot(1, 1).size() == 2);

  const Verdict bad = decide_mod(du, RingSpec::prime_field(2));
  CHECK_FALSE(bad.frobenius);
  REQUIRE(bad.cert<CertCardinalityNotInvertible>() != nullptr);
  CHECK(bad.cert<CertCardinalityNotInvertible>()->component == 1);
}

TEST_CASE("reduction coherence: component verdicts match the group criterion") {
  for (const auto& entry : standard_corpus()) {
    if (connected_components(entry.cat).count != 1) continue;
    const FindIsResult found = find_is(entry.cat);
    if (!found.preferred) continue;
    const GroupData group = group_of(entry.cat, *found.preferred);
    for (const RingSpec& ring : kRings) {
      CAPTURE(entry.name);
      CAPTURE(ring.to_string());
      CHECK(decide_mod(entry.cat, ring).frobenius ==
            decide_group(static_cast<uint64_t>(group.order), ring));
    }
  }
}

TEST_CASE("monotonicity under divisor rings") {
  for (const auto& entry : standard_corpus()) {
    for (uint64_t n = 2; n <= 12; ++n) {
      const bool big = decide_mod(entry.cat, RingSpec::integers_mod(n)).frobenius;
      for (uint64_t d = 2; d < n; ++d) {
        if (n % d != 0) continue;
        CAPTURE(entry.name);
        CAPTURE(n);
        CAPTURE(d);
        if (big) CHECK(decide_mod(entry.cat, RingSpec::integers_mod(d)).frobenius);
      }
    }
  }
}

TEST_CASE("every certificate re-checks independently") {
  for (const auto& entry : standard_corpus()) {
    CAPTURE(entry.name);
    const Verdict set_verdict = decide_set(entry.cat);
    const auto set_issue = recheck_certificate(entry.cat, set_verdict, RingSpec::integers(), true);
    CHECK_MESSAGE(!set_issue.has_value(), entry.name, "/set: ", set_issue.value_or(""));
    for (const RingSpec& ring : kRings) {
      const Verdict mod_verdict = decide_mod(entry.cat, ring);
      const auto issue = recheck_certificate(entry.cat, mod_verdict, ring, false);
      CHECK_MESSAGE(!issue.has_value(), entry.name, "/", ring.to_string(), ": ", issue.value_or(""));
    }
  }
}

TEST_CASE("tampered certificates are refused") {
  Verdict verdict = decide_set(idempotent_monoid());
  auto* cert = std::get_if<CertInvariantSystems>(&verdict.certificate);
  REQUIRE(cert != nullptr);
  cert->per_component[0].is.slot(0, 0) = {0};  // the unit is not an invariant system
  CHECK(recheck_certificate(idempotent_monoid(), verdict, RingSpec::integers(), true).has_value());

  Verdict no = decide_mod(from_group_cyclic(2), RingSpec::prime_field(2));
  auto* card = std::get_if<CertCardinalityNotInvertible>(&no.certificate);
  REQUIRE(card != nullptr);
  card->cardinalities = {3};  // 3 is invertible mod 2, and it is not the closure cardinality
  CHECK(recheck_certificate(from_group_cyclic(2), no, RingSpec::prime_field(2), false).has_value());
}

TEST_CASE("Set-Frobenius implies module-Frobenius over every ring") {
  for (const auto& entry : standard_corpus()) {
    if (!decide_set(entry.cat).frobenius) continue;
    for (const RingSpec& ring : kRings) {
      CAPTURE(entry.name);
      CHECK(decide_mod(entry.cat, ring).frobenius);
    }
  }
}
