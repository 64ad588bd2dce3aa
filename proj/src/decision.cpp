#include "frobcat/decision.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frobcat {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RingSpec RingSpec::integers_mod(uint64_t n) {
  if (n < 2) throw std::invalid_argument("RingSpec: modulus must be >= 2");
  return {Kind::integers_mod_n, n};
}

RingSpec RingSpec::prime_field(uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("RingSpec: " + std::to_string(p) + " is not prime");
  return {Kind::prime_field, p};
}

RingSpec RingSpec::parse(const std::string& text) {
  if (text == "z") return integers();
  if (text == "q") return rationals();
  auto tail = [&text](const char* prefix) {
    const std::string value = text.substr(std::string(prefix).size());
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad ring spec '" + text + "'");
    return std::stoull(value);
  };
  if (text.rfind("zmod:", 0) == 0) return integers_mod(tail("zmod:"));
  if (text.rfind("fp:", 0) == 0) return prime_field(tail("fp:"));
  throw std::invalid_argument("bad ring spec '" + text + "' (expected z, q, zmod:<n> or fp:<p>)");
}

std::string RingSpec::to_string() const {
  switch (kind) {
    case Kind::integers: return "z";
    case Kind::rationals: return "q";
    case Kind::integers_mod_n: return "zmod:" + std::to_string(modulus);
    case Kind::prime_field: return "fp:" + std::to_string(modulus);
  }
  return "?";
}

bool invertible(const RingSpec& ring, uint64_t m) {
  if (m == 0) throw std::invalid_argument("invertible: m must be positive");
  switch (ring.kind) {
    case RingSpec::Kind::integers: return m == 1;
    case RingSpec::Kind::rationals: return true;
    case RingSpec::Kind::integers_mod_n: return std::gcd(m, ring.modulus) == 1;
    case RingSpec::Kind::prime_field: return m % ring.modulus != 0;
  }
  return false;
}

std::string certificate_kind(const Verdict& verdict) {
  struct Visitor {
    std::string operator()(const CertInvariantSystems&) const { return "invariant-system"; }
    std::string operator()(const CertNotConnected&) const { return "not-connected"; }
    std::string operator()(const CertNotStronglyConnected&) const { return "not-strongly-connected"; }
    std::string operator()(const CertNoInvariantSystem&) const { return "no-invariant-system"; }
    std::string operator()(const CertCardinalityNotInvertible&) const { return "cardinality-not-invertible"; }
    std::string operator()(const CertEmptyCategory&) const { return "empty-category"; }
  };
  return std::visit(Visitor{}, verdict.certificate);
}

std::string verdict_reason(const Verdict& verdict) {
  struct Visitor {
    bool yes;
    std::string operator()(const CertInvariantSystems& c) const {
      std::string msg = "invariant system";
      for (const IsEvidence& ev : c.per_component)
        msg += " [component " + std::to_string(ev.component) + ": cardinality " +
               std::to_string(ev.cardinality) + "]";
      return msg;
    }
    std::string operator()(const CertNotConnected& c) const {
      return "category has " + std::to_string(c.partition.count) + " connected components";
    }
    std::string operator()(const CertNotStronglyConnected& c) const {
      return "component " + std::to_string(c.component) + " is not strongly connected (" +
             std::to_string(c.a.size()) + "+" + std::to_string(c.b.size()) + " object split)";
    }
    std::string operator()(const CertNoInvariantSystem& c) const {
      return "component " + std::to_string(c.component) + " has no invariant system";
    }
    std::string operator()(const CertCardinalityNotInvertible& c) const {
      std::string cards;
      for (size_t m : c.cardinalities) cards += (cards.empty() ? "" : ",") + std::to_string(m);
      if (c.ring == RingSpec::integers())
        return "|G_I| = " + cards + " is not 1 (no singleton invariant system)";
      return "|G_I| = " + cards + " is not invertible in " + c.ring.to_string();
    }
    std::string operator()(const CertEmptyCategory& c) const {
      return c.target_has_zero_object ? "empty category, target category has a zero object"
                                      : "empty category, target category has no zero object";
    }
  };
  return std::visit(Visitor{verdict.frobenius}, verdict.certificate);
}

namespace {

InvariantSystem remap_is(const InvariantSystem& is, const SubCategory& sub, int parent_objects) {
  InvariantSystem out;
  out.n_objects = parent_objects;
  out.sets.assign(static_cast<size_t>(parent_objects) * parent_objects, {});
  for (int i = 0; i < is.n_objects; ++i)
    for (int j = 0; j < is.n_objects; ++j) {
      auto& slot = out.slot(sub.object_map[i], sub.object_map[j]);
      for (int m : is.slot(i, j)) slot.push_back(sub.morphism_map[m]);
      std::sort(slot.begin(), slot.end());
    }
  return out;
}

std::vector<SeedOutcome> remap_trace(const std::vector<SeedOutcome>& trace, const SubCategory& sub) {
  std::vector<SeedOutcome> out = trace;
  for (SeedOutcome& o : out) o.seed = sub.morphism_map[o.seed];
  return out;
}

// Component verdict shared by the Set and module deciders: the Set rule is
// the module rule over the integers (a singleton slot is a cardinality
// invertible in Z).
struct ComponentDecision {
  bool yes = false;
  Certificate certificate;
  IsEvidence evidence;  // when yes
};

ComponentDecision decide_component(const FinCategory& cat, const SubCategory& sub, int component,
                                   const RingSpec& ring) {
  ComponentDecision out;
  const FindIsResult found = find_is(sub.cat);
  if (!found.strongly_connected) {
    CertNotStronglyConnected cert;
    cert.component = component;
    for (int i : found.witness_a) cert.a.push_back(sub.object_map[i]);
    for (int i : found.witness_b) cert.b.push_back(sub.object_map[i]);
    out.certificate = cert;
    return out;
  }
  if (found.all.empty()) {
    out.certificate = CertNoInvariantSystem{component, remap_trace(found.trace, sub)};
    return out;
  }
  for (const InvariantSystem& family : found.all) {
    if (!invertible(ring, family.cardinality())) continue;
    out.yes = true;
    out.evidence = {component, remap_is(family, sub, cat.n_objects), family.cardinality(), true};
    return out;
  }
  CertCardinalityNotInvertible cert;
  cert.component = component;
  cert.ring = ring;
  for (const InvariantSystem& family : found.all) cert.cardinalities.push_back(family.cardinality());
  std::sort(cert.cardinalities.begin(), cert.cardinalities.end());
  cert.cardinalities.erase(std::unique(cert.cardinalities.begin(), cert.cardinalities.end()),
                           cert.cardinalities.end());
  out.certificate = cert;
  return out;
}

void require_valid(const FinCategory& cat, const char* who) {
  const ValidationReport report = validate(cat);
  if (!report.ok()) throw std::invalid_argument(std::string(who) + ": invalid category: " + report.issues.front());
}

}  // namespace

Verdict decide_set(const FinCategory& cat) {
  require_valid(cat, "decide_set");
  if (cat.n_objects == 0) return {false, CertEmptyCategory{false}};
  const ComponentPartition parts = connected_components(cat);
  if (parts.count != 1) return {false, CertNotConnected{parts}};

  SubCategory whole = component_subcategory(cat, parts, 0);
  const ComponentDecision d = decide_component(cat, whole, 0, RingSpec::integers());
  if (!d.yes) return {false, d.certificate};
  return {true, CertInvariantSystems{{d.evidence}}};
}

Verdict decide_mod(const FinCategory& cat, const RingSpec& ring) {
  require_valid(cat, "decide_mod");
  if (cat.n_objects == 0) return {true, CertEmptyCategory{true}};
  const ComponentPartition parts = connected_components(cat);

  CertInvariantSystems cert;
  for (int c = 0; c < parts.count; ++c) {
    SubCategory sub = component_subcategory(cat, parts, c);
    const ComponentDecision d = decide_component(cat, sub, c, ring);
    if (!d.yes) return {false, d.certificate};
    cert.per_component.push_back(d.evidence);
  }
  return {true, cert};
}

bool decide_group(uint64_t order, const RingSpec& ring) {
  if (order == 0) throw std::invalid_argument("decide_group: order must be positive");
  return invertible(ring, order);
}

namespace {

// Certificate systems live in parent indices; verify_is needs them back in
// the component's own indexing.
InvariantSystem restrict_is(const InvariantSystem& is, const SubCategory& sub) {
  InvariantSystem out;
  out.n_objects = sub.cat.n_objects;
  out.sets.assign(static_cast<size_t>(out.n_objects) * out.n_objects, {});
  std::vector<int> mor_inv;
  {
    int max_parent = -1;
    for (int m : sub.morphism_map) max_parent = std::max(max_parent, m);
    mor_inv.assign(max_parent + 1, -1);
    for (size_t k = 0; k < sub.morphism_map.size(); ++k) mor_inv[sub.morphism_map[k]] = static_cast<int>(k);
  }
  for (int i = 0; i < out.n_objects; ++i)
    for (int j = 0; j < out.n_objects; ++j) {
      auto& slot = out.slot(i, j);
      for (int m : is.slot(sub.object_map[i], sub.object_map[j])) {
        if (m < 0 || m >= static_cast<int>(mor_inv.size()) || mor_inv[m] == -1) return {};  // shape error
        slot.push_back(mor_inv[m]);
      }
      std::sort(slot.begin(), slot.end());
    }
  return out;
}

}  // namespace

std::optional<std::string> recheck_certificate(const FinCategory& cat, const Verdict& verdict,
                                               const RingSpec& ring, bool set_target) {
  const RingSpec effective = set_target ? RingSpec::integers() : ring;
  const ComponentPartition parts = connected_components(cat);

  if (const auto* cert = verdict.cert<CertEmptyCategory>()) {
    if (cat.n_objects != 0) return "empty-category certificate on a nonempty category";
    if (cert->target_has_zero_object == set_target) return "zero-object flag contradicts the target category";
    if (verdict.frobenius != cert->target_has_zero_object) return "answer contradicts the zero-object criterion";
    return std::nullopt;
  }
  if (const auto* cert = verdict.cert<CertNotConnected>()) {
    if (verdict.frobenius) return "not-connected certificate on a positive verdict";
    if (!set_target) return "not-connected is never a module-side failure for finite categories";
    if (cert->partition.count != parts.count || cert->partition.component != parts.component)
      return "partition does not match the category";
    if (parts.count < 2) return "claimed disconnection but the category is connected";
    return std::nullopt;
  }
  if (const auto* cert = verdict.cert<CertNotStronglyConnected>()) {
    if (verdict.frobenius) return "connectivity certificate on a positive verdict";
    if (cert->a.empty() || cert->b.empty()) return "a part of the split is empty";
    std::vector<int> in_part(cat.n_objects, 0);  // 1 = a, 2 = b
    for (int i : cert->a) in_part[i] = 1;
    for (int i : cert->b) {
      if (in_part[i] != 0) return "split parts overlap";
      in_part[i] = 2;
    }
    for (int i = 0; i < cat.n_objects; ++i)
      if (parts.component[i] == cert->component && in_part[i] == 0) return "split misses an object of the component";
    for (int m = 0; m < cat.n_morphisms(); ++m)
      if (in_part[cat.dom(m)] == 2 && in_part[cat.cod(m)] == 1)
        return "an arrow crosses from b to a, so the split proves nothing";
    return std::nullopt;  // hom(b, a) is empty for any b in B, a in A: not strongly connected
  }
  if (const auto* cert = verdict.cert<CertNoInvariantSystem>()) {
    if (verdict.frobenius) return "no-invariant-system certificate on a positive verdict";
    const SubCategory sub = component_subcategory(cat, parts, cert->component);
    const HomIndex hom = hom_index(sub.cat);
    // the trace must cover every endomorphism seed and each closure must fail
    std::vector<bool> seen(cat.n_morphisms(), false);
    for (const SeedOutcome& outcome : cert->trace) {
      if (outcome.passed) return "trace records a passing seed";
      if (outcome.seed < 0 || outcome.seed >= cat.n_morphisms()) return "trace seed out of range";
      seen[outcome.seed] = true;
    }
    for (int local : hom(0, 0))
      if (!seen[sub.morphism_map[local]]) return "trace misses an endomorphism seed";
    for (int local : hom(0, 0)) {
      const InvariantSystem family = closure(sub.cat, local);
      if (verify_is(sub.cat, family).ok) return "a seed closure verifies after all";
    }
    return std::nullopt;
  }
  if (const auto* cert = verdict.cert<CertCardinalityNotInvertible>()) {
    if (verdict.frobenius) return "cardinality certificate on a positive verdict";
    for (size_t m : cert->cardinalities)
      if (invertible(effective, m)) return "a recorded cardinality is invertible after all";
    const SubCategory sub = component_subcategory(cat, parts, cert->component);
    const FindIsResult found = find_is(sub.cat);
    std::vector<size_t> cards;
    for (const InvariantSystem& family : found.all) cards.push_back(family.cardinality());
    std::sort(cards.begin(), cards.end());
    cards.erase(std::unique(cards.begin(), cards.end()), cards.end());
    if (cards != cert->cardinalities) return "recorded cardinalities do not match the closure search";
    return std::nullopt;
  }
  const auto* cert = verdict.cert<CertInvariantSystems>();
  if (!cert) return "unknown certificate";
  if (!verdict.frobenius) return "invariant-system certificate on a negative verdict";
  if (static_cast<int>(cert->per_component.size()) != parts.count)
    return "certificate does not cover every component";
  for (const IsEvidence& ev : cert->per_component) {
    if (ev.component < 0 || ev.component >= parts.count) return "component id out of range";
    const SubCategory sub = component_subcategory(cat, parts, ev.component);
    const InvariantSystem local = restrict_is(ev.is, sub);
    if (local.n_objects == 0 && sub.cat.n_objects != 0) return "certificate system has stray morphisms";
    const IsCheck check = verify_is(sub.cat, local);
    if (!check.ok) return "certificate system fails verification: " + check.violation;
    if (local.cardinality() != ev.cardinality) return "recorded cardinality is wrong";
    if (!invertible(effective, ev.cardinality)) return "certificate cardinality is not invertible in the ring";
    if (!ev.cardinality_invertible) return "certificate records its own cardinality as non-invertible";
  }
  return std::nullopt;
}

}  // namespace frobcat
