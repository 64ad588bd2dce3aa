// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Everything runs on the standard corpus at fixed seeds.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "frobcat/decision.hpp"
#include "frobcat/invariant.hpp"
#include "frobcat/mod_oracle.hpp"
#include "frobcat/set_oracle.hpp"

using namespace frobcat;
using namespace frobcat::tests;

namespace {

const std::vector<RingSpec> kRings = {RingSpec::integers(),      RingSpec::rationals(),
                                      RingSpec::integers_mod(6), RingSpec::prime_field(2),
                                      RingSpec::prime_field(3),  RingSpec::prime_field(5)};

int failures = 0;

void report(int number, const std::string& description, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, description.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!pass) ++failures;
}

bool brute_component_yes(const FinCategory& cat, const RingSpec& ring) {
  const ComponentPartition parts = connected_components(cat);
  for (int c = 0; c < parts.count; ++c) {
    const SubCategory sub = component_subcategory(cat, parts, c);
    bool component_ok = false;
    for (const InvariantSystem& is : brute_force_find_is(sub.cat))
      if (invertible(ring, is.cardinality())) component_ok = true;
    if (!component_ok) return false;
  }
  return true;
}

void criterion_1(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  for (const auto& entry : corpus) {
    const bool decided = decide_set(entry.cat).frobenius;
    bool singleton = false;
    for (const InvariantSystem& is : brute_force_find_is(entry.cat))
      if (is.cardinality() == 1) singleton = true;
    const bool expected = connected_components(entry.cat).count == 1 && singleton;
    if (decided != expected) detail += entry.name + " ";
  }
  report(1, "Set verdicts match brute-force singleton systems plus connectedness", detail.empty(), detail);
}

void criterion_2(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  for (const auto& entry : corpus)
    for (const RingSpec& ring : kRings) {
      const bool decided = decide_mod(entry.cat, ring).frobenius;
      if (decided != brute_component_yes(entry.cat, ring)) detail += entry.name + "/" + ring.to_string() + " ";
    }
  report(2, "module verdicts match the brute-force per-component criterion on six rings", detail.empty(), detail);
}

void criterion_3() {
  std::string detail;
  for (uint64_t n = 1; n <= 8; ++n) {
    const FinCategory group = from_group_cyclic(static_cast<int>(n));
    for (const RingSpec& ring : kRings)
      if (decide_mod(group, ring).frobenius != invertible(ring, n))
        detail += "cyclic:" + std::to_string(n) + "/" + ring.to_string() + " ";
  }
  report(3, "cyclic groups up to order 8 follow the order-invertibility rule", detail.empty(), detail);
}

void criterion_4(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  for (const auto& entry : corpus) {
    SetOracleOptions options;
    options.n_samples = 100;
    options.seed = 20240915;
    options.max_size = 4;
    const SetOracleReport r = sample_check_set(entry.cat, options);
    if (!r.consistent) detail += entry.name + "(" + (r.failures.empty() ? "?" : r.failures.front()) + ") ";
    if (r.verdict.frobenius && r.n_canonical_bijective != r.n_generated) detail += entry.name + " ";
  }
  report(4, "Set oracle: 100 sampled diagrams per category agree with every verdict", detail.empty(), detail);
}

void criterion_5(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  int inconclusive = 0;
  for (const auto& entry : corpus)
    for (uint32_t p : {2u, 3u}) {
      ModOracleOptions options;
      options.n_samples = 100;
      options.seed = 777;
      options.max_dim = 4;
      const ModOracleReport r = sample_check_mod(entry.cat, p, options);
      inconclusive += r.n_inconclusive;
      if (!r.consistent)
        detail += entry.name + "/fp:" + std::to_string(p) + "(" + (r.failures.empty() ? "?" : r.failures.front()) + ") ";
      if (r.verdict.frobenius &&
          (r.n_canonical_invertible != r.n_generated || r.n_norm_inverts != r.n_norm_checked))
        detail += entry.name + "/fp:" + std::to_string(p) + " ";
    }
  if (inconclusive > 0) detail += std::to_string(inconclusive) + " inconclusive results ";
  report(5, "module oracle over F_2 and F_3: invertible canonical maps, norm splittings, infeasible witnesses",
         detail.empty() && inconclusive == 0, detail);
}

void criterion_6(const std::vector<CorpusEntry>& corpus) {
  std::string detail;

  const FinCategory m = idempotent_monoid();
  if (!decide_set(m).frobenius) detail += "idmon/set ";
  for (const RingSpec& ring : kRings)
    if (!decide_mod(m, ring).frobenius) detail += "idmon/" + ring.to_string() + " ";

  for (int n = 1; n <= 4; ++n) {
    const FinCategory group = from_group_cyclic(n);
    const FinCategory plus = adjoin_unit(group);
    for (const RingSpec& ring : kRings) {
      if (!invertible(ring, static_cast<uint64_t>(n))) continue;
      if (decide_mod(plus, ring).frobenius != decide_mod(group, ring).frobenius)
        detail += "adjoin-unit:cyclic:" + std::to_string(n) + "/" + ring.to_string() + " ";
    }
  }

  for (const auto& entry : corpus) {
    const ComponentPartition parts = connected_components(entry.cat);
    if (parts.count != 2 && parts.count != 3) continue;
    const SpanningData span = spanning_data(entry.cat);
    for (int k = 0; k < 100; ++k) {
      Rng rng = Rng::stream(606, static_cast<uint64_t>(k));
      const auto F = sample_set_functor(entry.cat, span, rng, 3, 5000);
      if (!F) {
        detail += entry.name + "/sampling ";
        break;
      }
      size_t product = 1;
      int classes = 0;
      for (int c = 0; c < parts.count; ++c) {
        const SubCategory sub = component_subcategory(entry.cat, parts, c);
        const SetFunctor restricted = restrict_functor(sub, *F);
        product *= limit_set(sub.cat, restricted).size();
        classes += colimit_set(sub.cat, restricted).n_classes;
      }
      if (limit_set(entry.cat, *F).size() != product ||
          colimit_set(entry.cat, *F).n_classes != classes) {
        detail += entry.name + "/decomposition ";
        break;
      }
    }
  }
  report(6, "lemma suite: two-element monoid, unit adjunction, component decomposition", detail.empty(), detail);
}

void criterion_7(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  for (const auto& entry : corpus) {
    const std::vector<InvariantSystem> brute = brute_force_find_is(entry.cat);
    if (connected_components(entry.cat).count != 1) continue;
    const FindIsResult found = find_is(entry.cat);
    if (found.preferred.has_value() != !brute.empty()) {
      detail += entry.name + "/existence ";
      continue;
    }
    size_t min_closure = SIZE_MAX, min_brute = SIZE_MAX;
    for (const InvariantSystem& is : brute) min_brute = std::min(min_brute, is.cardinality());
    for (const InvariantSystem& is : found.all) {
      min_closure = std::min(min_closure, is.cardinality());
      if (std::find(brute.begin(), brute.end(), is) == brute.end()) detail += entry.name + "/missing ";
      try {
        for (int i = 0; i < is.n_objects; ++i)
          for (int j = 0; j < is.n_objects; ++j)
            if (is.slot(i, j).size() != is.cardinality()) detail += entry.name + "/cardinality ";
        idempotents(entry.cat, is);           // throws unless unique per slot
        group_of(entry.cat, is);              // throws unless a group
        const Groupoid gpd = groupoid(entry.cat, is);
        if (!validate(gpd.cat).ok()) detail += entry.name + "/groupoid ";
        for (int w = 0; w < gpd.cat.n_morphisms(); ++w) {
          bool inverse = false;
          for (int v = 0; v < gpd.cat.n_morphisms() && !inverse; ++v)
            inverse = gpd.cat.compose(w, v) == gpd.cat.identity[gpd.cat.cod(w)] &&
                      gpd.cat.compose(v, w) == gpd.cat.identity[gpd.cat.dom(w)];
          if (!inverse) detail += entry.name + "/inverse ";
        }
        const std::vector<int> t = tau(entry.cat, is);
        for (int g = 0; g < entry.cat.n_morphisms(); ++g)
          for (int f = 0; f < entry.cat.n_morphisms(); ++f) {
            const int h = entry.cat.compose(g, f);
            if (h != -1 && t[h] != entry.cat.compose(t[g], t[f])) detail += entry.name + "/tau ";
          }
      } catch (const std::exception& e) {
        detail += entry.name + "(" + e.what() + ") ";
      }
    }
    if (min_closure != min_brute) detail += entry.name + "/min-cardinality ";
  }
  report(7, "invariant-system machinery verified exhaustively against brute force", detail.empty(), detail);
}

void criterion_8(const std::vector<CorpusEntry>& corpus) {
  std::string detail;
  for (const auto& entry : corpus) {
    if (connected_components(entry.cat).count != 1) continue;
    if (!is_strongly_connected(entry.cat).strongly_connected) continue;
    if (!decide_mod(entry.cat, RingSpec::prime_field(3)).frobenius) continue;
    const FreeProbeFamily probes = free_probe_family(entry.cat, 3);
    for (int d : probes.dims)
      if (d != 1) detail += entry.name + "/dim ";
    if (!probes.family || !verify_is(entry.cat, *probes.family).ok) detail += entry.name + "/supports ";
  }
  const FreeProbeFamily lz = free_probe_family(left_zero_monoid(), 3);
  const bool lz_fails = !lz.family.has_value() || !verify_is(left_zero_monoid(), *lz.family).ok;
  if (!lz_fails) detail += "left-zero-crosscheck ";
  report(8, "free-functor probes recover invariant systems on positive categories", detail.empty(), detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CorpusEntry> corpus = standard_corpus();
  std::printf("standard corpus: %zu categories\n", corpus.size());

  criterion_1(corpus);
  criterion_2(corpus);
  criterion_3();
  criterion_4(corpus);
  criterion_5(corpus);
  criterion_6(corpus);
  criterion_7(corpus);
  criterion_8(corpus);

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 8 criteria passed in %.2f s\n", 8 - failures, elapsed);
  return failures == 0 ? 0 : 1;
}
