#ifndef FROBCAT_SET_ORACLE_HPP_
#define FROBCAT_SET_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobcat/category.hpp"
#include "frobcat/decision.hpp"
#include "frobcat/parallel.hpp"
#include "frobcat/rng.hpp"

namespace frobcat {

/// A Set-valued diagram: F(i) is the range {0, .., size[i]-1} and each
/// morphism carries a total function table from its domain's set to its
/// codomain's set.
struct SetFunctor {
  std::vector<int> size;                 // per object
  std::vector<std::vector<int>> action;  // per morphism: table of length size[dom]
};

/// Empty on functorial input, otherwise the first violated law.
std::optional<std::string> check_set_functor(const FinCategory& cat, const SetFunctor& F);
/// Validating constructor; throws std::invalid_argument.
SetFunctor make_set_functor(const FinCategory& cat, std::vector<int> size,
                            std::vector<std::vector<int>> action);

struct SetNatTransform {
  std::vector<std::vector<int>> component;  // per object: table F(i) -> G(i)
};

std::optional<std::string> check_set_nat(const FinCategory& cat, const SetFunctor& F, const SetFunctor& G,
                                         const SetNatTransform& eta);

/// Compatible tuples (x_i) with action(f)(x_i) = x_j for every f: i -> j,
/// enumerated in lexicographic order by backtracking over objects in index
/// order with forward constraint propagation. The limit over the empty
/// category is the one empty tuple.
std::vector<std::vector<int>> limit_set(const FinCategory& cat, const SetFunctor& F);

struct SetColimit {
  std::vector<int> offset;    // object -> first element id in the disjoint union
  std::vector<int> class_of;  // element id -> class id
  int n_classes = 0;
  int class_at(int obj, int value) const { return class_of[offset[obj] + value]; }
};

/// Finest equivalence on the disjoint union with x ~ action(f)(x); class
/// ids are canonical by smallest member.
SetColimit colimit_set(const FinCategory& cat, const SetFunctor& F);

/// The comparison lim F -> F(i*) -> colim F, one map per connected
/// component with i* its smallest object. Well-definedness across the
/// choice of object inside a component is asserted.
struct SetCanonical {
  ComponentPartition parts;
  std::vector<std::vector<int>> per_component;  // [component][tuple index] -> colim class
};

SetCanonical canonical_map(const FinCategory& cat, const SetFunctor& F,
                           const std::vector<std::vector<int>>& limit, const SetColimit& colim);

struct SetLimColim {
  std::vector<std::vector<int>> limit;
  SetColimit colimit;
  SetCanonical canonical;
};

SetLimColim compute_lim_colim(const FinCategory& cat, const SetFunctor& F);

/// Is the component-0 comparison map a bijection between limit tuples and
/// colimit classes? (Only meaningful for connected categories.)
bool canonical_bijective(const SetLimColim& data);

// ---------------------------------------------------------------------------
// Witness functors for negative verdicts. Each has |lim| != |colim|.
// ---------------------------------------------------------------------------

/// Empty set on the a-side, singletons on the b-side; limit empty, colimit
/// nonempty.
SetFunctor witness_not_strongly_connected(const FinCategory& cat, const std::vector<int>& a,
                                          const std::vector<int>& b);
/// Empty set on component 0, singletons elsewhere.
SetFunctor witness_not_connected(const FinCategory& cat, const ComponentPartition& parts);

/// j -> hom(i, j) with post-composition action.
SetFunctor representable(const FinCategory& cat, int i);
/// First object whose representable has limit cardinality != 1; its colimit
/// is always a singleton, so this is a cardinality witness.
std::optional<std::pair<int, SetFunctor>> representable_witness(const FinCategory& cat);

struct SetWitness {
  SetFunctor functor;
  std::string description;
};
/// The executable witness backing a negative Set verdict; nullopt only when
/// the verdict machinery and the oracle disagree (a bug the caller reports).
std::optional<SetWitness> witness_for_verdict(const FinCategory& cat, const Verdict& verdict);

/// Functor restricted to a subcategory (sizes and tables reindexed).
SetFunctor restrict_functor(const SubCategory& sub, const SetFunctor& F);

// ---------------------------------------------------------------------------
// Seeded random diagrams.
// ---------------------------------------------------------------------------

/// How each morphism is produced from a generating set: identities are
/// fixed, generators get fresh random tables, composites are filled in from
/// a recorded witness pair. Random functors are built along this data and
/// then rejected unless fully functorial.
struct SpanningData {
  struct Derivation {
    enum class Kind { identity, generator, composite };
    Kind kind = Kind::identity;
    int g = -1, f = -1;  // witness pair for composites
  };
  std::vector<int> order;  // morphisms in derivation order
  std::vector<Derivation> derivation;
  std::vector<int> generators;
};

SpanningData spanning_data(const FinCategory& cat);

/// One attempt-bounded sample; sizes are uniform on [0, max_size].
std::optional<SetFunctor> sample_set_functor(const FinCategory& cat, const SpanningData& span, Rng& rng,
                                             int max_size, int max_retries);

/// A natural transformation found by randomized backtracking (component
/// values forced by earlier objects where possible); nullopt when none
/// exists or the node budget runs out.
std::optional<SetNatTransform> sample_set_nat(const FinCategory& cat, const SetFunctor& F, const SetFunctor& G,
                                              Rng& rng, int64_t node_budget = 1 << 20);

// ---------------------------------------------------------------------------
// The oracle run backing `oracle set`.
// ---------------------------------------------------------------------------

struct SetOracleOptions {
  int n_samples = 100;
  uint64_t seed = 0;
  int max_size = 4;
  int max_retries = 2000;
  Exec mode = Exec::serial;
};

struct SetOracleReport {
  Verdict verdict;
  SetOracleOptions options;
  int n_generated = 0;
  int n_canonical_bijective = 0;    // yes-verdicts: must equal n_generated
  int n_lim_neq_colim = 0;          // no-verdicts: informational sample tally
  int n_transforms_checked = 0;
  int n_transforms_skipped = 0;     // pairs with no transform found
  bool witness_checked = false;
  size_t witness_lim = 0, witness_colim = 0;
  std::string witness_description;
  bool consistent = true;
  std::vector<std::string> failures;
};

/// Samples functors (and transforms between consecutive samples), then
/// checks the verdict against them: yes means every canonical map is
/// bijective and natural, no means the emitted witness has |lim| != |colim|.
/// Throws std::runtime_error when sampling fails after bounded retries.
SetOracleReport sample_check_set(const FinCategory& cat, const SetOracleOptions& options);

}  // namespace frobcat

#endif  // FROBCAT_SET_ORACLE_HPP_
