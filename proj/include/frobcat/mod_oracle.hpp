#ifndef FROBCAT_MOD_ORACLE_HPP_
#define FROBCAT_MOD_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobcat/category.hpp"
#include "frobcat/decision.hpp"
#include "frobcat/fp_matrix.hpp"
#include "frobcat/invariant.hpp"
#include "frobcat/parallel.hpp"
#include "frobcat/rng.hpp"
#include "frobcat/set_oracle.hpp"

namespace frobcat {

/// An F_p-linear diagram: a dimension per object, a (cod-dim x dom-dim)
/// matrix per morphism.
struct VectFunctor {
  uint32_t p = 2;
  std::vector<int> dim;
  std::vector<MatrixFp> action;
};

std::optional<std::string> check_vect_functor(const FinCategory& cat, const VectFunctor& F);
VectFunctor make_vect_functor(const FinCategory& cat, uint32_t p, std::vector<int> dim,
                              std::vector<MatrixFp> action);

struct VectNatTransform {
  std::vector<MatrixFp> component;  // per object: G-dim x F-dim
};

std::optional<std::string> check_vect_nat(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                                          const VectNatTransform& eta);

/// The limit subspace of the product ⊕_i F(i), cut out by the equations
/// action(f) x_i = x_j; `basis` is (total-dim x lim-dim).
struct VectLimit {
  std::vector<int> offset;  // object -> first coordinate of its block
  int total = 0;
  MatrixFp basis;
  int dim() const { return basis.cols(); }
};

VectLimit limit_vect(const FinCategory& cat, const VectFunctor& F);

/// The quotient of ⊕_i F(i) by the span of ι_j(action(f) v) - ι_i(v).
/// `projection` maps total coordinates onto the quotient basis picked by
/// the non-pivot coordinates (`quotient_cols`); `lift` is the section that
/// re-embeds those coordinates.
struct VectColimit {
  std::vector<int> offset;
  int total = 0;
  MatrixFp projection;  // dim x total
  MatrixFp lift;        // total x dim
  std::vector<int> quotient_cols;
  int dim() const { return projection.rows(); }
};

VectColimit colimit_vect(const FinCategory& cat, const VectFunctor& F);

/// The comparison lim F -> F(i) -> colim F, assembled per connected
/// component via each component's smallest object; the class is asserted to
/// be independent of the object chosen inside a component.
MatrixFp canonical_map_vect(const FinCategory& cat, const VectFunctor& F, const VectLimit& lim,
                            const VectColimit& colim);
MatrixFp canonical_map_vect(const FinCategory& cat, const VectFunctor& F);

/// Induced maps of a natural transformation on limits and colimits.
MatrixFp nat_limit_map(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                       const VectNatTransform& eta, const VectLimit& limF, const VectLimit& limG);
MatrixFp nat_colimit_map(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                         const VectNatTransform& eta, const VectColimit& colimF, const VectColimit& colimG);

/// Averaging data for a one-object category whose endomorphisms form a
/// group of order invertible mod p.
struct NormSplitting {
  MatrixFp averaging;     // |G|^{-1} * sum of the actions; idempotent
  MatrixFp colim_to_lim;  // induced coinvariants -> invariants map in basis coordinates
};

/// Throws std::invalid_argument when the category is not a group with
/// order prime to p; std::logic_error when the averaging matrix fails its
/// own laws (which would indicate a bug, not bad input).
NormSplitting norm_splitting(const FinCategory& group_cat, const VectFunctor& F);

// ---------------------------------------------------------------------------
// Naturality constraint systems.
// ---------------------------------------------------------------------------

struct NaturalityProblem {
  struct Transform {
    int src = 0, dst = 0;
    VectNatTransform eta;
  };
  std::vector<VectFunctor> functors;
  std::vector<Transform> transforms;
};

enum class Feasibility { feasible, infeasible, inconclusive };

struct NaturalitySolution {
  Feasibility result = Feasibility::inconclusive;
  std::vector<MatrixFp> psi;  // an all-invertible solution, when feasible
  std::string reason;
  uint64_t points_tried = 0;
};

struct NatSolveOptions {
  uint64_t exhaustive_budget = 100000;  // enumerate the whole solution space up to this size
  uint64_t sample_budget = 10000;       // random draws afterwards
  uint64_t seed = 0;
};

/// Solves the linear system colim(eta) ψ_src = ψ_dst lim(eta) for one ψ per
/// functor and searches the solution space for a tuple of invertible
/// matrices. Three tiers: forced-singular detection, exhaustive enumeration
/// of small spaces (an exhausted space is a proof of infeasibility), then
/// seeded sampling whose failure is reported as inconclusive, never as a
/// verdict.
NaturalitySolution solve_naturality(const FinCategory& cat, const NaturalityProblem& problem,
                                    const NatSolveOptions& options = {});

// ---------------------------------------------------------------------------
// Reduction to the group, witnesses, probes.
// ---------------------------------------------------------------------------

/// The one-object group category of an invariant system together with the
/// functor collapsing the parent category onto it: a morphism f: i -> j
/// maps to t_j^{-1} ∘ τ(f) ∘ t_i, with transition morphisms t_i the first
/// element of S(0, i). Functoriality is checked at construction.
struct GroupModel {
  GroupData group;
  FinCategory group_cat;  // morphism k is group element k
  std::vector<int> pi;    // parent morphism -> group element position
};

GroupModel group_model(const FinCategory& cat, const InvariantSystem& is);

/// Left-regular representation on the group category.
VectFunctor regular_representation(const GroupModel& model, uint32_t p);
/// One-dimensional diagram with every action the identity.
VectFunctor trivial_functor(const FinCategory& cat, uint32_t p);

VectFunctor pullback_functor(const FinCategory& cat, const GroupModel& model, const VectFunctor& on_group);

struct ModWitness {
  GroupModel model;
  NaturalityProblem problem;  // regular representation vs trivial functor, augmentation between them
  NaturalitySolution solution;
};

/// Negative-certificate diagram for a connected category with an invariant
/// system whose cardinality p divides: the pulled-back regular
/// representation with its augmentation, certified infeasible by
/// solve_naturality. Returns nullopt for negatives with no invariant
/// system; throws std::invalid_argument when the verdict is positive.
std::optional<ModWitness> witness_mod(const FinCategory& cat, uint32_t p);

/// Limit of the free diagram j -> F_p^{hom(i, j)}; when the limit is a
/// line, the supports of a spanning vector are reported per object.
struct FreeProbe {
  int base = 0;
  int dim = 0;
  std::vector<std::vector<int>> supports;  // per object: morphism indices, only when dim == 1
};

FreeProbe free_probe(const FinCategory& cat, int i, uint32_t p);

struct FreeProbeFamily {
  std::vector<int> dims;                     // per base object
  std::optional<InvariantSystem> family;     // assembled supports, when every dim is 1
};

FreeProbeFamily free_probe_family(const FinCategory& cat, uint32_t p);

// ---------------------------------------------------------------------------
// Sampling and the oracle run backing `oracle mod`.
// ---------------------------------------------------------------------------

std::optional<VectFunctor> sample_vect_functor(const FinCategory& cat, const SpanningData& span, Rng& rng,
                                               uint32_t p, int max_dim, int max_retries);

/// A random natural transformation: a random element of the solution space
/// of the naturality equations (always nonempty; may be zero).
VectNatTransform sample_vect_nat(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G, Rng& rng);

struct ModOracleOptions {
  int n_samples = 100;
  uint64_t seed = 0;
  int max_dim = 6;
  int max_retries = 2000;
  Exec mode = Exec::serial;
};

struct ModOracleReport {
  Verdict verdict;
  uint32_t p = 2;
  ModOracleOptions options;
  int n_generated = 0;
  int n_canonical_invertible = 0;
  int n_transforms_checked = 0;
  int n_pullback_checked = 0;
  int n_pullback_invertible = 0;
  int n_norm_checked = 0;
  int n_norm_inverts = 0;
  bool witness_ran = false;
  std::string witness_reason;
  std::vector<int> probe_dims;
  int n_inconclusive = 0;
  bool consistent = true;
  std::vector<std::string> failures;
};

/// Checks decide_mod over F_p against executable evidence: positive
/// verdicts get invertible canonical maps on raw samples (plus pullback and
/// norm-splitting checks when the category reduces to its group); negative
/// verdicts get an infeasible naturality system, a dimension-mismatch
/// witness, or free-probe evidence, depending on the certificate.
ModOracleReport sample_check_mod(const FinCategory& cat, uint32_t p, const ModOracleOptions& options);

}  // namespace frobcat

#endif  // FROBCAT_MOD_ORACLE_HPP_
