#ifndef FROBCAT_INVARIANT_HPP_
#define FROBCAT_INVARIANT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobcat/category.hpp"
#include "frobcat/parallel.hpp"

namespace frobcat {

/// A family of morphism subsets S(i, j) ⊆ hom(i, j), one per object pair,
/// on which composition with any morphism acts bijectively on both sides.
/// Slots are stored sorted so families compare structurally.
struct InvariantSystem {
  int n_objects = 0;
  std::vector<std::vector<int>> sets;  // flattened [i * n + j], sorted

  const std::vector<int>& slot(int i, int j) const { return sets[static_cast<size_t>(i) * n_objects + j]; }
  std::vector<int>& slot(int i, int j) { return sets[static_cast<size_t>(i) * n_objects + j]; }
  size_t cardinality() const { return sets.empty() ? 0 : sets[0].size(); }

  bool operator==(const InvariantSystem& other) const {
    return n_objects == other.n_objects && sets == other.sets;
  }
};

struct IsCheck {
  bool ok = true;
  std::string violation;  // first violated axiom, empty when ok
};

/// Checks the defining axioms on a candidate family: all slots nonempty
/// subsets of the hom-sets, and left/right composition with every morphism
/// maps the corresponding slots bijectively onto each other.
IsCheck verify_is(const FinCategory& cat, const InvariantSystem& family);

/// Smallest family containing `seed` at its (dom, cod) slot and closed
/// under composition with every morphism on both sides, via a worklist.
/// Slots may stay empty when the category is not strongly connected.
InvariantSystem closure(const FinCategory& cat, int seed);

struct SeedOutcome {
  int seed = -1;       // morphism index in End(0)
  bool passed = false;
  size_t cardinality = 0;  // common slot size when passed
  std::string note;        // violation or dedup note otherwise
};

struct FindIsResult {
  std::optional<InvariantSystem> preferred;  // first of minimal cardinality
  std::vector<InvariantSystem> all;          // distinct closure families that verify, in seed order
  std::vector<SeedOutcome> trace;
  bool strongly_connected = true;
  std::vector<int> witness_a, witness_b;  // when not strongly connected
};

/// Seeds closures from the endomorphisms of object 0 and keeps the families
/// that verify. Every invariant system meets End(0) (its (0,0) slot is
/// nonempty) and the closure of any of its elements is again one, so the
/// scan is exhaustive up to minimal families. Requires a valid, connected
/// category.
FindIsResult find_is(const FinCategory& cat);

/// Exhaustive enumeration of every family of nonempty slot subsets,
/// filtered by verify_is. Throws when the category exceeds the morphism
/// budget. The reference oracle for find_is.
std::vector<InvariantSystem> brute_force_find_is(const FinCategory& cat, int budget = 12,
                                                 Exec mode = Exec::serial);

/// The group carried by the (0, 0) slot of an invariant system.
struct GroupData {
  int order = 0;
  std::vector<int> elems;             // morphism indices, ascending
  std::vector<int> table;             // table[a * order + b] = index into elems of elems[a]∘elems[b]
  int unit = 0;                       // position of the idempotent in elems

  int mult(int a, int b) const { return table[static_cast<size_t>(a) * order + b]; }
  int inverse(int a) const;
};

/// Group structure on S(0, 0); throws std::logic_error when the slot fails
/// the group axioms (which would mean verify_is or the closure search is
/// broken, not the input).
GroupData group_of(const FinCategory& cat, const InvariantSystem& is);

/// The unique idempotent of each S(i, i); throws std::logic_error when a
/// slot does not contain exactly one idempotent.
std::vector<int> idempotents(const FinCategory& cat, const InvariantSystem& is);

struct Groupoid {
  FinCategory cat;                // same objects, morphisms = union of all slots
  std::vector<int> morphism_map;  // groupoid morphism -> parent morphism
  std::vector<int> parent_to_groupoid;  // parent morphism -> groupoid morphism or -1
};

Groupoid groupoid(const FinCategory& cat, const InvariantSystem& is);

/// The retraction onto the groupoid: f: i -> j maps to e_j ∘ f ∘ e_i.
/// Returned as a table of parent morphism indices; it is a functor and
/// restricts to the identity on the groupoid's morphisms.
std::vector<int> tau(const FinCategory& cat, const InvariantSystem& is);

}  // namespace frobcat

#endif  // FROBCAT_INVARIANT_HPP_
