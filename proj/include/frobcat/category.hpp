#ifndef FROBCAT_CATEGORY_HPP_
#define FROBCAT_CATEGORY_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace frobcat {

struct Morphism {
  std::string name;
  int dom = 0;
  int cod = 0;
};

/// A finite category given by a total composition table.
///
/// Objects are the integers [0, n_objects). `comp` is stored as a dense
/// n_mor x n_mor table with entry comp[g * n_mor + f] = index of g∘f when
/// cod(f) == dom(g), and -1 otherwise. Values are immutable after
/// construction; all operations below are pure functions.
struct FinCategory {
  int n_objects = 0;
  std::vector<Morphism> morphisms;
  std::vector<int> identity;  // object -> morphism index
  std::vector<int> comp;      // composition table, -1 where undefined

  int n_morphisms() const { return static_cast<int>(morphisms.size()); }
  int dom(int m) const { return morphisms[m].dom; }
  int cod(int m) const { return morphisms[m].cod; }
  bool is_identity(int m) const {
    return identity[morphisms[m].dom] == m && morphisms[m].dom == morphisms[m].cod;
  }

  /// g∘f, or -1 when the pair is not composable.
  int compose(int g, int f) const { return comp[static_cast<size_t>(g) * morphisms.size() + f]; }

  const std::string& name(int m) const { return morphisms[m].name; }
  int morphism_index(const std::string& name) const;  // -1 when absent

  bool operator==(const FinCategory& other) const;
};

/// hom[i][j] = morphism indices with dom i and cod j, ascending.
struct HomIndex {
  int n_objects = 0;
  std::vector<std::vector<int>> hom;  // flattened [i * n + j]

  const std::vector<int>& operator()(int i, int j) const { return hom[static_cast<size_t>(i) * n_objects + j]; }
};

HomIndex hom_index(const FinCategory& cat);

struct ComponentPartition {
  std::vector<int> component;  // object -> component id
  int count = 0;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks every category law on the table: totality of composition on
/// composable pairs, dom/cod of composites, identity laws, associativity.
/// Violations are reported with the offending morphism names and indices;
/// nothing throws.
ValidationReport validate(const FinCategory& cat);

/// Union-find closure over {dom(f), cod(f)}; component ids are assigned in
/// increasing order of each component's smallest object.
ComponentPartition connected_components(const FinCategory& cat);

struct StrongConnectivity {
  bool strongly_connected = true;
  // When not strongly connected: a source strongly-connected component of
  // the condensation (every arrow between the parts goes a -> b), chosen as
  // the source SCC containing the smallest object index.
  std::vector<int> a;
  std::vector<int> b;
};

/// Requires a connected category (throws std::invalid_argument otherwise).
/// True iff hom(i, j) is nonempty for all i, j.
StrongConnectivity is_strongly_connected(const FinCategory& cat);

// -------------------------------------------------------------------------
// Builders. Each returns a category that passes validate(); builders that
// take tables throw std::invalid_argument when the input is not a monoid.
// -------------------------------------------------------------------------

/// One-object category from an n x n table, table[a][b] = a∘b. The
/// two-sided unit is located automatically.
FinCategory from_monoid_table(const std::vector<std::vector<int>>& table,
                              const std::vector<std::string>& names = {});
FinCategory from_group_cyclic(int n);
FinCategory discrete(int n);
FinCategory arrow();
FinCategory parallel(int k);
/// Two-element monoid {1, e} with e idempotent.
FinCategory idempotent_monoid();
/// Adjoins a fresh two-sided unit to a one-object category; the old unit
/// stays behind as a non-identity idempotent.
FinCategory adjoin_unit(const FinCategory& monoid);
FinCategory disjoint_union(const FinCategory& x, const FinCategory& y);
/// Thin category on n objects from the reflexive-transitive closure of the
/// given pairs.
FinCategory from_preorder(int n, const std::vector<std::pair<int, int>>& pairs);

// -------------------------------------------------------------------------
// Subcategories.
// -------------------------------------------------------------------------

struct SubCategory {
  FinCategory cat;
  std::vector<int> object_map;    // sub object -> parent object
  std::vector<int> morphism_map;  // sub morphism -> parent morphism
};

/// Full subcategory on the given objects (ascending). Morphisms with one
/// endpoint outside the set are dropped, so this is only closed for
/// component-shaped subsets.
SubCategory full_subcategory(const FinCategory& cat, const std::vector<int>& objects);
SubCategory component_subcategory(const FinCategory& cat, const ComponentPartition& parts, int component);

/// One-object category on a composition-closed set of endomorphisms of
/// `obj` that contains the identity.
SubCategory endo_subcategory(const FinCategory& cat, int obj, const std::vector<int>& endos);

// -------------------------------------------------------------------------
// Text format.
//
//   objects <n>
//   mor <name> <dom> <cod>        one line per morphism, identities included
//   id <object> <name>            one line per object
//   comp <g> <f> <h>              g∘f = h; omitted when g or f is an identity
//   end
//
// '#' starts a comment; tokens are whitespace-separated. Compositions with
// an identity on either side are inferred. The parser rejects duplicate
// names, out-of-range indices, non-composable comp lines and a missing
// `end`; category *laws* are the job of validate().
// -------------------------------------------------------------------------

FinCategory parse_category(std::istream& in);
FinCategory parse_category_string(const std::string& text);
std::string serialize_category(const FinCategory& cat);

}  // namespace frobcat

#endif  // FROBCAT_CATEGORY_HPP_
