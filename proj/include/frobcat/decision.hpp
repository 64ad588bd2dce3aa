#ifndef FROBCAT_DECISION_HPP_
#define FROBCAT_DECISION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobcat/category.hpp"
#include "frobcat/invariant.hpp"

namespace frobcat {

/// Symbolic ring descriptor. The decision procedures only ever ask whether
/// an integer is invertible, so no ring arithmetic lives here.
struct RingSpec {
  enum class Kind { integers, rationals, integers_mod_n, prime_field };
  Kind kind = Kind::integers;
  uint64_t modulus = 0;  // n or p for the modular kinds

  static RingSpec integers() { return {Kind::integers, 0}; }
  static RingSpec rationals() { return {Kind::rationals, 0}; }
  static RingSpec integers_mod(uint64_t n);  // n >= 2
  static RingSpec prime_field(uint64_t p);   // p prime (checked)

  /// Parses `z`, `q`, `zmod:<n>`, `fp:<p>`; throws std::invalid_argument.
  static RingSpec parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const RingSpec& other) const { return kind == other.kind && modulus == other.modulus; }
};

bool is_prime(uint64_t n);

/// Is the positive integer m invertible in the ring?
bool invertible(const RingSpec& ring, uint64_t m);

// ---------------------------------------------------------------------------
// Verdicts and certificates.
// ---------------------------------------------------------------------------

struct IsEvidence {
  int component = 0;
  InvariantSystem is;          // in parent morphism indices
  size_t cardinality = 0;
  bool cardinality_invertible = false;
};

struct CertInvariantSystems {
  std::vector<IsEvidence> per_component;
};
struct CertNotConnected {
  ComponentPartition partition;
};
struct CertNotStronglyConnected {
  int component = 0;
  std::vector<int> a, b;  // parent object indices
};
struct CertNoInvariantSystem {
  int component = 0;
  std::vector<SeedOutcome> trace;  // seeds in parent morphism indices
};
struct CertCardinalityNotInvertible {
  int component = 0;
  std::vector<size_t> cardinalities;  // of every closure family found, ascending
  RingSpec ring;
};
struct CertEmptyCategory {
  bool target_has_zero_object = false;
};

using Certificate = std::variant<CertInvariantSystems, CertNotConnected, CertNotStronglyConnected,
                                 CertNoInvariantSystem, CertCardinalityNotInvertible, CertEmptyCategory>;

struct Verdict {
  bool frobenius = false;
  Certificate certificate;

  template <typename T>
  const T* cert() const {
    return std::get_if<T>(&certificate);
  }
};

std::string certificate_kind(const Verdict& verdict);
/// One-line human explanation, e.g. "|G_I| = 2 is not invertible in fp:2".
std::string verdict_reason(const Verdict& verdict);

// ---------------------------------------------------------------------------
// Decision procedures.
// ---------------------------------------------------------------------------

/// Is the category Set-Frobenius: nonempty, connected, and carrying an
/// invariant system of singletons? Set has no zero object, so the empty
/// category answers no. A slot cardinality works for Set exactly when it is
/// 1, i.e. invertible over the integers; negative cardinality certificates
/// are tagged with that ring.
Verdict decide_set(const FinCategory& cat);

/// Is the category Frobenius relative to modules over the ring: every
/// connected component carries an invariant system whose cardinality is
/// invertible? Module categories have a zero object, so the empty category
/// answers yes; the component count of a finite category is always finite.
Verdict decide_mod(const FinCategory& cat, const RingSpec& ring);

/// A group of the given order is module-Frobenius iff the order is
/// invertible in the ring.
bool decide_group(uint64_t order, const RingSpec& ring);

/// Re-derives everything a certificate claims from the primitive checkers
/// (verify_is, component partitions, arrow directions, invertibility)
/// without consulting the decision procedure again. `set_target` selects
/// the Set reading of the verdict; `ring` is ignored for it. Returns the
/// first discrepancy, or nothing when the certificate stands.
std::optional<std::string> recheck_certificate(const FinCategory& cat, const Verdict& verdict,
                                               const RingSpec& ring, bool set_target);

}  // namespace frobcat

#endif  // FROBCAT_DECISION_HPP_
