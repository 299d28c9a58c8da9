#ifndef PROBLOGIC_MEASURE_HPP
#define PROBLOGIC_MEASURE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "problogic/rational.hpp"

namespace problogic {

/// Subset of a finite universe [0, n), as a bitmask.
using Bits = std::uint64_t;

class NotALatticeError : public std::runtime_error {
 public:
  NotALatticeError() : std::runtime_error("family is not a lattice") {}
};

class NotAnAlgebraError : public std::runtime_error {
 public:
  NotAnAlgebraError() : std::runtime_error("family is not an algebra") {}
};

class InconsistentValuationError : public std::runtime_error {
 public:
  InconsistentValuationError()
      : std::runtime_error("no finitely additive extension exists") {}
};

class AmbiguousExtensionError : public std::runtime_error {
 public:
  AmbiguousExtensionError()
      : std::runtime_error("extension underdetermined on the generated algebra") {}
};

/// Family of subsets of [0, universe). Members are deduplicated and kept
/// in ascending bitmask order.
struct SetFamily {
  int universe = 0;
  std::vector<Bits> members;

  Bits full() const { return universe == 64 ? ~Bits(0) : (Bits(1) << universe) - 1; }
  bool contains(Bits s) const;
};

/// Set function on a family; the measure-theoretic side of the toolkit.
struct SetValuation {
  SetFamily family;
  std::map<Bits, Rational> values;
};

std::string set_to_string(Bits s, int universe);

/// Normalizes: sorts, deduplicates, checks universe bounds.
SetFamily make_family(int universe, std::vector<Bits> members);

bool is_lattice(const SetFamily& f);
bool is_algebra(const SetFamily& f);

/// Smallest family containing f, the empty set and the full set, closed
/// under pairwise union and intersection.
SetFamily lattice_closure(const SetFamily& f);

/// Closure under union, intersection and complement; computed as the
/// union-closure of the atoms of f.
SetFamily generated_algebra(const SetFamily& f);

/// Atoms: the blocks of the partition of the universe by membership
/// signature across f's members, in ascending bitmask order.
std::vector<Bits> family_atoms(const SetFamily& f);

/// Checks strictness (mu(empty) = 0), monotonicity and modularity; each
/// failing instance is reported with its witness sets. Requires the
/// family to be a lattice with a value for every member.
std::vector<std::string> valuation_violations(const SetValuation& v);
inline bool is_valuation(const SetValuation& v) {
  return valuation_violations(v).empty();
}

/// The unique finitely additive extension of a valuation to the
/// generated algebra, via an exact linear solve for the atom masses.
SetValuation sht_extend(const SetValuation& v);

/// Extension from an algebra to the full powerset: each atom's mass is
/// placed on its least-index element.
SetValuation extend_to_powerset(const SetValuation& v);

/// First disjoint member pair with mu(A | B) != mu(A) + mu(B), if any.
/// Requires an algebra.
std::optional<std::pair<Bits, Bits>> additivity_violation(const SetValuation& v);
inline bool is_finitely_additive(const SetValuation& v) {
  return !additivity_violation(v).has_value();
}

}  // namespace problogic

#endif
