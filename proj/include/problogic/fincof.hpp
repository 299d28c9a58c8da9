#ifndef PROBLOGIC_FINCOF_HPP
#define PROBLOGIC_FINCOF_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "problogic/formula.hpp"
#include "problogic/rational.hpp"

namespace problogic {

class NotRepresentableError : public std::runtime_error {
 public:
  NotRepresentableError()
      : std::runtime_error("threshold set is neither finite nor cofinite") {}
};

/// Finite or cofinite subset of the naturals; the support is the set
/// itself (Finite) or its complement (Cofinite). Closed under union,
/// intersection and complement, so it carries a boolean algebra.
struct FinCofSet {
  enum class Kind { Finite, Cofinite };
  Kind kind = Kind::Finite;
  std::set<std::uint64_t> support;

  static FinCofSet finite(std::set<std::uint64_t> s) {
    return {Kind::Finite, std::move(s)};
  }
  static FinCofSet cofinite(std::set<std::uint64_t> complement_of) {
    return {Kind::Cofinite, std::move(complement_of)};
  }
  static FinCofSet empty() { return finite({}); }
  static FinCofSet all() { return cofinite({}); }

  bool contains(std::uint64_t n) const {
    bool in_support = support.count(n) != 0;
    return kind == Kind::Finite ? in_support : !in_support;
  }
  bool operator==(const FinCofSet& o) const {
    return kind == o.kind && support == o.support;
  }

  FinCofSet complement() const;
  FinCofSet unite(const FinCofSet& o) const;
  FinCofSet intersect(const FinCofSet& o) const;

  std::string to_string() const;
};

/// The symbolic kernel over the naturals: state 0 carries the trace of a
/// non-principal ultrafilter (finite sets get 0, cofinite sets 1); state
/// n >= 1 is uniform on {0, ..., 2^n - 1}.
Rational fincof_measure(std::uint64_t state, const FinCofSet& s);

/// Exact extension of a formula in this model, under a finite/cofinite
/// valuation of its propositions. Threshold sets are computed by exact
/// scanning: for a finite extension the uniform-row measure tends to 0,
/// for a cofinite one to 1, so only boundedly many states need checking.
FinCofSet fincof_extension(const Formula& f,
                           const std::map<std::string, FinCofSet>& valuation);

}  // namespace problogic

#endif
