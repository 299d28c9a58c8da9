#ifndef PROBLOGIC_DECIDE_HPP
#define PROBLOGIC_DECIDE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "problogic/formula.hpp"
#include "problogic/model.hpp"

namespace problogic {

class CandidateBudgetExceeded : public std::runtime_error {
 public:
  explicit CandidateBudgetExceeded(int constituents)
      : std::runtime_error("candidate budget exceeded: 2^" +
                          std::to_string(constituents) + " assignments") {}
};

class GammaUnsatisfiableError : public std::runtime_error {
 public:
  GammaUnsatisfiableError() : std::runtime_error("gamma is unsatisfiable") {}
};

/// Truth assignment to the constituents of a closure, as a bitmask
/// (propositions first, then constraint atoms). Truth of composite
/// subformulas is derived, never stored.
using Candidate = std::uint64_t;

/// Constituents of a formula: its propositions plus one constraint atom
/// per modal subformula occurrence-class of its negation normal form.
/// Subformula-closed: every atom subject's own constituents are present,
/// and precede the atom in the fixed traversal order.
class ClosureInfo {
 public:
  explicit ClosureInfo(const Formula& f);

  const Formula& source() const { return source_; }
  const Nnf& root() const { return root_; }
  const std::vector<std::string>& props() const { return props_; }
  const std::vector<ConstraintAtom>& atoms() const { return atoms_; }

  int bit_count() const { return static_cast<int>(props_.size() + atoms_.size()); }
  int prop_bit(const std::string& name) const;
  int atom_bit(const ConstraintAtom& a) const;

  bool eval(const Nnf& g, Candidate c) const;
  /// Derived truth of an arbitrary formula whose modal subformulas are
  /// all constituents of this closure.
  bool eval_formula(const Formula& g, Candidate c) const;

 private:
  Formula source_;
  Nnf root_;
  std::vector<std::string> props_;
  std::vector<ConstraintAtom> atoms_;
  std::map<std::string, int> prop_index_;
  std::map<ConstraintAtom, int> atom_index_;
  mutable std::map<Formula, Nnf> nnf_cache_;

  void build(const Nnf& g);
};

struct DecideOptions {
  /// Cap on the nominal candidate-pool size 2^constituents.
  std::uint64_t candidate_budget = std::uint64_t(1) << 24;
};

DecideOptions options_from_env();

/// Fixpoint of type elimination: the candidates that admit a probability
/// distribution over surviving candidates compatible with their atom
/// bits (set atom => its relation, unset atom => the strict/weak
/// complement), plus one witness distribution per survivor (sparse over
/// survivor indices) recorded in the final round.
struct Elimination {
  std::vector<Candidate> survivors;  // ascending bitmask order
  std::vector<std::map<int, Rational>> distributions;
};

Elimination eliminate(const ClosureInfo& c, const DecideOptions& opts = {});

struct SatResult {
  bool sat = false;
  FiniteModel witness;  // valid iff sat; passes validate() and check(world, input)
};

SatResult satisfiable(const Formula& f, const DecideOptions& opts = {});
SatResult satisfiable_theory(const std::vector<Formula>& fs,
                             const DecideOptions& opts = {});

struct TightenResult {
  bool already_sat = false;
  Rational max_value;          // extremal phi-mass M under gamma
  Rational witness_threshold;  // r' = (M + r) / 2
};

/// Threshold tightening for a positive theory: when gamma + op_r(phi) is
/// unsatisfiable, computes the exact extremal phi-mass M attainable under
/// gamma and the canonical strictly-tighter unsatisfiable threshold r'.
/// Throws GammaUnsatisfiableError when gamma alone is unsatisfiable.
TightenResult tighten(const std::vector<Formula>& gamma, Kind op, const Rational& r,
                      const Formula& phi, const DecideOptions& opts = {});

/// Greedy maximal satisfiable extension of gamma within a finite universe
/// of positive formulas, in universe order.
std::vector<Formula> extend_maximal(const std::vector<Formula>& gamma,
                                    const std::vector<Formula>& universe,
                                    const DecideOptions& opts = {});

}  // namespace problogic

#endif
