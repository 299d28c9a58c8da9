#ifndef PROBLOGIC_MODEL_HPP
#define PROBLOGIC_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "problogic/formula.hpp"
#include "problogic/rational.hpp"

namespace problogic {

/// Set of state indices, as a bitset over [0, n).
using Extension = std::vector<bool>;

class UnknownPropositionError : public std::runtime_error {
 public:
  explicit UnknownPropositionError(const std::string& name)
      : std::runtime_error("proposition has no valuation entry: " + name) {}
};

/// Finite probability model: row w of the kernel is the distribution
/// T(w). On a finite powerset algebra finite additivity and
/// sigma-additivity coincide, so this one type serves both model classes.
/// Immutable by convention once validated.
struct FiniteModel {
  int state_count = 0;
  std::vector<std::vector<Rational>> kernel;        // n rows of n entries
  std::map<std::string, std::set<int>> valuation;   // prop -> states
  int world = 0;
};

/// Structural check: kernel shape, entries in [0,1], rows summing to
/// exactly 1, valuation indices in range, world in range. Violations are
/// data, not exceptions.
std::vector<std::string> validate(const FiniteModel& m);
inline bool valid(const FiniteModel& m) { return validate(m).empty(); }

/// Extension [[f]]: bottom-up exact evaluation. Throws
/// UnknownPropositionError for propositions missing from the valuation.
Extension extension(const FiniteModel& m, const Formula& f);

/// w in [[f]].
bool check(const FiniteModel& m, int w, const Formula& f);

/// Exact measure T(w)(e).
Rational mass(const FiniteModel& m, int w, const Extension& e);

/// Quotient by the atoms of the set algebra generated by the extensions
/// of f's subformula closure together with the designated-world
/// singleton. One representative per nonempty atom (least state index);
/// each atom's full mass is moved onto its representative, so the measure
/// of every closure extension is preserved.
FiniteModel restrict(const FiniteModel& m, const Formula& f);

/// All subformulas of f, including f itself, deduplicated.
std::vector<Formula> subformula_closure(const Formula& f);

/// Model JSON:
///   { "states": n, "world": w, "kernel": [["num/den", ...], ...],
///     "valuation": { "prop": [i, ...] } }
/// Serialization is byte-stable: fixed key order, normalized rationals,
/// sorted valuation keys and indices.
std::string model_to_json(const FiniteModel& m);
FiniteModel model_from_json(const std::string& text);

}  // namespace problogic

#endif
