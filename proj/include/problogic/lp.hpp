#ifndef PROBLOGIC_LP_HPP
#define PROBLOGIC_LP_HPP

#include <map>
#include <vector>

#include "problogic/formula.hpp"  // Rel
#include "problogic/rational.hpp"

namespace problogic {

/// Sparse linear constraint over nonnegative variables x_0..x_{n-1}.
struct LinearConstraint {
  std::map<int, Rational> coefficients;
  Rel rel;  // GE, LE, GT, LT; EQ expressed via eq flag below
  bool equality = false;
  Rational rhs;

  static LinearConstraint ge(std::map<int, Rational> c, Rational b) {
    return {std::move(c), Rel::GE, false, std::move(b)};
  }
  static LinearConstraint le(std::map<int, Rational> c, Rational b) {
    return {std::move(c), Rel::LE, false, std::move(b)};
  }
  static LinearConstraint gt(std::map<int, Rational> c, Rational b) {
    return {std::move(c), Rel::GT, false, std::move(b)};
  }
  static LinearConstraint lt(std::map<int, Rational> c, Rational b) {
    return {std::move(c), Rel::LT, false, std::move(b)};
  }
  static LinearConstraint eq(std::map<int, Rational> c, Rational b) {
    return {std::move(c), Rel::GE, true, std::move(b)};
  }

  bool strict() const { return !equality && (rel == Rel::GT || rel == Rel::LT); }
};

/// All variables are implicitly constrained to x >= 0.
struct LinearSystem {
  int variable_count = 0;
  std::vector<LinearConstraint> constraints;
};

struct LpOutcome {
  enum class Verdict { Feasible, Infeasible, Optimal, Unbounded };
  Verdict verdict;
  Rational value;                // Optimal only
  std::vector<Rational> point;   // Feasible/Optimal; satisfies constraints exactly

  bool feasible() const {
    return verdict == Verdict::Feasible || verdict == Verdict::Optimal;
  }
};

/// Two-phase simplex on exact rationals with Bland's anti-cycling rule.
/// Deterministic; every returned point is re-verified against the system
/// before return (a failure throws, it is an internal error).
class SimplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Feasibility of a closed system (no strict rows allowed).
LpOutcome feasible(const LinearSystem& s);

/// Exact maximum of a linear objective over a closed system.
LpOutcome maximize(const std::map<int, Rational>& objective, const LinearSystem& s);

/// Feasibility of a system that may contain strict rows. One shared slack
/// t is added to every strict row and maximized subject to t <= 1; the
/// system is strictly feasible iff the optimum of t is positive.
LpOutcome strict_feasible(const LinearSystem& s);

}  // namespace problogic

#endif
