#ifndef PROBLOGIC_TESTS_HELPERS_HPP
#define PROBLOGIC_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "problogic/formula.hpp"
#include "problogic/model.hpp"

namespace problogic::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_threshold(Rng& rng, int max_den) {
  int den = pick(rng, 1, max_den);
  int num = pick(rng, 0, den);
  return Rational(num, den);
}

inline Formula random_formula(Rng& rng, int depth_budget,
                              const std::vector<std::string>& props, int max_den,
                              bool positive_only) {
  int top = positive_only ? 4 : 5;
  if (depth_budget == 0) top = positive_only ? 1 : 2;
  switch (pick(rng, 0, top)) {
    case 0:
      return Formula::prop(props[pick(rng, 0, int(props.size()) - 1)]);
    case 1:  // negation on a proposition only, to stay inside every fragment
      return Formula::neg(Formula::prop(props[pick(rng, 0, int(props.size()) - 1)]));
    case 2:
      return Formula::conj(
          random_formula(rng, depth_budget - 1, props, max_den, positive_only),
          random_formula(rng, depth_budget - 1, props, max_den, positive_only));
    case 3:
      return Formula::disj(
          random_formula(rng, depth_budget - 1, props, max_den, positive_only),
          random_formula(rng, depth_budget - 1, props, max_den, positive_only));
    case 4: {
      Formula child =
          random_formula(rng, depth_budget - 1, props, max_den, positive_only);
      return pick(rng, 0, 1) ? Formula::at_least(random_threshold(rng, max_den), child)
                             : Formula::at_most(random_threshold(rng, max_den), child);
    }
    default:  // arbitrary negation: leaves the positive fragments
      return Formula::neg(
          random_formula(rng, depth_budget, props, max_den, positive_only));
  }
}

inline FiniteModel random_model(Rng& rng, int max_states,
                                const std::vector<std::string>& props, int max_den) {
  FiniteModel m;
  m.state_count = pick(rng, 1, max_states);
  m.world = pick(rng, 0, m.state_count - 1);
  for (int w = 0; w < m.state_count; ++w) {
    std::vector<Rational> weights(m.state_count);
    Rational total = 0;
    for (auto& x : weights) {
      x = Rational(pick(rng, 0, max_den));
      total += x;
    }
    if (total == 0) {
      weights[pick(rng, 0, m.state_count - 1)] = 1;
      total = 1;
    }
    for (auto& x : weights) x /= total;
    m.kernel.push_back(std::move(weights));
  }
  for (const auto& p : props) {
    std::set<int>& states = m.valuation[p];
    for (int i = 0; i < m.state_count; ++i)
      if (pick(rng, 0, 1)) states.insert(i);
  }
  return m;
}

/// Independent per-world evaluator: no extensions, no bitsets; recomputes
/// the measure of the child set on every modal node.
inline bool brute_check(const FiniteModel& m, int w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return m.valuation.at(f.name()).count(w) != 0;
    case Kind::Neg:
      return !brute_check(m, w, f.child());
    case Kind::And:
      return brute_check(m, w, f.left()) && brute_check(m, w, f.right());
    case Kind::Or:
      return brute_check(m, w, f.left()) || brute_check(m, w, f.right());
    case Kind::L:
    case Kind::M: {
      Rational total = 0;
      for (int u = 0; u < m.state_count; ++u)
        if (brute_check(m, u, f.child())) total += m.kernel[w][u];
      return f.kind() == Kind::L ? total >= f.threshold() : total <= f.threshold();
    }
  }
  return false;
}

}  // namespace problogic::testing

#endif
