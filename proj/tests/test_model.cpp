#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "problogic/parser.hpp"

using namespace problogic;
using namespace problogic::testing;

namespace {

// the 2-state model with v(p) = {0}, T(0) = (1/2, 1/2), T(1) = (1/8, 7/8)
FiniteModel two_state_model() {
  FiniteModel m;
  m.state_count = 2;
  m.world = 0;
  m.kernel = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 8), Rational(7, 8)}};
  m.valuation["p"] = {0};
  return m;
}

}  // namespace

TEST_CASE("validation reports violations as data") {
  CHECK(validate(two_state_model()).empty());

  FiniteModel bad = two_state_model();
  bad.kernel[0][1] = Rational(1, 3);
  auto problems = validate(bad);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("5/6") != std::string::npos);

  FiniteModel out_of_range = two_state_model();
  out_of_range.valuation["p"] = {5};
  CHECK(!validate(out_of_range).empty());

  FiniteModel negative = two_state_model();
  negative.kernel[0] = {Rational(3, 2), Rational(-1, 2)};
  CHECK(!validate(negative).empty());
}

TEST_CASE("extensions on the 2-state model") {
  FiniteModel m = two_state_model();
  Formula p = Formula::prop("p");
  Formula band = Formula::conj(Formula::at_least(Rational(1, 4), p),
                               Formula::at_most(Rational(3, 4), p));
  CHECK(extension(m, band) == Extension{true, false});
  CHECK(check(m, 0, Formula::at_most(Rational(1, 2), band)));
  CHECK(extension(m, Formula::at_least(0, band)) == Extension{true, true});
  CHECK(check(m, 0, parse("M[0](M[0] p | L[1] p)")));
  CHECK(check(m, 0, parse("p | !p")));
  CHECK(check(m, 1, parse("p | !p")));
  CHECK_THROWS_AS(extension(m, Formula::prop("unknown")), UnknownPropositionError);
}

TEST_CASE("exact mass comparisons at the boundary") {
  FiniteModel m;
  m.state_count = 2;
  m.world = 0;
  m.kernel = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
  m.valuation["p"] = {0, 1};
  CHECK(!check(m, 0, parse("L[1] p & M[0] p")));
  CHECK(check(m, 0, parse("L[1] p")));
}

TEST_CASE("mass of an extension") {
  FiniteModel m = two_state_model();
  CHECK(mass(m, 0, extension(m, Formula::prop("p"))) == Rational(1, 2));
  CHECK(mass(m, 1, extension(m, Formula::prop("p"))) == Rational(1, 8));
}

TEST_CASE("model JSON round-trips byte-identically") {
  FiniteModel m = two_state_model();
  std::string text = model_to_json(m);
  FiniteModel back = model_from_json(text);
  CHECK(model_to_json(back) == text);
  CHECK(back.state_count == 2);
  CHECK(back.kernel[1][0] == Rational(1, 8));
  CHECK(back.valuation["p"] == std::set<int>{0});

  // unreduced rationals are re-normalized on input
  FiniteModel renorm = model_from_json(
      R"({"states":1,"world":0,"kernel":[["2/2"]],"valuation":{}})");
  CHECK(renorm.kernel[0][0] == 1);

  CHECK_THROWS(model_from_json(
      R"({"states":1,"world":0,"kernel":[["1/0"]],"valuation":{}})"));
}

TEST_CASE("subformula closure contains the formula and its parts") {
  Formula f = parse("L[1/2](p | q)");
  auto closure = subformula_closure(f);
  CHECK(closure.size() == 4);
  CHECK(std::find(closure.begin(), closure.end(), f) != closure.end());
  CHECK(std::find(closure.begin(), closure.end(), Formula::prop("p")) !=
        closure.end());
}

TEST_CASE("restriction of already-separated states is the identity") {
  FiniteModel m = two_state_model();
  FiniteModel r = restrict(m, Formula::prop("p"));
  CHECK(r.state_count == 2);
  CHECK(r.kernel == m.kernel);
  CHECK(r.valuation == m.valuation);
}

TEST_CASE("restriction merges duplicated states") {
  FiniteModel m;
  m.state_count = 3;
  m.world = 0;
  std::vector<Rational> row{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  m.kernel = {row, row, row};
  m.valuation["p"] = {1, 2};
  Formula f = parse("L[1/2] p");
  FiniteModel r = restrict(m, f);
  CHECK(r.state_count == 2);
  CHECK(validate(r).empty());
  for (const Formula& g : subformula_closure(f))
    CHECK(check(m, 0, g) == check(r, r.world, g));
  // the merged state carries the whole atom's mass
  CHECK(mass(r, r.world, extension(r, Formula::prop("p"))) == Rational(2, 3));
}

TEST_CASE("extension agrees with a brute-force per-world evaluator") {
  Rng rng(20260826);
  std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 3, props, 8, false);
    FiniteModel m = random_model(rng, 5, props, 8);
    Extension e = extension(m, f);
    for (int w = 0; w < m.state_count; ++w)
      CHECK(e[w] == brute_check(m, w, f));
  }
}

TEST_CASE("modal operators are monotone in the child extension") {
  Rng rng(3);
  std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 100; ++i) {
    FiniteModel m = random_model(rng, 5, props, 6);
    Formula phi = Formula::prop("p");
    Formula psi = Formula::disj(Formula::prop("p"), Formula::prop("q"));
    Rational r = random_threshold(rng, 6);
    Extension narrow = extension(m, Formula::at_least(r, phi));
    Extension wide = extension(m, Formula::at_least(r, psi));
    for (int w = 0; w < m.state_count; ++w) CHECK((!narrow[w] || wide[w]));
  }
}

TEST_CASE("restriction preserves closure formulas at representatives") {
  Rng rng(20260826);
  std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 100; ++i) {
    FiniteModel m = random_model(rng, 8, props, 6);
    Formula f = random_formula(rng, 2, props, 6, false);
    FiniteModel r = restrict(m, f);
    REQUIRE(validate(r).empty());
    CHECK(r.state_count <= m.state_count);

    // recompute the representative map: signature over closure
    // extensions plus the world singleton, least index per class
    auto closure = subformula_closure(f);
    std::vector<Extension> exts;
    for (const Formula& g : closure) exts.push_back(extension(m, g));
    std::map<std::vector<bool>, int> rep_of;
    for (int w = 0; w < m.state_count; ++w) {
      std::vector<bool> sig{w == m.world};
      for (const auto& e : exts) sig.push_back(e[w]);
      rep_of.emplace(sig, w);
    }
    std::vector<int> reps;
    for (const auto& [sig, w] : rep_of) reps.push_back(w);
    std::sort(reps.begin(), reps.end());
    REQUIRE(int(reps.size()) == r.state_count);
    for (int new_idx = 0; new_idx < int(reps.size()); ++new_idx)
      for (const Formula& g : closure)
        CHECK(check(m, reps[new_idx], g) == check(r, new_idx, g));
  }
}
