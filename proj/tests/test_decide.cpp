#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "problogic/decide.hpp"
#include "problogic/parser.hpp"

using namespace problogic;
using namespace problogic::testing;

namespace {
const Formula p = Formula::prop("p");
}

TEST_CASE("closure constituents are ordered and subformula-closed") {
  ClosureInfo a(parse("L[1/2] p"));
  CHECK(a.props() == std::vector<std::string>{"p"});
  REQUIRE(a.atoms().size() == 1);
  CHECK(a.atoms()[0].rel == Rel::GE);
  CHECK(a.bit_count() == 2);

  ClosureInfo b(parse("!L[1/2] p"));
  REQUIRE(b.atoms().size() == 1);
  CHECK(b.atoms()[0].rel == Rel::LT);

  ClosureInfo c(parse("M[1/2](L[1/4] p & M[3/4] p)"));
  REQUIRE(c.atoms().size() == 3);
  CHECK(c.atoms()[0].subject == p);
  CHECK(c.atoms()[0].rel == Rel::GE);
  CHECK(c.atoms()[1].subject == p);
  CHECK(c.atoms()[1].rel == Rel::LE);
  CHECK(c.atoms()[2].rel == Rel::LE);  // the outer atom comes after its subject's
  CHECK(c.atoms()[2].threshold == Rational(1, 2));
}

TEST_CASE("elimination drops candidates with unsatisfiable atom intervals") {
  ClosureInfo c(parse("L[0] p"));
  Elimination e = eliminate(c);
  // unset L[0] atom demands mass < 0; only atom-set candidates remain
  CHECK(e.survivors.size() == 2);
  for (Candidate cand : e.survivors) CHECK(((cand >> 1) & 1) == 1);
}

TEST_CASE("elimination respects the candidate budget") {
  DecideOptions opts;
  opts.candidate_budget = 2;
  CHECK_THROWS_AS(eliminate(ClosureInfo(parse("L[1/2] p & M[1/2] q")), opts),
                  CandidateBudgetExceeded);
}

TEST_CASE("budget can come from the environment") {
  CHECK(options_from_env().candidate_budget == (std::uint64_t(1) << 24));
}

TEST_CASE("satisfiability verdicts on the small designed inputs") {
  CHECK(!satisfiable(parse("L[1/2] p & M[1/3] p")).sat);
  CHECK(!satisfiable(parse("L[1/2] p & !L[1/2] p")).sat);
  CHECK(satisfiable(parse("L[1/2] p")).sat);
  CHECK(satisfiable(parse("false")).sat == false);
  CHECK(satisfiable(parse("true")).sat);

  // conjunction of prefix members for n <= 3 plus the strict complement
  std::vector<Formula> theory{parse("!L[1/2] p")};
  for (unsigned n = 0; n <= 3; ++n)
    theory.push_back(Formula::at_least(
        Rational(1, 2) - Rational(1, BigInt(1) << (2 * (n + 1))), p));
  SatResult res = satisfiable_theory(theory);
  REQUIRE(res.sat);
  CHECK(validate(res.witness).empty());

  CHECK(satisfiable(parse(
                        "M[0](M[0] p | L[1] p) & M[1/2](L[1/2] p & M[1/2] p) & "
                        "M[1/2](L[1/4] p & M[3/4] p)"))
            .sat);
}

TEST_CASE("theory satisfiability") {
  CHECK(satisfiable_theory({}).sat);
  CHECK(satisfiable_theory({}).witness.state_count == 1);
  CHECK(!satisfiable_theory({parse("L[1/2] p"), parse("!L[1/2] p")}).sat);
}

TEST_CASE("witnesses pass exact model checking") {
  Rng rng(20260826);
  std::vector<std::string> props{"p", "q", "r"};
  int sat_count = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = random_formula(rng, 3, props, 8, false);
    if (depth(f) > 2) continue;
    SatResult res = satisfiable(f);
    if (!res.sat) continue;
    ++sat_count;
    CHECK(validate(res.witness).empty());
    CHECK(check(res.witness, res.witness.world, f));
  }
  CHECK(sat_count > 20);
}

TEST_CASE("unsat verdicts survive random refutation attempts") {
  Rng rng(31337);
  std::vector<std::string> props{"p", "q"};
  int unsat_count = 0;
  for (int i = 0; i < 120 && unsat_count < 12; ++i) {
    Formula f = random_formula(rng, 2, props, 4, false);
    SatResult res = satisfiable(f);
    if (res.sat) continue;
    ++unsat_count;
    for (int trial = 0; trial < 200; ++trial) {
      FiniteModel m = random_model(rng, 6, props, 16);
      for (int w = 0; w < m.state_count; ++w) CHECK(!check(m, w, f));
    }
  }
  CHECK(unsat_count >= 5);
}

TEST_CASE("positive formulas produce only closed closure atoms") {
  Rng rng(23);
  std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 3, props, 6, true);
    ClosureInfo c(f);
    for (const ConstraintAtom& a : c.atoms())
      CHECK((a.rel == Rel::GE || a.rel == Rel::LE));
  }
}

TEST_CASE("tighten on the designed instances") {
  TightenResult a = tighten({parse("M[1/4] p")}, Kind::L, Rational(1, 2), p);
  REQUIRE(!a.already_sat);
  CHECK(a.max_value == Rational(1, 4));
  CHECK(a.witness_threshold == Rational(3, 8));

  TightenResult b = tighten({parse("L[3/4] p")}, Kind::M, Rational(1, 2), p);
  REQUIRE(!b.already_sat);
  CHECK(b.max_value == Rational(3, 4));
  CHECK(b.witness_threshold == Rational(5, 8));

  CHECK(tighten({parse("M[1/2] p")}, Kind::L, Rational(1, 2), p).already_sat);

  CHECK_THROWS_AS(tighten({parse("L[1/2] p"), parse("M[1/4] p")}, Kind::L,
                          Rational(3, 4), p),
                  GammaUnsatisfiableError);
  CHECK_THROWS_AS(
      tighten({parse("!L[1/2] p")}, Kind::L, Rational(1, 2), p),
      NotPositiveError);
}

TEST_CASE("tighten thresholds characterize satisfiability") {
  std::vector<Formula> gamma{parse("M[1/4] p"), parse("M[1/2] q"),
                             parse("L[1/8] p | L[1/2] q")};
  Formula phi = parse("p | q");
  TightenResult res = tighten(gamma, Kind::L, Rational(1), phi);
  REQUIRE(!res.already_sat);
  Rational M = res.max_value;
  for (int k = 0; k <= 8; ++k) {
    Rational q(k, 8);
    std::vector<Formula> probe = gamma;
    probe.push_back(Formula::at_least(q, phi));
    CHECK(satisfiable_theory(probe).sat == (q <= M));
  }
}

TEST_CASE("maximal extension follows the greedy dichotomy") {
  std::vector<Formula> universe{parse("L[1/2] p"), parse("M[1/2] p"),
                                parse("L[1] p")};
  auto result = extend_maximal({}, universe);
  REQUIRE(result.size() == 2);
  CHECK(result[0] == universe[0]);
  CHECK(result[1] == universe[1]);

  auto pair = extend_maximal({}, {parse("L[1/2] p"), parse("M[1/2] p")});
  CHECK(pair.size() == 2);

  auto fixed = extend_maximal({p}, {});
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0] == p);

  CHECK_THROWS_AS(extend_maximal({parse("L[1] p"), parse("M[0] p")}, {}),
                  GammaUnsatisfiableError);
}

TEST_CASE("monotonicity: loosening a root threshold keeps satisfiability") {
  Rng rng(41);
  std::vector<std::string> props{"p", "q"};
  for (int i = 0; i < 60; ++i) {
    Formula child = random_formula(rng, 1, props, 4, true);
    Rational r = random_threshold(rng, 4);
    Formula f = Formula::at_least(r, child);
    if (!satisfiable(f).sat) continue;
    Rational looser = r / 2;
    CHECK(satisfiable(Formula::at_least(looser, child)).sat);
  }
}

TEST_CASE("determinism: identical inputs give identical witnesses") {
  Formula f = parse("L[1/2](p | q) & M[3/4] p & !L[1/4] q");
  SatResult a = satisfiable(f);
  SatResult b = satisfiable(f);
  REQUIRE(a.sat);
  REQUIRE(b.sat);
  CHECK(model_to_json(a.witness) == model_to_json(b.witness));
}
