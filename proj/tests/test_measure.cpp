#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "problogic/measure.hpp"

using namespace problogic;

namespace {

using Rng = std::mt19937;

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// random powerset probability measure via point masses
std::vector<Rational> random_point_masses(Rng& rng, int n) {
  std::vector<Rational> weights(n);
  Rational total = 0;
  for (auto& w : weights) {
    w = Rational(pick(rng, 0, 6));
    total += w;
  }
  if (total == 0) {
    weights[0] = 1;
    total = 1;
  }
  for (auto& w : weights) w /= total;
  return weights;
}

Rational mass_of(const std::vector<Rational>& point, Bits s) {
  Rational total = 0;
  for (std::size_t i = 0; i < point.size(); ++i)
    if ((s >> i) & 1) total += point[i];
  return total;
}

}  // namespace

TEST_CASE("lattice closure") {
  SetFamily f = make_family(2, {0b01});
  SetFamily closed = lattice_closure(f);
  CHECK(closed.members == std::vector<Bits>{0b00, 0b01, 0b11});

  SetFamily two = lattice_closure(make_family(2, {0b01, 0b10}));
  CHECK(two.members == std::vector<Bits>{0b00, 0b01, 0b10, 0b11});

  CHECK(lattice_closure(closed).members == closed.members);  // idempotent
  CHECK(is_lattice(closed));
  CHECK(!is_lattice(make_family(2, {0b01, 0b10})));
}

TEST_CASE("generated algebra via atoms") {
  SetFamily f = make_family(2, {0b00, 0b01, 0b11});
  CHECK(generated_algebra(f).members == std::vector<Bits>{0b00, 0b01, 0b10, 0b11});

  SetFamily trivial = make_family(3, {0b000, 0b111});
  CHECK(generated_algebra(trivial).members == std::vector<Bits>{0b000, 0b111});

  // members {a},{a,b},{a,c} over {a,b,c} split all three singletons apart
  SetFamily three = make_family(3, {0b000, 0b001, 0b011, 0b101, 0b111});
  CHECK(family_atoms(three) == std::vector<Bits>{0b001, 0b010, 0b100});
  CHECK(generated_algebra(three).members.size() == 8);
  CHECK(is_algebra(generated_algebra(three)));
}

TEST_CASE("valuation axioms are checked instance by instance") {
  SetValuation ok;
  ok.family = make_family(2, {0b00, 0b01, 0b11});
  ok.values = {{0b00, 0}, {0b01, Rational(1, 3)}, {0b11, 1}};
  CHECK(is_valuation(ok));

  SetValuation loose = ok;
  loose.values[0b00] = Rational(1, 10);
  auto violations = valuation_violations(loose);
  REQUIRE(!violations.empty());
  CHECK(violations.front().find("strictness") != std::string::npos);

  SetValuation shrinking = ok;
  shrinking.values[0b11] = Rational(1, 4);
  bool monotone_violation = false;
  for (const auto& v : valuation_violations(shrinking))
    monotone_violation = monotone_violation ||
                         v.find("monotonicity") != std::string::npos;
  CHECK(monotone_violation);

  SetValuation five;
  five.family = make_family(3, {0b000, 0b001, 0b011, 0b101, 0b111});
  five.values = {{0b000, 0},
                 {0b001, Rational(1, 2)},
                 {0b011, Rational(3, 4)},
                 {0b101, Rational(3, 4)},
                 {0b111, 1}};
  CHECK(is_valuation(five));

  SetValuation broken = five;
  broken.values[0b101] = Rational(7, 8);  // 3/4 + 7/8 != 1 + 1/2
  bool modularity_violation = false;
  for (const auto& v : valuation_violations(broken))
    modularity_violation = modularity_violation ||
                           v.find("modularity") != std::string::npos;
  CHECK(modularity_violation);

  SetValuation not_lattice;
  not_lattice.family = make_family(2, {0b01, 0b10});
  CHECK_THROWS_AS(valuation_violations(not_lattice), NotALatticeError);
}

TEST_CASE("finitely additive extension of a valuation") {
  SetValuation v;
  v.family = make_family(2, {0b00, 0b01, 0b11});
  v.values = {{0b00, 0}, {0b01, Rational(1, 3)}, {0b11, 1}};
  SetValuation ext = sht_extend(v);
  CHECK(ext.values.at(0b10) == Rational(2, 3));
  CHECK(ext.values.at(0b01) == Rational(1, 3));
  CHECK(is_finitely_additive(ext));

  SetValuation five;
  five.family = make_family(3, {0b000, 0b001, 0b011, 0b101, 0b111});
  five.values = {{0b000, 0},
                 {0b001, Rational(1, 2)},
                 {0b011, Rational(3, 4)},
                 {0b101, Rational(3, 4)},
                 {0b111, 1}};
  SetValuation ext5 = sht_extend(five);
  CHECK(ext5.values.at(0b001) == Rational(1, 2));
  CHECK(ext5.values.at(0b010) == Rational(1, 4));
  CHECK(ext5.values.at(0b100) == Rational(1, 4));

  // a family that is already an algebra extends to itself
  SetValuation fixed = sht_extend(ext);
  CHECK(fixed.family.members == ext.family.members);
  CHECK(fixed.values == ext.values);
}

TEST_CASE("powerset extension places atom mass on least indices") {
  SetValuation coarse;
  coarse.family = make_family(3, {0b000, 0b111});
  coarse.values = {{0b000, 0}, {0b111, 1}};
  SetValuation ext = extend_to_powerset(coarse);
  CHECK(ext.values.at(0b001) == 1);
  CHECK(ext.values.at(0b010) == 0);
  CHECK(ext.values.at(0b111) == 1);
  CHECK(is_finitely_additive(ext));

  SetValuation split;
  split.family = make_family(3, {0b000, 0b001, 0b110, 0b111});
  split.values = {
      {0b000, 0}, {0b001, Rational(1, 4)}, {0b110, Rational(3, 4)}, {0b111, 1}};
  SetValuation ext2 = extend_to_powerset(split);
  CHECK(ext2.values.at(0b010) == Rational(3, 4));
  CHECK(ext2.values.at(0b100) == 0);

  // full powerset input is unchanged
  CHECK(extend_to_powerset(ext).values == ext.values);

  SetValuation not_algebra;
  not_algebra.family = make_family(2, {0b00, 0b01, 0b11});
  not_algebra.values = {{0b00, 0}, {0b01, 1}, {0b11, 1}};
  CHECK_THROWS_AS(extend_to_powerset(not_algebra), NotAnAlgebraError);
}

TEST_CASE("additivity violations are witnessed") {
  SetValuation bad;
  bad.family = make_family(2, {0b00, 0b01, 0b10, 0b11});
  bad.values = {
      {0b00, 0}, {0b01, Rational(1, 2)}, {0b10, Rational(1, 2)}, {0b11, Rational(3, 4)}};
  auto witness = additivity_violation(bad);
  REQUIRE(witness.has_value());
  CHECK((witness->first | witness->second) == 0b11);
}

TEST_CASE("closure operators are monotone and idempotent") {
  Rng rng(20260826);
  for (int i = 0; i < 100; ++i) {
    int n = pick(rng, 2, 5);
    std::vector<Bits> smaller, larger;
    for (int k = pick(rng, 1, 4); k > 0; --k) {
      Bits m = Bits(pick(rng, 0, (1 << n) - 1));
      larger.push_back(m);
      if (pick(rng, 0, 1)) smaller.push_back(m);
    }
    SetFamily a = lattice_closure(make_family(n, smaller));
    SetFamily b = lattice_closure(make_family(n, larger));
    for (Bits m : a.members) CHECK(b.contains(m));
    CHECK(lattice_closure(a).members == a.members);
    SetFamily ga = generated_algebra(make_family(n, smaller));
    CHECK(generated_algebra(ga).members == ga.members);
    CHECK(is_algebra(ga));
  }
}

TEST_CASE("random valuations round-trip through the extension") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    int n = pick(rng, 2, 6);
    std::vector<Rational> point = random_point_masses(rng, n);
    std::vector<Bits> members;
    for (int k = pick(rng, 1, 5); k > 0; --k)
      members.push_back(Bits(pick(rng, 0, (1 << n) - 1)));
    SetFamily lat = lattice_closure(make_family(n, members));

    SetValuation v;
    v.family = lat;
    for (Bits m : lat.members) v.values[m] = mass_of(point, m);
    REQUIRE(is_valuation(v));  // induced from a measure, so axioms hold

    SetValuation ext = sht_extend(v);
    for (Bits m : lat.members) CHECK(ext.values.at(m) == v.values.at(m));
    CHECK(is_finitely_additive(ext));
    CHECK(!additivity_violation(ext));
    for (Bits m : ext.family.members) CHECK(ext.values.at(m) == mass_of(point, m));

    SetValuation pw = extend_to_powerset(ext);
    CHECK(pw.values.at(pw.family.full()) == ext.values.at(ext.family.full()));
    CHECK(is_finitely_additive(pw));
    for (Bits m : ext.family.members) CHECK(pw.values.at(m) == ext.values.at(m));

    // uniqueness: perturbing any non-forced value breaks additivity
    if (ext.family.members.size() > lat.members.size()) {
      SetValuation perturbed = ext;
      for (Bits m : ext.family.members) {
        if (!lat.contains(m) && m != 0) {
          perturbed.values[m] += Rational(1, 7);
          break;
        }
      }
      CHECK(additivity_violation(perturbed).has_value());
    }
  }
}
