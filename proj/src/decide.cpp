#include "problogic/decide.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>

#include "problogic/lp.hpp"

namespace problogic {

// ---------------------------------------------------------------------------
// ClosureInfo

ClosureInfo::ClosureInfo(const Formula& f) : source_(f), root_(nnf(f)) {
  build(root_);
}

void ClosureInfo::build(const Nnf& g) {
  switch (g.tag()) {
    case Nnf::Tag::Lit:
      if (!prop_index_.count(g.prop())) {
        prop_index_[g.prop()] = static_cast<int>(props_.size());
        props_.push_back(g.prop());
      }
      return;
    case Nnf::Tag::And:
    case Nnf::Tag::Or:
      build(g.left());
      build(g.right());
      return;
    case Nnf::Tag::Atom: {
      const ConstraintAtom& a = g.atom();
      if (atom_index_.count(a)) return;
      auto it = nnf_cache_.find(a.subject);
      if (it == nnf_cache_.end())
        it = nnf_cache_.emplace(a.subject, nnf(a.subject)).first;
      build(it->second);  // subject constituents precede the atom
      if (!atom_index_.count(a)) {
        atom_index_[a] = static_cast<int>(atoms_.size());
        atoms_.push_back(a);
      }
      return;
    }
  }
}

int ClosureInfo::prop_bit(const std::string& name) const {
  auto it = prop_index_.find(name);
  if (it == prop_index_.end()) throw std::out_of_range("unknown proposition: " + name);
  return it->second;
}

int ClosureInfo::atom_bit(const ConstraintAtom& a) const {
  auto it = atom_index_.find(a);
  if (it == atom_index_.end()) throw std::out_of_range("unknown constraint atom");
  return static_cast<int>(props_.size()) + it->second;
}

bool ClosureInfo::eval(const Nnf& g, Candidate c) const {
  switch (g.tag()) {
    case Nnf::Tag::Lit:
      return (((c >> prop_bit(g.prop())) & 1) != 0) == g.positive();
    case Nnf::Tag::And:
      return eval(g.left(), c) && eval(g.right(), c);
    case Nnf::Tag::Or:
      return eval(g.left(), c) || eval(g.right(), c);
    case Nnf::Tag::Atom:
      return ((c >> atom_bit(g.atom())) & 1) != 0;
  }
  throw std::logic_error("bad nnf node");
}

bool ClosureInfo::eval_formula(const Formula& g, Candidate c) const {
  auto it = nnf_cache_.find(g);
  if (it == nnf_cache_.end()) it = nnf_cache_.emplace(g, nnf(g)).first;
  return eval(it->second, c);
}

DecideOptions options_from_env() {
  DecideOptions opts;
  if (const char* env = std::getenv("PROBLOGIC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) opts.candidate_budget = v;
  }
  return opts;
}

// ---------------------------------------------------------------------------
// Type elimination

namespace {

struct Interval {
  Rational lo{0}, hi{1};
  bool lo_strict = false, hi_strict = false;

  bool nonempty() const {
    return lo < hi || (lo == hi && !lo_strict && !hi_strict);
  }
  Rational interior() const { return lo == hi ? lo : Rational((lo + hi) / 2); }

  void tighten(Rel rel, const Rational& b) {
    switch (rel) {
      case Rel::GE:
        if (b > lo) { lo = b; lo_strict = false; }
        break;
      case Rel::GT:
        if (b > lo || (b == lo && !lo_strict)) { lo = b; lo_strict = true; }
        break;
      case Rel::LE:
        if (b < hi) { hi = b; hi_strict = false; }
        break;
      case Rel::LT:
        if (b < hi || (b == hi && !hi_strict)) { hi = b; hi_strict = true; }
        break;
    }
  }

  std::string key() const {
    return (lo_strict ? "(" : "[") + to_string(lo) + "," + to_string(hi) +
           (hi_strict ? ")" : "]");
  }
};

// Propositions occurring outside every modal operator; the truth of a
// formula at a candidate depends on exactly these prop bits (plus atom
// bits).
void top_level_props(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Prop:
      out.insert(f.name());
      return;
    case Kind::Neg:
      top_level_props(f.child(), out);
      return;
    case Kind::And:
    case Kind::Or:
      top_level_props(f.left(), out);
      top_level_props(f.right(), out);
      return;
    case Kind::L:
    case Kind::M:
      return;
  }
}

struct Subject {
  Formula formula;
  std::vector<int> bits;  // absolute constituent bit of each atom
  std::vector<Rel> rels;
  std::vector<Rational> bounds;
  std::map<std::uint32_t, Interval> feasible;  // local pattern -> interval
  // A subject decouples when it is a bare proposition whose bit cannot
  // influence any other subject's truth: its measure is then free in
  // [0,1] and needs no LP rows.
  bool decoupled = false;
  int prop_bit = -1;

  Interval interval_of(Candidate c) const {
    std::uint32_t pat = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
      if ((c >> bits[k]) & 1) pat |= std::uint32_t(1) << k;
    return feasible.at(pat);
  }
};

std::vector<Subject> build_subjects(const ClosureInfo& cl) {
  std::vector<Subject> subjects;
  std::map<Formula, int> index;
  const auto& atoms = cl.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto it = index.find(atoms[i].subject);
    if (it == index.end()) {
      it = index.emplace(atoms[i].subject, static_cast<int>(subjects.size())).first;
      subjects.push_back(Subject{atoms[i].subject, {}, {}, {}, {}, false, -1});
    }
    Subject& s = subjects[it->second];
    s.bits.push_back(cl.atom_bit(atoms[i]));
    s.rels.push_back(atoms[i].rel);
    s.bounds.push_back(atoms[i].threshold);
  }
  for (auto& s : subjects) {
    if (s.bits.size() > 24) throw CandidateBudgetExceeded(cl.bit_count());
    for (std::uint32_t pat = 0; pat < (std::uint32_t(1) << s.bits.size()); ++pat) {
      Interval iv;
      for (std::size_t k = 0; k < s.bits.size(); ++k) {
        bool set = (pat >> k) & 1;
        iv.tighten(set ? s.rels[k] : complement_rel(s.rels[k]), s.bounds[k]);
      }
      if (iv.nonempty()) s.feasible.emplace(pat, std::move(iv));
    }
  }
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    if (subjects[i].formula.kind() != Kind::Prop) continue;
    const std::string& p = subjects[i].formula.name();
    bool coupled = false;
    for (std::size_t j = 0; j < subjects.size() && !coupled; ++j) {
      if (j == i) continue;
      std::set<std::string> tl;
      top_level_props(subjects[j].formula, tl);
      if (tl.count(p)) coupled = true;
    }
    if (!coupled) {
      subjects[i].decoupled = true;
      subjects[i].prop_bit = cl.prop_bit(p);
    }
  }
  return subjects;
}

// Cartesian product of free prop bits with the per-subject feasible atom
// patterns; candidates with an empty interval for some subject are LP
// infeasible over any pool, so skipping them up front does not change the
// elimination fixpoint.
std::vector<Candidate> generate_candidates(const ClosureInfo& cl,
                                           const std::vector<Subject>& subjects,
                                           const DecideOptions& opts) {
  const int c = cl.bit_count();
  if (c >= 63 || (std::uint64_t(1) << c) > opts.candidate_budget)
    throw CandidateBudgetExceeded(c);
  std::vector<Candidate> pool;
  const std::uint64_t prop_combos = std::uint64_t(1) << cl.props().size();
  std::vector<Candidate> partial{0};
  for (const auto& s : subjects) {
    std::vector<Candidate> next;
    next.reserve(partial.size() * s.feasible.size());
    for (Candidate base : partial) {
      for (const auto& [pat, iv] : s.feasible) {
        (void)iv;
        Candidate m = base;
        for (std::size_t k = 0; k < s.bits.size(); ++k)
          if ((pat >> k) & 1) m |= Candidate(1) << s.bits[k];
        next.push_back(m);
      }
    }
    partial = std::move(next);
  }
  pool.reserve(partial.size() * prop_combos);
  for (Candidate pm = 0; pm < prop_combos; ++pm)
    for (Candidate base : partial) pool.push_back(base | pm);
  std::sort(pool.begin(), pool.end());
  return pool;
}

struct Groups {
  std::vector<std::vector<bool>> signatures;  // per group, over coupled subjects
  std::vector<std::vector<int>> members;      // survivor indices, ascending
  std::vector<int> group_of;                  // per survivor
};

Groups group_survivors(const ClosureInfo& cl, const std::vector<Subject>& subjects,
                       const std::vector<int>& coupled,
                       const std::vector<Candidate>& survivors) {
  Groups g;
  std::map<std::vector<bool>, int> ids;
  g.group_of.resize(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    std::vector<bool> sig;
    sig.reserve(coupled.size());
    for (int ci : coupled)
      sig.push_back(cl.eval_formula(subjects[ci].formula, survivors[i]));
    auto it = ids.find(sig);
    if (it == ids.end()) {
      it = ids.emplace(sig, static_cast<int>(g.signatures.size())).first;
      g.signatures.push_back(sig);
      g.members.emplace_back();
    }
    g.group_of[i] = it->second;
    g.members[it->second].push_back(static_cast<int>(i));
  }
  return g;
}

// The candidate's system over the group masses: the simplex rows
// x_1+...+x_n >= 1 and <= 1 plus, per coupled subject, the candidate's
// interval bounds on the mass of that subject's satisfying groups.
LinearSystem candidate_system(const std::vector<Interval>& profile,
                              const Groups& groups,
                              const std::vector<int>& coupled) {
  LinearSystem sys;
  sys.variable_count = static_cast<int>(groups.signatures.size());
  std::map<int, Rational> all;
  for (int v = 0; v < sys.variable_count; ++v) all[v] = 1;
  sys.constraints.push_back(LinearConstraint::ge(all, Rational(1)));
  sys.constraints.push_back(LinearConstraint::le(all, Rational(1)));
  for (std::size_t k = 0; k < coupled.size(); ++k) {
    std::map<int, Rational> coeff;
    for (int v = 0; v < sys.variable_count; ++v)
      if (groups.signatures[v][k]) coeff[v] = 1;
    const Interval& iv = profile[k];
    if (iv.lo > 0 || iv.lo_strict)
      sys.constraints.push_back(iv.lo_strict ? LinearConstraint::gt(coeff, iv.lo)
                                             : LinearConstraint::ge(coeff, iv.lo));
    if (iv.hi < 1 || iv.hi_strict)
      sys.constraints.push_back(iv.hi_strict ? LinearConstraint::lt(coeff, iv.hi)
                                             : LinearConstraint::le(coeff, iv.hi));
  }
  return sys;
}

}  // namespace

Elimination eliminate(const ClosureInfo& cl, const DecideOptions& opts) {
  std::vector<Subject> subjects = build_subjects(cl);
  std::vector<Candidate> survivors = generate_candidates(cl, subjects, opts);

  std::vector<int> coupled, decoupled;
  for (std::size_t i = 0; i < subjects.size(); ++i)
    (subjects[i].decoupled ? decoupled : coupled).push_back(static_cast<int>(i));

  while (!survivors.empty()) {
    Groups groups = group_survivors(cl, subjects, coupled, survivors);

    // Feasibility depends only on the candidate's coupled-interval
    // profile, so solve each distinct profile once per round.
    std::map<std::string, LpOutcome> cache;
    std::vector<const LpOutcome*> outcome(survivors.size(), nullptr);
    std::vector<std::string> keys(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      std::vector<Interval> profile;
      std::string key;
      profile.reserve(coupled.size());
      for (int ci : coupled) {
        profile.push_back(subjects[ci].interval_of(survivors[i]));
        key += profile.back().key();
      }
      keys[i] = key;
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, strict_feasible(candidate_system(profile, groups, coupled)))
                 .first;
      }
      outcome[i] = &it->second;
    }

    std::vector<Candidate> next;
    next.reserve(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i)
      if (outcome[i]->feasible()) next.push_back(survivors[i]);

    if (next.size() < survivors.size()) {
      survivors = std::move(next);
      continue;
    }

    // Fixpoint reached: lift the per-group masses to distributions over
    // survivors. Within a group the mass of each decoupled proposition is
    // split according to an interior point of the candidate's interval,
    // which keeps every decoupled atom strictly satisfied.
    Elimination result;
    result.survivors = survivors;
    result.distributions.resize(survivors.size());

    std::map<std::pair<int, std::uint64_t>, int> reps;
    auto dkey_of = [&](Candidate c) {
      std::uint64_t k = 0;
      for (std::size_t d = 0; d < decoupled.size(); ++d)
        if ((c >> subjects[decoupled[d]].prop_bit) & 1) k |= std::uint64_t(1) << d;
      return k;
    };
    for (std::size_t i = 0; i < survivors.size(); ++i)
      reps.emplace(std::make_pair(groups.group_of[i], dkey_of(survivors[i])),
                   static_cast<int>(i));  // emplace keeps the least index

    for (std::size_t i = 0; i < survivors.size(); ++i) {
      const std::vector<Rational>& x = cache.at(keys[i]).point;
      std::vector<Rational> weights(decoupled.size());
      for (std::size_t d = 0; d < decoupled.size(); ++d)
        weights[d] = subjects[decoupled[d]].interval_of(survivors[i]).interior();
      for (std::size_t g = 0; g < x.size(); ++g) {
        if (x[g] == 0) continue;
        const std::uint64_t combos = std::uint64_t(1) << decoupled.size();
        for (std::uint64_t dm = 0; dm < combos; ++dm) {
          Rational w = x[g];
          for (std::size_t d = 0; d < decoupled.size() && w != 0; ++d)
            w *= ((dm >> d) & 1) ? weights[d] : Rational(1 - weights[d]);
          if (w == 0) continue;
          auto it = reps.find({static_cast<int>(g), dm});
          if (it == reps.end())
            throw std::logic_error("internal error: missing group representative");
          result.distributions[i][it->second] += w;
        }
      }
    }
    return result;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Satisfiability and witness extraction

namespace {

FiniteModel trivial_model() {
  FiniteModel m;
  m.state_count = 1;
  m.kernel = {{Rational(1)}};
  m.world = 0;
  return m;
}

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

}  // namespace

SatResult satisfiable(const Formula& f, const DecideOptions& opts) {
  ClosureInfo cl(f);
  Elimination elim = eliminate(cl, opts);

  int world = -1;
  for (std::size_t i = 0; i < elim.survivors.size(); ++i) {
    if (cl.eval(cl.root(), elim.survivors[i])) {
      world = static_cast<int>(i);
      break;
    }
  }
  if (world < 0) return {};

  // Keep only states reachable from the designated candidate; removed
  // states carry zero mass from every kept row.
  std::set<int> reachable{world};
  std::vector<int> frontier{world};
  while (!frontier.empty()) {
    int i = frontier.back();
    frontier.pop_back();
    for (const auto& [j, p] : elim.distributions[i]) {
      if (p != 0 && reachable.insert(j).second) frontier.push_back(j);
    }
  }
  std::vector<int> states(reachable.begin(), reachable.end());
  std::map<int, int> local;
  for (std::size_t i = 0; i < states.size(); ++i) local[states[i]] = static_cast<int>(i);

  FiniteModel m;
  m.state_count = static_cast<int>(states.size());
  m.world = local.at(world);
  m.kernel.assign(m.state_count, std::vector<Rational>(m.state_count, Rational(0)));
  for (std::size_t i = 0; i < states.size(); ++i)
    for (const auto& [j, p] : elim.distributions[states[i]])
      if (p != 0) m.kernel[i][local.at(j)] += p;
  for (const std::string& prop : cl.props()) {
    std::set<int>& entry = m.valuation[prop];
    for (std::size_t i = 0; i < states.size(); ++i)
      if ((elim.survivors[states[i]] >> cl.prop_bit(prop)) & 1)
        entry.insert(static_cast<int>(i));
  }

  if (!valid(m) || !check(m, m.world, f))
    throw std::logic_error("internal error: witness failed exact re-verification");
  return {true, std::move(m)};
}

SatResult satisfiable_theory(const std::vector<Formula>& fs, const DecideOptions& opts) {
  if (fs.empty()) return {true, trivial_model()};
  return satisfiable(conjunction(fs), opts);
}

// ---------------------------------------------------------------------------
// Threshold tightening (the exact extremal-mass computation)

TightenResult tighten(const std::vector<Formula>& gamma, Kind op, const Rational& r,
                      const Formula& phi, const DecideOptions& opts) {
  if (op != Kind::L && op != Kind::M) throw std::invalid_argument("op must be L or M");
  if (!in_unit_range(r)) throw std::invalid_argument("threshold outside [0,1]");
  for (const Formula& g : gamma)
    if (classify(g) == Fragment::PL) throw NotPositiveError();
  if (classify(phi) == Fragment::PL) throw NotPositiveError();

  std::vector<Formula> augmented = gamma;
  augmented.push_back(op == Kind::L ? Formula::at_least(r, phi)
                                    : Formula::at_most(r, phi));
  if (satisfiable_theory(augmented, opts).sat) return {true, {}, {}};
  if (!satisfiable_theory(gamma, opts).sat) throw GammaUnsatisfiableError();

  Formula gamma_conj = conjunction(gamma);
  ClosureInfo cl(Formula::conj(gamma_conj, phi));
  Elimination elim = eliminate(cl, opts);

  std::optional<Rational> best;
  for (const PositiveClause& clause : positive_dnf(gamma_conj)) {
    bool contradictory = false;
    for (const auto& lit : clause.literals)
      for (const auto& other : clause.literals)
        if (lit.prop == other.prop && lit.positive != other.positive)
          contradictory = true;
    if (contradictory) continue;

    // Aggregate survivors by their truth on phi and on the clause's
    // modal subjects; the clause system only sees those masses.
    std::vector<Formula> keys{phi};
    for (const auto& a : clause.atoms)
      if (std::find(keys.begin(), keys.end(), a.subject) == keys.end())
        keys.push_back(a.subject);
    std::map<std::vector<bool>, int> ids;
    std::vector<std::vector<bool>> sigs;
    for (Candidate c : elim.survivors) {
      std::vector<bool> sig;
      for (const Formula& k : keys) sig.push_back(cl.eval_formula(k, c));
      if (ids.emplace(sig, static_cast<int>(sigs.size())).second) sigs.push_back(sig);
    }

    LinearSystem sys;
    sys.variable_count = static_cast<int>(sigs.size());
    std::map<int, Rational> all;
    for (int v = 0; v < sys.variable_count; ++v) all[v] = 1;
    sys.constraints.push_back(LinearConstraint::ge(all, Rational(1)));
    sys.constraints.push_back(LinearConstraint::le(all, Rational(1)));
    for (const auto& a : clause.atoms) {
      std::size_t k = std::find(keys.begin(), keys.end(), a.subject) - keys.begin();
      std::map<int, Rational> coeff;
      for (int v = 0; v < sys.variable_count; ++v)
        if (sigs[v][k]) coeff[v] = 1;
      sys.constraints.push_back(a.rel == Rel::GE
                                    ? LinearConstraint::ge(coeff, a.threshold)
                                    : LinearConstraint::le(coeff, a.threshold));
    }
    std::map<int, Rational> objective;
    for (int v = 0; v < sys.variable_count; ++v)
      if (sigs[v][0]) objective[v] = op == Kind::L ? 1 : -1;

    LpOutcome out = maximize(objective, sys);
    if (out.verdict != LpOutcome::Verdict::Optimal) continue;
    Rational value = op == Kind::L ? out.value : Rational(-out.value);
    if (!best || (op == Kind::L ? value > *best : value < *best)) best = value;
  }
  if (!best) throw GammaUnsatisfiableError();

  TightenResult result;
  result.max_value = *best;
  result.witness_threshold = (*best + r) / 2;
  return result;
}

std::vector<Formula> extend_maximal(const std::vector<Formula>& gamma,
                                    const std::vector<Formula>& universe,
                                    const DecideOptions& opts) {
  for (const Formula& g : gamma)
    if (classify(g) == Fragment::PL) throw NotPositiveError();
  for (const Formula& g : universe)
    if (classify(g) == Fragment::PL) throw NotPositiveError();
  if (!satisfiable_theory(gamma, opts).sat) throw GammaUnsatisfiableError();

  std::vector<Formula> current = gamma;
  for (const Formula& psi : universe) {
    std::vector<Formula> attempt = current;
    attempt.push_back(psi);
    if (satisfiable_theory(attempt, opts).sat) current = std::move(attempt);
  }
  return current;
}

}  // namespace problogic
