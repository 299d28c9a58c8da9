#include "problogic/formula.hpp"

#include <algorithm>

#include <boost/integer/common_factor.hpp>

namespace problogic {

Formula Formula::prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->left = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->left = std::move(a);
  n->right = std::move(b);
  return Formula(std::move(n));
}

static void check_threshold(const Rational& r) {
  if (!in_unit_range(r)) throw std::invalid_argument("threshold outside [0,1]");
}

Formula Formula::at_least(Rational r, Formula f) {
  check_threshold(r);
  auto n = std::make_shared<Node>();
  n->kind = Kind::L;
  n->threshold = std::move(r);
  n->left = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::at_most(Rational r, Formula f) {
  check_threshold(r);
  auto n = std::make_shared<Node>();
  n->kind = Kind::M;
  n->threshold = std::move(r);
  n->left = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::top() {
  Formula t = prop(kReservedTrueProp);
  return disj(t, neg(t));
}

Formula Formula::bottom() { return neg(top()); }

int Formula::compare(const Formula& other) const {
  if (node_ == other.node_) return 0;
  if (kind() != other.kind()) return kind() < other.kind() ? -1 : 1;
  switch (kind()) {
    case Kind::Prop:
      return name().compare(other.name());
    case Kind::Neg:
      return child().compare(other.child());
    case Kind::And:
    case Kind::Or: {
      int c = left().compare(other.left());
      if (c != 0) return c;
      return right().compare(other.right());
    }
    case Kind::L:
    case Kind::M: {
      if (threshold() != other.threshold())
        return threshold() < other.threshold() ? -1 : 1;
      return child().compare(other.child());
    }
  }
  return 0;
}

bool Formula::operator==(const Formula& other) const { return compare(other) == 0; }

Rel complement_rel(Rel r) {
  switch (r) {
    case Rel::GE: return Rel::LT;
    case Rel::LE: return Rel::GT;
    case Rel::GT: return Rel::LE;
    case Rel::LT: return Rel::GE;
  }
  return Rel::GE;
}

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::GE: return ">=";
    case Rel::LE: return "<=";
    case Rel::GT: return ">";
    case Rel::LT: return "<";
  }
  return "?";
}

bool ConstraintAtom::operator==(const ConstraintAtom& o) const {
  return rel == o.rel && threshold == o.threshold && subject == o.subject;
}

bool ConstraintAtom::operator<(const ConstraintAtom& o) const {
  if (rel != o.rel) return rel < o.rel;
  if (threshold != o.threshold) return threshold < o.threshold;
  return subject < o.subject;
}

Nnf Nnf::lit(std::string prop, bool positive) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Lit;
  n->prop = std::move(prop);
  n->positive = positive;
  return Nnf(std::move(n));
}

Nnf Nnf::conj(Nnf a, Nnf b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::And;
  n->left = std::move(a);
  n->right = std::move(b);
  return Nnf(std::move(n));
}

Nnf Nnf::disj(Nnf a, Nnf b) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Or;
  n->left = std::move(a);
  n->right = std::move(b);
  return Nnf(std::move(n));
}

Nnf Nnf::atom(ConstraintAtom a) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::Atom;
  n->constraint = std::move(a);
  return Nnf(std::move(n));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_top(const Formula& f) {
  return f.kind() == Kind::Or && f.left().kind() == Kind::Prop &&
         f.left().name() == kReservedTrueProp && f.right().kind() == Kind::Neg &&
         f.right().child() == f.left();
}

bool is_bottom(const Formula& f) {
  return f.kind() == Kind::Neg && is_top(f.child());
}

void print_into(const Formula& f, std::string& out) {
  if (is_top(f)) {
    out += "true";
    return;
  }
  if (is_bottom(f)) {
    out += "false";
    return;
  }
  switch (f.kind()) {
    case Kind::Prop:
      out += f.name();
      break;
    case Kind::Neg:
      out += '!';
      print_into(f.child(), out);
      break;
    case Kind::And:
    case Kind::Or:
      out += '(';
      print_into(f.left(), out);
      out += f.kind() == Kind::And ? " & " : " | ";
      print_into(f.right(), out);
      out += ')';
      break;
    case Kind::L:
    case Kind::M: {
      out += f.kind() == Kind::L ? "L[" : "M[";
      out += to_string(f.threshold());
      out += "] ";
      const Formula& c = f.child();
      bool atomic = is_top(c) || is_bottom(c) || c.kind() == Kind::Prop ||
                    c.kind() == Kind::And || c.kind() == Kind::Or;
      // And/Or print their own parentheses; Neg/L/M need explicit ones so
      // the operator scope survives the round trip.
      if (atomic) {
        print_into(c, out);
      } else {
        out += '(';
        print_into(c, out);
        out += ')';
      }
      break;
    }
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

unsigned depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return 0;
    case Kind::Neg:
      return depth(f.child());
    case Kind::And:
    case Kind::Or:
      return std::max(depth(f.left()), depth(f.right()));
    case Kind::L:
    case Kind::M:
      return depth(f.child()) + 1;
  }
  return 0;
}

namespace {

// Least fragment: BPL < PPL < PL.
Fragment join(Fragment a, Fragment b) { return a < b ? b : a; }

Fragment classify_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return Fragment::BPL;
    case Kind::Neg:
      return f.child().kind() == Kind::Prop ? Fragment::BPL : Fragment::PL;
    case Kind::And:
    case Kind::Or:
      return join(classify_rec(f.left()), classify_rec(f.right()));
    case Kind::L:
      return classify_rec(f.child());
    case Kind::M:
      return join(Fragment::PPL, classify_rec(f.child()));
  }
  return Fragment::PL;
}

}  // namespace

Fragment classify(const Formula& f) { return classify_rec(f); }

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::BPL: return "BPL";
    case Fragment::PPL: return "PPL";
    case Fragment::PL: return "PL";
  }
  return "?";
}

namespace {

Nnf nnf_rec(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Kind::Prop:
      return Nnf::lit(f.name(), !negated);
    case Kind::Neg:
      return nnf_rec(f.child(), !negated);
    case Kind::And: {
      Nnf l = nnf_rec(f.left(), negated);
      Nnf r = nnf_rec(f.right(), negated);
      return negated ? Nnf::disj(std::move(l), std::move(r))
                     : Nnf::conj(std::move(l), std::move(r));
    }
    case Kind::Or: {
      Nnf l = nnf_rec(f.left(), negated);
      Nnf r = nnf_rec(f.right(), negated);
      return negated ? Nnf::conj(std::move(l), std::move(r))
                     : Nnf::disj(std::move(l), std::move(r));
    }
    case Kind::L:
      return Nnf::atom({f.child(), negated ? Rel::LT : Rel::GE, f.threshold()});
    case Kind::M:
      return Nnf::atom({f.child(), negated ? Rel::GT : Rel::LE, f.threshold()});
  }
  throw std::logic_error("bad formula node");
}

}  // namespace

Nnf nnf(const Formula& f) { return nnf_rec(f, false); }

namespace {

void local_language_rec(const Formula& f, LocalLanguageInfo& info, unsigned* out_depth) {
  switch (f.kind()) {
    case Kind::Prop:
      info.propositions.insert(f.name());
      *out_depth = 0;
      return;
    case Kind::Neg:
      local_language_rec(f.child(), info, out_depth);
      return;
    case Kind::And:
    case Kind::Or: {
      unsigned dl = 0, dr = 0;
      local_language_rec(f.left(), info, &dl);
      local_language_rec(f.right(), info, &dr);
      *out_depth = std::max(dl, dr);
      return;
    }
    case Kind::L:
    case Kind::M: {
      unsigned dc = 0;
      local_language_rec(f.child(), info, &dc);
      *out_depth = dc + 1;
      info.grid_denominator =
          boost::integer::lcm(info.grid_denominator,
                              BigInt(boost::multiprecision::denominator(f.threshold())));
      return;
    }
  }
}

}  // namespace

LocalLanguageInfo local_language(const Formula& f) {
  LocalLanguageInfo info;
  info.grid_denominator = 1;  // empty lcm
  unsigned d = 0;
  local_language_rec(f, info, &d);
  info.depth = d;
  return info;
}

namespace {

bool on_grid(const Formula& g, const BigInt& q) {
  switch (g.kind()) {
    case Kind::Prop:
      return true;
    case Kind::Neg:
      return on_grid(g.child(), q);
    case Kind::And:
    case Kind::Or:
      return on_grid(g.left(), q) && on_grid(g.right(), q);
    case Kind::L:
    case Kind::M:
      // k/q for integer k <=> q * threshold is an integer.
      return boost::multiprecision::denominator(Rational(g.threshold() * q)) == 1 &&
             on_grid(g.child(), q);
  }
  return false;
}

}  // namespace

bool in_local_language(const Formula& g, const LocalLanguageInfo& info) {
  LocalLanguageInfo gi = local_language(g);
  if (!std::includes(info.propositions.begin(), info.propositions.end(),
                     gi.propositions.begin(), gi.propositions.end()))
    return false;
  if (gi.depth > info.depth) return false;
  return on_grid(g, info.grid_denominator);
}

namespace {

void clause_insert_literal(PositiveClause& c, PositiveLiteral lit) {
  if (std::find(c.literals.begin(), c.literals.end(), lit) == c.literals.end())
    c.literals.push_back(std::move(lit));
}

void clause_insert_atom(PositiveClause& c, ConstraintAtom a) {
  if (std::find(c.atoms.begin(), c.atoms.end(), a) == c.atoms.end())
    c.atoms.push_back(std::move(a));
}

std::vector<PositiveClause> dnf_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
      return {PositiveClause{{{f.name(), true}}, {}}};
    case Kind::Neg:
      if (f.child().kind() != Kind::Prop) throw NotPositiveError();
      return {PositiveClause{{{f.child().name(), false}}, {}}};
    case Kind::L:
      return {PositiveClause{{}, {{f.child(), Rel::GE, f.threshold()}}}};
    case Kind::M:
      return {PositiveClause{{}, {{f.child(), Rel::LE, f.threshold()}}}};
    case Kind::Or: {
      auto l = dnf_rec(f.left());
      auto r = dnf_rec(f.right());
      l.insert(l.end(), std::make_move_iterator(r.begin()),
               std::make_move_iterator(r.end()));
      return l;
    }
    case Kind::And: {
      auto l = dnf_rec(f.left());
      auto r = dnf_rec(f.right());
      std::vector<PositiveClause> out;
      out.reserve(l.size() * r.size());
      for (const auto& cl : l)
        for (const auto& cr : r) {
          PositiveClause c = cl;
          for (const auto& lit : cr.literals) clause_insert_literal(c, lit);
          for (const auto& a : cr.atoms) clause_insert_atom(c, a);
          out.push_back(std::move(c));
        }
      return out;
    }
  }
  throw std::logic_error("bad formula node");
}

}  // namespace

std::vector<PositiveClause> positive_dnf(const Formula& f) {
  if (classify(f) == Fragment::PL) throw NotPositiveError();
  return dnf_rec(f);
}

}  // namespace problogic
