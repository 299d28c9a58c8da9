#ifndef PROBLOGIC_FORMULA_HPP
#define PROBLOGIC_FORMULA_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "problogic/rational.hpp"

namespace problogic {

// Name of the reserved proposition behind the "true"/"false" keywords.
// The lexer treats those spellings as keywords, so user formulas can
// never introduce a clashing proposition.
inline constexpr const char* kReservedTrueProp = "true";

enum class Kind { Prop, Neg, And, Or, L, M };

/// Immutable formula AST with structural value semantics. L[r] reads
/// "probability at least r", M[r] "probability at most r"; thresholds are
/// exact rationals in [0,1].
class Formula {
 public:
  Formula() = default;

  static Formula prop(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula at_least(Rational r, Formula f);  // L[r] f
  static Formula at_most(Rational r, Formula f);   // M[r] f

  // "true" = t | !t, "false" = !(t | !t), for the reserved proposition t.
  static Formula top();
  static Formula bottom();

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  const std::string& name() const;      // Prop
  const Rational& threshold() const;    // L/M
  const Formula& child() const;         // Neg/L/M
  const Formula& left() const;          // And/Or
  const Formula& right() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  // Total structural order, for use as a map key.
  bool operator<(const Formula& other) const { return compare(other) < 0; }
  int compare(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  Rational threshold;
  Formula left, right;
};

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Rational& Formula::threshold() const { return node_->threshold; }
inline const Formula& Formula::child() const { return node_->left; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }

enum class Fragment { BPL, PPL, PL };

enum class Rel { GE, LE, GT, LT };

Rel complement_rel(Rel r);
const char* rel_symbol(Rel r);

/// Threshold constraint on the measure of a formula's extension. GE/LE
/// arise from L/M operators; GT/LT only from negations pushed inward.
struct ConstraintAtom {
  Formula subject;
  Rel rel;
  Rational threshold;

  bool operator==(const ConstraintAtom& o) const;
  bool operator<(const ConstraintAtom& o) const;
};

/// Negation normal form: negation survives only as literal polarity, all
/// modal structure is folded into constraint atoms.
class Nnf {
 public:
  enum class Tag { Lit, And, Or, Atom };

  static Nnf lit(std::string prop, bool positive);
  static Nnf conj(Nnf a, Nnf b);
  static Nnf disj(Nnf a, Nnf b);
  static Nnf atom(ConstraintAtom a);

  Tag tag() const;
  const std::string& prop() const;
  bool positive() const;
  const ConstraintAtom& atom() const;
  const Nnf& left() const;
  const Nnf& right() const;

 private:
  struct Node;
  Nnf() = default;
  explicit Nnf(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Nnf::Node {
  Tag tag;
  std::string prop;
  bool positive = true;
  ConstraintAtom constraint;
  Nnf left, right;
};

inline Nnf::Tag Nnf::tag() const { return node_->tag; }
inline const std::string& Nnf::prop() const { return node_->prop; }
inline bool Nnf::positive() const { return node_->positive; }
inline const ConstraintAtom& Nnf::atom() const { return node_->constraint; }
inline const Nnf& Nnf::left() const { return node_->left; }
inline const Nnf& Nnf::right() const { return node_->right; }

/// Syntactic footprint of a formula: its propositions, the common
/// denominator grid q of its thresholds (1 when no operator occurs), and
/// its probability depth.
struct LocalLanguageInfo {
  std::set<std::string> propositions;
  BigInt grid_denominator;  // q
  unsigned depth = 0;
};

struct PositiveLiteral {
  std::string prop;
  bool positive;
  bool operator==(const PositiveLiteral& o) const {
    return prop == o.prop && positive == o.positive;
  }
  bool operator<(const PositiveLiteral& o) const {
    if (prop != o.prop) return prop < o.prop;
    return positive < o.positive;
  }
};

/// One clause of a positive DNF: a conjunction of literals and modal
/// atoms (GE/LE only; modal subformulas are kept opaque).
struct PositiveClause {
  std::vector<PositiveLiteral> literals;
  std::vector<ConstraintAtom> atoms;
};

class NotPositiveError : public std::runtime_error {
 public:
  NotPositiveError() : std::runtime_error("formula is not in PPL") {}
};

std::string print(const Formula& f);
unsigned depth(const Formula& f);
Fragment classify(const Formula& f);
Nnf nnf(const Formula& f);
LocalLanguageInfo local_language(const Formula& f);
bool in_local_language(const Formula& g, const LocalLanguageInfo& info);

/// DNF of a BPL/PPL formula; the disjunction of clause conjunctions is
/// equivalent to the input. Throws NotPositiveError outside PPL.
std::vector<PositiveClause> positive_dnf(const Formula& f);

const char* fragment_name(Fragment f);

}  // namespace problogic

#endif
