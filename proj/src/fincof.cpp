#include "problogic/fincof.hpp"

#include <algorithm>

namespace problogic {

namespace {

std::set<std::uint64_t> set_union(const std::set<std::uint64_t>& a,
                                  const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::set<std::uint64_t> set_intersection(const std::set<std::uint64_t>& a,
                                         const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

std::set<std::uint64_t> set_difference(const std::set<std::uint64_t>& a,
                                       const std::set<std::uint64_t>& b) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

}  // namespace

FinCofSet FinCofSet::complement() const {
  return {kind == Kind::Finite ? Kind::Cofinite : Kind::Finite, support};
}

FinCofSet FinCofSet::unite(const FinCofSet& o) const {
  if (kind == Kind::Finite && o.kind == Kind::Finite)
    return finite(set_union(support, o.support));
  if (kind == Kind::Cofinite && o.kind == Kind::Cofinite)
    return cofinite(set_intersection(support, o.support));
  // finite | cofinite: complement shrinks by the finite part
  const FinCofSet& fin = kind == Kind::Finite ? *this : o;
  const FinCofSet& cof = kind == Kind::Finite ? o : *this;
  return cofinite(set_difference(cof.support, fin.support));
}

FinCofSet FinCofSet::intersect(const FinCofSet& o) const {
  return complement().unite(o.complement()).complement();
}

std::string FinCofSet::to_string() const {
  std::string body = "{";
  bool first = true;
  for (std::uint64_t x : support) {
    if (!first) body += ",";
    body += std::to_string(x);
    first = false;
  }
  body += "}";
  return kind == Kind::Finite ? body : "N\\" + body;
}

Rational fincof_measure(std::uint64_t state, const FinCofSet& s) {
  if (state == 0)
    return s.kind == FinCofSet::Kind::Finite ? Rational(0) : Rational(1);
  // uniform on [0, 2^state)
  BigInt bound = BigInt(1) << state;
  BigInt inside = 0;
  for (std::uint64_t x : s.support)
    if (BigInt(x) < bound) ++inside;
  Rational part(inside, bound);
  return s.kind == FinCofSet::Kind::Finite ? part : Rational(1 - part);
}

namespace {

// {w : measure(w, e) REL r} for REL in {>=, <=}. The uniform-row measure
// of e tends to 0 (Finite) or 1 (Cofinite) monotonically once 2^n covers
// the support, so after an exact scan of an initial segment the verdict
// is constant; the set is the scanned exceptions against that tail
// verdict. Always finite or cofinite, as the algebra requires.
FinCofSet threshold_set(const FinCofSet& e, bool at_least, const Rational& r) {
  if (at_least && r == 0) return FinCofSet::all();
  if (!at_least && r == 1) return FinCofSet::all();

  const bool finite_e = e.kind == FinCofSet::Kind::Finite;
  bool tail_pass;
  if (finite_e)  // measure -> 0, strictly positive while support remains
    tail_pass = at_least ? false : (r > 0 || e.support.empty());
  else  // measure -> 1, strictly below 1 while the complement remains
    tail_pass = at_least ? (r < 1 || e.support.empty()) : false;

  std::uint64_t horizon = 1;
  if (!e.support.empty()) {
    std::uint64_t top = *e.support.rbegin();
    while ((BigInt(1) << horizon) <= top) ++horizon;
    ++horizon;  // 2^horizon strictly covers the support
  }
  auto passes = [&](std::uint64_t n) {
    const Rational m = fincof_measure(n, e);
    return at_least ? m >= r : m <= r;
  };
  // beyond coverage the measure is monotone, so one matching row settles
  // every later one
  while (passes(horizon) != tail_pass) ++horizon;

  std::set<std::uint64_t> exceptions;
  if (passes(0) != tail_pass) exceptions.insert(0);
  for (std::uint64_t n = 1; n < horizon; ++n)
    if (passes(n) != tail_pass) exceptions.insert(n);
  return tail_pass ? FinCofSet::cofinite(std::move(exceptions))
                   : FinCofSet::finite(std::move(exceptions));
}

}  // namespace

FinCofSet fincof_extension(const Formula& f,
                           const std::map<std::string, FinCofSet>& valuation) {
  switch (f.kind()) {
    case Kind::Prop: {
      auto it = valuation.find(f.name());
      if (it == valuation.end())
        throw std::out_of_range("proposition has no valuation entry: " + f.name());
      return it->second;
    }
    case Kind::Neg:
      return fincof_extension(f.child(), valuation).complement();
    case Kind::And:
      return fincof_extension(f.left(), valuation)
          .intersect(fincof_extension(f.right(), valuation));
    case Kind::Or:
      return fincof_extension(f.left(), valuation)
          .unite(fincof_extension(f.right(), valuation));
    case Kind::L:
      return threshold_set(fincof_extension(f.child(), valuation), true,
                           f.threshold());
    case Kind::M:
      return threshold_set(fincof_extension(f.child(), valuation), false,
                           f.threshold());
  }
  throw std::logic_error("bad formula node");
}

}  // namespace problogic
