#include "problogic/measure.hpp"

#include <algorithm>
#include <set>

namespace problogic {

namespace {

constexpr int kMaxUniverse = 20;  // powerset and closure sizes stay bounded

void check_universe(int n) {
  if (n < 1 || n > kMaxUniverse)
    throw std::invalid_argument("universe size out of range [1, 20]");
}

const Rational& value_of(const SetValuation& v, Bits s) {
  auto it = v.values.find(s);
  if (it == v.values.end())
    throw std::invalid_argument("member has no value: " +
                                set_to_string(s, v.family.universe));
  return it->second;
}

}  // namespace

bool SetFamily::contains(Bits s) const {
  return std::binary_search(members.begin(), members.end(), s);
}

std::string set_to_string(Bits s, int universe) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < universe; ++i) {
    if ((s >> i) & 1) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  }
  return out + "}";
}

SetFamily make_family(int universe, std::vector<Bits> members) {
  check_universe(universe);
  SetFamily f{universe, std::move(members)};
  for (Bits m : f.members)
    if (m & ~f.full()) throw std::invalid_argument("member outside universe");
  std::sort(f.members.begin(), f.members.end());
  f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
  return f;
}

bool is_lattice(const SetFamily& f) {
  if (!f.contains(0) || !f.contains(f.full())) return false;
  for (Bits a : f.members)
    for (Bits b : f.members)
      if (!f.contains(a | b) || !f.contains(a & b)) return false;
  return true;
}

bool is_algebra(const SetFamily& f) {
  if (!is_lattice(f)) return false;
  for (Bits a : f.members)
    if (!f.contains(f.full() & ~a)) return false;
  return true;
}

SetFamily lattice_closure(const SetFamily& f) {
  check_universe(f.universe);
  std::set<Bits> closed(f.members.begin(), f.members.end());
  closed.insert(0);
  closed.insert(f.full());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bits> snapshot(closed.begin(), closed.end());
    for (Bits a : snapshot)
      for (Bits b : snapshot) {
        if (closed.insert(a | b).second) grew = true;
        if (closed.insert(a & b).second) grew = true;
      }
  }
  SetFamily out;
  out.universe = f.universe;
  out.members.assign(closed.begin(), closed.end());
  return out;
}

std::vector<Bits> family_atoms(const SetFamily& f) {
  check_universe(f.universe);
  // signature of element i = set of members containing i
  std::map<std::vector<bool>, Bits> blocks;
  for (int i = 0; i < f.universe; ++i) {
    std::vector<bool> sig;
    sig.reserve(f.members.size());
    for (Bits m : f.members) sig.push_back(((m >> i) & 1) != 0);
    blocks[sig] |= Bits(1) << i;
  }
  std::vector<Bits> atoms;
  atoms.reserve(blocks.size());
  for (const auto& [sig, block] : blocks) atoms.push_back(block);
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

SetFamily generated_algebra(const SetFamily& f) {
  std::vector<Bits> atoms = family_atoms(f);
  SetFamily out;
  out.universe = f.universe;
  out.members.reserve(std::size_t(1) << atoms.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << atoms.size()); ++mask) {
    Bits s = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if ((mask >> k) & 1) s |= atoms[k];
    out.members.push_back(s);
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::vector<std::string> valuation_violations(const SetValuation& v) {
  if (!is_lattice(v.family)) throw NotALatticeError();
  const int n = v.family.universe;
  std::vector<std::string> out;
  if (value_of(v, 0) != 0)
    out.push_back("strictness: mu({}) = " + to_string(value_of(v, 0)));
  for (Bits a : v.family.members)
    for (Bits b : v.family.members) {
      if (a != b && (a & b) == a && value_of(v, a) > value_of(v, b))
        out.push_back("monotonicity: " + set_to_string(a, n) + " subset of " +
                      set_to_string(b, n) + " but " + to_string(value_of(v, a)) +
                      " > " + to_string(value_of(v, b)));
      if (a < b) {
        Rational lhs = value_of(v, a) + value_of(v, b);
        Rational rhs = value_of(v, a | b) + value_of(v, a & b);
        if (lhs != rhs)
          out.push_back("modularity: " + set_to_string(a, n) + ", " +
                        set_to_string(b, n) + ": " + to_string(lhs) +
                        " != " + to_string(rhs));
      }
    }
  return out;
}

SetValuation sht_extend(const SetValuation& v) {
  std::vector<std::string> axioms = valuation_violations(v);
  if (!axioms.empty())
    throw std::invalid_argument("not a valuation: " + axioms.front());

  std::vector<Bits> atoms = family_atoms(v.family);
  const std::size_t k = atoms.size();

  // equations: for each member m, sum of masses of atoms inside m = mu(m)
  std::vector<std::vector<Rational>> rows;
  for (Bits m : v.family.members) {
    std::vector<Rational> row(k + 1, Rational(0));
    for (std::size_t j = 0; j < k; ++j)
      if ((atoms[j] & m) == atoms[j]) row[j] = 1;
    row[k] = value_of(v, m);
    rows.push_back(std::move(row));
  }

  // exact Gauss-Jordan
  std::size_t rank = 0;
  std::vector<int> pivot_col;
  for (std::size_t col = 0; col < k && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    Rational lead = rows[rank][col];
    for (auto& x : rows[rank]) x /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational factor = rows[r][col];
      for (std::size_t c = col; c <= k; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][k] != 0) throw InconsistentValuationError();
  if (rank < k) throw AmbiguousExtensionError();

  std::vector<Rational> mass(k);
  for (std::size_t r = 0; r < rank; ++r) mass[pivot_col[r]] = rows[r][k];

  SetValuation out;
  out.family = generated_algebra(v.family);
  for (Bits m : out.family.members) {
    Rational total = 0;
    for (std::size_t j = 0; j < k; ++j)
      if ((atoms[j] & m) == atoms[j]) total += mass[j];
    out.values[m] = total;
  }
  return out;
}

SetValuation extend_to_powerset(const SetValuation& v) {
  if (!is_algebra(v.family)) throw NotAnAlgebraError();
  if (additivity_violation(v))
    throw std::invalid_argument("input is not finitely additive");
  std::vector<Bits> atoms = family_atoms(v.family);

  std::vector<Rational> point(v.family.universe, Rational(0));
  for (Bits a : atoms) {
    int least = 0;
    while (!((a >> least) & 1)) ++least;
    point[least] = value_of(v, a);  // atoms of an algebra are members
  }

  SetValuation out;
  out.family.universe = v.family.universe;
  const std::uint64_t subsets = std::uint64_t(1) << v.family.universe;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    out.family.members.push_back(s);
    Rational total = 0;
    for (int i = 0; i < v.family.universe; ++i)
      if ((s >> i) & 1) total += point[i];
    out.values[s] = total;
  }
  return out;
}

std::optional<std::pair<Bits, Bits>> additivity_violation(const SetValuation& v) {
  if (!is_algebra(v.family)) throw NotAnAlgebraError();
  for (Bits a : v.family.members)
    for (Bits b : v.family.members)
      if ((a & b) == 0 && value_of(v, a | b) != value_of(v, a) + value_of(v, b))
        return std::make_pair(a, b);
  return std::nullopt;
}

}  // namespace problogic
