#include "problogic/model.hpp"

#include <algorithm>

#include <json.hpp>

namespace problogic {

std::vector<std::string> validate(const FiniteModel& m) {
  std::vector<std::string> violations;
  if (m.state_count <= 0) {
    violations.push_back("state count must be positive");
    return violations;
  }
  if (static_cast<int>(m.kernel.size()) != m.state_count)
    violations.push_back("kernel must have one row per state");
  for (std::size_t w = 0; w < m.kernel.size(); ++w) {
    const auto& row = m.kernel[w];
    if (static_cast<int>(row.size()) != m.state_count) {
      violations.push_back("row " + std::to_string(w) + " has wrong length");
      continue;
    }
    Rational sum = 0;
    bool range_ok = true;
    for (const auto& p : row) {
      if (!in_unit_range(p)) range_ok = false;
      sum += p;
    }
    if (!range_ok)
      violations.push_back("row " + std::to_string(w) + " has an entry outside [0,1]");
    if (sum != 1)
      violations.push_back("row " + std::to_string(w) + " sums to " + to_string(sum));
  }
  for (const auto& [prop, states] : m.valuation)
    for (int s : states)
      if (s < 0 || s >= m.state_count)
        violations.push_back("valuation of " + prop + " has index out of range: " +
                             std::to_string(s));
  if (m.world < 0 || m.world >= m.state_count)
    violations.push_back("designated world out of range");
  return violations;
}

Rational mass(const FiniteModel& m, int w, const Extension& e) {
  Rational sum = 0;
  for (int u = 0; u < m.state_count; ++u)
    if (e[u]) sum += m.kernel[w][u];
  return sum;
}

Extension extension(const FiniteModel& m, const Formula& f) {
  const int n = m.state_count;
  switch (f.kind()) {
    case Kind::Prop: {
      auto it = m.valuation.find(f.name());
      if (it == m.valuation.end()) throw UnknownPropositionError(f.name());
      Extension e(n, false);
      for (int s : it->second) e[s] = true;
      return e;
    }
    case Kind::Neg: {
      Extension e = extension(m, f.child());
      e.flip();
      return e;
    }
    case Kind::And:
    case Kind::Or: {
      Extension l = extension(m, f.left());
      Extension r = extension(m, f.right());
      for (int i = 0; i < n; ++i)
        l[i] = f.kind() == Kind::And ? (l[i] && r[i]) : (l[i] || r[i]);
      return l;
    }
    case Kind::L:
    case Kind::M: {
      Extension c = extension(m, f.child());
      Extension e(n, false);
      for (int w = 0; w < n; ++w) {
        Rational p = mass(m, w, c);
        e[w] = f.kind() == Kind::L ? p >= f.threshold() : p <= f.threshold();
      }
      return e;
    }
  }
  throw std::logic_error("bad formula node");
}

bool check(const FiniteModel& m, int w, const Formula& f) {
  if (w < 0 || w >= m.state_count) throw std::out_of_range("world index");
  return extension(m, f)[w];
}

namespace {

void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  if (std::find(out.begin(), out.end(), f) != out.end()) return;
  switch (f.kind()) {
    case Kind::Prop:
      break;
    case Kind::Neg:
    case Kind::L:
    case Kind::M:
      collect_subformulas(f.child(), out);
      break;
    case Kind::And:
    case Kind::Or:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      break;
  }
  out.push_back(f);
}

}  // namespace

std::vector<Formula> subformula_closure(const Formula& f) {
  std::vector<Formula> out;
  collect_subformulas(f, out);
  return out;
}

FiniteModel restrict(const FiniteModel& m, const Formula& f) {
  const int n = m.state_count;
  std::vector<Extension> generators;
  for (const Formula& g : subformula_closure(f)) generators.push_back(extension(m, g));
  Extension world_singleton(n, false);
  world_singleton[m.world] = true;
  generators.push_back(std::move(world_singleton));

  // Atoms of the generated algebra = classes of the membership signature.
  std::map<std::vector<bool>, std::vector<int>> atoms;
  for (int s = 0; s < n; ++s) {
    std::vector<bool> sig;
    sig.reserve(generators.size());
    for (const auto& g : generators) sig.push_back(g[s]);
    atoms[sig].push_back(s);
  }

  std::vector<int> representatives;       // least state index per atom
  std::vector<int> atom_of(n, -1);
  for (const auto& [sig, members] : atoms) {
    (void)sig;
    representatives.push_back(members.front());
  }
  std::sort(representatives.begin(), representatives.end());
  std::map<int, int> rep_index;
  for (std::size_t i = 0; i < representatives.size(); ++i)
    rep_index[representatives[i]] = static_cast<int>(i);
  for (const auto& [sig, members] : atoms) {
    (void)sig;
    for (int s : members) atom_of[s] = rep_index[members.front()];
  }

  FiniteModel out;
  out.state_count = static_cast<int>(representatives.size());
  out.world = atom_of[m.world];
  out.kernel.assign(out.state_count, std::vector<Rational>(out.state_count, Rational(0)));
  for (int i = 0; i < out.state_count; ++i) {
    int v = representatives[i];
    for (int u = 0; u < n; ++u) out.kernel[i][atom_of[u]] += m.kernel[v][u];
  }
  for (const auto& [prop, states] : m.valuation) {
    std::set<int> restricted;
    for (int r : representatives)
      if (states.count(r)) restricted.insert(rep_index[r]);
    out.valuation[prop] = std::move(restricted);
  }
  return out;
}

std::string model_to_json(const FiniteModel& m) {
  nlohmann::ordered_json j;
  j["states"] = m.state_count;
  j["world"] = m.world;
  auto kernel = nlohmann::ordered_json::array();
  for (const auto& row : m.kernel) {
    auto jrow = nlohmann::ordered_json::array();
    for (const auto& p : row) jrow.push_back(to_string(p));
    kernel.push_back(std::move(jrow));
  }
  j["kernel"] = std::move(kernel);
  auto valuation = nlohmann::ordered_json::object();
  for (const auto& [prop, states] : m.valuation) {
    auto arr = nlohmann::ordered_json::array();
    for (int s : states) arr.push_back(s);
    valuation[prop] = std::move(arr);
  }
  j["valuation"] = std::move(valuation);
  return j.dump();
}

FiniteModel model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteModel m;
  m.state_count = j.at("states").get<int>();
  m.world = j.at("world").get<int>();
  for (const auto& jrow : j.at("kernel")) {
    std::vector<Rational> row;
    for (const auto& cell : jrow) {
      auto r = parse_rational(cell.get<std::string>());
      if (!r) throw std::invalid_argument("malformed rational in kernel: " +
                                          cell.get<std::string>());
      row.push_back(*r);
    }
    m.kernel.push_back(std::move(row));
  }
  for (const auto& [prop, arr] : j.at("valuation").items()) {
    std::set<int> states;
    for (const auto& s : arr) states.insert(s.get<int>());
    m.valuation[prop] = std::move(states);
  }
  return m;
}

}  // namespace problogic
