#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "problogic/decide.hpp"
#include "problogic/gallery.hpp"
#include "problogic/model.hpp"
#include "problogic/parser.hpp"

namespace {

using namespace problogic;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

FiniteModel load_model(const std::string& path) {
  FiniteModel m = model_from_json(read_file(path));
  std::vector<std::string> problems = validate(m);
  if (!problems.empty())
    throw std::runtime_error("invalid model: " + problems.front());
  return m;
}

Rational parse_threshold(const std::string& text) {
  auto r = parse_rational(text);
  if (!r || !in_unit_range(*r))
    throw std::runtime_error("threshold must be a rational in [0,1]: " + text);
  return *r;
}

struct Cli {
  std::string formula_text;
  std::string theory_path;
  std::string universe_path;
  std::string model_path;
  std::string op;
  std::string threshold;
  std::string case_name = "all";
  int world = -1;
  bool json = false;
  std::uint64_t budget = 0;

  DecideOptions options() const {
    DecideOptions opts = options_from_env();
    if (budget > 0) opts.candidate_budget = budget;
    return opts;
  }
};

int cmd_parse(const Cli& cli) {
  Formula f = parse(cli.formula_text);
  LocalLanguageInfo info = local_language(f);
  if (cli.json) {
    ordered_json j;
    j["formula"] = print(f);
    j["depth"] = depth(f);
    j["fragment"] = fragment_name(classify(f));
    j["grid_denominator"] = info.grid_denominator.str();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "formula: " << print(f) << "\n"
              << "depth: " << depth(f) << "\n"
              << "fragment: " << fragment_name(classify(f)) << "\n"
              << "grid denominator: " << info.grid_denominator.str() << "\n";
  }
  return kExitPass;
}

int cmd_check(const Cli& cli) {
  FiniteModel m = load_model(cli.model_path);
  Formula f = parse(cli.formula_text);
  int world = cli.world >= 0 ? cli.world : m.world;
  if (world >= m.state_count)
    throw std::runtime_error("world index out of range");
  bool result = check(m, world, f);
  if (cli.json) {
    ordered_json j;
    j["result"] = result;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (result ? "true" : "false") << "\n";
  }
  return result ? kExitPass : kExitFail;
}

int cmd_sat(const Cli& cli) {
  SatResult res;
  if (!cli.theory_path.empty())
    res = satisfiable_theory(parse_theory(read_file(cli.theory_path)), cli.options());
  else
    res = satisfiable(parse(cli.formula_text), cli.options());
  if (cli.json) {
    ordered_json j;
    j["sat"] = res.sat;
    if (res.sat) j["witness"] = ordered_json::parse(model_to_json(res.witness));
    std::cout << j.dump() << "\n";
  } else if (res.sat) {
    std::cout << "SAT\n" << model_to_json(res.witness) << "\n";
  } else {
    std::cout << "UNSAT\n";
  }
  return res.sat ? kExitPass : kExitFail;
}

int cmd_tighten(const Cli& cli) {
  std::vector<Formula> gamma = parse_theory(read_file(cli.theory_path));
  Kind op = cli.op == "L" ? Kind::L : Kind::M;
  Rational r = parse_threshold(cli.threshold);
  Formula phi = parse(cli.formula_text);
  TightenResult res = tighten(gamma, op, r, phi, cli.options());
  if (cli.json) {
    ordered_json j;
    j["already_sat"] = res.already_sat;
    if (!res.already_sat) {
      j["extremal_mass"] = to_string(res.max_value);
      j["tighter_threshold"] = to_string(res.witness_threshold);
    }
    std::cout << j.dump() << "\n";
  } else if (res.already_sat) {
    std::cout << "alreadySat\n";
  } else {
    std::cout << "extremal mass M = " << to_string(res.max_value) << "\n"
              << "tighter threshold r' = " << to_string(res.witness_threshold)
              << "\n";
  }
  return res.already_sat ? kExitPass : kExitFail;
}

int cmd_extend(const Cli& cli) {
  std::vector<Formula> gamma = parse_theory(read_file(cli.theory_path));
  std::vector<Formula> universe = parse_theory(read_file(cli.universe_path));
  std::vector<Formula> result = extend_maximal(gamma, universe, cli.options());
  if (cli.json) {
    ordered_json j = ordered_json::array();
    for (const Formula& f : result) j.push_back(print(f));
    std::cout << j.dump() << "\n";
  } else {
    for (const Formula& f : result) std::cout << print(f) << "\n";
  }
  return kExitPass;
}

int cmd_restrict(const Cli& cli) {
  FiniteModel m = load_model(cli.model_path);
  Formula f = parse(cli.formula_text);
  std::cout << model_to_json(restrict(m, f)) << "\n";
  return kExitPass;
}

int cmd_gallery(const Cli& cli) {
  std::vector<CaseReport> reports;
  if (cli.case_name == "all")
    reports = run_all_cases();
  else
    reports.push_back(run_case(cli.case_name));
  bool all_pass = true;
  for (const CaseReport& r : reports) {
    std::cout << (cli.json ? report_to_json(r) + "\n" : report_to_text(r));
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propositional probability logic toolkit"};
  app.require_subcommand(1);
  Cli cli;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", cli.json, "emit JSON instead of text");
    sub->add_option("--budget", cli.budget, "candidate budget override");
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and describe a formula");
  parse_cmd->add_option("-f,--formula", cli.formula_text)->required();
  add_common(parse_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "model-check a formula");
  check_cmd->add_option("--model", cli.model_path)->required();
  check_cmd->add_option("-f,--formula", cli.formula_text)->required();
  check_cmd->add_option("--world", cli.world);
  add_common(check_cmd);

  CLI::App* sat_cmd = app.add_subcommand("sat", "decide satisfiability");
  auto* sat_f = sat_cmd->add_option("-f,--formula", cli.formula_text);
  auto* sat_t = sat_cmd->add_option("--theory", cli.theory_path);
  sat_f->excludes(sat_t);
  add_common(sat_cmd);

  CLI::App* tighten_cmd =
      app.add_subcommand("tighten", "tighten an unsatisfiable threshold");
  tighten_cmd->add_option("--theory", cli.theory_path)->required();
  tighten_cmd->add_option("--op", cli.op)->required()->check(CLI::IsMember({"L", "M"}));
  tighten_cmd->add_option("--r", cli.threshold)->required();
  tighten_cmd->add_option("-f,--formula", cli.formula_text)->required();
  add_common(tighten_cmd);

  CLI::App* extend_cmd =
      app.add_subcommand("extend", "greedy maximal satisfiable extension");
  extend_cmd->add_option("--theory", cli.theory_path)->required();
  extend_cmd->add_option("--universe", cli.universe_path)->required();
  add_common(extend_cmd);

  CLI::App* restrict_cmd =
      app.add_subcommand("restrict", "quotient a model by a formula's closure");
  restrict_cmd->add_option("--model", cli.model_path)->required();
  restrict_cmd->add_option("-f,--formula", cli.formula_text)->required();
  add_common(restrict_cmd);

  CLI::App* gallery_cmd = app.add_subcommand("gallery", "run example scenarios");
  gallery_cmd->add_option("name", cli.case_name, "case name or 'all'");
  add_common(gallery_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(cli);
    if (check_cmd->parsed()) return cmd_check(cli);
    if (sat_cmd->parsed()) {
      if (cli.formula_text.empty() && cli.theory_path.empty())
        throw std::runtime_error("sat needs -f or --theory");
      return cmd_sat(cli);
    }
    if (tighten_cmd->parsed()) return cmd_tighten(cli);
    if (extend_cmd->parsed()) return cmd_extend(cli);
    if (restrict_cmd->parsed()) return cmd_restrict(cli);
    if (gallery_cmd->parsed()) return cmd_gallery(cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
