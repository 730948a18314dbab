#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cirq/corpus.hpp"

using namespace cirq;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Cirquent load_cirquent_file(const std::string& path) {
  return load_json(slurp(path));
}

Interpretation load_interp_file(const std::string& path) {
  if (path.empty()) return {};
  return load_interpretation_json(slurp(path));
}

CompileMode mode_from(const std::string& name) {
  if (name == "col") return CompileMode::Col;
  if (name == "if-choice") return CompileMode::IfChoice;
  if (name == "if-parallel") return CompileMode::IfParallel;
  throw std::runtime_error("unknown mode " + name);
}

std::vector<std::string> read_script(const std::string& path) {
  std::vector<std::string> moves;
  std::string text = slurp(path);
  std::string current;
  auto flush = [&] {
    while (!current.empty() && std::isspace((unsigned char)current.front()))
      current.erase(current.begin());
    while (!current.empty() && std::isspace((unsigned char)current.back()))
      current.pop_back();
    if (!current.empty()) moves.push_back(current);
    current.clear();
  };
  for (char ch : text) {
    if (ch == ';' || ch == '\n')
      flush();
    else
      current += ch;
  }
  flush();
  return moves;
}

class InteractiveEnvironment : public Strategy {
 public:
  std::optional<std::string> next(const Run& visible) override {
    std::cout << "position: " << (visible.empty() ? "<>" : emit_run(visible))
              << "\nenvironment move (or 'pass'): " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) return std::nullopt;
    while (!line.empty() && std::isspace((unsigned char)line.back()))
      line.pop_back();
    if (line.empty() || line == "pass") return std::nullopt;
    return line;
  }
};

StrategyPtr machine_from_spec(const std::string& spec, const Cirquent& c,
                              Regime regime, const Interpretation* interp) {
  if (spec == "silent") return make_silent();
  if (spec == "solver") {
    SolveResult solved = regime == Regime::Ars ? solve_ars(c)
                                               : solve_col(c, *interp);
    return make_solver_machine(solved.solver);
  }
  if (spec.rfind("script:", 0) == 0)
    return make_script(read_script(spec.substr(7)));
  throw std::runtime_error("unknown machine spec " + spec);
}

StrategyPtr environment_from_spec(const std::string& spec, const Cirquent& c,
                                  Regime regime,
                                  const Interpretation* interp) {
  if (spec == "silent") return make_silent();
  if (spec == "smart") return make_smart_environment(c);
  if (spec == "interactive") return std::make_shared<InteractiveEnvironment>();
  if (spec == "solver") {
    SolveResult solved = regime == Regime::Ars ? solve_ars(c)
                                               : solve_col(c, *interp);
    return make_solver_environment(solved.solver);
  }
  if (spec.rfind("script:", 0) == 0)
    return make_script(read_script(spec.substr(7)));
  throw std::runtime_error("unknown environment spec " + spec);
}

void print_transcript(const PlayTranscript& t) {
  for (const PlayStep& s : t.steps)
    std::cout << "step " << s.step << ": " << player_letter(s.player) << " "
              << s.move << "\n";
  std::cout << "run: " << (t.run.empty() ? "<>" : emit_run(t.run)) << "\n";
  if (t.hit_max_steps) std::cout << "note: MAX_STEPS_REACHED\n";
  std::cout << "verdict: " << player_letter(t.verdict) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cirquent engine: validation, translation, evaluation, "
               "solving and interactive play"};
  app.require_subcommand(1);

  // validate
  std::string v_file;
  bool v_dot = false;
  auto* cmd_validate = app.add_subcommand("validate", "check a cirquent file");
  cmd_validate->add_option("--cirquent", v_file, "cirquent JSON file")
      ->required();
  cmd_validate->add_flag("--dot", v_dot, "emit DOT instead of a summary");

  // translate
  std::string t_formula, t_mode = "col", t_out;
  int t_universe = 1;
  bool t_dot = false;
  auto* cmd_translate =
      app.add_subcommand("translate", "compile a formula to a cirquent");
  cmd_translate->add_option("--formula", t_formula, "formula text")
      ->required();
  cmd_translate->add_option("--universe", t_universe, "universe size (>=1)");
  cmd_translate->add_option("--mode", t_mode, "col | if-choice | if-parallel");
  cmd_translate->add_option("--out", t_out, "output file (default stdout)");
  cmd_translate->add_flag("--dot", t_dot, "emit DOT instead of JSON");

  // eval
  std::string e_file, e_interp, e_run, e_situation;
  bool e_ars = false, e_legality = false;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate truth or legality");
  cmd_eval->add_option("--cirquent", e_file, "cirquent JSON file")->required();
  cmd_eval->add_option("--interp", e_interp, "interpretation JSON file");
  cmd_eval->add_option("--run", e_run, "run text, e.g. 'T 7.2; B 5.1'");
  cmd_eval->add_option("--situation", e_situation, "situation JSON file");
  cmd_eval->add_flag("--ars", e_ars, "abstract resource semantics");
  cmd_eval->add_flag("--legality", e_legality, "check legality only");

  // solve
  std::string s_file, s_interp;
  int s_budget = -1;
  bool s_oracle = false;
  auto* cmd_solve = app.add_subcommand("solve", "decide winnability");
  cmd_solve->add_option("--cirquent", s_file, "cirquent JSON file")
      ->required();
  cmd_solve->add_option("--interp", s_interp,
                        "interpretation file (CoL regime)");
  cmd_solve->add_option("--toggle-budget", s_budget,
                        "cap on re-selections per toggling cluster");
  cmd_solve->add_flag("--oracle", s_oracle,
                      "also run the brute-force oracle and compare");

  // play
  std::string p_file, p_machine = "solver", p_env = "silent", p_interp;
  int p_steps = 200;
  auto* cmd_play = app.add_subcommand("play", "run a play session");
  cmd_play->add_option("--cirquent", p_file, "cirquent JSON file")->required();
  cmd_play->add_option("--machine", p_machine,
                       "script:FILE | solver | silent");
  cmd_play->add_option("--env", p_env,
                       "script:FILE | solver | smart | silent | interactive");
  cmd_play->add_option("--interp", p_interp,
                       "interpretation file (CoL regime; ARS without)");
  cmd_play->add_option("--max-steps", p_steps, "step limit");

  // refute
  std::string r_file, r_machine;
  auto* cmd_refute = app.add_subcommand(
      "refute", "build a nice interpretation defeating a machine");
  cmd_refute->add_option("--cirquent", r_file, "cirquent JSON file")
      ->required();
  cmd_refute->add_option("--machine", r_machine, "script:FILE | silent")
      ->required();

  // corpus
  std::string c_filter, c_format = "text";
  auto* cmd_corpus =
      app.add_subcommand("corpus", "run the figure-corpus expectations");
  cmd_corpus->add_option("filter", c_filter, "only entries containing this");
  cmd_corpus->add_option("--format", c_format, "text | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitTrue : kExitUsage;
  }

  try {
    if (*cmd_validate) {
      Cirquent c = load_cirquent_file(v_file);
      if (v_dot)
        std::cout << emit_dot(c);
      else
        std::cout << "valid: " << c.nodes().size() << " nodes, "
                  << c.clusters().size() << " clusters, " << c.ranks().size()
                  << " ranks\n";
      return kExitTrue;
    }
    if (*cmd_translate) {
      Formula f = parse_formula(t_formula);
      Cirquent c = compile(f, t_universe, mode_from(t_mode));
      std::string out = t_dot ? emit_dot(c) : emit_json(c);
      if (t_out.empty()) {
        std::cout << out;
      } else {
        std::ofstream of(t_out);
        of << out;
      }
      return kExitTrue;
    }
    if (*cmd_eval) {
      Cirquent c = load_cirquent_file(e_file);
      Run run = parse_run(e_run);
      if (e_legality) {
        Legality legality =
            e_ars ? legal_position_ars(c, run)
                  : legal_position_col(c, load_interp_file(e_interp), run);
        if (legality.legal) {
          std::cout << "legal\n";
          return kExitTrue;
        }
        std::cout << "illegal at move " << legality.offending_index << " by "
                  << player_letter(legality.offender) << "\n";
        return kExitFalse;
      }
      bool value;
      if (e_ars && !e_situation.empty()) {
        Situation s = load_corpus_situation(".", e_situation);
        value = true_ars(c, s, run);
        std::cout << (value ? "true" : "false") << "\n";
      } else if (e_ars) {
        Accomplishment acc = accomplished(c, run);
        value = acc.accomplished;
        std::cout << (value ? "accomplished" : "not accomplished") << "\n";
        if (acc.witness) {
          std::cout << "witness situation:";
          for (auto& [port, v] : *acc.witness)
            std::cout << " " << port << (v ? ":T" : ":F");
          std::cout << "\n";
        }
      } else {
        value = true_col(c, load_interp_file(e_interp), run);
        std::cout << (value ? "true" : "false") << "\n";
      }
      return value ? kExitTrue : kExitFalse;
    }
    if (*cmd_solve) {
      Cirquent c = load_cirquent_file(s_file);
      std::optional<int> budget;
      if (s_budget >= 0) budget = s_budget;
      Interpretation interp;
      bool col = !s_interp.empty();
      if (col) interp = load_interp_file(s_interp);
      SolveResult result =
          col ? solve_col(c, interp, budget) : solve_ars(c, budget);
      std::cout << "winner: " << player_letter(result.winner) << "\n"
                << "explored: " << result.explored << " states\n"
                << "strategy: "
                << (result.principal_run.empty()
                        ? "<rest>"
                        : emit_run(result.principal_run))
                << "\n";
      if (result.status == SolveStatus::BudgetUndecided)
        std::cout << "status: BUDGET_EXCEEDED_UNDECIDED (verdict may depend "
                     "on the toggle budget)\n";
      if (s_oracle) {
        Player oracle = brute_force_oracle(
            c, col ? Regime::Col : Regime::Ars, col ? &interp : nullptr,
            oracle_sufficient_len(c, col ? Regime::Col : Regime::Ars));
        std::cout << "oracle: " << player_letter(oracle)
                  << (oracle == result.winner ? " (agrees)" : " (DISAGREES)")
                  << "\n";
      }
      return result.winner == Player::Machine ? kExitTrue : kExitFalse;
    }
    if (*cmd_play) {
      Cirquent c = load_cirquent_file(p_file);
      bool col = !p_interp.empty();
      Interpretation interp;
      if (col) interp = load_interp_file(p_interp);
      Regime regime = col ? Regime::Col : Regime::Ars;
      const Interpretation* ip = col ? &interp : nullptr;
      auto machine = machine_from_spec(p_machine, c, regime, ip);
      auto env = environment_from_spec(p_env, c, regime, ip);
      PlayTranscript t = play(c, *machine, *env, regime, ip, p_steps);
      print_transcript(t);
      return t.verdict == Player::Machine ? kExitTrue : kExitFalse;
    }
    if (*cmd_refute) {
      Cirquent c = load_cirquent_file(r_file);
      if (r_machine != "silent" && r_machine.rfind("script:", 0) != 0)
        throw std::runtime_error("unknown machine spec " + r_machine);
      StrategyPtr machine =
          r_machine == "silent"
              ? make_silent()
              : make_script(read_script(r_machine.substr(7)));
      RefuteResult result = refute(c, machine);
      std::cout << "interpretation:\n"
                << emit_interpretation_json(result.interp);
      print_transcript(result.transcript);
      return result.transcript.verdict == Player::Environment ? kExitTrue
                                                              : kExitFalse;
    }
    if (*cmd_corpus) {
      CorpusReport report = run_corpus(corpus_dir(), c_filter);
      std::cout << (c_format == "json" ? report_json(report)
                                       : report_text(report));
      return report.all_pass() ? kExitTrue : kExitFalse;
    }
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const FrontendError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
