#pragma once

#include <memory>

#include "cirq/eval_ars.hpp"

namespace cirq {

struct SolveError : std::runtime_error {
  SolveError(std::string code_, const std::string& message)
      : std::runtime_error(code_ + ": " + message), code(std::move(code_)) {}
  std::string code;
};

enum class Regime { Ars, Col };

// Search state: everything the winning conditions can see of a run. Choice
// and sequential clusters keep their last selection, toggling clusters also a
// use count; ARS adds the arrangement, CoL the per-port subruns.
struct Configuration {
  std::map<ClusterId, int> choice;
  std::map<ClusterId, int> sequential;
  std::map<ClusterId, std::pair<int, int>> toggling;  // (current, uses)
  std::vector<std::pair<int, int>> arrangement;       // sorted
  std::map<NodeId, Run> port_runs;

  // A run realizing this configuration (selections in cluster order, then
  // allocations, then port moves).
  Run canonical_run(const Cirquent& c) const;
  std::string digest() const;
};

Configuration configuration_of(const Cirquent& c, const Run& run,
                               Regime regime);

enum class SolveStatus { Exact, BudgetUndecided };

class Solver;

struct SolveResult {
  Player winner = Player::Environment;
  SolveStatus status = SolveStatus::Exact;
  std::size_t explored = 0;
  // The winner's opening line against a silent adversary, for reporting.
  Run principal_run;
  std::shared_ptr<Solver> solver;  // retains the policy for replay
};

// The turn-based model: rounds of (environment move-or-pass, machine
// move-or-pass); the play ends when both pass within one round; the terminal
// payoff is accomplished() for ARS and true_col() for CoL.
class Solver {
 public:
  Solver(const Cirquent& c, Regime regime, const Interpretation* interp,
         int toggle_budget);

  Player winner();
  SolveStatus status();
  std::size_t explored() const { return memo_.size(); }

  // Policy access for strategy replay: the move the side should make from
  // this configuration, or nothing to rest.
  std::optional<std::string> machine_move(const Configuration& conf);
  std::optional<std::string> environment_move(const Configuration& conf);

  bool payoff(const Configuration& conf);
  const Cirquent& cirquent() const { return c_; }
  Regime regime() const { return regime_; }
  int toggle_budget() const { return budget_; }

 private:
  enum class Phase { EnvTurn, MachineAfterMove, MachineAfterPass };
  bool value(const Configuration& conf, Phase phase);
  std::vector<std::string> moves(const Configuration& conf, Player who);
  Configuration apply(const Configuration& conf, Player who,
                      const std::string& move) const;

  const Cirquent c_;
  Regime regime_;
  std::optional<Interpretation> interp_;
  int budget_;
  std::map<std::string, bool> memo_;
  std::map<std::string, bool> payoff_memo_;
  bool pruned_machine_ = false;
  bool pruned_env_ = false;
  std::optional<Player> winner_;
};

// default toggle budget: 2 * (number of selectional clusters) + 1
int default_toggle_budget(const Cirquent& c);

SolveResult solve_ars(const Cirquent& c,
                      std::optional<int> toggle_budget = std::nullopt);
SolveResult solve_col(const Cirquent& c, const Interpretation& interp,
                      std::optional<int> toggle_budget = std::nullopt);

// Whether for every interpretation of the cirquent's elementary atoms the
// machine can win. Elementary-only cirquents; throws
// GENERAL_PORTS_UNSUPPORTED otherwise.
bool weak_validity(const Cirquent& c, Exec exec = Exec::Auto);

// Same legal-run sets and same winner on every (interpretation, legal run).
// Elementary-only, toggling-free; throws UNSUPPORTED otherwise.
bool extensional_identity(const Cirquent& c1, const Cirquent& c2);

// Independent oracle: explores the raw history tree of legal runs up to
// max_len under all interleavings. The machine wins iff it has a choice
// function over histories beating every environment behavior; the winning
// predicate is the plain Wn of the regime. With collapse_histories off, the
// search memoizes nothing across histories and keys Wn by the literal run —
// the fully independent (and exponential) form used on small instances. With
// it on, positions are merged when they realize the same configuration,
// which leans on Wn's run-insensitivity (itself property-tested directly)
// but stays independent of the solver's round reduction.
Player brute_force_oracle(const Cirquent& c, Regime regime,
                          const Interpretation* interp, int max_len,
                          bool collapse_histories = true);

// A max_len large enough to be exact for toggling-free cirquents.
int oracle_sufficient_len(const Cirquent& c, Regime regime);

}  // namespace cirq
