#pragma once

#include "cirq/solve.hpp"

namespace cirq {

struct StrategyError : std::runtime_error {
  StrategyError(std::string code_, const std::string& message)
      : std::runtime_error(code_ + ": " + message), code(std::move(code_)) {}
  std::string code;
};

// A deterministic interactive agent: asked once per step, it sees the run so
// far and emits at most one move. State persists within a play session;
// reset() starts a fresh session.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void reset() {}
  virtual std::optional<std::string> next(const Run& visible) = 0;
};

using StrategyPtr = std::shared_ptr<Strategy>;

StrategyPtr make_silent();
StrategyPtr make_script(std::vector<std::string> moves);
StrategyPtr make_solver_machine(std::shared_ptr<Solver> solver);
StrategyPtr make_solver_environment(std::shared_ptr<Solver> solver);
// The proof's smart environment: move "a" in each general port a, in
// ascending port order, one per step.
StrategyPtr make_smart_environment(const Cirquent& c);
// Simple uniform machines used as refutation fodder.
StrategyPtr make_greedy_machine(const Cirquent& c);
StrategyPtr make_copycat_machine(const Cirquent& c);

struct PlayStep {
  int step = 0;
  Player player = Player::Machine;
  std::string move;
};

struct PlayTranscript {
  Run run;
  std::vector<PlayStep> steps;
  Player verdict = Player::Environment;
  bool hit_max_steps = false;
};

// Alternating scheduler: each step the machine may move once, then the
// environment may move any finite number of times; stops when a step passes
// with neither moving, or after max_steps. The verdict is wn_ars or wn.
PlayTranscript play(const Cirquent& c, Strategy& machine,
                    Strategy& environment, Regime regime,
                    const Interpretation* interp = nullptr,
                    int max_steps = 200);

// Machine-to-uniform-solution transformer: simulates an ARS player, forwards
// its cluster selections, and plays copycat between allocated ports. Throws
// SIMULATION_DIVERGED if the inner machine emits an ARS-illegal move.
StrategyPtr uniformize(StrategyPtr ars_machine, const Cirquent& c);

// Uniform-solution-to-machine transformer: simulates a CoL player against
// the smart environment, forwards selections, and turns detected copycat
// matches into allocation moves.
class DeUniformized : public Strategy {
 public:
  DeUniformized(StrategyPtr inner, const Cirquent& c);
  void reset() override;
  std::optional<std::string> next(const Run& visible) override;
  // The simulated CoL run built so far (the inner player's view).
  const Run& inner_run() const { return inner_run_; }

 private:
  bool inner_legal_with(const LabMove& lm) const;
  StrategyPtr inner_;
  const Cirquent c_;
  Run inner_run_;
  std::size_t seen_ = 0;
  std::vector<NodeId> ports_to_feed_;
  std::size_t fed_ = 0;
  std::set<std::pair<int, int>> allocated_;
  std::set<int> used_ports_;
  std::vector<std::string> out_queue_;
};

std::shared_ptr<DeUniformized> deuniformize(StrategyPtr col_machine,
                                            const Cirquent& c);

struct RefuteResult {
  Interpretation interp;        // nice interpretation defeating the machine
  PlayTranscript transcript;    // a lost play of C* under it
  Situation falsifier;          // the situation behind the construction
};

// For a cirquent the machine cannot accomplish, produces a nice
// interpretation under which the given CoL strategy loses, with the losing
// transcript. Throws NOT_REFUTABLE if the solver reports a machine win. The
// second form reuses an existing solve of the same cirquent.
RefuteResult refute(const Cirquent& c, StrategyPtr col_machine);
RefuteResult refute(const Cirquent& c, StrategyPtr col_machine,
                    const SolveResult& presolved);

// Replays the machine against every environment behavior of at most `depth`
// injected moves (drawn from the legal move menu), checking the verdict at
// every machine-silent stopping point. Returns false and reports the failing
// behavior if the machine ever loses.
bool undefeated_by_exhaustive_env(const Cirquent& c, StrategyPtr machine,
                                  Regime regime, const Interpretation* interp,
                                  int depth, std::string* failure = nullptr);

// A deterministic spread of nice interpretations over the cirquent's general
// atoms with the general-port ids as move alphabet: constant tables, matching
// tables, and seeded pseudo-random tables.
std::vector<Interpretation> nice_interpretation_family(const Cirquent& c,
                                                       int random_tables = 4);

}  // namespace cirq
