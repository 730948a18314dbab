#include "cirq/strategy.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace cirq {

namespace {

class Silent : public Strategy {
 public:
  std::optional<std::string> next(const Run&) override { return std::nullopt; }
};

class Script : public Strategy {
 public:
  explicit Script(std::vector<std::string> moves) : moves_(std::move(moves)) {}
  void reset() override { at_ = 0; }
  std::optional<std::string> next(const Run&) override {
    if (at_ >= moves_.size()) return std::nullopt;
    return moves_[at_++];
  }

 private:
  std::vector<std::string> moves_;
  std::size_t at_ = 0;
};

class SolverMachine : public Strategy {
 public:
  explicit SolverMachine(std::shared_ptr<Solver> solver)
      : solver_(std::move(solver)) {}
  std::optional<std::string> next(const Run& visible) override {
    return solver_->machine_move(
        configuration_of(solver_->cirquent(), visible, solver_->regime()));
  }

 private:
  std::shared_ptr<Solver> solver_;
};

class SolverEnvironment : public Strategy {
 public:
  explicit SolverEnvironment(std::shared_ptr<Solver> solver)
      : solver_(std::move(solver)) {}
  std::optional<std::string> next(const Run& visible) override {
    return solver_->environment_move(
        configuration_of(solver_->cirquent(), visible, solver_->regime()));
  }

 private:
  std::shared_ptr<Solver> solver_;
};

std::vector<NodeId> general_ports(const Cirquent& c) {
  std::vector<NodeId> out;
  for (NodeId id : c.port_ids())
    if (c.node(id).literal().general()) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

class SmartEnvironment : public Strategy {
 public:
  explicit SmartEnvironment(const Cirquent& c) : ports_(general_ports(c)) {}
  void reset() override { at_ = 0; }
  std::optional<std::string> next(const Run&) override {
    if (at_ >= ports_.size()) return std::nullopt;
    NodeId p = ports_[at_++];
    return dotted_text(p, std::to_string(p));
  }

 private:
  std::vector<NodeId> ports_;
  std::size_t at_ = 0;
};

// Selects edge 1 in every disjunctive selectional cluster, then moves "a" in
// each general port a.
class GreedyMachine : public Strategy {
 public:
  explicit GreedyMachine(const Cirquent& c) : c_(c) {}
  std::optional<std::string> next(const Run& visible) override {
    for (const Cluster& cl : c_.clusters()) {
      GateKind kind = c_.cluster_kind(cl.id);
      if (!is_selectional(kind) || !is_disjunctive(kind)) continue;
      if (c_.cluster_outdegree(cl.id) < 1) continue;
      LabMove lm{Player::Machine, dotted_text(cl.id, "1")};
      Run next_run = visible;
      next_run.push_back(lm);
      if (check_cluster_moves(c_, next_run).legal &&
          !already(visible, lm.move))
        return lm.move;
    }
    for (NodeId p : general_ports(c_)) {
      std::string move = dotted_text(p, std::to_string(p));
      if (!already(visible, move)) return move;
    }
    return std::nullopt;
  }

 private:
  bool already(const Run& run, const std::string& move) const {
    for (const LabMove& lm : run)
      if (lm.player == Player::Machine && lm.move == move) return true;
    return false;
  }
  const Cirquent c_;
};

// Pairs opposite general ports by id order and mirrors the adversary's port
// moves across each pair.
class CopycatMachine : public Strategy {
 public:
  explicit CopycatMachine(const Cirquent& c) : c_(c) {
    std::map<std::string, std::vector<NodeId>> pos, neg;
    for (NodeId id : general_ports(c)) {
      const Literal& lit = c.node(id).literal();
      (lit.negated ? neg : pos)[lit.atom].push_back(id);
    }
    for (auto& [atom, ps] : pos) {
      auto& ns = neg[atom];
      for (std::size_t i = 0; i < ps.size() && i < ns.size(); ++i) {
        pair_of_[ps[i]] = ns[i];
        pair_of_[ns[i]] = ps[i];
      }
    }
  }
  void reset() override { seen_ = 0; queue_.clear(); }
  std::optional<std::string> next(const Run& visible) override {
    for (; seen_ < visible.size(); ++seen_) {
      const LabMove& lm = visible[seen_];
      if (lm.player != Player::Environment) continue;
      auto d = parse_dotted(lm.move);
      if (!d) continue;
      auto it = pair_of_.find(d->head);
      if (it != pair_of_.end())
        queue_.push_back(dotted_text(it->second, d->suffix));
    }
    if (queue_.empty()) return std::nullopt;
    std::string move = queue_.front();
    queue_.erase(queue_.begin());
    return move;
  }

 private:
  const Cirquent c_;
  std::map<NodeId, NodeId> pair_of_;
  std::size_t seen_ = 0;
  std::vector<std::string> queue_;
};

}  // namespace

StrategyPtr make_silent() { return std::make_shared<Silent>(); }

StrategyPtr make_script(std::vector<std::string> moves) {
  return std::make_shared<Script>(std::move(moves));
}

StrategyPtr make_solver_machine(std::shared_ptr<Solver> solver) {
  return std::make_shared<SolverMachine>(std::move(solver));
}

StrategyPtr make_solver_environment(std::shared_ptr<Solver> solver) {
  return std::make_shared<SolverEnvironment>(std::move(solver));
}

StrategyPtr make_smart_environment(const Cirquent& c) {
  return std::make_shared<SmartEnvironment>(c);
}

StrategyPtr make_greedy_machine(const Cirquent& c) {
  return std::make_shared<GreedyMachine>(c);
}

StrategyPtr make_copycat_machine(const Cirquent& c) {
  return std::make_shared<CopycatMachine>(c);
}

PlayTranscript play(const Cirquent& c, Strategy& machine,
                    Strategy& environment, Regime regime,
                    const Interpretation* interp, int max_steps) {
  if (regime == Regime::Col && interp == nullptr)
    throw StrategyError("INTERP_REQUIRED", "CoL play needs an interpretation");
  machine.reset();
  environment.reset();
  PlayTranscript t;
  for (int step = 1; step <= max_steps; ++step) {
    bool acted = false;
    if (auto m = machine.next(t.run)) {
      t.run.push_back({Player::Machine, *m});
      t.steps.push_back({step, Player::Machine, *m});
      acted = true;
    }
    for (int guard = 0;; ++guard) {
      if (guard > 10000)
        throw StrategyError("RUNAWAY_ENVIRONMENT",
                            "environment refused to stop within a step");
      auto e = environment.next(t.run);
      if (!e) break;
      t.run.push_back({Player::Environment, *e});
      t.steps.push_back({step, Player::Environment, *e});
      acted = true;
    }
    if (!acted) break;
    if (step == max_steps) t.hit_max_steps = true;
  }
  t.verdict = regime == Regime::Ars ? wn_ars(c, t.run)
                                    : wn(c, *interp, t.run);
  return t;
}

namespace {

class Uniformized : public Strategy {
 public:
  Uniformized(StrategyPtr inner, const Cirquent& c)
      : inner_(std::move(inner)), c_(c) {}

  void reset() override {
    inner_->reset();
    inner_run_.clear();
    seen_ = 0;
    partner_.clear();
    backlog_.clear();
    out_queue_.clear();
  }

  std::optional<std::string> next(const Run& visible) override {
    ingest(visible);
    if (!out_queue_.empty()) return pop();
    // Step the simulated ARS machine until it rests or something surfaces.
    for (int guard = 0; guard < 100000; ++guard) {
      auto m = inner_->next(inner_run_);
      if (!m) return std::nullopt;
      LabMove lm{Player::Machine, *m};
      Run extended = inner_run_;
      extended.push_back(lm);
      if (!legal_position_ars(c_, extended).legal)
        throw StrategyError("SIMULATION_DIVERGED",
                            "inner machine made an illegal move " + *m);
      inner_run_ = std::move(extended);
      if (auto alloc = parse_alloc(*m)) {
        auto [a, b] = *alloc;
        partner_[a] = b;
        partner_[b] = a;
        // Replay the adversary's accumulated moves across the new pair.
        for (const std::string& beta : backlog_[a])
          out_queue_.push_back(dotted_text(b, beta));
        for (const std::string& alpha : backlog_[b])
          out_queue_.push_back(dotted_text(a, alpha));
      } else {
        out_queue_.push_back(*m);  // selections forwarded verbatim
      }
      if (!out_queue_.empty()) return pop();
    }
    throw StrategyError("SIMULATION_DIVERGED", "inner machine never rests");
  }

 private:
  void ingest(const Run& visible) {
    for (; seen_ < visible.size(); ++seen_) {
      const LabMove& lm = visible[seen_];
      if (lm.player != Player::Environment) continue;
      auto d = parse_dotted(lm.move);
      if (!d) continue;
      if (c_.cluster(d->head)) {
        inner_run_.push_back(lm);  // conjunctive selections reach the machine
      } else if (c_.has_node(d->head) && c_.node(d->head).is_port()) {
        auto it = partner_.find(d->head);
        if (it != partner_.end())
          out_queue_.push_back(dotted_text(it->second, d->suffix));
        else
          backlog_[d->head].push_back(d->suffix);
      }
    }
  }

  std::string pop() {
    std::string move = out_queue_.front();
    out_queue_.erase(out_queue_.begin());
    return move;
  }

  StrategyPtr inner_;
  const Cirquent c_;
  Run inner_run_;
  std::size_t seen_ = 0;
  std::map<NodeId, NodeId> partner_;
  std::map<NodeId, std::vector<std::string>> backlog_;
  std::vector<std::string> out_queue_;
};

}  // namespace

StrategyPtr uniformize(StrategyPtr ars_machine, const Cirquent& c) {
  return std::make_shared<Uniformized>(std::move(ars_machine), c);
}

DeUniformized::DeUniformized(StrategyPtr inner, const Cirquent& c)
    : inner_(std::move(inner)), c_(c), ports_to_feed_(general_ports(c)) {}

void DeUniformized::reset() {
  inner_->reset();
  inner_run_.clear();
  seen_ = 0;
  fed_ = 0;
  allocated_.clear();
  used_ports_.clear();
  out_queue_.clear();
}

bool DeUniformized::inner_legal_with(const LabMove& lm) const {
  auto d = parse_dotted(lm.move);
  if (!d) return false;
  if (c_.cluster(d->head)) {
    Run extended = inner_run_;
    extended.push_back(lm);
    return check_cluster_moves(c_, extended).legal;
  }
  if (!c_.has_node(d->head) || !c_.node(d->head).is_port() ||
      !c_.node(d->head).literal().general())
    return false;
  // Nice-game shape over the port-id alphabet: one move per player.
  bool id_move = false;
  for (NodeId p : ports_to_feed_)
    if (std::to_string(p) == d->suffix) id_move = true;
  if (!id_move) return false;
  std::string prefix = std::to_string(d->head) + ".";
  Run sub = project(inner_run_, prefix);
  for (const LabMove& prior : sub)
    if (prior.player == lm.player) return false;
  return sub.size() < 2;
}

std::optional<std::string> DeUniformized::next(const Run& visible) {
  // Forward the real adversary's selections into the simulation.
  for (; seen_ < visible.size(); ++seen_) {
    const LabMove& lm = visible[seen_];
    if (lm.player != Player::Environment) continue;
    auto d = parse_dotted(lm.move);
    if (d && c_.cluster(d->head)) inner_run_.push_back(lm);
  }
  if (!out_queue_.empty()) {
    std::string move = out_queue_.front();
    out_queue_.erase(out_queue_.begin());
    return move;
  }
  for (int guard = 0; guard < 100000; ++guard) {
    // The smart environment moves "p" in one more general port p.
    if (fed_ < ports_to_feed_.size()) {
      NodeId p = ports_to_feed_[fed_++];
      inner_run_.push_back(
          {Player::Environment, dotted_text(p, std::to_string(p))});
    }
    bool stepped = false;
    if (auto m = inner_->next(inner_run_)) {
      LabMove lm{Player::Machine, *m};
      if (!inner_legal_with(lm))
        throw StrategyError("SIMULATION_DIVERGED",
                            "inner machine made an illegal move " + *m);
      inner_run_.push_back(lm);
      stepped = true;
      auto d = parse_dotted(*m);
      if (c_.cluster(d->head)) out_queue_.push_back(*m);
    }
    // Match detection: ports a (positive) and b (negative) with the four
    // labmoves B a.a, B b.b, T b.a, T a.b present.
    for (NodeId a : ports_to_feed_) {
      const Literal& la = c_.node(a).literal();
      if (la.negated || used_ports_.count(a)) continue;
      for (NodeId b : ports_to_feed_) {
        const Literal& lb = c_.node(b).literal();
        if (!lb.negated || lb.atom != la.atom || used_ports_.count(b))
          continue;
        bool baa = false, bbb = false, tba = false, tab = false;
        for (const LabMove& lm : inner_run_) {
          if (lm.player == Player::Environment) {
            if (lm.move == dotted_text(a, std::to_string(a))) baa = true;
            if (lm.move == dotted_text(b, std::to_string(b))) bbb = true;
          } else {
            if (lm.move == dotted_text(b, std::to_string(a))) tba = true;
            if (lm.move == dotted_text(a, std::to_string(b))) tab = true;
          }
        }
        if (baa && bbb && tba && tab) {
          allocated_.insert({a, b});
          used_ports_.insert(a);
          used_ports_.insert(b);
          out_queue_.push_back(alloc_text(a, b));
        }
      }
    }
    if (!out_queue_.empty()) {
      std::string move = out_queue_.front();
      out_queue_.erase(out_queue_.begin());
      return move;
    }
    if (!stepped && fed_ >= ports_to_feed_.size()) return std::nullopt;
  }
  throw StrategyError("SIMULATION_DIVERGED", "inner machine never rests");
}

std::shared_ptr<DeUniformized> deuniformize(StrategyPtr col_machine,
                                            const Cirquent& c) {
  return std::make_shared<DeUniformized>(std::move(col_machine), c);
}

RefuteResult refute(const Cirquent& c, StrategyPtr col_machine) {
  return refute(c, std::move(col_machine), solve_ars(c));
}

RefuteResult refute(const Cirquent& c, StrategyPtr col_machine,
                    const SolveResult& solved) {
  if (solved.winner == Player::Machine)
    throw StrategyError("NOT_REFUTABLE",
                        "the cirquent is accomplishable; no refutation");

  auto m = deuniformize(col_machine, c);
  auto env = make_solver_environment(solved.solver);
  PlayTranscript ars_play = play(c, *m, *env, Regime::Ars);
  Run theta = ars_play.run;
  Run gamma = m->inner_run();

  // Falsifying situation consistent with theta's arrangement.
  Situation dagger;
  Accomplishment acc = accomplished(c, theta);
  if (acc.witness) {
    dagger = *acc.witness;
  } else {
    // The machine offended; any situation does.
    dagger = SituationSpace(c).at(0);
  }

  // The proof's adjusted situation: unmatched general ports go false.
  std::set<int> matched;
  for (auto& [a, b] : induced_arrangement(theta)) {
    matched.insert(a);
    matched.insert(b);
  }
  Situation ddagger = dagger;
  for (NodeId id : c.port_ids())
    if (c.node(id).literal().general() && !matched.count(id))
      ddagger[id] = false;

  // Nice interpretation from the two-clause win-table rule.
  Interpretation interp;
  for (const std::string& atom : c.atoms(false)) {
    bool value = false;
    for (NodeId id : c.port_ids()) {
      const Literal& lit = c.node(id).literal();
      if (lit.general() || lit.atom != atom) continue;
      value = lit.negated ? !ddagger.at(id) : ddagger.at(id);
      break;
    }
    interp.set_elementary(atom, value);
  }
  std::vector<NodeId> gports = general_ports(c);
  auto port_projection = [&](NodeId p) {
    return project(gamma, std::to_string(p) + ".");
  };
  for (const std::string& atom : c.atoms(true)) {
    NiceGame nice;
    for (NodeId p : gports) nice.alphabet.push_back(std::to_string(p));
    for (const std::string& tm : nice.alphabet) {
      for (const std::string& em : nice.alphabet) {
        bool machine_wins = false;
        // Clause 1: the environment's move names a positive port of this
        // atom, sent true, whose run was exactly {B a, T b}.
        NodeId a = std::stoi(em);
        if (c.has_node(a) && c.node(a).is_port()) {
          const Literal& la = c.node(a).literal();
          if (la.general() && !la.negated && la.atom == atom &&
              ddagger.at(a)) {
            Run sub = port_projection(a);
            std::set<std::pair<Player, std::string>> have(
                {{Player::Environment, em}, {Player::Machine, tm}});
            std::set<std::pair<Player, std::string>> got;
            for (const LabMove& lm : sub) got.insert({lm.player, lm.move});
            if (got == have) machine_wins = true;
          }
        }
        // Clause 2: the machine's move names a negative port of this atom,
        // sent false, whose run was exactly {T a, B b}.
        NodeId b = std::stoi(tm);
        if (!machine_wins && c.has_node(b) && c.node(b).is_port()) {
          const Literal& lb = c.node(b).literal();
          if (lb.general() && lb.negated && lb.atom == atom &&
              !ddagger.at(b)) {
            Run sub = port_projection(b);
            std::set<std::pair<Player, std::string>> have(
                {{Player::Machine, em}, {Player::Environment, tm}});
            std::set<std::pair<Player, std::string>> got;
            for (const LabMove& lm : sub) got.insert({lm.player, lm.move});
            if (got == have) machine_wins = true;
          }
        }
        if (machine_wins) nice.win[{tm, em}] = Player::Machine;
      }
    }
    interp.set_general(atom, nice.to_explicit());
  }

  RefuteResult result;
  result.interp = interp;
  result.falsifier = dagger;
  result.transcript.run = gamma;
  int step = 1;
  for (const LabMove& lm : gamma)
    result.transcript.steps.push_back({step++, lm.player, lm.move});
  result.transcript.verdict = wn(c, interp, gamma);
  return result;
}

bool undefeated_by_exhaustive_env(const Cirquent& c, StrategyPtr machine,
                                  Regime regime, const Interpretation* interp,
                                  int depth, std::string* failure) {
  auto legal_env_moves = [&](const Run& run) {
    std::vector<std::string> out;
    for (const Cluster& cl : c.clusters()) {
      GateKind kind = c.cluster_kind(cl.id);
      if (!is_selectional(kind) || is_disjunctive(kind)) continue;
      for (int i = 1; i <= c.cluster_outdegree(cl.id); ++i) {
        Run next = run;
        next.push_back(
            {Player::Environment, dotted_text(cl.id, std::to_string(i))});
        if (check_cluster_moves(c, next).legal)
          out.push_back(next.back().move);
      }
    }
    if (regime == Regime::Col) {
      for (NodeId port : c.port_ids()) {
        const Literal& lit = c.node(port).literal();
        if (!lit.general()) continue;
        const ExplicitGame& game = interp->general_game(lit);
        Run sub = project(run, std::to_string(port) + ".");
        for (const std::string& m : game.move_universe())
          if (game.move_legal(sub, {Player::Environment, m}))
            out.push_back(dotted_text(port, m));
      }
    }
    return out;
  };

  // Replays the machine from scratch for one environment behavior.
  auto simulate = [&](const std::vector<std::string>& env_moves) {
    machine->reset();
    Run run;
    auto drain = [&] {
      for (int guard = 0; guard < 10000; ++guard) {
        auto m = machine->next(run);
        if (!m) return;
        run.push_back({Player::Machine, *m});
      }
      throw StrategyError("RUNAWAY_MACHINE", "machine refused to rest");
    };
    drain();
    for (const std::string& e : env_moves) {
      run.push_back({Player::Environment, e});
      drain();
    }
    return run;
  };

  std::vector<std::string> behavior;
  auto lost = [&](const Run& run) {
    Player w = regime == Regime::Ars ? wn_ars(c, run) : wn(c, *interp, run);
    return w != Player::Machine;
  };
  std::function<bool(int)> explore = [&](int remaining) -> bool {
    Run run = simulate(behavior);
    if (lost(run)) {
      if (failure) *failure = emit_run(run);
      return false;
    }
    if (remaining == 0) return true;
    for (const std::string& e : legal_env_moves(run)) {
      behavior.push_back(e);
      bool ok = explore(remaining - 1);
      behavior.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return explore(depth);
}

std::vector<Interpretation> nice_interpretation_family(const Cirquent& c,
                                                       int random_tables) {
  std::vector<std::string> atoms = c.atoms(true);
  std::vector<NodeId> gports = general_ports(c);
  std::vector<std::string> alphabet;
  for (NodeId p : gports) alphabet.push_back(std::to_string(p));

  auto with_tables =
      [&](const std::function<bool(const std::string&, const std::string&,
                                   const std::string&)>& machine_wins) {
        Interpretation interp;
        for (const std::string& atom : atoms) {
          NiceGame nice;
          nice.alphabet = alphabet;
          for (const std::string& tm : alphabet)
            for (const std::string& em : alphabet)
              if (machine_wins(atom, tm, em))
                nice.win[{tm, em}] = Player::Machine;
          interp.set_general(atom, nice.to_explicit());
        }
        return interp;
      };

  std::vector<Interpretation> family;
  family.push_back(with_tables([](auto&, auto&, auto&) { return true; }));
  family.push_back(with_tables([](auto&, auto&, auto&) { return false; }));
  // Matching table: the machine wins iff its move names the port opposite to
  // the environment's, under the id-ordered pairing of each atom's ports.
  std::map<std::string, std::string> mate;
  {
    std::map<std::string, std::vector<NodeId>> pos, neg;
    for (NodeId id : gports) {
      const Literal& lit = c.node(id).literal();
      (lit.negated ? neg : pos)[lit.atom].push_back(id);
    }
    for (auto& [atom, ps] : pos) {
      auto& ns = neg[atom];
      for (std::size_t i = 0; i < ps.size() && i < ns.size(); ++i) {
        mate[std::to_string(ps[i])] = std::to_string(ns[i]);
        mate[std::to_string(ns[i])] = std::to_string(ps[i]);
      }
    }
  }
  family.push_back(with_tables([&](auto&, const std::string& tm,
                                   const std::string& em) {
    auto it = mate.find(em);
    return it != mate.end() && it->second == tm;
  }));
  std::mt19937 rng(20110233);
  for (int k = 0; k < random_tables; ++k) {
    // Draw the table up front so every atom/table combination is fixed.
    std::map<std::tuple<std::string, std::string, std::string>, bool> table;
    for (const std::string& atom : atoms)
      for (const std::string& tm : alphabet)
        for (const std::string& em : alphabet)
          table[{atom, tm, em}] = rng() & 1u;
    family.push_back(with_tables(
        [table](const std::string& atom, const std::string& tm,
                const std::string& em) {
          return table.at({atom, tm, em});
        }));
  }
  return family;
}

}  // namespace cirq
