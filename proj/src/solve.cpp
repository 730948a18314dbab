#include "cirq/solve.hpp"

#include <algorithm>
#include <sstream>

namespace cirq {

Run Configuration::canonical_run(const Cirquent& c) const {
  Run run;
  auto push_cluster = [&](ClusterId cl, int i) {
    Player p = is_disjunctive(c.cluster_kind(cl)) ? Player::Machine
                                                  : Player::Environment;
    run.push_back({p, dotted_text(cl, std::to_string(i))});
  };
  std::set<ClusterId> ids;
  for (auto& [cl, _] : choice) ids.insert(cl);
  for (auto& [cl, _] : sequential) ids.insert(cl);
  for (auto& [cl, _] : toggling) ids.insert(cl);
  for (ClusterId cl : ids) {
    if (auto it = choice.find(cl); it != choice.end()) push_cluster(cl, it->second);
    if (auto it = sequential.find(cl); it != sequential.end())
      push_cluster(cl, it->second);
    if (auto it = toggling.find(cl); it != toggling.end())
      push_cluster(cl, it->second.first);
  }
  for (auto& [a, b] : arrangement)
    run.push_back({Player::Machine, alloc_text(a, b)});
  for (auto& [port, sub] : port_runs)
    for (const LabMove& lm : sub)
      run.push_back({lm.player, dotted_text(port, lm.move)});
  return run;
}

std::string Configuration::digest() const {
  std::ostringstream os;
  for (auto& [cl, i] : choice) os << 'c' << cl << '.' << i << ';';
  for (auto& [cl, i] : sequential) os << 's' << cl << '.' << i << ';';
  for (auto& [cl, ci] : toggling)
    os << 't' << cl << '.' << ci.first << '#' << ci.second << ';';
  for (auto& [a, b] : arrangement) os << 'a' << a << ',' << b << ';';
  for (auto& [port, sub] : port_runs) {
    os << 'p' << port << ':';
    for (const LabMove& lm : sub)
      os << player_letter(lm.player) << lm.move << ',';
    os << ';';
  }
  return os.str();
}

Configuration configuration_of(const Cirquent& c, const Run& run,
                               Regime regime) {
  Configuration conf;
  for (const LabMove& lm : run) {
    if (auto alloc = parse_alloc(lm.move)) {
      conf.arrangement.push_back(*alloc);
      continue;
    }
    auto d = parse_dotted(lm.move);
    if (!d) throw IllegalRunError("ILLEGAL_RUN: bad move " + lm.move);
    if (c.cluster(d->head)) {
      int i = std::stoi(d->suffix);
      GateKind kind = c.cluster_kind(d->head);
      if (is_choice(kind)) conf.choice[d->head] = i;
      if (is_sequential(kind)) conf.sequential[d->head] = i;
      if (is_toggling(kind)) {
        auto& [current, uses] = conf.toggling[d->head];
        current = i;
        uses++;
      }
    } else if (regime == Regime::Col) {
      conf.port_runs[d->head].push_back({lm.player, d->suffix});
    } else {
      throw IllegalRunError("ILLEGAL_RUN: bad move " + lm.move);
    }
  }
  std::sort(conf.arrangement.begin(), conf.arrangement.end());
  return conf;
}

int default_toggle_budget(const Cirquent& c) {
  int selectional = 0;
  for (const Cluster& cl : c.clusters())
    if (is_selectional(c.cluster_kind(cl.id))) ++selectional;
  return 2 * selectional + 1;
}

Solver::Solver(const Cirquent& c, Regime regime, const Interpretation* interp,
               int toggle_budget)
    : c_(c), regime_(regime), budget_(toggle_budget) {
  if (interp) interp_ = *interp;
  if (regime == Regime::Col && interp == nullptr)
    throw SolveError("INTERP_REQUIRED", "CoL solving needs an interpretation");
}

bool Solver::payoff(const Configuration& conf) {
  std::string key = conf.digest();
  auto it = payoff_memo_.find(key);
  if (it != payoff_memo_.end()) return it->second;
  Run run = conf.canonical_run(c_);
  bool result;
  if (regime_ == Regime::Ars)
    result = accomplished(c_, run, Exec::Serial).accomplished;
  else
    result = true_col(c_, *interp_, run, Exec::Serial);
  payoff_memo_[key] = result;
  return result;
}

std::vector<std::string> Solver::moves(const Configuration& conf, Player who) {
  std::vector<std::string> out;
  for (const Cluster& cl : c_.clusters()) {
    GateKind kind = c_.cluster_kind(cl.id);
    if (!is_selectional(kind)) continue;
    Player mover =
        is_disjunctive(kind) ? Player::Machine : Player::Environment;
    if (mover != who) continue;
    int deg = c_.cluster_outdegree(cl.id);
    if (is_choice(kind)) {
      if (!conf.choice.count(cl.id))
        for (int i = 1; i <= deg; ++i)
          out.push_back(dotted_text(cl.id, std::to_string(i)));
    } else if (is_sequential(kind)) {
      auto it = conf.sequential.find(cl.id);
      int from = it == conf.sequential.end() ? 1 : it->second + 1;
      for (int i = from; i <= deg; ++i)
        out.push_back(dotted_text(cl.id, std::to_string(i)));
    } else {
      auto it = conf.toggling.find(cl.id);
      int uses = it == conf.toggling.end() ? 0 : it->second.second;
      if (uses >= budget_) {
        (who == Player::Machine ? pruned_machine_ : pruned_env_) = true;
        continue;
      }
      for (int i = 1; i <= deg; ++i)
        out.push_back(dotted_text(cl.id, std::to_string(i)));
    }
  }
  if (regime_ == Regime::Ars && who == Player::Machine) {
    std::set<int> used;
    for (auto& [a, b] : conf.arrangement) {
      used.insert(a);
      used.insert(b);
    }
    std::vector<NodeId> ports = c_.port_ids();
    for (NodeId a : ports) {
      const Literal& la = c_.node(a).literal();
      if (!la.general() || la.negated || used.count(a)) continue;
      for (NodeId b : ports) {
        const Literal& lb = c_.node(b).literal();
        if (!lb.general() || !lb.negated || used.count(b)) continue;
        if (lb.atom != la.atom) continue;
        out.push_back(alloc_text(a, b));
      }
    }
  }
  if (regime_ == Regime::Col) {
    for (NodeId port : c_.port_ids()) {
      const Literal& lit = c_.node(port).literal();
      if (!lit.general()) continue;
      const ExplicitGame& game = interp_->general_game(lit);
      Run sub;
      if (auto it = conf.port_runs.find(port); it != conf.port_runs.end())
        sub = it->second;
      for (const std::string& m : game.move_universe())
        if (game.move_legal(sub, {who, m}))
          out.push_back(dotted_text(port, m));
    }
  }
  return out;
}

Configuration Solver::apply(const Configuration& conf, Player who,
                            const std::string& move) const {
  Configuration next = conf;
  if (auto alloc = parse_alloc(move)) {
    next.arrangement.push_back(*alloc);
    std::sort(next.arrangement.begin(), next.arrangement.end());
    return next;
  }
  auto d = parse_dotted(move);
  if (c_.cluster(d->head)) {
    int i = std::stoi(d->suffix);
    GateKind kind = c_.cluster_kind(d->head);
    if (is_choice(kind)) next.choice[d->head] = i;
    if (is_sequential(kind)) next.sequential[d->head] = i;
    if (is_toggling(kind)) {
      auto& [current, uses] = next.toggling[d->head];
      current = i;
      uses++;
    }
  } else {
    next.port_runs[d->head].push_back({who, d->suffix});
  }
  return next;
}

bool Solver::value(const Configuration& conf, Phase phase) {
  std::string key = conf.digest();
  key += phase == Phase::EnvTurn ? "|E"
         : phase == Phase::MachineAfterMove ? "|m" : "|p";
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool result;
  if (phase == Phase::EnvTurn) {
    result = value(conf, Phase::MachineAfterPass);
    if (result)
      for (const std::string& m : moves(conf, Player::Environment)) {
        if (!value(apply(conf, Player::Environment, m),
                   Phase::MachineAfterMove)) {
          result = false;
          break;
        }
      }
  } else {
    // Machine's half of the round: pass (ending the game if the environment
    // passed too) or move into the next round.
    result = phase == Phase::MachineAfterPass ? payoff(conf)
                                              : value(conf, Phase::EnvTurn);
    if (!result)
      for (const std::string& m : moves(conf, Player::Machine)) {
        if (value(apply(conf, Player::Machine, m), Phase::EnvTurn)) {
          result = true;
          break;
        }
      }
  }
  memo_[key] = result;
  return result;
}

Player Solver::winner() {
  if (!winner_) {
    winner_ = value(Configuration{}, Phase::EnvTurn) ? Player::Machine
                                                     : Player::Environment;
  }
  return *winner_;
}

SolveStatus Solver::status() {
  Player w = winner();
  bool loser_pruned =
      w == Player::Machine ? pruned_env_ : pruned_machine_;
  return loser_pruned ? SolveStatus::BudgetUndecided : SolveStatus::Exact;
}

std::optional<std::string> Solver::machine_move(const Configuration& conf) {
  if (payoff(conf) && value(conf, Phase::EnvTurn)) return std::nullopt;
  for (const std::string& m : moves(conf, Player::Machine))
    if (value(apply(conf, Player::Machine, m), Phase::EnvTurn)) return m;
  return std::nullopt;
}

std::optional<std::string> Solver::environment_move(
    const Configuration& conf) {
  if (!value(conf, Phase::MachineAfterPass)) return std::nullopt;
  for (const std::string& m : moves(conf, Player::Environment))
    if (!value(apply(conf, Player::Environment, m), Phase::MachineAfterMove))
      return m;
  return std::nullopt;
}

namespace {

SolveResult run_solver(const Cirquent& c, Regime regime,
                       const Interpretation* interp,
                       std::optional<int> toggle_budget) {
  int budget = toggle_budget.value_or(default_toggle_budget(c));
  auto solver = std::make_shared<Solver>(c, regime, interp, budget);
  SolveResult result;
  result.winner = solver->winner();
  result.status = solver->status();
  result.explored = solver->explored();
  // Principal line: the winner against a silent adversary.
  Configuration conf;
  for (int steps = 0; steps < 1000; ++steps) {
    std::optional<std::string> m =
        result.winner == Player::Machine ? solver->machine_move(conf)
                                         : solver->environment_move(conf);
    if (!m) break;
    Player who = result.winner;
    result.principal_run.push_back({who, *m});
    conf = configuration_of(c, result.principal_run, regime);
  }
  result.solver = solver;
  return result;
}

}  // namespace

SolveResult solve_ars(const Cirquent& c, std::optional<int> toggle_budget) {
  return run_solver(c, Regime::Ars, nullptr, toggle_budget);
}

SolveResult solve_col(const Cirquent& c, const Interpretation& interp,
                      std::optional<int> toggle_budget) {
  return run_solver(c, Regime::Col, &interp, toggle_budget);
}

namespace {

std::vector<Interpretation> all_elementary_interps(
    const std::vector<std::string>& atoms) {
  std::vector<Interpretation> out;
  std::size_t n = atoms.size();
  if (n > 24) throw SolveError("TOO_MANY_ATOMS", "interpretation space too large");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Interpretation interp;
    for (std::size_t i = 0; i < n; ++i)
      interp.set_elementary(atoms[i], (mask >> i) & 1u);
    out.push_back(std::move(interp));
  }
  return out;
}

}  // namespace

bool weak_validity(const Cirquent& c, Exec exec) {
  if (c.has_general_ports())
    throw SolveError("GENERAL_PORTS_UNSUPPORTED",
                     "weak validity is decided for elementary cirquents only");
  auto interps = all_elementary_interps(c.atoms(false));
  bool valid = true;
  if (use_parallel(exec, interps.size())) {
    std::int64_t n = (std::int64_t)interps.size();
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      if (!valid) continue;
      if (solve_col(c, interps[i]).winner != Player::Machine) {
#pragma omp critical
        valid = false;
      }
    }
    return valid;
  }
  for (const Interpretation& interp : interps)
    if (solve_col(c, interp).winner != Player::Machine) return false;
  return valid;
}

namespace {

void enumerate_legal_runs(const Cirquent& c, const Run& prefix,
                          std::set<std::string>& seen,
                          std::vector<Run>& out) {
  if (!seen.insert(emit_run(prefix)).second) return;
  out.push_back(prefix);
  for (const Cluster& cl : c.clusters()) {
    GateKind kind = c.cluster_kind(cl.id);
    if (!is_selectional(kind)) continue;
    Player mover =
        is_disjunctive(kind) ? Player::Machine : Player::Environment;
    for (int i = 1; i <= c.cluster_outdegree(cl.id); ++i) {
      Run next = prefix;
      next.push_back({mover, dotted_text(cl.id, std::to_string(i))});
      if (check_cluster_moves(c, next).legal)
        enumerate_legal_runs(c, next, seen, out);
    }
  }
}

}  // namespace

bool extensional_identity(const Cirquent& c1, const Cirquent& c2) {
  for (const Cirquent* c : {&c1, &c2}) {
    if (c->has_general_ports())
      throw SolveError("UNSUPPORTED",
                       "extensional identity needs elementary-only cirquents");
    if (c->has_toggling())
      throw SolveError("UNSUPPORTED",
                       "extensional identity needs toggling-free cirquents");
  }
  std::vector<Run> runs1, runs2;
  std::set<std::string> seen1, seen2;
  enumerate_legal_runs(c1, {}, seen1, runs1);
  enumerate_legal_runs(c2, {}, seen2, runs2);
  if (seen1 != seen2) return false;

  std::set<std::string> atom_union;
  for (const std::string& a : c1.atoms(false)) atom_union.insert(a);
  for (const std::string& a : c2.atoms(false)) atom_union.insert(a);
  auto interps = all_elementary_interps(
      std::vector<std::string>(atom_union.begin(), atom_union.end()));
  for (const Interpretation& interp : interps)
    for (const Run& run : runs1)
      if (wn(c1, interp, run, Exec::Serial) !=
          wn(c2, interp, run, Exec::Serial))
        return false;
  return true;
}

namespace {

struct Oracle {
  const Cirquent& c;
  Regime regime;
  const Interpretation* interp;
  int max_len;
  bool collapse;
  std::map<std::string, bool> wn_memo;
  std::map<std::string, bool> value_memo;

  bool won(const Run& run) {
    std::string key = collapse ? configuration_of(c, run, regime).digest()
                               : emit_run(run);
    auto it = wn_memo.find(key);
    if (it != wn_memo.end()) return it->second;
    Player w = regime == Regime::Ars ? wn_ars(c, run, Exec::Serial)
                                     : wn(c, *interp, run, Exec::Serial);
    bool result = w == Player::Machine;
    wn_memo[key] = result;
    return result;
  }

  std::vector<LabMove> legal_moves(const Run& run, Player who) {
    std::vector<LabMove> out;
    for (const Cluster& cl : c.clusters()) {
      GateKind kind = c.cluster_kind(cl.id);
      if (!is_selectional(kind)) continue;
      Player mover =
          is_disjunctive(kind) ? Player::Machine : Player::Environment;
      if (mover != who) continue;
      for (int i = 1; i <= c.cluster_outdegree(cl.id); ++i) {
        LabMove lm{who, dotted_text(cl.id, std::to_string(i))};
        Run next = run;
        next.push_back(lm);
        if (check_cluster_moves(c, next).legal) out.push_back(lm);
      }
    }
    if (regime == Regime::Ars && who == Player::Machine) {
      std::set<int> used;
      for (const LabMove& lm : run)
        if (auto alloc = parse_alloc(lm.move)) {
          used.insert(alloc->first);
          used.insert(alloc->second);
        }
      for (NodeId a : c.port_ids()) {
        const Literal& la = c.node(a).literal();
        if (!la.general() || la.negated || used.count(a)) continue;
        for (NodeId b : c.port_ids()) {
          const Literal& lb = c.node(b).literal();
          if (lb.general() && lb.negated && lb.atom == la.atom &&
              !used.count(b))
            out.push_back({who, alloc_text(a, b)});
        }
      }
    }
    if (regime == Regime::Col) {
      for (NodeId port : c.port_ids()) {
        const Literal& lit = c.node(port).literal();
        if (!lit.general()) continue;
        const ExplicitGame& game = interp->general_game(lit);
        Run sub = project(run, std::to_string(port) + ".");
        for (const std::string& m : game.move_universe())
          if (game.move_legal(sub, {who, m}))
            out.push_back({who, dotted_text(port, m)});
      }
    }
    return out;
  }

  // Machine wins from this history iff it survives every environment
  // injection and can either rest on a won position or move to a winning one.
  bool value(const Run& run) {
    std::string key;
    if (collapse) {
      key = configuration_of(c, run, regime).digest() + "#" +
            std::to_string(max_len - (int)run.size());
      auto it = value_memo.find(key);
      if (it != value_memo.end()) return it->second;
    }
    bool here = won(run);
    bool result;
    if ((int)run.size() >= max_len) {
      result = here;
    } else {
      result = true;
      for (const LabMove& lm : legal_moves(run, Player::Environment)) {
        Run next = run;
        next.push_back(lm);
        if (!value(next)) {
          result = false;
          break;
        }
      }
      if (result && !here) {
        result = false;
        for (const LabMove& lm : legal_moves(run, Player::Machine)) {
          Run next = run;
          next.push_back(lm);
          if (value(next)) {
            result = true;
            break;
          }
        }
      }
    }
    if (collapse) value_memo[key] = result;
    return result;
  }
};

}  // namespace

Player brute_force_oracle(const Cirquent& c, Regime regime,
                          const Interpretation* interp, int max_len,
                          bool collapse_histories) {
  if (regime == Regime::Col && interp == nullptr)
    throw SolveError("INTERP_REQUIRED", "CoL oracle needs an interpretation");
  Oracle oracle{c, regime, interp, max_len, collapse_histories, {}, {}};
  return oracle.value({}) ? Player::Machine : Player::Environment;
}

int oracle_sufficient_len(const Cirquent& c, Regime regime) {
  int len = 0;
  for (const Cluster& cl : c.clusters()) {
    GateKind kind = c.cluster_kind(cl.id);
    if (is_choice(kind)) len += 1;
    if (is_sequential(kind)) len += c.cluster_outdegree(cl.id);
    if (is_toggling(kind)) len += default_toggle_budget(c);
  }
  if (regime == Regime::Ars) {
    int pos = 0, neg = 0;
    for (NodeId id : c.port_ids()) {
      const Literal& lit = c.node(id).literal();
      if (!lit.general()) continue;
      (lit.negated ? neg : pos)++;
    }
    len += std::min(pos, neg);
  } else {
    for (NodeId id : c.port_ids())
      if (c.node(id).literal().general()) len += 2;
  }
  return len;
}

}  // namespace cirq
