#include "cirq/eval_col.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cirq {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Legality legal_position_col(const Cirquent& c, const Interpretation& interp,
                            const Run& run) {
  struct PortState {
    const ExplicitGame* game;
    Run projected;
  };
  std::map<NodeId, PortState> ports;
  for (NodeId id : c.port_ids())
    if (c.node(id).literal().general())
      ports.emplace(id,
                    PortState{&interp.general_game(c.node(id).literal()), {}});

  Run cluster_prefix;
  for (std::size_t i = 0; i < run.size(); ++i) {
    const LabMove& lm = run[i];
    bool ok = false;
    auto d = parse_dotted(lm.move);
    if (d && c.cluster(d->head)) {
      cluster_prefix.push_back(lm);
      ok = check_cluster_moves(c, cluster_prefix).legal;
      if (!ok) cluster_prefix.pop_back();
    } else if (d && ports.count(d->head)) {
      PortState& ps = ports.at(d->head);
      LabMove inner{lm.player, d->suffix};
      ok = ps.game->move_legal(ps.projected, inner);
      if (ok) ps.projected.push_back(inner);
    }
    if (!ok) return {false, i + 1, lm.player};
  }
  return {};
}

std::map<NodeId, bool> port_values_col(const Cirquent& c,
                                       const Interpretation& interp,
                                       const Run& run) {
  std::map<NodeId, bool> values;
  for (NodeId id : c.port_ids()) {
    const Literal& lit = c.node(id).literal();
    if (lit.general()) {
      Run projected = project(run, std::to_string(id) + ".");
      values[id] =
          interp.general_game(lit).winner(projected) == Player::Machine;
    } else {
      values[id] = interp.elementary_value(lit);
    }
  }
  return values;
}

bool eval_gates(const Cirquent& c, const std::map<NodeId, bool>& port_values,
                const ResolutionState& sel,
                const std::map<ClusterId, int>& parallel_resolved) {
  std::vector<char> value(c.nodes().size(), 0);
  for (NodeId id : c.topo_order()) {
    const Node& n = c.node(id);
    std::size_t at = c.node_index(id);
    if (n.is_port()) {
      value[at] = port_values.at(id);
      continue;
    }
    GateKind kind = n.kind();
    ClusterId cl = c.cluster_of(id);
    std::optional<int> pick;
    if (is_selectional(kind)) {
      pick = sel.resolvent(cl);
    } else {
      auto it = parallel_resolved.find(cl);
      if (it != parallel_resolved.end()) pick = it->second;
    }
    if (pick) {
      value[at] = value[c.node_index(c.children(id)[*pick - 1])];
    } else {
      value[at] = is_conjunctive(kind);
    }
  }
  return value[c.node_index(c.root())];
}

namespace {

// Classical evaluation; valid exactly when every parallel cluster is a
// singleton (fixed port values make per-gate picks lossless).
bool eval_classical(const Cirquent& c,
                    const std::map<NodeId, bool>& port_values,
                    const ResolutionState& sel) {
  std::vector<char> value(c.nodes().size(), 0);
  for (NodeId id : c.topo_order()) {
    const Node& n = c.node(id);
    std::size_t at = c.node_index(id);
    if (n.is_port()) {
      value[at] = port_values.at(id);
      continue;
    }
    GateKind kind = n.kind();
    if (is_selectional(kind)) {
      auto pick = sel.resolvent(c.cluster_of(id));
      value[at] = pick ? value[c.node_index(c.children(id)[*pick - 1])]
                       : is_conjunctive(kind);
      continue;
    }
    bool conj = is_conjunctive(kind);
    bool v = conj;
    for (NodeId child : c.children(id)) {
      bool cv = value[c.node_index(child)];
      v = conj ? (v && cv) : (v || cv);
    }
    value[at] = v;
  }
  return value[c.node_index(c.root())];
}

struct RankSpace {
  std::vector<ClusterId> clusters;
  std::vector<int> radix;  // options per cluster (undefined counts as one)
  std::vector<bool> skip_undefined;
  bool disjunctive = false;
  std::uint64_t size = 1;
};

RankSpace rank_space(const Cirquent& c, const std::vector<ClusterId>& rank,
                     bool totals_only) {
  RankSpace space;
  space.clusters = rank;
  std::sort(space.clusters.begin(), space.clusters.end());
  space.disjunctive = is_disjunctive(c.cluster_kind(space.clusters.front()));
  for (ClusterId cl : space.clusters) {
    int deg = c.cluster_outdegree(cl);
    bool skip_undef = totals_only && deg >= 1;
    space.skip_undefined.push_back(skip_undef);
    space.radix.push_back(skip_undef ? deg : deg + 1);
    space.size *= (std::uint64_t)space.radix.back();
  }
  return space;
}

void decode_assignment(const RankSpace& space, std::uint64_t index,
                       std::map<ClusterId, int>& out) {
  for (std::size_t i = 0; i < space.clusters.size(); ++i) {
    int digit = (int)(index % (std::uint64_t)space.radix[i]);
    index /= (std::uint64_t)space.radix[i];
    int pick = space.skip_undefined[i] ? digit + 1 : digit;
    if (pick > 0)
      out[space.clusters[i]] = pick;
    else
      out.erase(space.clusters[i]);
  }
}

bool eval_ranks(const Cirquent& c, const std::map<NodeId, bool>& port_values,
                const ResolutionState& sel, bool totals_only,
                std::size_t rank_index, std::map<ClusterId, int>& chosen) {
  if (rank_index == c.ranks().size())
    return eval_gates(c, port_values, sel, chosen);
  RankSpace space = rank_space(c, c.ranks()[rank_index], totals_only);
  bool result = !space.disjunctive;
  for (std::uint64_t i = 0; i < space.size; ++i) {
    decode_assignment(space, i, chosen);
    bool v =
        eval_ranks(c, port_values, sel, totals_only, rank_index + 1, chosen);
    if (v == space.disjunctive) {
      result = v;
      break;
    }
  }
  for (ClusterId cl : space.clusters) chosen.erase(cl);
  return result;
}

}  // namespace

bool quantified_truth(const Cirquent& c,
                      const std::map<NodeId, bool>& port_values,
                      const ResolutionState& sel, QuantMode mode, Exec exec) {
  bool all_singleton = true;
  for (const Cluster& cl : c.clusters())
    if (is_parallel(c.cluster_kind(cl.id)) && cl.members.size() > 1)
      all_singleton = false;
  if (mode == QuantMode::Auto && all_singleton)
    return eval_classical(c, port_values, sel);

  bool totals_only = mode == QuantMode::TotalEnum;
  if (c.ranks().empty()) {
    std::map<ClusterId, int> none;
    return eval_gates(c, port_values, sel, none);
  }

  RankSpace first = rank_space(c, c.ranks()[0], totals_only);
  if (use_parallel(exec, first.size)) {
    std::atomic<bool> settled{false};
    bool result = !first.disjunctive;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < (std::int64_t)first.size; ++i) {
      if (settled.load(std::memory_order_relaxed)) continue;
      std::map<ClusterId, int> chosen;
      decode_assignment(first, (std::uint64_t)i, chosen);
      bool v = eval_ranks(c, port_values, sel, totals_only, 1, chosen);
      if (v == first.disjunctive) {
#pragma omp critical
        {
          result = v;
          settled.store(true, std::memory_order_relaxed);
        }
      }
    }
    return result;
  }
  std::map<ClusterId, int> chosen;
  return eval_ranks(c, port_values, sel, totals_only, 0, chosen);
}

bool metatrue(const Cirquent& c, const Interpretation& interp, const Run& run,
              const Metaselection& f) {
  Legality legality = legal_position_col(c, interp, run);
  if (!legality.legal)
    throw IllegalRunError("ILLEGAL_RUN: offending move " +
                          std::to_string(legality.offending_index));
  ResolutionState sel = resolution_state(c, run);
  std::map<ClusterId, int> parallel;
  for (std::size_t i = 0; i < f.size() && i < c.ranks().size(); ++i)
    for (auto& [cl, pick] : f[i]) parallel[cl] = pick;
  return eval_gates(c, port_values_col(c, interp, run), sel, parallel);
}

bool true_col(const Cirquent& c, const Interpretation& interp, const Run& run,
              Exec exec) {
  Legality legality = legal_position_col(c, interp, run);
  if (!legality.legal)
    throw IllegalRunError("ILLEGAL_RUN: offending move " +
                          std::to_string(legality.offending_index));
  ResolutionState sel = resolution_state(c, run);
  return quantified_truth(c, port_values_col(c, interp, run), sel,
                          QuantMode::Auto, exec);
}

Player wn(const Cirquent& c, const Interpretation& interp, const Run& run,
          Exec exec) {
  Legality legality = legal_position_col(c, interp, run);
  if (!legality.legal) return opponent(legality.offender);
  return true_col(c, interp, run, exec) ? Player::Machine
                                        : Player::Environment;
}

}  // namespace cirq
