#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "cirq/run.hpp"

namespace cirqtest {

struct GenOptions {
  int max_nodes = 12;
  bool allow_selectional = true;
  bool allow_toggling = false;
  bool allow_general = false;
  bool cluster_merges = true;
  bool explicit_ranks = true;
  int max_outdegree = 3;
  int atom_pool = 4;
};

// Random valid cirquent: a mostly-tree DAG (completed subtrees may be
// shared), homogeneous random clusters, optional explicit homogeneous ranks.
inline cirq::CirquentDoc random_doc(std::mt19937& rng,
                                    const GenOptions& opt) {
  using namespace cirq;
  CirquentDoc doc;
  std::vector<NodeId> finished;  // reusable as shared children
  int next_id = 1;

  std::vector<GateKind> kinds{GateKind::ParAnd, GateKind::ParOr};
  if (opt.allow_selectional) {
    kinds.insert(kinds.end(), {GateKind::ChoAnd, GateKind::ChoOr,
                               GateKind::SeqAnd, GateKind::SeqOr});
    if (opt.allow_toggling)
      kinds.insert(kinds.end(), {GateKind::TogAnd, GateKind::TogOr});
  }

  auto coin = [&](double p) {
    return std::uniform_real_distribution<>(0, 1)(rng) < p;
  };
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<>(lo, hi)(rng);
  };

  int budget = pick(2, opt.max_nodes);
  std::function<NodeId(int, int)> build = [&](int depth,
                                              int allowance) -> NodeId {
    bool leaf = allowance <= 1 || depth > 4 || (depth > 0 && coin(0.35));
    NodeId id = next_id++;
    if (leaf) {
      bool general = opt.allow_general && coin(0.4);
      std::string atom = (general ? "Q" : "q") +
                         std::to_string(pick(1, opt.atom_pool));
      doc.nodes.push_back({id, Literal{atom, coin(0.5)}});
      finished.push_back(id);
      return id;
    }
    GateKind kind = kinds[pick(0, (int)kinds.size() - 1)];
    doc.nodes.push_back({id, kind});
    int deg = pick(depth == 0 ? 1 : 0, opt.max_outdegree);
    int share = (int)finished.size();
    for (int i = 0; i < deg; ++i) {
      if (share > 0 && coin(0.2)) {
        doc.edges.emplace_back(id, finished[pick(0, share - 1)]);
      } else {
        int child_allowance = std::max(1, (allowance - 1) / std::max(1, deg));
        doc.edges.emplace_back(id, build(depth + 1, child_allowance));
      }
    }
    finished.push_back(id);
    return id;
  };
  build(0, budget);

  // Random homogeneous clusters: shuffle each (kind, outdegree) group and
  // cut it into runs.
  if (opt.cluster_merges) {
    std::map<NodeId, int> outdeg;
    for (const Node& n : doc.nodes) outdeg[n.id] = 0;
    for (auto& [from, to] : doc.edges) outdeg[from]++;
    std::map<std::pair<int, int>, std::vector<NodeId>> groups;
    for (const Node& n : doc.nodes)
      if (n.is_gate())
        groups[{(int)n.kind(), outdeg[n.id]}].push_back(n.id);
    doc.clusters.emplace();
    for (auto& [key, gates] : groups) {
      std::shuffle(gates.begin(), gates.end(), rng);
      std::size_t i = 0;
      while (i < gates.size()) {
        std::size_t len = 1 + (coin(0.4) && i + 1 < gates.size() ? 1 : 0);
        Cluster cl;
        cl.members.assign(gates.begin() + i, gates.begin() + i + len);
        std::sort(cl.members.begin(), cl.members.end());
        cl.id = cl.members.front();
        doc.clusters->push_back(cl);
        i += len;
      }
    }
    std::sort(doc.clusters->begin(), doc.clusters->end(),
              [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
  }

  if (opt.explicit_ranks && doc.clusters) {
    std::map<NodeId, GateKind> kind_of;
    for (const Node& n : doc.nodes)
      if (n.is_gate()) kind_of[n.id] = n.kind();
    std::vector<ClusterId> ors, ands;
    for (const Cluster& cl : *doc.clusters) {
      GateKind k = kind_of[cl.members[0]];
      if (k == GateKind::ParOr) ors.push_back(cl.id);
      if (k == GateKind::ParAnd) ands.push_back(cl.id);
    }
    auto split = [&](std::vector<ClusterId> ids) {
      std::vector<std::vector<ClusterId>> parts;
      std::shuffle(ids.begin(), ids.end(), rng);
      std::size_t i = 0;
      while (i < ids.size()) {
        std::size_t len = 1 + (coin(0.5) && i + 1 < ids.size() ? 1 : 0);
        parts.emplace_back(ids.begin() + i, ids.begin() + i + len);
        i += len;
      }
      return parts;
    };
    auto parts_or = split(ors);
    auto parts_and = split(ands);
    doc.ranks.emplace();
    while (!parts_or.empty() || !parts_and.empty()) {
      bool take_or = !parts_or.empty() && (parts_and.empty() || coin(0.5));
      auto& src = take_or ? parts_or : parts_and;
      doc.ranks->push_back(src.back());
      src.pop_back();
    }
    if (doc.ranks->empty()) doc.ranks.reset();
  }
  return doc;
}

inline cirq::Cirquent random_cirquent(std::mt19937& rng,
                                      const GenOptions& opt) {
  return cirq::validate(random_doc(rng, opt));
}

// Random legal run for the cirquent (cluster selections and, when the
// cirquent has opposite general ports, allocation moves).
inline cirq::Run random_legal_run(std::mt19937& rng, const cirq::Cirquent& c,
                                  int moves) {
  using namespace cirq;
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<>(lo, hi)(rng);
  };
  Run run;
  for (int step = 0; step < moves; ++step) {
    std::vector<LabMove> options;
    for (const Cluster& cl : c.clusters()) {
      GateKind kind = c.cluster_kind(cl.id);
      if (!is_selectional(kind)) continue;
      Player mover =
          is_disjunctive(kind) ? Player::Machine : Player::Environment;
      for (int i = 1; i <= c.cluster_outdegree(cl.id); ++i) {
        LabMove lm{mover, dotted_text(cl.id, std::to_string(i))};
        Run next = run;
        next.push_back(lm);
        if (check_cluster_moves(c, next).legal) options.push_back(lm);
      }
    }
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
          options.push_back({Player::Machine, alloc_text(a, b)});
      }
    }
    if (options.empty()) break;
    run.push_back(options[pick(0, (int)options.size() - 1)]);
  }
  return run;
}

}  // namespace cirqtest
