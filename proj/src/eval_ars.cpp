#include "cirq/eval_ars.hpp"

#include <algorithm>
#include <atomic>

namespace cirq {

SituationSpace::SituationSpace(const Cirquent& c) : c_(&c) {
  atoms_ = c.atoms(/*general=*/false);
  for (NodeId id : c.port_ids())
    if (c.node(id).literal().general()) general_ports_.push_back(id);
  std::sort(general_ports_.begin(), general_ports_.end());
  std::size_t bits = atoms_.size() + general_ports_.size();
  if (bits > 62) throw std::invalid_argument("situation space too large");
  count_ = std::uint64_t{1} << bits;
}

Situation SituationSpace::at(std::uint64_t index) const {
  std::size_t bits = atoms_.size() + general_ports_.size();
  // Bit 0 of the sequence is the first atom; true sorts first.
  auto value_of = [&](std::size_t pos) {
    std::uint64_t bit = (index >> (bits - 1 - pos)) & 1u;
    return bit == 0;
  };
  std::map<std::string, bool> atom_value;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    atom_value[atoms_[i]] = value_of(i);
  std::map<NodeId, bool> general_value;
  for (std::size_t i = 0; i < general_ports_.size(); ++i)
    general_value[general_ports_[i]] = value_of(atoms_.size() + i);

  Situation s;
  for (NodeId id : c_->port_ids()) {
    const Literal& lit = c_->node(id).literal();
    if (lit.general())
      s[id] = general_value.at(id);
    else
      s[id] = lit.negated ? !atom_value.at(lit.atom) : atom_value.at(lit.atom);
  }
  return s;
}

std::vector<Situation> enumerate_situations(const Cirquent& c) {
  SituationSpace space(c);
  std::vector<Situation> out;
  out.reserve(space.count());
  for (std::uint64_t i = 0; i < space.count(); ++i) out.push_back(space.at(i));
  return out;
}

bool consistent(const Situation& s, const Arrangement& a) {
  for (auto& [x, y] : a)
    if (s.at(x) == s.at(y)) return false;
  return true;
}

bool true_ars(const Cirquent& c, const Situation& s, const Run& run,
              Exec exec) {
  Legality legality = legal_position_ars(c, run);
  if (!legality.legal)
    throw IllegalRunError("ILLEGAL_RUN: offending move " +
                          std::to_string(legality.offending_index));
  ResolutionState sel = resolution_state(c, run);
  return quantified_truth(c, s, sel, QuantMode::Auto, exec);
}

namespace {

// Straight-line form of the classical sweep over the situation space, used
// when every parallel cluster is a singleton (the quantifier block then
// collapses to classical evaluation). Situations are addressed by their
// enumeration index; ports read bits directly.
struct DenseSweep {
  bool usable = false;
  int bits = 0;
  struct Op {
    enum Kind { Port, Copy, Const, FoldAnd, FoldOr } kind;
    int bit = 0;        // Port: situation bit position
    bool negate = false;
    int src = 0;        // Copy: dense child index
    bool value = false; // Const
    std::vector<int> kids;
  };
  std::vector<Op> ops;          // indexed by dense node index, topo order
  std::vector<int> topo;        // dense indices in evaluation order
  int root = 0;
  std::vector<std::pair<int, int>> pair_bits;  // arrangement as bit positions

  DenseSweep(const Cirquent& c, const ResolutionState& sel,
             const Arrangement& arrangement) {
    for (const Cluster& cl : c.clusters())
      if (is_parallel(c.cluster_kind(cl.id)) && cl.members.size() > 1) return;
    std::vector<std::string> atoms = c.atoms(false);
    std::map<std::string, int> atom_bit;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      atom_bit[atoms[i]] = (int)i;
    std::vector<NodeId> gports;
    for (NodeId id : c.port_ids())
      if (c.node(id).literal().general()) gports.push_back(id);
    std::sort(gports.begin(), gports.end());
    std::map<NodeId, int> port_bit;
    for (std::size_t i = 0; i < gports.size(); ++i)
      port_bit[gports[i]] = (int)(atoms.size() + i);
    bits = (int)(atoms.size() + gports.size());

    ops.resize(c.nodes().size());
    for (NodeId id : c.topo_order()) {
      int at = (int)c.node_index(id);
      topo.push_back(at);
      const Node& n = c.node(id);
      Op& op = ops[at];
      if (n.is_port()) {
        op.kind = Op::Port;
        const Literal& lit = n.literal();
        op.bit = lit.general() ? port_bit.at(id) : atom_bit.at(lit.atom);
        op.negate = !lit.general() && lit.negated;
        continue;
      }
      GateKind kind = n.kind();
      if (is_selectional(kind)) {
        auto pick = sel.resolvent(c.cluster_of(id));
        if (pick) {
          op.kind = Op::Copy;
          op.src = (int)c.node_index(c.children(id)[*pick - 1]);
        } else {
          op.kind = Op::Const;
          op.value = is_conjunctive(kind);
        }
        continue;
      }
      op.kind = is_conjunctive(kind) ? Op::FoldAnd : Op::FoldOr;
      for (NodeId child : c.children(id))
        op.kids.push_back((int)c.node_index(child));
    }
    root = (int)c.node_index(c.root());
    for (auto& [a, b] : arrangement)
      pair_bits.emplace_back(port_bit.at(a), port_bit.at(b));
    usable = true;
  }

  bool bit_true(std::uint64_t index, int pos) const {
    return ((index >> (bits - 1 - pos)) & 1u) == 0;
  }

  bool consistent(std::uint64_t index) const {
    for (auto& [a, b] : pair_bits)
      if (bit_true(index, a) == bit_true(index, b)) return false;
    return true;
  }

  bool eval(std::uint64_t index, std::vector<char>& value) const {
    for (int at : topo) {
      const Op& op = ops[at];
      switch (op.kind) {
        case Op::Port:
          value[at] = bit_true(index, op.bit) != op.negate;
          break;
        case Op::Copy:
          value[at] = value[op.src];
          break;
        case Op::Const:
          value[at] = op.value;
          break;
        case Op::FoldAnd: {
          char v = 1;
          for (int k : op.kids) v = v && value[k];
          value[at] = v;
          break;
        }
        case Op::FoldOr: {
          char v = 0;
          for (int k : op.kids) v = v || value[k];
          value[at] = v;
          break;
        }
      }
    }
    return value[root];
  }
};

}  // namespace

Accomplishment accomplished(const Cirquent& c, const Run& run, Exec exec) {
  Legality legality = legal_position_ars(c, run);
  if (!legality.legal)
    throw IllegalRunError("ILLEGAL_RUN: offending move " +
                          std::to_string(legality.offending_index));
  Arrangement arrangement = induced_arrangement(run);
  ResolutionState sel = resolution_state(c, run);
  SituationSpace space(c);

  DenseSweep sweep(c, sel, arrangement);
  if (sweep.usable) {
    if (use_parallel(exec, space.count())) {
      std::atomic<std::uint64_t> first{space.count()};
#pragma omp parallel
      {
        std::vector<char> scratch(sweep.ops.size(), 0);
#pragma omp for schedule(dynamic, 1024)
        for (std::int64_t i = 0; i < (std::int64_t)space.count(); ++i) {
          std::uint64_t u = (std::uint64_t)i;
          if (u >= first.load(std::memory_order_relaxed)) continue;
          if (sweep.consistent(u) && !sweep.eval(u, scratch)) {
            std::uint64_t seen = first.load();
            while (u < seen && !first.compare_exchange_weak(seen, u)) {
            }
          }
        }
      }
      if (first.load() == space.count()) return {true, std::nullopt};
      return {false, space.at(first.load())};
    }
    std::vector<char> scratch(sweep.ops.size(), 0);
    for (std::uint64_t i = 0; i < space.count(); ++i)
      if (sweep.consistent(i) && !sweep.eval(i, scratch))
        return {false, space.at(i)};
    return {true, std::nullopt};
  }

  auto falsified_by = [&](std::uint64_t i) -> std::optional<Situation> {
    Situation s = space.at(i);
    if (!consistent(s, arrangement)) return std::nullopt;
    if (quantified_truth(c, s, sel, QuantMode::Auto, Exec::Serial))
      return std::nullopt;
    return s;
  };

  if (use_parallel(exec, space.count())) {
    std::atomic<std::uint64_t> first{space.count()};
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < (std::int64_t)space.count(); ++i) {
      if ((std::uint64_t)i >= first.load(std::memory_order_relaxed)) continue;
      if (falsified_by((std::uint64_t)i)) {
        std::uint64_t seen = first.load();
        while ((std::uint64_t)i < seen &&
               !first.compare_exchange_weak(seen, (std::uint64_t)i)) {
        }
      }
    }
    if (first.load() == space.count()) return {true, std::nullopt};
    return {false, space.at(first.load())};
  }

  for (std::uint64_t i = 0; i < space.count(); ++i)
    if (auto witness = falsified_by(i)) return {false, witness};
  return {true, std::nullopt};
}

Player wn_ars(const Cirquent& c, const Run& run, Exec exec) {
  Legality legality = legal_position_ars(c, run);
  if (!legality.legal) return opponent(legality.offender);
  return accomplished(c, run, exec).accomplished ? Player::Machine
                                                 : Player::Environment;
}

}  // namespace cirq
