// Benchmark comparing the serial reference kernels with their OpenMP
// counterparts on scaled-up instances: situation sweeps (accomplished),
// interpretation sweeps (weak validity), and metaselection sweeps (true_col).
#include <chrono>
#include <iostream>
#include <random>

#include "cirq/formula.hpp"
#include "cirq/solve.hpp"

using namespace cirq;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// k conjoined matched resource pairs: and over or(P, ~P) gates. With each
// gate's own pair allocated, every consistent situation satisfies every
// conjunct, so the accomplished check sweeps the whole situation space.
Cirquent paired_cirquent(int k) {
  CirquentDoc doc;
  int next = 1;
  std::vector<NodeId> gates;
  std::vector<NodeId> pos, neg;
  for (int i = 0; i < k; ++i) {
    doc.nodes.push_back({next, Literal{"P", false}});
    pos.push_back(next++);
    doc.nodes.push_back({next, Literal{"P", true}});
    neg.push_back(next++);
  }
  for (int i = 0; i < k; ++i) {
    doc.nodes.push_back({next, GateKind::ParOr});
    doc.edges.emplace_back(next, pos[i]);
    doc.edges.emplace_back(next, neg[i]);
    gates.push_back(next++);
  }
  doc.nodes.push_back({next, GateKind::ParAnd});
  for (NodeId g : gates) doc.edges.emplace_back(next, g);
  return validate(doc);
}

Run matched_allocation_run(int k) {
  Run run;
  for (int i = 0; i < k; ++i)
    run.push_back({Player::Machine, alloc_text(2 * i + 1, 2 * i + 2)});
  return run;
}

// Deep and/or chain over k atoms, used for the interpretation sweep.
Cirquent chain_cirquent(int atoms) {
  std::mt19937 rng(7);
  CirquentDoc doc;
  int next = 1;
  std::vector<NodeId> leaves;
  for (int i = 0; i < atoms; ++i) {
    doc.nodes.push_back(
        {next, Literal{"p" + std::to_string(i + 1), (rng() & 1u) != 0}});
    leaves.push_back(next++);
  }
  while (leaves.size() > 1) {
    std::vector<NodeId> up;
    for (std::size_t i = 0; i + 1 < leaves.size(); i += 2) {
      GateKind kind = (rng() & 1u) ? GateKind::ParAnd : GateKind::ParOr;
      doc.nodes.push_back({next, kind});
      doc.edges.emplace_back(next, leaves[i]);
      doc.edges.emplace_back(next, leaves[i + 1]);
      up.push_back(next++);
    }
    if (leaves.size() % 2) up.push_back(leaves.back());
    leaves = up;
  }
  return validate(doc);
}

// Wide two-rank clustered cirquent for the metaselection sweep.
Cirquent clustered_cirquent(int groups) {
  CirquentDoc doc;
  int next = 1;
  std::vector<NodeId> ors;
  std::vector<NodeId> leaves_all;
  for (int g = 0; g < groups; ++g) {
    std::vector<NodeId> leaves;
    for (int i = 0; i < 3; ++i) {
      doc.nodes.push_back(
          {next, Literal{"q" + std::to_string((g * 3 + i) % 11 + 1),
                         (g + i) % 2 == 0}});
      leaves.push_back(next++);
    }
    doc.nodes.push_back({next, GateKind::ParOr});
    for (NodeId l : leaves) doc.edges.emplace_back(next, l);
    ors.push_back(next++);
  }
  doc.nodes.push_back({next, GateKind::ParAnd});
  for (NodeId o : ors) doc.edges.emplace_back(next, o);
  next++;
  // Pair up the or-gates into two-member clusters.
  doc.clusters.emplace();
  for (std::size_t i = 0; i + 1 < ors.size(); i += 2)
    doc.clusters->push_back({ors[i], {ors[i], ors[i + 1]}});
  if (ors.size() % 2)
    doc.clusters->push_back({ors.back(), {ors.back()}});
  doc.clusters->push_back({next - 1, {next - 1}});
  return validate(doc);
}

template <typename F>
double timed(const char* label, F&& f) {
  auto start = Clock::now();
  f();
  double ms = ms_since(start);
  std::cout << "  " << label << ": " << ms << " ms\n";
  return ms;
}

}  // namespace

int main() {
  std::cout << "workers: " << worker_count()
            << (openmp_enabled() ? " (OpenMP)" : " (no OpenMP)") << "\n";

  {
    int k = 12;  // 24 general ports -> 2^24 situations, no early exit
    Cirquent c = paired_cirquent(k);
    Run run = matched_allocation_run(k);
    std::cout << "accomplished sweep: " << 2 * k << " general ports, "
              << (1u << (2 * k)) << " situations\n";
    bool serial_result = false, parallel_result = false;
    double s = timed("serial  ", [&] {
      serial_result = accomplished(c, run, Exec::Serial).accomplished;
    });
    double p = timed("parallel", [&] {
      parallel_result = accomplished(c, run, Exec::Parallel).accomplished;
    });
    std::cout << "  agree: " << (serial_result == parallel_result ? "yes" : "NO")
              << ", speedup x" << (p > 0 ? s / p : 0) << "\n";
  }

  {
    Cirquent c = chain_cirquent(16);
    std::cout << "weak-validity sweep: 16 atoms, 65536 interpretations\n";
    bool serial_result = false, parallel_result = false;
    double s = timed("serial  ",
                     [&] { serial_result = weak_validity(c, Exec::Serial); });
    double p = timed("parallel", [&] {
      parallel_result = weak_validity(c, Exec::Parallel);
    });
    std::cout << "  agree: " << (serial_result == parallel_result ? "yes" : "NO")
              << ", speedup x" << (p > 0 ? s / p : 0) << "\n";
  }

  {
    Cirquent c = clustered_cirquent(10);
    Interpretation interp;
    for (int i = 1; i <= 11; ++i)
      interp.set_elementary("q" + std::to_string(i), i % 3 == 0);
    std::cout << "metaselection sweep: " << c.clusters().size()
              << " clusters\n";
    ResolutionState sel;
    auto ports = port_values_col(c, interp, {});
    bool serial_result = false, parallel_result = false;
    double s = timed("serial  ", [&] {
      serial_result =
          quantified_truth(c, ports, sel, QuantMode::FullEnum, Exec::Serial);
    });
    double p = timed("parallel", [&] {
      parallel_result =
          quantified_truth(c, ports, sel, QuantMode::FullEnum, Exec::Parallel);
    });
    std::cout << "  agree: " << (serial_result == parallel_result ? "yes" : "NO")
              << ", speedup x" << (p > 0 ? s / p : 0) << "\n";
  }
  return 0;
}
