#pragma once

#include <map>

#include "cirq/exec.hpp"
#include "cirq/game.hpp"
#include "cirq/run.hpp"

namespace cirq {

// One partial map per rank (index 0 = rank 1, the lowest), each from the
// rank's clusters to selected edge order numbers.
using Metaselection = std::vector<std::map<ClusterId, int>>;

Legality legal_position_col(const Cirquent& c, const Interpretation& interp,
                            const Run& run);

// Per-port truth contributions: elementary ports from the interpretation,
// general ports by whether the projected run is won in the port's game.
std::map<NodeId, bool> port_values_col(const Cirquent& c,
                                       const Interpretation& interp,
                                       const Run& run);

// Bottom-up gate evaluation given fixed port values, the run's resolution of
// selectional clusters, and resolved parallel clusters. Unresolved
// conjunctive gates are true, unresolved disjunctive gates false.
bool eval_gates(const Cirquent& c, const std::map<NodeId, bool>& port_values,
                const ResolutionState& sel,
                const std::map<ClusterId, int>& parallel_resolved);

bool metatrue(const Cirquent& c, const Interpretation& interp, const Run& run,
              const Metaselection& f);

// How the alternating quantifier block over metaselections is evaluated.
//  FullEnum  - every partial i-metaselection, rank by rank.
//  TotalEnum - only metaselections total on clusters of outdegree >= 1
//              (childless clusters stay undefined).
//  Auto      - classical-evaluation shortcut when every parallel cluster is a
//              singleton, FullEnum otherwise.
enum class QuantMode { FullEnum, TotalEnum, Auto };

bool quantified_truth(const Cirquent& c,
                      const std::map<NodeId, bool>& port_values,
                      const ResolutionState& sel,
                      QuantMode mode = QuantMode::Auto,
                      Exec exec = Exec::Auto);

// Truth of C w.r.t. (interp, run): exists/forall over metaselections on
// disjunctive/conjunctive ranks, lowest rank first. Throws IllegalRunError on
// illegal runs.
bool true_col(const Cirquent& c, const Interpretation& interp, const Run& run,
              Exec exec = Exec::Auto);

// Winner of the run: an illegal run is lost by the offender, a legal one is
// won by Machine iff C is true.
Player wn(const Cirquent& c, const Interpretation& interp, const Run& run,
          Exec exec = Exec::Auto);

}  // namespace cirq
