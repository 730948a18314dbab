#pragma once

#include <cstdint>
#include <optional>

#include "cirq/eval_col.hpp"

namespace cirq {

// Port id -> truth value. Elementary ports of one atom are tied together;
// general ports are independent.
using Situation = std::map<NodeId, bool>;
using Arrangement = std::set<std::pair<int, int>>;

// The situation space of a cirquent, enumerable without materializing:
// lexicographic over (sorted elementary atoms, then general ports ascending),
// true before false.
class SituationSpace {
 public:
  explicit SituationSpace(const Cirquent& c);
  std::uint64_t count() const { return count_; }
  Situation at(std::uint64_t index) const;

 private:
  const Cirquent* c_;
  std::vector<std::string> atoms_;
  std::vector<NodeId> general_ports_;
  std::uint64_t count_;
};

// All situations in enumeration order.
std::vector<Situation> enumerate_situations(const Cirquent& c);

bool consistent(const Situation& s, const Arrangement& a);

// Truth of C w.r.t. (situation, run): ports read from the situation, gates as
// in the ranked semantics. Throws IllegalRunError on ARS-illegal runs.
bool true_ars(const Cirquent& c, const Situation& s, const Run& run,
              Exec exec = Exec::Auto);

struct Accomplishment {
  bool accomplished = false;
  // First falsifying consistent situation in enumeration order, if any.
  std::optional<Situation> witness;
};

// Whether every situation consistent with the run's induced arrangement makes
// C true.
Accomplishment accomplished(const Cirquent& c, const Run& run,
                            Exec exec = Exec::Auto);

// Winner of a run of C^: the offender loses illegal runs; legal runs are won
// by Machine iff accomplished.
Player wn_ars(const Cirquent& c, const Run& run, Exec exec = Exec::Auto);

}  // namespace cirq
