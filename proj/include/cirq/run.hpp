#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cirq/model.hpp"

namespace cirq {

enum class Player : std::uint8_t { Machine, Environment };

inline Player opponent(Player p) {
  return p == Player::Machine ? Player::Environment : Player::Machine;
}
inline char player_letter(Player p) {
  return p == Player::Machine ? 'T' : 'B';
}

// A move is a finite keyboard string; structure ("c.i", "a.beta", "(a,b)") is
// read off contextually.
struct LabMove {
  Player player;
  std::string move;
  bool operator==(const LabMove&) const = default;
  auto operator<=>(const LabMove&) const = default;
};

using Run = std::vector<LabMove>;

// Structured views of a move string.
struct DottedMove {
  int head;            // cluster or port id
  std::string suffix;  // selection index or in-port move
};
std::optional<DottedMove> parse_dotted(const std::string& move);
// "(a,b)"
std::optional<std::pair<int, int>> parse_alloc(const std::string& move);
std::string alloc_text(int a, int b);
std::string dotted_text(int head, const std::string& suffix);

// Text format: "T 7.2; B 5.1; T (3,9)". Empty text is the empty run.
Run parse_run(const std::string& text);
std::string emit_run(const Run& run);

struct Legality {
  bool legal = true;
  std::size_t offending_index = 0;  // 1-based position of the first bad move
  Player offender = Player::Machine;
};

struct IllegalRunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Run with every label flipped.
Run negate_run(const Run& run);

// Keeps moves whose text starts with `prefix` and strips the prefix.
Run project(const Run& run, const std::string& prefix);

// Whether `delayed` is a `player`-delay of `run`: same move subsequences for
// both players, and `player`'s moves postponed only.
bool is_delay(const Run& delayed, const Run& run, Player player);

struct ResolutionState {
  // Selectional clusters only; value = last selected edge order number.
  std::map<ClusterId, int> resolved;
  std::optional<int> resolvent(ClusterId c) const {
    auto it = resolved.find(c);
    if (it == resolved.end()) return std::nullopt;
    return it->second;
  }
};

// Checks only the cluster-move conditions (forms 1a/1b plus the choice and
// sequential constraints). Used as the shared core of both regimes.
Legality check_cluster_moves(const Cirquent& c, const Run& run);

// Legality of a run of the game C^ in abstract resource semantics: cluster
// selections plus machine allocation moves pairing opposite general ports,
// monogamously.
Legality legal_position_ars(const Cirquent& c, const Run& run);

// Last selection per selectional cluster. Throws IllegalRunError if the
// cluster moves are themselves illegal.
ResolutionState resolution_state(const Cirquent& c, const Run& run);

// Allocation pairs appearing in the run. Throws IllegalRunError if
// monogamicity is violated.
std::set<std::pair<int, int>> induced_arrangement(const Run& run);

}  // namespace cirq
