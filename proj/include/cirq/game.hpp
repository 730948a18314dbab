#pragma once

#include <map>
#include <string>
#include <vector>

#include "cirq/run.hpp"

namespace cirq {

// An explicitly tabulated finite game: a prefix-closed set of legal runs and
// a winner for each. Illegal runs are lost by whoever made the first illegal
// move.
class ExplicitGame {
 public:
  ExplicitGame();  // the elementary game won by Environment (no legal moves)
  // Throws if `legal` is not prefix-closed, omits the empty run, or `won` is
  // not total on it.
  ExplicitGame(std::vector<Run> legal, std::map<Run, Player> won);

  static ExplicitGame elementary(Player winner);

  const std::vector<Run>& legal_runs() const { return legal_; }
  bool is_legal(const Run& run) const { return legal_set_.count(run) != 0; }
  // Whether appending one more labmove keeps the run legal.
  bool move_legal(const Run& position, const LabMove& lm) const;
  Player winner(const Run& run) const;  // total: extends over illegal runs
  bool elementary_game() const { return legal_.size() == 1; }

  // All move strings occurring in legal runs.
  std::vector<std::string> move_universe() const;

  bool operator==(const ExplicitGame& o) const {
    return legal_ == o.legal_ && won_ == o.won_;
  }

 private:
  std::vector<Run> legal_;  // sorted
  std::map<Run, Player> won_;
  std::map<Run, int> legal_set_;
};

ExplicitGame negate_game(const ExplicitGame& g);

// Checks the two staticity conditions over all pairs drawn from the legal
// runs and their one-step illegal extensions.
bool is_static(const ExplicitGame& g);

// A game whose legal runs are <>, <pm>, or <pm, ~pn>: the empty run is won by
// Machine, a lone move by its mover, and a two-move run by the win table
// (order-insensitive).
struct NiceGame {
  std::vector<std::string> alphabet;
  // (machine move, environment move) -> winner; pairs absent from the map are
  // won by Environment.
  std::map<std::pair<std::string, std::string>, Player> win;

  ExplicitGame to_explicit() const;
};

class Interpretation {
 public:
  Interpretation() = default;

  void set_elementary(const std::string& atom, bool value);
  void set_general(const std::string& atom, ExplicitGame game);

  // Unlisted elementary atoms default to false; unlisted general atoms to the
  // empty-alphabet nice game.
  bool elementary_value(const Literal& lit) const;
  // The game interpreting the literal (negated literals get the negation).
  const ExplicitGame& general_game(const Literal& lit) const;

  const std::map<std::string, bool>& elementary() const { return elem_; }
  const std::map<std::string, ExplicitGame>& general() const { return gen_; }

 private:
  std::map<std::string, bool> elem_;
  std::map<std::string, ExplicitGame> gen_;
  mutable std::map<std::string, ExplicitGame> negated_cache_;
};

// {"elementary": {"p": true}, "general": {"P": {"alphabet": [...],
//  "win": {"m|n": "T"}}}}
Interpretation load_interpretation_json(const std::string& text);
std::string emit_interpretation_json(const Interpretation& interp);

}  // namespace cirq
