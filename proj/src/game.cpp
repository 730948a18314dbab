#include "cirq/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace cirq {

using nlohmann::json;

ExplicitGame::ExplicitGame() : ExplicitGame({Run{}}, {{Run{}, Player::Environment}}) {}

ExplicitGame::ExplicitGame(std::vector<Run> legal, std::map<Run, Player> won)
    : legal_(std::move(legal)), won_(std::move(won)) {
  std::sort(legal_.begin(), legal_.end());
  legal_.erase(std::unique(legal_.begin(), legal_.end()), legal_.end());
  for (const Run& r : legal_) legal_set_[r] = 1;
  if (!legal_set_.count(Run{}))
    throw std::invalid_argument("legal run set must contain the empty run");
  for (const Run& r : legal_) {
    if (!r.empty()) {
      Run prefix(r.begin(), r.end() - 1);
      if (!legal_set_.count(prefix))
        throw std::invalid_argument("legal run set not prefix-closed at <" +
                                    emit_run(r) + ">");
    }
    if (!won_.count(r))
      throw std::invalid_argument("winner missing for legal run <" +
                                  emit_run(r) + ">");
  }
}

ExplicitGame ExplicitGame::elementary(Player winner) {
  return ExplicitGame({Run{}}, {{Run{}, winner}});
}

bool ExplicitGame::move_legal(const Run& position, const LabMove& lm) const {
  Run next = position;
  next.push_back(lm);
  return is_legal(next);
}

Player ExplicitGame::winner(const Run& run) const {
  auto it = won_.find(run);
  if (it != won_.end()) return it->second;
  // First illegal move loses.
  Run prefix;
  for (const LabMove& lm : run) {
    prefix.push_back(lm);
    if (!legal_set_.count(prefix)) return opponent(lm.player);
  }
  throw std::logic_error("legal run without a winner");
}

std::vector<std::string> ExplicitGame::move_universe() const {
  std::set<std::string> moves;
  for (const Run& r : legal_)
    for (const LabMove& lm : r) moves.insert(lm.move);
  return {moves.begin(), moves.end()};
}

ExplicitGame negate_game(const ExplicitGame& g) {
  std::vector<Run> legal;
  std::map<Run, Player> won;
  for (const Run& r : g.legal_runs()) {
    Run flipped = negate_run(r);
    won[flipped] = opponent(g.winner(r));
    legal.push_back(std::move(flipped));
  }
  return ExplicitGame(std::move(legal), std::move(won));
}

bool is_static(const ExplicitGame& g) {
  // Legal runs plus their one-step extensions over the game's move universe.
  std::vector<Run> runs = g.legal_runs();
  auto universe = g.move_universe();
  std::set<Run> seen(runs.begin(), runs.end());
  for (const Run& r : g.legal_runs())
    for (Player p : {Player::Machine, Player::Environment})
      for (const std::string& m : universe) {
        Run ext = r;
        ext.push_back({p, m});
        if (seen.insert(ext).second) runs.push_back(ext);
      }

  auto offender = [&](const Run& r) -> std::optional<Player> {
    Run prefix;
    for (const LabMove& lm : r) {
      prefix.push_back(lm);
      if (!g.is_legal(prefix)) return lm.player;
    }
    return std::nullopt;
  };

  for (Player p : {Player::Machine, Player::Environment}) {
    for (const Run& gamma : runs) {
      auto gamma_off = offender(gamma);
      bool gamma_p_legal = !(gamma_off && *gamma_off == p);
      bool gamma_p_won = g.winner(gamma) == p;
      for (const Run& upsilon : runs) {
        if (!is_delay(upsilon, gamma, p)) continue;
        auto ups_off = offender(upsilon);
        bool ups_p_legal = !(ups_off && *ups_off == p);
        if (gamma_p_legal && !ups_p_legal) return false;
        if (gamma_p_won && g.winner(upsilon) != p) return false;
      }
    }
  }
  return true;
}

ExplicitGame NiceGame::to_explicit() const {
  std::vector<Run> legal;
  std::map<Run, Player> won;
  auto add = [&](Run r, Player w) {
    won[r] = w;
    legal.push_back(std::move(r));
  };
  add({}, Player::Machine);
  for (const std::string& m : alphabet) {
    add({{Player::Machine, m}}, Player::Machine);
    add({{Player::Environment, m}}, Player::Environment);
  }
  for (const std::string& m : alphabet)
    for (const std::string& n : alphabet) {
      auto it = win.find({m, n});
      Player w = it == win.end() ? Player::Environment : it->second;
      add({{Player::Machine, m}, {Player::Environment, n}}, w);
      add({{Player::Environment, n}, {Player::Machine, m}}, w);
    }
  return ExplicitGame(std::move(legal), std::move(won));
}

void Interpretation::set_elementary(const std::string& atom, bool value) {
  elem_[atom] = value;
}

void Interpretation::set_general(const std::string& atom, ExplicitGame game) {
  gen_[atom] = std::move(game);
  negated_cache_.erase(atom);
}

bool Interpretation::elementary_value(const Literal& lit) const {
  auto it = elem_.find(lit.atom);
  bool value = it != elem_.end() && it->second;
  return lit.negated ? !value : value;
}

const ExplicitGame& Interpretation::general_game(const Literal& lit) const {
  static const ExplicitGame empty_nice = NiceGame{}.to_explicit();
  const ExplicitGame* base = &empty_nice;
  auto it = gen_.find(lit.atom);
  if (it != gen_.end()) base = &it->second;
  if (!lit.negated) return *base;
  auto cached = negated_cache_.find(lit.atom);
  if (cached == negated_cache_.end())
    cached = negated_cache_.emplace(lit.atom, negate_game(*base)).first;
  return cached->second;
}

Interpretation load_interpretation_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("PARSE_ERROR: ") + e.what());
  }
  Interpretation interp;
  try {
    if (j.contains("elementary"))
      for (auto& [atom, value] : j.at("elementary").items())
        interp.set_elementary(atom, value.get<bool>());
    if (j.contains("general")) {
      for (auto& [atom, spec] : j.at("general").items()) {
        NiceGame nice;
        nice.alphabet = spec.at("alphabet").get<std::vector<std::string>>();
        if (spec.contains("win")) {
          for (auto& [key, winner] : spec.at("win").items()) {
            auto bar = key.find('|');
            if (bar == std::string::npos)
              throw ParseError("PARSE_ERROR: win key must be 'm|n'");
            std::string w = winner.get<std::string>();
            nice.win[{key.substr(0, bar), key.substr(bar + 1)}] =
                w == "T" ? Player::Machine : Player::Environment;
          }
        }
        interp.set_general(atom, nice.to_explicit());
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("PARSE_ERROR: ") + e.what());
  }
  return interp;
}

std::string emit_interpretation_json(const Interpretation& interp) {
  json j;
  j["elementary"] = json::object();
  for (auto& [atom, value] : interp.elementary()) j["elementary"][atom] = value;
  j["general"] = json::object();
  for (auto& [atom, game] : interp.general()) {
    // Emits the nice-game shape; two-move wins only.
    std::set<std::string> alphabet;
    json win = json::object();
    for (const Run& r : game.legal_runs()) {
      for (const LabMove& lm : r) alphabet.insert(lm.move);
      if (r.size() == 2 && r[0].player == Player::Machine) {
        win[r[0].move + "|" + r[1].move] =
            game.winner(r) == Player::Machine ? "T" : "B";
      }
    }
    j["general"][atom] = {
        {"alphabet", std::vector<std::string>(alphabet.begin(), alphabet.end())},
        {"win", win}};
  }
  return j.dump(2) + "\n";
}

}  // namespace cirq
