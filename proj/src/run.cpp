#include "cirq/run.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cirq {

namespace {

// Positive integer in canonical decimal (no leading zeros, no sign).
std::optional<int> parse_id(const std::string& s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  if (s[0] == '0') return std::nullopt;
  for (char c : s)
    if (!std::isdigit((unsigned char)c)) return std::nullopt;
  return std::stoi(s);
}

bool keyboard_suffix(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace((unsigned char)c) || c == ';') return false;
  return true;
}

}  // namespace

std::optional<DottedMove> parse_dotted(const std::string& move) {
  auto dot = move.find('.');
  if (dot == std::string::npos) return std::nullopt;
  auto head = parse_id(move.substr(0, dot));
  std::string suffix = move.substr(dot + 1);
  if (!head || !keyboard_suffix(suffix)) return std::nullopt;
  return DottedMove{*head, suffix};
}

std::optional<std::pair<int, int>> parse_alloc(const std::string& move) {
  if (move.size() < 5 || move.front() != '(' || move.back() != ')')
    return std::nullopt;
  auto comma = move.find(',');
  if (comma == std::string::npos) return std::nullopt;
  auto a = parse_id(move.substr(1, comma - 1));
  auto b = parse_id(move.substr(comma + 1, move.size() - comma - 2));
  if (!a || !b) return std::nullopt;
  return std::make_pair(*a, *b);
}

std::string alloc_text(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string dotted_text(int head, const std::string& suffix) {
  return std::to_string(head) + "." + suffix;
}

Run parse_run(const std::string& text) {
  Run run;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    char p = text[pos];
    if (p != 'T' && p != 'B')
      throw ParseError("PARSE_ERROR: expected player letter T or B at offset " +
                       std::to_string(pos));
    ++pos;
    if (pos >= text.size() || text[pos] != ' ')
      throw ParseError("PARSE_ERROR: expected space after player letter");
    ++pos;
    std::size_t end = text.find(';', pos);
    std::string move = text.substr(
        pos, end == std::string::npos ? std::string::npos : end - pos);
    while (!move.empty() && std::isspace((unsigned char)move.back()))
      move.pop_back();
    if (move.empty() || !keyboard_suffix(move))
      throw ParseError("PARSE_ERROR: bad move at offset " +
                       std::to_string(pos));
    run.push_back(
        {p == 'T' ? Player::Machine : Player::Environment, std::move(move)});
    if (end == std::string::npos) break;
    pos = end + 1;
    skip_ws();
  }
  return run;
}

std::string emit_run(const Run& run) {
  std::ostringstream os;
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (i) os << "; ";
    os << player_letter(run[i].player) << ' ' << run[i].move;
  }
  return os.str();
}

Run negate_run(const Run& run) {
  Run out = run;
  for (LabMove& lm : out) lm.player = opponent(lm.player);
  return out;
}

Run project(const Run& run, const std::string& prefix) {
  Run out;
  for (const LabMove& lm : run)
    if (lm.move.size() > prefix.size() &&
        lm.move.compare(0, prefix.size(), prefix) == 0)
      out.push_back({lm.player, lm.move.substr(prefix.size())});
  return out;
}

bool is_delay(const Run& delayed, const Run& run, Player player) {
  for (Player p : {Player::Machine, Player::Environment}) {
    std::vector<std::string> a, b;
    for (const LabMove& lm : delayed)
      if (lm.player == p) a.push_back(lm.move);
    for (const LabMove& lm : run)
      if (lm.player == p) b.push_back(lm.move);
    if (a != b) return false;
  }
  // Positions of the n-th player move in each run.
  auto positions = [](const Run& r, Player p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i].player == p) out.push_back(i);
    return out;
  };
  auto mine_g = positions(run, player);
  auto theirs_g = positions(run, opponent(player));
  auto mine_d = positions(delayed, player);
  auto theirs_d = positions(delayed, opponent(player));
  for (std::size_t n = 0; n < mine_g.size(); ++n)
    for (std::size_t k = 0; k < theirs_g.size(); ++k)
      if (mine_g[n] > theirs_g[k] && !(mine_d[n] > theirs_d[k])) return false;
  return true;
}

namespace {

struct ClusterScan {
  std::map<ClusterId, int> last;      // last selection per cluster
  std::map<ClusterId, int> uses;      // number of selections per cluster
};

// Applies one cluster-selection move; returns false if it violates the forms
// or the choice/sequential conditions.
bool apply_cluster_move(const Cirquent& c, const LabMove& lm,
                        ClusterScan& scan) {
  auto d = parse_dotted(lm.move);
  if (!d) return false;
  const Cluster* cl = c.cluster(d->head);
  if (!cl) return false;
  GateKind kind = c.cluster_kind(d->head);
  if (!is_selectional(kind)) return false;
  Player allowed =
      is_disjunctive(kind) ? Player::Machine : Player::Environment;
  if (lm.player != allowed) return false;
  int i;
  {
    // selection index: canonical positive decimal
    const std::string& s = d->suffix;
    if (s.empty() || s[0] == '0' || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(),
                     [](unsigned char ch) { return std::isdigit(ch); }))
      return false;
    i = std::stoi(s);
  }
  if (i < 1 || i > c.cluster_outdegree(d->head)) return false;
  if (is_choice(kind) && scan.uses[d->head] >= 1) return false;
  if (is_sequential(kind)) {
    auto it = scan.last.find(d->head);
    if (it != scan.last.end() && i <= it->second) return false;
  }
  scan.last[d->head] = i;
  scan.uses[d->head]++;
  return true;
}

bool is_cluster_move(const Cirquent& c, const std::string& move) {
  auto d = parse_dotted(move);
  return d && c.cluster(d->head) != nullptr;
}

}  // namespace

Legality check_cluster_moves(const Cirquent& c, const Run& run) {
  ClusterScan scan;
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (!apply_cluster_move(c, run[i], scan))
      return {false, i + 1, run[i].player};
  }
  return {};
}

Legality legal_position_ars(const Cirquent& c, const Run& run) {
  ClusterScan scan;
  std::set<int> used;
  for (std::size_t i = 0; i < run.size(); ++i) {
    const LabMove& lm = run[i];
    bool ok = false;
    if (auto alloc = parse_alloc(lm.move)) {
      auto [a, b] = *alloc;
      if (lm.player == Player::Machine && c.has_node(a) && c.has_node(b) &&
          c.node(a).is_port() && c.node(b).is_port()) {
        const Literal& la = c.node(a).literal();
        const Literal& lb = c.node(b).literal();
        ok = la.general() && lb.general() && !la.negated && lb.negated &&
             la.atom == lb.atom && !used.count(a) && !used.count(b);
        if (ok) {
          used.insert(a);
          used.insert(b);
        }
      }
    } else {
      ok = apply_cluster_move(c, lm, scan);
    }
    if (!ok) return {false, i + 1, lm.player};
  }
  return {};
}

ResolutionState resolution_state(const Cirquent& c, const Run& run) {
  ClusterScan scan;
  for (std::size_t i = 0; i < run.size(); ++i) {
    const LabMove& lm = run[i];
    if (!is_cluster_move(c, lm.move)) continue;  // port moves, allocations
    if (!apply_cluster_move(c, lm, scan))
      throw IllegalRunError("ILLEGAL_RUN: move " + std::to_string(i + 1) +
                            " '" + lm.move + "'");
  }
  ResolutionState state;
  state.resolved = std::move(scan.last);
  return state;
}

std::set<std::pair<int, int>> induced_arrangement(const Run& run) {
  std::set<std::pair<int, int>> out;
  std::set<int> first, second;
  for (const LabMove& lm : run) {
    if (lm.player != Player::Machine) continue;
    auto alloc = parse_alloc(lm.move);
    if (!alloc) continue;
    if (!first.insert(alloc->first).second ||
        !second.insert(alloc->second).second)
      throw IllegalRunError("ILLEGAL_RUN: port reused in allocation " +
                            lm.move);
    out.insert(*alloc);
  }
  return out;
}

}  // namespace cirq
