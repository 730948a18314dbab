#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cirq/corpus.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace cirq;

namespace {

Cirquent load(const std::string& name) {
  return load_corpus_cirquent(corpus_dir(), name);
}

Run run_of(const std::string& text) { return parse_run(text); }

std::vector<std::string> gamma2_moves() {
  return {"(1,5)", "(2,7)", "(3,6)", "(4,8)"};
}

}  // namespace

TEST_CASE("play scheduler basics") {
  Cirquent fig20 = load("fig20.json");
  auto machine = make_script(gamma2_moves());
  auto env = make_silent();
  PlayTranscript t = play(fig20, *machine, *env, Regime::Ars);
  CHECK(t.verdict == Player::Machine);
  CHECK(emit_run(t.run) == "T (1,5); T (2,7); T (3,6); T (4,8)");

  auto silent = make_silent();
  auto silent2 = make_silent();
  PlayTranscript empty = play(fig20, *silent, *silent2, Regime::Ars);
  CHECK(empty.run.empty());
  CHECK(empty.verdict == Player::Environment);

  Cirquent plain = load("notp_or_p.json");
  Interpretation interp;
  auto silent3 = make_silent();
  auto silent4 = make_silent();
  PlayTranscript moveless =
      play(plain, *silent3, *silent4, Regime::Col, &interp);
  CHECK(moveless.verdict == Player::Machine);
}

TEST_CASE("machine moves come before environment moves within a step") {
  Cirquent fig3r = load("fig3_right.json");
  auto machine = make_script({"2.1"});
  auto env = make_script({"1.2"});
  Interpretation interp;
  PlayTranscript t = play(fig3r, *machine, *env, Regime::Col, &interp);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0].player == Player::Machine);
  CHECK(t.steps[0].step == t.steps[1].step);
}

TEST_CASE("uniformize: silence in, silence out") {
  Cirquent fig20 = load("fig20.json");
  auto u = uniformize(make_silent(), fig20);
  u->reset();
  CHECK_FALSE(u->next({}).has_value());
}

TEST_CASE("uniformize forwards selections verbatim") {
  Cirquent fig7 = load("fig7.json");
  auto u = uniformize(make_script({"7.2"}), fig7);
  u->reset();
  CHECK(u->next({}) == "7.2");
}

TEST_CASE("uniformize plays copycat across allocated ports") {
  Cirquent fig20 = load("fig20.json");
  auto u = uniformize(make_script(gamma2_moves()), fig20);
  auto env = make_script({"1.a", "5.b"});
  Interpretation interp;
  NiceGame nice{{"a", "b"}, {{{"a", "a"}, Player::Machine}}};
  interp.set_general("P", nice.to_explicit());
  PlayTranscript t = play(fig20, *u, *env, Regime::Col, &interp);
  // the machine must have mirrored 1.a into port 5 and 5.b into port 1
  bool mirrored_a = false, mirrored_b = false;
  for (const LabMove& lm : t.run) {
    if (lm.player == Player::Machine && lm.move == "5.a") mirrored_a = true;
    if (lm.player == Player::Machine && lm.move == "1.b") mirrored_b = true;
  }
  CHECK(mirrored_a);
  CHECK(mirrored_b);
  // copycat invariant: each allocated pair's projections are delays
  for (auto [a, b] : {std::pair{1, 5}, {2, 7}, {3, 6}, {4, 8}}) {
    Run pa = project(t.run, std::to_string(a) + ".");
    Run pb = project(t.run, std::to_string(b) + ".");
    CHECK(is_delay(pa, negate_run(pb), Player::Machine));
  }
}

TEST_CASE("uniformized solver strategy wins across a nice family") {
  Cirquent fig20 = load("fig20.json");
  SolveResult solved = solve_ars(fig20);
  REQUIRE(solved.winner == Player::Machine);
  for (const Interpretation& interp : nice_interpretation_family(fig20, 2)) {
    auto u = uniformize(make_solver_machine(solved.solver), fig20);
    std::string failure;
    bool ok = undefeated_by_exhaustive_env(fig20, u, Regime::Col, &interp, 2,
                                           &failure);
    CHECK_MESSAGE(ok, "beaten by: ", failure);
  }
}

TEST_CASE("deuniformize: silence means no allocations and a lost fig20") {
  Cirquent fig20 = load("fig20.json");
  auto m = deuniformize(make_silent(), fig20);
  auto env = make_silent();
  PlayTranscript t = play(fig20, *m, *env, Regime::Ars);
  CHECK(induced_arrangement(t.run).empty());
  CHECK(t.verdict == Player::Environment);
}

TEST_CASE("deuniformize forwards selections") {
  Cirquent fig7 = load("fig7.json");
  auto m = deuniformize(make_script({"7.2"}), fig7);
  m->reset();
  CHECK(m->next({}) == "7.2");
}

TEST_CASE("deuniformize detects copycat matches as allocations") {
  Cirquent fig20 = load("fig20.json");
  // a scripted uniform player answering the smart environment: in each pair
  // (a,b) it answers a's challenge from b and vice versa
  auto u = make_script({"5.1", "1.5", "7.2", "2.7", "6.3", "3.6", "8.4",
                        "4.8"});
  auto m = deuniformize(u, fig20);
  auto env = make_silent();
  PlayTranscript t = play(fig20, *m, *env, Regime::Ars);
  Arrangement arrangement = induced_arrangement(t.run);
  CHECK(arrangement == Arrangement{{1, 5}, {2, 7}, {3, 6}, {4, 8}});
  CHECK(t.verdict == Player::Machine);
}

TEST_CASE("refute needs an unaccomplishable cirquent") {
  CHECK_THROWS_AS(refute(load("fig20.json"), make_silent()), StrategyError);
}

TEST_CASE("refute defeats the silent machine on fig21") {
  Cirquent fig21 = load("fig21.json");
  RefuteResult result = refute(fig21, make_silent());
  CHECK(result.transcript.verdict == Player::Environment);
}

TEST_CASE("refute on ~p cor p against the always-left machine") {
  Cirquent c = load("notp_cor_p.json");
  RefuteResult result = refute(c, make_script({"3.1"}));
  CHECK(result.transcript.verdict == Player::Environment);
  // the machine picked ~p, so the falsifying construction sends p to true
  CHECK(result.interp.elementary_value({"p", false}));
  // and the transcript contains the machine's selection
  bool selected = false;
  for (const LabMove& lm : result.transcript.run)
    if (lm.player == Player::Machine && lm.move == "3.1") selected = true;
  CHECK(selected);
}

TEST_CASE("refute defeats the canned machine family on the env-win corpus") {
  for (const char* name :
       {"fig21.json", "fig22_left.json", "fig5_right.json",
        "notp_cor_p.json", "fig18_right.json"}) {
    Cirquent c = load(name);
    for (StrategyPtr machine :
         {make_silent(), make_greedy_machine(c), make_copycat_machine(c)}) {
      RefuteResult result = refute(c, machine);
      CHECK_MESSAGE(result.transcript.verdict == Player::Environment,
                    "machine survived on ", name);
    }
  }
}

TEST_CASE("selectional behavior is preserved through uniformize") {
  Cirquent fig5 = load("fig5_left.json");
  SolveResult solved = solve_ars(fig5);
  REQUIRE(solved.winner == Player::Machine);
  auto ars_machine = make_solver_machine(solved.solver);
  auto env1 = make_silent();
  PlayTranscript ars_play = play(fig5, *ars_machine, *env1, Regime::Ars);

  auto u = uniformize(make_solver_machine(solved.solver), fig5);
  auto env2 = make_silent();
  Interpretation interp;
  PlayTranscript col_play = play(fig5, *u, *env2, Regime::Col, &interp);

  auto selections = [](const Run& run) {
    std::vector<std::string> out;
    for (const LabMove& lm : run)
      if (!parse_alloc(lm.move)) out.push_back(lm.move);
    return out;
  };
  CHECK(selections(ars_play.run) == selections(col_play.run));
  CHECK(col_play.verdict == Player::Machine);
}

TEST_CASE("transformer round trip on random toggling-free cirquents") {
  std::mt19937 rng(701);
  cirqtest::GenOptions opt;
  opt.allow_toggling = false;
  opt.allow_general = true;
  opt.max_nodes = 10;
  int machine_side = 0, env_side = 0;
  while (machine_side + env_side < 25) {
    Cirquent c = cirqtest::random_cirquent(rng, opt);
    if (c.atoms(false).size() > 4) continue;
    SolveResult solved = solve_ars(c);
    if (solved.winner == Player::Machine) {
      std::vector<Interpretation> family;
      if (c.has_general_ports()) {
        family = nice_interpretation_family(c, 2);
      } else {
        for (std::uint64_t mask = 0;
             mask < (1ull << c.atoms(false).size()); ++mask) {
          Interpretation interp;
          auto atoms = c.atoms(false);
          for (std::size_t i = 0; i < atoms.size(); ++i)
            interp.set_elementary(atoms[i], (mask >> i) & 1u);
          family.push_back(std::move(interp));
        }
      }
      for (const Interpretation& interp : family) {
        auto u = uniformize(make_solver_machine(solved.solver), c);
        std::string failure;
        bool ok =
            undefeated_by_exhaustive_env(c, u, Regime::Col, &interp, 2,
                                         &failure);
        CHECK_MESSAGE(ok, "beaten on ", emit_json(c), " by ", failure);
        if (!ok) return;
      }
      ++machine_side;
    } else {
      for (StrategyPtr machine :
           {make_silent(), make_greedy_machine(c), make_copycat_machine(c)}) {
        RefuteResult result = refute(c, machine, solved);
        CHECK(result.transcript.verdict == Player::Environment);
      }
      ++env_side;
    }
  }
  CHECK(machine_side + env_side == 25);
}
