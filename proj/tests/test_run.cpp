#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cirq/corpus.hpp"
#include "cirq/eval_col.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace cirq;

namespace {

Cirquent fig7() { return load_corpus_cirquent(corpus_dir(), "fig7.json"); }

Run run_of(const std::string& text) { return parse_run(text); }

}  // namespace

TEST_CASE("run text round trip") {
  Run r = run_of("T 8.1; T 7.2");
  REQUIRE(r.size() == 2);
  CHECK(r[0] == LabMove{Player::Machine, "8.1"});
  CHECK(emit_run(r) == "T 8.1; T 7.2");

  CHECK(run_of("").empty());
  Run alloc = run_of("T (1,5); T (2,7)");
  REQUIRE(alloc.size() == 2);
  CHECK(parse_alloc(alloc[0].move) == std::pair{1, 5});
  CHECK(parse_alloc(alloc[1].move) == std::pair{2, 7});

  Run mixed = run_of("T 7.2; B 5.1; T (3,9); B 4.hello");
  CHECK(emit_run(mixed) == "T 7.2; B 5.1; T (3,9); B 4.hello");
  CHECK(parse_dotted("4.hello")->suffix == "hello");

  CHECK_THROWS_AS(run_of("X 1.1"), ParseError);
  CHECK_THROWS_AS(run_of("T"), ParseError);
  CHECK_THROWS_AS(run_of("T 1.1;;"), ParseError);
}

TEST_CASE("negate_run flips labels and is an involution") {
  Run r = run_of("T m.1; B n.2");
  Run flipped = negate_run(r);
  CHECK(flipped[0].player == Player::Environment);
  CHECK(flipped[1].player == Player::Machine);
  CHECK(negate_run(flipped) == r);
  CHECK(negate_run(Run{}).empty());

  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    Run random;
    for (int k = std::uniform_int_distribution<>(0, 8)(rng); k > 0; --k)
      random.push_back({rng() & 1u ? Player::Machine : Player::Environment,
                        std::to_string(rng() % 9 + 1)});
    CHECK(negate_run(negate_run(random)) == random);
  }
}

TEST_CASE("project keeps prefixed moves and strips the prefix") {
  Run gamma = run_of("B 3.m; T 4.n; B 3.k");
  Run projected = project(gamma, "3.");
  REQUIRE(projected.size() == 2);
  CHECK(projected[0] == LabMove{Player::Environment, "m"});
  CHECK(projected[1] == LabMove{Player::Environment, "k"});
  CHECK(project(Run{}, "3.").empty());
  // allocations never match a dotted prefix
  CHECK(project(run_of("T (3,9)"), "3.").empty());
}

TEST_CASE("delay relation examples") {
  CHECK(is_delay(run_of("T x; B a"), run_of("T x; B a"), Player::Machine));

  Run upsilon = run_of("B a; T x; B b");
  Run gamma = run_of("T x; B a; B b");
  CHECK(is_delay(upsilon, gamma, Player::Machine));
  CHECK_FALSE(is_delay(gamma, upsilon, Player::Machine));

  CHECK_FALSE(is_delay(run_of("T x"), run_of("T y"), Player::Machine));
  CHECK_FALSE(is_delay(run_of("T x"), run_of("T x; B a"), Player::Machine));
}

TEST_CASE("moving a move rightward past opponent moves gives a delay") {
  std::mt19937 rng(23);
  int produced = 0;
  while (produced < 500) {
    Run gamma;
    int len = std::uniform_int_distribution<>(2, 10)(rng);
    for (int k = 0; k < len; ++k)
      gamma.push_back({rng() & 1u ? Player::Machine : Player::Environment,
                       "m" + std::to_string(rng() % 5)});
    Player p = rng() & 1u ? Player::Machine : Player::Environment;
    // pick a p-labeled move followed by an opponent move and swap rightward
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
      if (gamma[i].player == p && gamma[i + 1].player == opponent(p))
        spots.push_back(i);
    if (spots.empty()) continue;
    std::size_t at =
        spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(
            rng)];
    Run delayed = gamma;
    std::swap(delayed[at], delayed[at + 1]);
    CHECK(is_delay(delayed, gamma, p));
    ++produced;
  }
}

TEST_CASE("legality on fig7") {
  Cirquent c = fig7();
  Interpretation empty;
  CHECK(legal_position_col(c, empty, run_of("T 8.1; T 7.2")).legal);

  Legality bad = legal_position_col(c, empty, run_of("T 8.1; T 9.2"));
  CHECK_FALSE(bad.legal);
  CHECK(bad.offending_index == 2);
  CHECK(bad.offender == Player::Machine);

  Legality env = legal_position_col(c, empty, run_of("B 7.1"));
  CHECK_FALSE(env.legal);
  CHECK(env.offender == Player::Environment);

  // out-of-range selection index
  CHECK_FALSE(legal_position_col(c, empty, run_of("T 7.3")).legal);
  CHECK_FALSE(legal_position_col(c, empty, run_of("T 7.0")).legal);
  // repeated choice
  CHECK_FALSE(legal_position_col(c, empty, run_of("T 7.1; T 7.2")).legal);
}

TEST_CASE("legality is interpretation-independent on elementary cirquents") {
  Cirquent c = fig7();
  Interpretation a, b;
  for (int i = 1; i <= 6; ++i) a.set_elementary("p" + std::to_string(i), true);
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Run r = cirqtest::random_legal_run(rng, c, rng() % 4);
    if (rng() & 1u) r.push_back({Player::Machine, "9.1"});  // maybe illegal
    Legality la = legal_position_col(c, a, r);
    Legality lb = legal_position_col(c, b, r);
    CHECK(la.legal == lb.legal);
    CHECK(la.offending_index == lb.offending_index);
  }
}

TEST_CASE("sequential moves must increase, toggling may revisit") {
  CirquentDoc doc;
  doc.nodes = {{1, GateKind::SeqOr}, {2, Literal{"p", false}},
               {3, Literal{"q", false}}, {4, Literal{"r", false}}};
  doc.edges = {{1, 2}, {1, 3}, {1, 4}};
  Cirquent seq = validate(doc);
  Interpretation empty;
  CHECK(legal_position_col(seq, empty, run_of("T 1.1; T 1.3")).legal);
  CHECK_FALSE(legal_position_col(seq, empty, run_of("T 1.2; T 1.2")).legal);
  CHECK_FALSE(legal_position_col(seq, empty, run_of("T 1.3; T 1.1")).legal);

  doc.nodes[0].payload = GateKind::TogOr;
  Cirquent tog = validate(doc);
  CHECK(legal_position_col(tog, empty, run_of("T 1.1; T 1.2; T 1.1")).legal);
  ResolutionState state =
      resolution_state(tog, run_of("T 1.1; T 1.2; T 1.1"));
  CHECK(state.resolvent(1) == 1);  // the last move wins
}

TEST_CASE("prefix closure of legality") {
  std::mt19937 rng(17);
  cirqtest::GenOptions opt;
  opt.allow_general = true;
  opt.allow_toggling = true;
  int checked = 0;
  while (checked < 500) {
    Cirquent c = cirqtest::random_cirquent(rng, opt);
    Run run = cirqtest::random_legal_run(rng, c, rng() % 6);
    if (!legal_position_ars(c, run).legal) continue;
    for (std::size_t cut = 0; cut <= run.size(); ++cut) {
      Run prefix(run.begin(), run.begin() + cut);
      CHECK(legal_position_ars(c, prefix).legal);
    }
    ++checked;
  }
}

TEST_CASE("resolution state on fig7") {
  Cirquent c = fig7();
  ResolutionState state = resolution_state(c, run_of("T 8.1; T 7.2"));
  CHECK(state.resolvent(7) == 2);
  CHECK(state.resolvent(8) == 1);
  CHECK_FALSE(state.resolvent(12).has_value());

  CHECK(resolution_state(c, Run{}).resolved.empty());
  CHECK_THROWS_AS(resolution_state(c, run_of("T 7.1; T 7.2")),
                  IllegalRunError);
}

TEST_CASE("ars legality and induced arrangements") {
  Cirquent fig20 = load_corpus_cirquent(corpus_dir(), "fig20.json");
  Run gamma2 = run_of("T (1,5); T (2,7); T (3,6); T (4,8)");
  CHECK(legal_position_ars(fig20, gamma2).legal);
  CHECK(induced_arrangement(gamma2) ==
        Arrangement{{1, 5}, {2, 7}, {3, 6}, {4, 8}});
  CHECK(induced_arrangement(Run{}).empty());

  Legality monogamy =
      legal_position_ars(fig20, run_of("T (1,5); T (1,6)"));
  CHECK_FALSE(monogamy.legal);
  CHECK(monogamy.offending_index == 2);

  // only the machine allocates
  Legality env_alloc = legal_position_ars(fig20, run_of("B (1,5)"));
  CHECK_FALSE(env_alloc.legal);
  CHECK(env_alloc.offender == Player::Environment);

  // allocation must pair P with ~P of the same atom
  CHECK_FALSE(legal_position_ars(fig20, run_of("T (1,2)")).legal);
  CHECK_FALSE(legal_position_ars(fig20, run_of("T (5,1)")).legal);

  Cirquent fig22 = load_corpus_cirquent(corpus_dir(), "fig22_right.json");
  CHECK(legal_position_ars(fig22, run_of("T (8,1); T (4,2); T (5,3)")).legal);
  CHECK(induced_arrangement(run_of("T (8,1); T (4,2); T (5,3)")) ==
        Arrangement{{8, 1}, {4, 2}, {5, 3}});
}
