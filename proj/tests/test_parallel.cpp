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

}  // namespace

TEST_CASE("exec policy plumbing") {
  CHECK_FALSE(use_parallel(Exec::Serial, 1u << 20));
  if (openmp_enabled()) {
    CHECK(use_parallel(Exec::Parallel, 2));
    CHECK(use_parallel(Exec::Auto, kParallelThreshold));
    CHECK_FALSE(use_parallel(Exec::Auto, 2));
  }
}

TEST_CASE("accomplished: parallel equals the serial reference") {
  for (const char* name : {"fig20.json", "fig21.json", "fig22_left.json",
                           "fig22_right.json", "blass.json"}) {
    Cirquent c = load(name);
    SolveResult solved = solve_ars(c);
    Run line = solved.principal_run;
    Accomplishment serial = accomplished(c, line, Exec::Serial);
    Accomplishment parallel = accomplished(c, line, Exec::Parallel);
    CHECK(serial.accomplished == parallel.accomplished);
    CHECK(serial.witness == parallel.witness);  // same first falsifier
    Accomplishment se = accomplished(c, {}, Exec::Serial);
    Accomplishment pe = accomplished(c, {}, Exec::Parallel);
    CHECK(se.accomplished == pe.accomplished);
    CHECK(se.witness == pe.witness);
  }
}

TEST_CASE("accomplished witnesses agree on random runs") {
  std::mt19937 rng(601);
  cirqtest::GenOptions opt;
  opt.allow_general = true;
  opt.max_nodes = 14;
  int cases = 0;
  while (cases < 150) {
    Cirquent c = cirqtest::random_cirquent(rng, opt);
    Run run = cirqtest::random_legal_run(rng, c, rng() % 5);
    if (!legal_position_ars(c, run).legal) continue;
    Accomplishment serial = accomplished(c, run, Exec::Serial);
    Accomplishment parallel = accomplished(c, run, Exec::Parallel);
    CHECK(serial.accomplished == parallel.accomplished);
    CHECK(serial.witness == parallel.witness);
    ++cases;
  }
}

TEST_CASE("weak validity: parallel equals serial") {
  for (const char* name :
       {"fig3_left.json", "fig3_right.json", "notp_cor_p.json",
        "fig1_left.json", "fig5_left.json"}) {
    Cirquent c = load(name);
    CHECK(weak_validity(c, Exec::Serial) == weak_validity(c, Exec::Parallel));
  }
}

TEST_CASE("quantified truth: parallel equals serial on clustered figures") {
  for (const char* name : {"fig12.json", "fig13.json", "fig14.json",
                           "fig15.json", "fig16.json"}) {
    Cirquent c = load(name);
    for (const char* interp_name :
         {"interp_allT16.json", "interp_dagger14.json",
          "interp_dagger10.json", "interp_dagger16.json"}) {
      Interpretation interp =
          load_corpus_interpretation(corpus_dir(), interp_name);
      ResolutionState sel;
      auto ports = port_values_col(c, interp, {});
      bool serial =
          quantified_truth(c, ports, sel, QuantMode::FullEnum, Exec::Serial);
      bool parallel =
          quantified_truth(c, ports, sel, QuantMode::FullEnum, Exec::Parallel);
      CHECK(serial == parallel);
    }
  }
}

TEST_CASE("rerunning the parallel kernels is bit-stable") {
  Cirquent c = load("fig21.json");
  Accomplishment first = accomplished(c, {}, Exec::Parallel);
  for (int i = 0; i < 5; ++i) {
    Accomplishment again = accomplished(c, {}, Exec::Parallel);
    CHECK(again.accomplished == first.accomplished);
    CHECK(again.witness == first.witness);
  }
}
