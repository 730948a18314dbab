#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cirq/corpus.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace cirq;

namespace {

Formula random_formula(std::mt19937& rng, int depth, int atoms) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<>(lo, hi)(rng);
  };
  Formula f;
  if (depth == 0 || pick(0, 3) == 0) {
    f.type = Formula::Type::Atom;
    f.atom = "a" + std::to_string(pick(1, atoms));
    f.negated = pick(0, 1);
    return f;
  }
  if (pick(0, 4) == 0) {
    f.type = Formula::Type::Not;
    f.children.push_back(random_formula(rng, depth - 1, atoms));
    return f;
  }
  f.type = Formula::Type::Connective;
  f.kind = pick(0, 1) ? GateKind::ParAnd : GateKind::ParOr;
  int width = pick(1, 3);
  for (int i = 0; i < width; ++i)
    f.children.push_back(random_formula(rng, depth - 1, atoms));
  return f;
}

bool classical_truth(const Formula& f, const Interpretation& interp) {
  switch (f.type) {
    case Formula::Type::Atom:
      return interp.elementary_value({f.atom, f.negated});
    case Formula::Type::Not:
      return !classical_truth(f.children[0], interp);
    case Formula::Type::Connective: {
      bool conj = is_conjunctive(f.kind);
      bool v = conj;
      for (const Formula& child : f.children)
        v = conj ? (v && classical_truth(child, interp))
                 : (v || classical_truth(child, interp));
      return v;
    }
    default:
      throw std::logic_error("quantifier in propositional oracle");
  }
}

std::vector<std::string> atoms_of(const Formula& f) {
  std::set<std::string> set;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.type == Formula::Type::Atom) set.insert(g.atom);
    for (const Formula& child : g.children) walk(child);
  };
  walk(f);
  return {set.begin(), set.end()};
}

}  // namespace

TEST_CASE("parsing basics") {
  Formula f = parse_formula("~p \\/ p");
  REQUIRE(f.type == Formula::Type::Connective);
  CHECK(f.kind == GateKind::ParOr);
  REQUIRE(f.children.size() == 2);
  CHECK(f.children[0].negated);

  Formula q = parse_formula("A x (E y p(x,y))");
  REQUIRE(q.type == Formula::Type::Quantifier);
  CHECK(q.kind == GateKind::ParAnd);
  CHECK(q.var == "x");
  CHECK(q.children[0].kind == GateKind::ParOr);

  Formula ranked = parse_formula("E^1 z A^2 x/z E^3 y/z,x p(x,y,z)");
  CHECK(ranked.superscript == 1);
  CHECK(ranked.children[0].superscript == 2);
  CHECK(ranked.children[0].slash == std::vector<std::string>{"z"});
  CHECK(ranked.children[0].children[0].slash ==
        std::vector<std::string>{"z", "x"});

  // implication desugars to ~lhs \/ rhs with the negation pushed inward
  Formula imp = parse_formula("(p /\\ q) -> r");
  REQUIRE(imp.type == Formula::Type::Connective);
  CHECK(imp.kind == GateKind::ParOr);
  CHECK(imp.children[0].kind == GateKind::ParOr);  // ~p \/ ~q
  CHECK(imp.children[0].children[0].negated);

  // n-ary chains are one occurrence; parenthesized chains are nested
  CHECK(parse_formula("p \\/ q \\/ r").children.size() == 3);
  CHECK(parse_formula("(p \\/ q) \\/ r").children.size() == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("p \\/ q /\\ r"), FrontendError);
  CHECK_THROWS_AS(parse_formula("A x (A x p(x))"), FrontendError);
  CHECK_THROWS_AS(parse_formula("p \\/"), FrontendError);
  CHECK_THROWS_AS(parse_formula("CA^2 x p(x)"), FrontendError);
  // gapped superscripts
  CHECK_THROWS_AS(parse_formula("E^1 z A^3 x p(x,z)"), FrontendError);
  // a rank mixing conjunctive and disjunctive occurrences
  CHECK_THROWS_AS(parse_formula("E^1 z A^1 x p(x,z)"), FrontendError);
  // partially superscripted
  CHECK_THROWS_AS(parse_formula("E^1 z A x p(x,z)"), FrontendError);
  try {
    parse_formula("A x (A x p(x))");
  } catch (const FrontendError& e) {
    CHECK(e.code == "DUPLICATE_BOUND_VARIABLE");
  }
}

TEST_CASE("to_nnf dualizes everything and keeps decorations") {
  Formula f = to_nnf(parse_formula("~(p /\\ q)"));
  CHECK(f.kind == GateKind::ParOr);
  CHECK(f.children[0].negated);

  Formula g = to_nnf(parse_formula("~(A x (E y/x p(x,y)))"));
  CHECK(g.kind == GateKind::ParOr);  // A became E
  CHECK(g.children[0].kind == GateKind::ParAnd);
  CHECK(g.children[0].slash == std::vector<std::string>{"x"});
  CHECK(g.children[0].children[0].negated);

  Formula sel = to_nnf(parse_formula("~(p cand (q sor r))"));
  CHECK(sel.kind == GateKind::ChoOr);
  CHECK(sel.children[1].kind == GateKind::SeqAnd);

  Formula ranked = to_nnf(parse_formula("~(E^1 z A^2 x/z E^3 y/z,x p(x,y,z))"));
  CHECK(ranked.kind == GateKind::ParAnd);
  CHECK(ranked.superscript == 1);  // superscripts survive unchanged
  CHECK(ranked.children[0].superscript == 2);
}

TEST_CASE("nnf duality: truth of ~F matches negated truth, exhaustively") {
  std::mt19937 rng(301);
  int cases = 0;
  for (int i = 0; i < 40; ++i) {
    Formula f = random_formula(rng, 4, 6);
    Formula neg;
    neg.type = Formula::Type::Not;
    neg.children.push_back(f);
    Formula nnf_neg = to_nnf(neg);
    std::vector<std::string> atoms = atoms_of(f);
    REQUIRE(atoms.size() <= 12);
    for (std::uint64_t mask = 0; mask < (1ull << atoms.size()); ++mask) {
      Interpretation interp;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        interp.set_elementary(atoms[k], (mask >> k) & 1u);
      CHECK(classical_truth(nnf_neg, interp) == !classical_truth(f, interp));
      ++cases;
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("expansion shapes") {
  // CA x (~p(x) cor p(x)) at 3: the fig3-right pattern
  Formula f = parse_formula("CA x (~p(x) cor p(x))");
  Formula e = expand(f, 3);
  REQUIRE(e.type == Formula::Type::Connective);
  CHECK(e.kind == GateKind::ChoAnd);
  REQUIRE(e.children.size() == 3);
  CHECK(e.children[1].children[0].atom == "p2");
  CHECK(e.children[1].children[0].negated);

  // unary conjunction
  Formula u = expand(parse_formula("A x p(x)"), 1);
  CHECK(u.kind == GateKind::ParAnd);
  REQUIRE(u.children.size() == 1);
  CHECK(u.children[0].atom == "p1");

  // 31-node tree underlying fig 10/12
  Formula big = expand(parse_formula("A x E y A z E t/x,y p(x,y,z,t)"), 2);
  std::function<int(const Formula&)> count = [&](const Formula& g) {
    int n = 1;
    for (const Formula& child : g.children) n += count(child);
    return n;
  };
  CHECK(count(big) == 31);

  CHECK_THROWS_AS(expand(parse_formula("p(3)"), 2), FrontendError);
  CHECK(expand(parse_formula("p(3)"), 3).atom == "p3");
}

TEST_CASE("compile errors") {
  CHECK_THROWS_AS(compile(parse_formula("A x E y/x p(x,y)"), 2,
                          CompileMode::Col),
                  FrontendError);
  try {
    compile(parse_formula("A x E y/x p(x,y)"), 2, CompileMode::Col);
  } catch (const FrontendError& e) {
    CHECK(e.code == "SLASH_IN_COL_MODE");
  }
  try {
    compile(parse_formula("E y/x p(y)"), 2, CompileMode::IfChoice);
  } catch (const FrontendError& e) {
    CHECK(e.code == "UNKNOWN_SLASH_VARIABLE");
  }
  CHECK_THROWS_AS(compile(parse_formula("p cand q"), 2,
                          CompileMode::IfChoice),
                  FrontendError);
  // slash on a conjunctive occurrence is outside the choice translation
  CHECK_THROWS_AS(compile(parse_formula("E y (A x/y p(x,y))"), 2,
                          CompileMode::IfChoice),
                  FrontendError);
  // but fine in the parallel translation
  CHECK(compile(parse_formula("E y (A x/y p(x,y))"), 2,
                CompileMode::IfParallel)
            .nodes()
            .size() > 0);
}

TEST_CASE("col compilation gives the parse tree with singleton clusters") {
  Cirquent c = compile(parse_formula("~p /\\ (~p \\/ p) /\\ (~p \\/ p) /\\ p"),
                       1, CompileMode::Col);
  Cirquent fig1_left = load_corpus_cirquent(corpus_dir(), "fig1_left.json");
  CHECK(structural_equal(c, fig1_left));
}

TEST_CASE("choice translation clusters by slashed-blind paths") {
  Formula f = parse_formula("A x E y A z E t/x,y p(x,y,z,t)");
  Cirquent c = compile(f, 2, CompileMode::IfChoice);
  // top gates grouped by z alone: two clusters of four
  std::map<ClusterId, int> sizes;
  int cor_clusters = 0;
  for (const Cluster& cl : c.clusters())
    if (c.cluster_kind(cl.id) == GateKind::ChoOr) {
      ++cor_clusters;
      sizes[cl.id] = (int)cl.members.size();
    }
  CHECK(cor_clusters == 4);  // two y-singletons plus two t-clusters
  int fours = 0, ones = 0;
  for (auto& [id, n] : sizes) (n == 4 ? fours : ones)++;
  CHECK(fours == 2);
  CHECK(ones == 2);
}

TEST_CASE("the clustering relation is an equivalence keyed as documented") {
  Formula f = parse_formula("A x E y A z E t/x,y p(x,y,z,t)");
  auto info = compile_gate_info(f, 2);
  // pairwise relation from the definition
  auto same = [&](NodeId a, NodeId b) {
    const CompiledGateInfo& ia = info.at(a);
    const CompiledGateInfo& ib = info.at(b);
    return ia.occurrence == ib.occurrence &&
           ia.clustering_key == ib.clustering_key;
  };
  std::vector<NodeId> gates;
  for (auto& [id, _] : info) gates.push_back(id);
  for (NodeId a : gates) CHECK(same(a, a));
  for (NodeId a : gates)
    for (NodeId b : gates) {
      CHECK(same(a, b) == same(b, a));
      for (NodeId d : gates)
        if (same(a, b) && same(b, d)) CHECK(same(a, d));
    }
  // and it matches the produced clusters
  Cirquent c = compile(f, 2, CompileMode::IfChoice);
  for (NodeId a : gates)
    for (NodeId b : gates)
      if (c.node(a).is_gate() && c.node(b).is_gate() &&
          is_selectional(c.node(a).kind()) &&
          is_selectional(c.node(b).kind()))
        CHECK(same(a, b) == (c.cluster_of(a) == c.cluster_of(b)));
}

TEST_CASE("if_parallel on slash-free formulas: singleton clusters, classical") {
  std::mt19937 rng(302);
  for (int i = 0; i < 30; ++i) {
    Formula f = to_nnf(random_formula(rng, 3, 4));
    Cirquent c = compile(f, 1, CompileMode::IfParallel);
    for (const Cluster& cl : c.clusters()) CHECK(cl.members.size() == 1);
    std::vector<std::string> atoms = c.atoms(false);
    for (std::uint64_t mask = 0; mask < (1ull << atoms.size()); ++mask) {
      Interpretation interp;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        interp.set_elementary(atoms[k], (mask >> k) & 1u);
      CHECK(true_col(c, interp, {}) == classical_truth(to_nnf(f), interp));
    }
  }
}

TEST_CASE("compile determinism: byte-identical output") {
  Formula f = parse_formula("A x E y A z/x,y E t/x,y p(x,y,z,t)");
  Cirquent a = compile(f, 2, CompileMode::IfParallel);
  Cirquent b = compile(parse_formula("A x E y A z/x,y E t/x,y p(x,y,z,t)"), 2,
                       CompileMode::IfParallel);
  CHECK(emit_json(a) == emit_json(b));
}

TEST_CASE("weak negation is an involution preserving clusters and ranks") {
  Cirquent fig13 = load_corpus_cirquent(corpus_dir(), "fig13.json");
  Cirquent once = weak_neg_cirquent(fig13);
  Cirquent twice = weak_neg_cirquent(once);
  CHECK(structural_equal(twice, fig13));
  CHECK(emit_json(twice) == emit_json(validate(fig13.to_doc())));
  // ranks unchanged by weak negation
  CHECK(once.ranks() == fig13.ranks());
}

TEST_CASE("strong negation swaps the two ranks and rejects more") {
  Cirquent fig13 = load_corpus_cirquent(corpus_dir(), "fig13.json");
  Cirquent strong = strong_neg_cirquent(fig13);
  CHECK(strong.ranks()[0] == fig13.ranks()[1]);
  CHECK(strong.ranks()[1] == fig13.ranks()[0]);

  Cirquent fig16 = load_corpus_cirquent(corpus_dir(), "fig16.json");
  CHECK_THROWS_AS(strong_neg_cirquent(fig16), FrontendError);
  try {
    strong_neg_cirquent(fig16);
  } catch (const FrontendError& e) {
    CHECK(e.code == "TOO_MANY_RANKS_FOR_SWAP");
  }
}

TEST_CASE("default single-rank for conjunctive-only if_parallel formulas") {
  Cirquent c = compile(parse_formula("A x A y/x p(x,y)"), 2,
                       CompileMode::IfParallel);
  REQUIRE(c.ranks().size() == 1);
  for (ClusterId cl : c.ranks()[0])
    CHECK(c.cluster_kind(cl) == GateKind::ParAnd);
}

TEST_CASE("negating a superscripted formula compiles to the weak negation") {
  // explicit ranks make the or-low/and-high default explicit, so negation
  // commutes with translation
  Formula f =
      parse_formula("A^2 x E^1 y A^2 z/x,y E^1 t/x,y p(x,y,z,t)");
  Cirquent direct = compile(f, 2, CompileMode::IfParallel);
  Cirquent fig13 = load_corpus_cirquent(corpus_dir(), "fig13.json");
  CHECK(structural_equal(direct, fig13));

  Formula neg;
  neg.type = Formula::Type::Not;
  neg.children.push_back(f);
  Cirquent negated = compile(to_nnf(neg), 2, CompileMode::IfParallel);
  Cirquent fig14 = load_corpus_cirquent(corpus_dir(), "fig14.json");
  CHECK(structural_equal(negated, fig14));
  CHECK(structural_equal(negated, weak_neg_cirquent(fig13)));
}

TEST_CASE("rank-aware duality of quantified negation on a small universe") {
  Formula f = parse_formula("A^2 x E^1 y/x p(x,y)");
  Formula neg;
  neg.type = Formula::Type::Not;
  neg.children.push_back(f);
  Formula dual = to_nnf(neg);
  CHECK(dual.kind == GateKind::ParOr);
  CHECK(dual.children[0].slash == std::vector<std::string>{"x"});

  Cirquent pos = compile(f, 2, CompileMode::IfParallel);
  Cirquent negc = compile(dual, 2, CompileMode::IfParallel);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    Interpretation interp;
    int bit = 0;
    for (const char* atom : {"p11", "p12", "p21", "p22"})
      interp.set_elementary(atom, (mask >> bit++) & 1u);
    CHECK(true_col(pos, interp, {}) != true_col(negc, interp, {}));
  }
}

TEST_CASE("weak negation dualizes selectional gates too") {
  Cirquent fig7 = load_corpus_cirquent(corpus_dir(), "fig7.json");
  Cirquent negated = weak_neg_cirquent(fig7);
  CHECK(negated.cluster_kind(7) == GateKind::ChoAnd);
  CHECK(negated.node(10).kind() == GateKind::ParOr);
  CHECK(negated.node(1).literal() == Literal{"p1", true});
  CHECK(structural_equal(weak_neg_cirquent(negated), fig7));
  // game-level negation: the dual cirquent's winner is the flipped winner
  Interpretation interp;
  interp.set_elementary("p3", true);
  Run run = parse_run("T 8.1");
  Run flipped = negate_run(run);
  CHECK(wn(fig7, interp, run) != wn(negated, interp, flipped));
}
