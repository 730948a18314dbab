#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cirq/model.hpp"

namespace cirq {

struct FrontendError : std::runtime_error {
  FrontendError(std::string code_, const std::string& message)
      : std::runtime_error(code_ + ": " + message), code(std::move(code_)) {}
  std::string code;
};

// One argument of an atom: a variable or a constant from the universe.
using Term = std::variant<std::string, int>;

// Formula AST. Connectives are n-ary; quantifiers expand to "long"
// connectives of the same kind over a finite universe. Slash sets list the
// variables an occurrence is independent of; superscripts carry ranked-IF
// rank annotations. Occurrence ids are assigned in preorder by the parser and
// preserved by to_nnf.
struct Formula {
  enum class Type { Atom, Not, Connective, Quantifier };
  Type type = Type::Atom;

  // Atom
  std::string atom;
  std::vector<Term> args;
  bool negated = false;

  // Connective / Quantifier
  GateKind kind = GateKind::ParAnd;
  std::string var;                  // quantifier only
  std::vector<std::string> slash;   // variables this occurrence ignores
  std::optional<int> superscript;   // ranked-IF rank
  int occurrence = 0;

  std::vector<Formula> children;    // Not and Quantifier have exactly one

  std::string text() const;
};

// Grammar (whitespace-insensitive):
//   formula  := disj ('->' formula)?
//   disj     := unary (OP unary)*          one operator token per chain
//   unary    := '~' unary | QUANT unary | atom | '(' formula ')'
//   OP       := /\  \/  cand cor sand sor tand tor, with optional ^N and
//               /x1,x2 decorations on /\ and \/
//   QUANT    := A E CA CE SA SE TA TE, with optional ^N, then a variable,
//               then optional /x1,x2
//   atom     := name | name(t1,...,tk)     terms are variables or integers
// `->` abbreviates ~lhs \/ rhs with the negation pushed inward.
Formula parse_formula(const std::string& text);

// Negation normal form: every operator replaced by its dual under ~, slash
// sets and superscripts kept verbatim, ~ ending up on atoms only.
Formula to_nnf(const Formula& f);

// Replaces each quantifier by an n-ary connective of the same kind over
// {1..n} and grounds the atoms. The result carries occurrence tags for
// clustering.
Formula expand(const Formula& f, int universe_size);

enum class CompileMode { Col, IfChoice, IfParallel };

// Formula -> cirquent.
//   Col:        parse-tree cirquent, singleton clusters, default ranking.
//   IfChoice:   or-gates become choice gates; disjunctive gates clustered by
//               originating occurrence with slashed path coordinates ignored.
//   IfParallel: labels kept; every gate clustered the same way; ranks from
//               superscripts, or or-low/and-high when none are present.
Cirquent compile(const Formula& f, int universe_size, CompileMode mode);

// Ground atom rendering used by expand: p(1,2) -> "p12".
std::string ground_atom_name(const std::string& atom,
                             const std::vector<int>& values);

// Dualizes every port label and gate kind; clusters and ranks unchanged.
Cirquent weak_neg_cirquent(const Cirquent& c);

// Weak negation followed by swapping the (at most two) ranks.
Cirquent strong_neg_cirquent(const Cirquent& c);

// The clustering relation of the IF translation, exposed for property tests:
// whether two gates of a compiled cirquent originate from the same occurrence
// and agree on every non-slashed path coordinate.
struct CompiledGateInfo {
  int occurrence = 0;
  std::vector<int> full_path;      // order numbers from the root
  std::vector<int> clustering_key; // orders at non-slashed positions
};
std::map<NodeId, CompiledGateInfo> compile_gate_info(const Formula& f,
                                                     int universe_size);

}  // namespace cirq
