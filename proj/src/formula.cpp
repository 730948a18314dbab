#include "cirq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace cirq {

namespace {

struct Token {
  enum class Kind { Word, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }
  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
      ++pos_;
    current_.offset = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Kind::End, "", pos_};
      return;
    }
    char c = text_[pos_];
    auto two = text_.substr(pos_, 2);
    if (two == "/\\" || two == "\\/" || two == "->") {
      current_ = {Token::Kind::Sym, two, pos_};
      pos_ += 2;
      return;
    }
    if (std::string("~()^/,").find(c) != std::string::npos) {
      current_ = {Token::Kind::Sym, std::string(1, c), pos_};
      ++pos_;
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
        ++pos_;
      current_ = {Token::Kind::Int, text_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha((unsigned char)c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum((unsigned char)text_[pos_]))
        ++pos_;
      current_ = {Token::Kind::Word, text_.substr(start, pos_ - start), start};
      return;
    }
    throw FrontendError("PARSE_ERROR", "unexpected character '" +
                                           std::string(1, c) + "' at offset " +
                                           std::to_string(pos_));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

std::optional<GateKind> quantifier_kind(const std::string& word) {
  if (word == "A") return GateKind::ParAnd;
  if (word == "E") return GateKind::ParOr;
  if (word == "CA") return GateKind::ChoAnd;
  if (word == "CE") return GateKind::ChoOr;
  if (word == "SA") return GateKind::SeqAnd;
  if (word == "SE") return GateKind::SeqOr;
  if (word == "TA") return GateKind::TogAnd;
  if (word == "TE") return GateKind::TogOr;
  return std::nullopt;
}

std::optional<GateKind> connective_kind(const Token& t) {
  if (t.kind == Token::Kind::Sym) {
    if (t.text == "/\\") return GateKind::ParAnd;
    if (t.text == "\\/") return GateKind::ParOr;
  }
  if (t.kind == Token::Kind::Word) {
    if (t.text == "cand") return GateKind::ChoAnd;
    if (t.text == "cor") return GateKind::ChoOr;
    if (t.text == "sand") return GateKind::SeqAnd;
    if (t.text == "sor") return GateKind::SeqOr;
    if (t.text == "tand") return GateKind::TogAnd;
    if (t.text == "tor") return GateKind::TogOr;
  }
  return std::nullopt;
}

bool reserved_word(const std::string& w) {
  return quantifier_kind(w).has_value() || w == "cand" || w == "cor" ||
         w == "sand" || w == "sor" || w == "tand" || w == "tor";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Formula parse() {
    Formula f = implication();
    if (lex_.peek().kind != Token::Kind::End)
      fail("trailing input at offset " + std::to_string(lex_.peek().offset));
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw FrontendError("PARSE_ERROR", msg);
  }

  Formula implication() {
    Formula lhs = chain();
    if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == "->") {
      lex_.take();
      Formula rhs = implication();
      Formula neg;
      neg.type = Formula::Type::Not;
      neg.children.push_back(std::move(lhs));
      Formula out;
      out.type = Formula::Type::Connective;
      out.kind = GateKind::ParOr;
      out.children.push_back(to_nnf(neg));
      out.children.push_back(std::move(rhs));
      return out;
    }
    return lhs;
  }

  // A chain of one repeated connective makes a single n-ary occurrence.
  Formula chain() {
    Formula first = unary();
    auto op = connective_kind(lex_.peek());
    if (!op) return first;

    Formula out;
    out.type = Formula::Type::Connective;
    out.kind = *op;
    out.children.push_back(std::move(first));
    bool decorated = false;
    while (auto next = connective_kind(lex_.peek())) {
      if (*next != out.kind)
        fail("mixed connectives need parentheses (offset " +
             std::to_string(lex_.peek().offset) + ")");
      lex_.take();
      // ^N and /vars belong to the occurrence; accept them on the first
      // operator token only.
      auto decorations = read_decorations(is_parallel(out.kind));
      if (decorations.first || !decorations.second.empty()) {
        if (decorated || out.children.size() > 1)
          fail("decorate only the first operator of a chain");
        decorated = true;
        out.superscript = decorations.first;
        out.slash = decorations.second;
      }
      out.children.push_back(unary());
    }
    return out;
  }

  Formula unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Sym && t.text == "~") {
      lex_.take();
      Formula inner = unary();
      if (inner.type == Formula::Type::Atom) {
        inner.negated = !inner.negated;
        return inner;
      }
      Formula f;
      f.type = Formula::Type::Not;
      f.children.push_back(std::move(inner));
      return f;
    }
    if (t.kind == Token::Kind::Sym && t.text == "(") {
      lex_.take();
      Formula f = implication();
      expect_sym(")");
      return f;
    }
    if (t.kind == Token::Kind::Word) {
      if (auto qk = quantifier_kind(t.text)) {
        lex_.take();
        Formula f;
        f.type = Formula::Type::Quantifier;
        f.kind = *qk;
        auto decorations = read_decorations(is_parallel(*qk));
        f.superscript = decorations.first;
        if (!decorations.second.empty()) fail("slash set precedes variable");
        if (lex_.peek().kind != Token::Kind::Word ||
            reserved_word(lex_.peek().text))
          fail("expected a variable after quantifier");
        f.var = lex_.take().text;
        auto slash = read_decorations(is_parallel(*qk));
        if (slash.first) fail("superscript precedes variable");
        f.slash = slash.second;
        f.children.push_back(unary());
        return f;
      }
      if (!reserved_word(t.text)) return atom();
    }
    fail("unexpected token at offset " + std::to_string(t.offset));
  }

  // Optional ^N then optional /x1,...,xk. Selectional operators take neither.
  std::pair<std::optional<int>, std::vector<std::string>> read_decorations(
      bool parallel) {
    std::optional<int> superscript;
    std::vector<std::string> slash;
    if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == "^") {
      if (!parallel) fail("superscripts apply to parallel operators only");
      lex_.take();
      if (lex_.peek().kind != Token::Kind::Int) fail("expected rank number");
      superscript = std::stoi(lex_.take().text);
      if (*superscript < 1) fail("rank numbers start at 1");
    }
    if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == "/") {
      if (!parallel) fail("slashes apply to parallel operators only");
      lex_.take();
      while (true) {
        if (lex_.peek().kind != Token::Kind::Word ||
            reserved_word(lex_.peek().text))
          fail("expected a variable in slash set");
        slash.push_back(lex_.take().text);
        if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == ",")
          lex_.take();
        else
          break;
      }
    }
    return {superscript, slash};
  }

  Formula atom() {
    Formula f;
    f.type = Formula::Type::Atom;
    f.atom = lex_.take().text;
    if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == "(") {
      lex_.take();
      while (true) {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Int) {
          f.args.emplace_back(std::stoi(lex_.take().text));
        } else if (t.kind == Token::Kind::Word && !reserved_word(t.text)) {
          f.args.emplace_back(lex_.take().text);
        } else {
          fail("expected a term at offset " + std::to_string(t.offset));
        }
        if (lex_.peek().kind == Token::Kind::Sym && lex_.peek().text == ",") {
          lex_.take();
          continue;
        }
        break;
      }
      expect_sym(")");
    }
    return f;
  }

  void expect_sym(const std::string& s) {
    if (lex_.peek().kind != Token::Kind::Sym || lex_.peek().text != s)
      fail("expected '" + s + "' at offset " +
           std::to_string(lex_.peek().offset));
    lex_.take();
  }

  Lexer lex_;
};

void assign_occurrences(Formula& f, int& next) {
  if (f.type == Formula::Type::Connective ||
      f.type == Formula::Type::Quantifier)
    f.occurrence = next++;
  for (Formula& child : f.children) assign_occurrences(child, next);
}

void check_bound_variables(const Formula& f, std::set<std::string>& seen) {
  if (f.type == Formula::Type::Quantifier) {
    if (!seen.insert(f.var).second)
      throw FrontendError("DUPLICATE_BOUND_VARIABLE",
                          "variable " + f.var + " bound twice");
  }
  for (const Formula& child : f.children) check_bound_variables(child, seen);
}

void collect_superscripts(const Formula& f, std::set<int>& used,
                          std::map<int, bool>& rank_disjunctive,
                          int& parallel_occurrences, int& superscripted) {
  if ((f.type == Formula::Type::Connective ||
       f.type == Formula::Type::Quantifier) &&
      is_parallel(f.kind)) {
    ++parallel_occurrences;
    if (f.superscript) {
      ++superscripted;
      used.insert(*f.superscript);
      bool disj = is_disjunctive(f.kind);
      auto [it, fresh] = rank_disjunctive.emplace(*f.superscript, disj);
      if (!fresh && it->second != disj)
        throw FrontendError("BAD_SUPERSCRIPTS",
                            "rank " + std::to_string(*f.superscript) +
                                " mixes conjunctive and disjunctive "
                                "occurrences");
    }
  }
  for (const Formula& child : f.children)
    collect_superscripts(child, used, rank_disjunctive, parallel_occurrences,
                         superscripted);
}

void check_superscripts(const Formula& f) {
  std::set<int> used;
  std::map<int, bool> rank_disjunctive;
  int parallel_occurrences = 0, superscripted = 0;
  collect_superscripts(f, used, rank_disjunctive, parallel_occurrences,
                       superscripted);
  if (superscripted == 0) return;
  if (superscripted != parallel_occurrences)
    throw FrontendError("BAD_SUPERSCRIPTS",
                        "either all or none of the parallel occurrences "
                        "carry superscripts");
  int expected = 1;
  for (int r : used)
    if (r != expected++)
      throw FrontendError("BAD_SUPERSCRIPTS",
                          "superscripts must cover 1..k without gaps");
}

}  // namespace

std::string Formula::text() const {
  std::ostringstream os;
  switch (type) {
    case Type::Atom: {
      if (negated) os << "~";
      os << atom;
      if (!args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) os << ",";
          if (auto* v = std::get_if<std::string>(&args[i]))
            os << *v;
          else
            os << std::get<int>(args[i]);
        }
        os << ")";
      }
      break;
    }
    case Type::Not:
      os << "~(" << children[0].text() << ")";
      break;
    case Type::Quantifier: {
      static const std::map<GateKind, const char*> q = {
          {GateKind::ParAnd, "A"},  {GateKind::ParOr, "E"},
          {GateKind::ChoAnd, "CA"}, {GateKind::ChoOr, "CE"},
          {GateKind::SeqAnd, "SA"}, {GateKind::SeqOr, "SE"},
          {GateKind::TogAnd, "TA"}, {GateKind::TogOr, "TE"}};
      os << q.at(kind);
      if (superscript) os << "^" << *superscript;
      os << " " << var;
      if (!slash.empty()) {
        os << "/";
        for (std::size_t i = 0; i < slash.size(); ++i)
          os << (i ? "," : "") << slash[i];
      }
      os << " (" << children[0].text() << ")";
      break;
    }
    case Type::Connective: {
      static const std::map<GateKind, const char*> ops = {
          {GateKind::ParAnd, "/\\"}, {GateKind::ParOr, "\\/"},
          {GateKind::ChoAnd, "cand"}, {GateKind::ChoOr, "cor"},
          {GateKind::SeqAnd, "sand"}, {GateKind::SeqOr, "sor"},
          {GateKind::TogAnd, "tand"}, {GateKind::TogOr, "tor"}};
      os << "(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) {
          os << " " << ops.at(kind);
          if (i == 1) {
            if (superscript) os << "^" << *superscript;
            if (!slash.empty()) {
              os << "/";
              for (std::size_t k = 0; k < slash.size(); ++k)
                os << (k ? "," : "") << slash[k];
            }
          }
          os << " ";
        }
        os << children[i].text();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

Formula parse_formula(const std::string& text) {
  Parser parser(text);
  Formula f = parser.parse();
  std::set<std::string> seen;
  check_bound_variables(f, seen);
  check_superscripts(f);
  int next = 1;
  assign_occurrences(f, next);
  return f;
}

namespace {

Formula nnf_rec(const Formula& f, bool positive) {
  switch (f.type) {
    case Formula::Type::Atom: {
      Formula out = f;
      out.negated = positive ? f.negated : !f.negated;
      return out;
    }
    case Formula::Type::Not:
      return nnf_rec(f.children[0], !positive);
    case Formula::Type::Connective:
    case Formula::Type::Quantifier: {
      Formula out = f;
      out.kind = positive ? f.kind : dual(f.kind);
      out.children.clear();
      for (const Formula& child : f.children)
        out.children.push_back(nnf_rec(child, positive));
      return out;
    }
  }
  throw std::logic_error("bad formula type");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, true); }

std::string ground_atom_name(const std::string& atom,
                             const std::vector<int>& values) {
  std::string out = atom;
  for (int v : values) out += std::to_string(v);
  return out;
}

namespace {

struct Expander {
  int n;

  Formula run(const Formula& f) {
    std::map<std::string, int> env;
    std::set<std::string> in_scope;
    return rec(f, env, in_scope);
  }

  Formula rec(const Formula& f, std::map<std::string, int>& env,
              std::set<std::string>& in_scope) {
    switch (f.type) {
      case Formula::Type::Atom: {
        Formula out = f;
        std::vector<int> values;
        for (const Term& t : f.args) {
          if (auto* var = std::get_if<std::string>(&t)) {
            auto it = env.find(*var);
            if (it == env.end())
              throw FrontendError("PARSE_ERROR",
                                  "unbound variable " + *var);
            values.push_back(it->second);
          } else {
            int v = std::get<int>(t);
            if (v < 1 || v > n)
              throw FrontendError("UNIVERSE_TOO_SMALL",
                                  "constant " + std::to_string(v) +
                                      " outside universe 1.." +
                                      std::to_string(n));
            values.push_back(v);
          }
        }
        out.atom = ground_atom_name(f.atom, values);
        out.args.clear();
        return out;
      }
      case Formula::Type::Not:
        throw FrontendError("PARSE_ERROR",
                            "expansion requires negation normal form");
      case Formula::Type::Connective: {
        check_slash(f, in_scope);
        Formula out = f;
        out.children.clear();
        for (const Formula& child : f.children)
          out.children.push_back(rec(child, env, in_scope));
        return out;
      }
      case Formula::Type::Quantifier: {
        check_slash(f, in_scope);
        Formula out;
        out.type = Formula::Type::Connective;
        out.kind = f.kind;
        out.occurrence = f.occurrence;
        out.slash = f.slash;
        out.superscript = f.superscript;
        out.var = f.var;
        in_scope.insert(f.var);
        for (int v = 1; v <= n; ++v) {
          env[f.var] = v;
          out.children.push_back(rec(f.children[0], env, in_scope));
        }
        env.erase(f.var);
        in_scope.erase(f.var);
        return out;
      }
    }
    throw std::logic_error("bad formula type");
  }

  void check_slash(const Formula& f, const std::set<std::string>& in_scope) {
    for (const std::string& v : f.slash)
      if (!in_scope.count(v))
        throw FrontendError("UNKNOWN_SLASH_VARIABLE",
                            "slashed variable " + v +
                                " is not bound by an enclosing quantifier");
  }
};

bool has_slash(const Formula& f) {
  if (!f.slash.empty()) return true;
  for (const Formula& child : f.children)
    if (has_slash(child)) return true;
  return false;
}

bool has_superscript(const Formula& f) {
  if (f.superscript) return true;
  for (const Formula& child : f.children)
    if (has_superscript(child)) return true;
  return false;
}

bool parallel_only(const Formula& f) {
  if ((f.type == Formula::Type::Connective ||
       f.type == Formula::Type::Quantifier) &&
      !is_parallel(f.kind))
    return false;
  for (const Formula& child : f.children)
    if (!parallel_only(child)) return false;
  return true;
}

// Flattened ground tree with clustering metadata.
struct BuiltNode {
  bool port = false;
  Literal literal;
  GateKind kind = GateKind::ParAnd;
  int occurrence = 0;
  bool occurrence_quantifier = false;  // edge origin is a variable
  std::string origin_var;
  std::vector<std::string> slash;
  std::optional<int> superscript;
  std::vector<int> path_orders;
  std::vector<std::string> path_vars;  // originating variable per edge, ""
  std::vector<std::size_t> children;
};

struct TreeBuilder {
  std::vector<BuiltNode> nodes;

  std::size_t build(const Formula& f, std::vector<int> orders,
                    std::vector<std::string> vars) {
    BuiltNode node;
    node.path_orders = orders;
    node.path_vars = vars;
    if (f.type == Formula::Type::Atom) {
      node.port = true;
      node.literal = Literal{f.atom, f.negated};
      nodes.push_back(std::move(node));
      return nodes.size() - 1;
    }
    node.kind = f.kind;
    node.occurrence = f.occurrence;
    node.origin_var = f.var;  // nonempty iff from a quantifier
    node.slash = f.slash;
    node.superscript = f.superscript;
    std::size_t index = nodes.size();
    nodes.push_back(node);
    std::vector<std::size_t> children;
    for (std::size_t i = 0; i < f.children.size(); ++i) {
      std::vector<int> child_orders = orders;
      std::vector<std::string> child_vars = vars;
      child_orders.push_back((int)i + 1);
      child_vars.push_back(f.var);
      children.push_back(build(f.children[i], std::move(child_orders),
                               std::move(child_vars)));
    }
    nodes[index].children = std::move(children);
    return index;
  }
};

std::vector<int> clustering_key(const BuiltNode& g) {
  std::set<std::string> slashed(g.slash.begin(), g.slash.end());
  std::vector<int> key;
  for (std::size_t i = 0; i < g.path_orders.size(); ++i) {
    const std::string& origin = g.path_vars[i];
    if (!origin.empty() && slashed.count(origin)) continue;
    key.push_back((int)i);
    key.push_back(g.path_orders[i]);
  }
  return key;
}

}  // namespace

Formula expand(const Formula& f, int universe_size) {
  if (universe_size < 1)
    throw FrontendError("UNIVERSE_TOO_SMALL", "universe must be nonempty");
  Expander expander{universe_size};
  return expander.run(to_nnf(f));
}

Cirquent compile(const Formula& f, int universe_size, CompileMode mode) {
  Formula nnf = to_nnf(f);
  if (mode == CompileMode::Col) {
    if (has_slash(nnf))
      throw FrontendError("SLASH_IN_COL_MODE",
                          "slashes have no meaning outside the IF modes");
    if (has_superscript(nnf))
      throw FrontendError("BAD_SUPERSCRIPTS",
                          "superscripts have no meaning outside if-parallel");
  } else {
    if (!parallel_only(nnf))
      throw FrontendError("BAD_CONNECTIVE_FOR_MODE",
                          "IF translations take A/E///\\/\\/ formulas only");
    if (mode == CompileMode::IfChoice && has_superscript(nnf))
      throw FrontendError("BAD_SUPERSCRIPTS",
                          "superscripts have no meaning in if-choice mode");
  }
  if (mode == CompileMode::IfChoice) {
    // Only existential/disjunctive occurrences may carry slashes here.
    std::vector<const Formula*> stack{&nnf};
    while (!stack.empty()) {
      const Formula* g = stack.back();
      stack.pop_back();
      if (!g->slash.empty() && is_conjunctive(g->kind))
        throw FrontendError("SLASH_ON_CONJUNCTIVE",
                            "if-choice mode slashes disjunctive occurrences "
                            "only");
      for (const Formula& child : g->children) stack.push_back(&child);
    }
  }

  Formula ground = expand(nnf, universe_size);
  TreeBuilder builder;
  builder.build(ground, {}, {});

  // Preorder node ids (the build order is preorder already).
  CirquentDoc doc;
  std::vector<NodeId> id_of(builder.nodes.size());
  for (std::size_t i = 0; i < builder.nodes.size(); ++i)
    id_of[i] = (NodeId)i + 1;
  for (std::size_t i = 0; i < builder.nodes.size(); ++i) {
    const BuiltNode& b = builder.nodes[i];
    Node n;
    n.id = id_of[i];
    if (b.port) {
      n.payload = b.literal;
    } else {
      GateKind kind = b.kind;
      if (mode == CompileMode::IfChoice && kind == GateKind::ParOr)
        kind = GateKind::ChoOr;
      n.payload = kind;
    }
    doc.nodes.push_back(n);
  }
  for (std::size_t i = 0; i < builder.nodes.size(); ++i)
    for (std::size_t child : builder.nodes[i].children)
      doc.edges.emplace_back(id_of[i], id_of[child]);

  // Cluster gates by (occurrence, slashed-coordinate-blind path).
  std::map<std::pair<int, std::vector<int>>, std::vector<NodeId>> groups;
  std::map<int, std::optional<int>> occurrence_rank;
  std::map<int, GateKind> occurrence_kind;
  for (std::size_t i = 0; i < builder.nodes.size(); ++i) {
    const BuiltNode& b = builder.nodes[i];
    if (b.port) continue;
    bool clustered = mode == CompileMode::IfParallel ||
                     (mode == CompileMode::IfChoice && is_disjunctive(b.kind));
    std::pair<int, std::vector<int>> key{b.occurrence, {}};
    if (clustered)
      key.second = clustering_key(b);
    else
      key.second = {(int)i};  // singleton
    groups[key].push_back(id_of[i]);
    occurrence_rank[b.occurrence] = b.superscript;
    occurrence_kind[b.occurrence] = b.kind;
  }
  doc.clusters.emplace();
  std::map<int, std::vector<ClusterId>> rank_members;  // superscript ranks
  for (auto& [key, members] : groups) {
    Cluster cl;
    cl.members = members;
    std::sort(cl.members.begin(), cl.members.end());
    cl.id = cl.members.front();
    doc.clusters->push_back(cl);
    GateKind kind = occurrence_kind[key.first];
    if (mode == CompileMode::IfChoice && kind == GateKind::ParOr)
      kind = GateKind::ChoOr;
    if (is_parallel(kind)) {
      if (auto rank = occurrence_rank[key.first])
        rank_members[*rank].push_back(cl.id);
    }
  }
  std::sort(doc.clusters->begin(), doc.clusters->end(),
            [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
  if (!rank_members.empty()) {
    doc.ranks.emplace();
    for (auto& [rank, members] : rank_members) {
      std::sort(members.begin(), members.end());
      doc.ranks->push_back(members);
    }
  }
  // Otherwise the default (or lowest, and highest) applies on validation.
  return validate(doc);
}

std::map<NodeId, CompiledGateInfo> compile_gate_info(const Formula& f,
                                                     int universe_size) {
  Formula ground = expand(to_nnf(f), universe_size);
  TreeBuilder builder;
  builder.build(ground, {}, {});
  std::map<NodeId, CompiledGateInfo> out;
  for (std::size_t i = 0; i < builder.nodes.size(); ++i) {
    const BuiltNode& b = builder.nodes[i];
    if (b.port) continue;
    CompiledGateInfo info;
    info.occurrence = b.occurrence;
    info.full_path = b.path_orders;
    info.clustering_key = clustering_key(b);
    out[(NodeId)i + 1] = info;
  }
  return out;
}

Cirquent weak_neg_cirquent(const Cirquent& c) {
  CirquentDoc doc = c.to_doc();
  for (Node& n : doc.nodes) {
    if (n.is_port())
      n.payload = n.literal().opposite();
    else
      n.payload = dual(n.kind());
  }
  return validate(doc);
}

Cirquent strong_neg_cirquent(const Cirquent& c) {
  if (c.ranks().size() > 2)
    throw FrontendError("TOO_MANY_RANKS_FOR_SWAP",
                        "rank swap is defined for at most two ranks");
  Cirquent negated = weak_neg_cirquent(c);
  CirquentDoc doc = negated.to_doc();
  if (doc.ranks && doc.ranks->size() == 2)
    std::swap((*doc.ranks)[0], (*doc.ranks)[1]);
  return validate(doc);
}

}  // namespace cirq
