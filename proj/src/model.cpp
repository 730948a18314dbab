#include "cirq/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cirq {

using nlohmann::json;

bool is_parallel(GateKind k) {
  return k == GateKind::ParAnd || k == GateKind::ParOr;
}

bool is_selectional(GateKind k) { return !is_parallel(k); }

bool is_conjunctive(GateKind k) {
  switch (k) {
    case GateKind::ParAnd:
    case GateKind::ChoAnd:
    case GateKind::SeqAnd:
    case GateKind::TogAnd:
      return true;
    default:
      return false;
  }
}

bool is_choice(GateKind k) {
  return k == GateKind::ChoAnd || k == GateKind::ChoOr;
}

bool is_sequential(GateKind k) {
  return k == GateKind::SeqAnd || k == GateKind::SeqOr;
}

bool is_toggling(GateKind k) {
  return k == GateKind::TogAnd || k == GateKind::TogOr;
}

GateKind dual(GateKind k) {
  switch (k) {
    case GateKind::ParAnd: return GateKind::ParOr;
    case GateKind::ParOr: return GateKind::ParAnd;
    case GateKind::ChoAnd: return GateKind::ChoOr;
    case GateKind::ChoOr: return GateKind::ChoAnd;
    case GateKind::SeqAnd: return GateKind::SeqOr;
    case GateKind::SeqOr: return GateKind::SeqAnd;
    case GateKind::TogAnd: return GateKind::TogOr;
    case GateKind::TogOr: return GateKind::TogAnd;
  }
  throw std::logic_error("bad gate kind");
}

const char* gate_label(GateKind k) {
  switch (k) {
    case GateKind::ParAnd: return "and";
    case GateKind::ParOr: return "or";
    case GateKind::ChoAnd: return "cand";
    case GateKind::ChoOr: return "cor";
    case GateKind::SeqAnd: return "sand";
    case GateKind::SeqOr: return "sor";
    case GateKind::TogAnd: return "tand";
    case GateKind::TogOr: return "tor";
  }
  throw std::logic_error("bad gate kind");
}

std::optional<GateKind> gate_kind_from_label(const std::string& label) {
  static const std::pair<const char*, GateKind> table[] = {
      {"and", GateKind::ParAnd},  {"or", GateKind::ParOr},
      {"cand", GateKind::ChoAnd}, {"cor", GateKind::ChoOr},
      {"sand", GateKind::SeqAnd}, {"sor", GateKind::SeqOr},
      {"tand", GateKind::TogAnd}, {"tor", GateKind::TogOr},
  };
  for (auto& [name, kind] : table)
    if (label == name) return kind;
  return std::nullopt;
}

bool Literal::general() const {
  for (char c : atom)
    if (std::isalpha((unsigned char)c)) return std::isupper((unsigned char)c);
  return false;
}

static bool valid_atom(const std::string& s) {
  if (s.empty() || !std::isalpha((unsigned char)s[0])) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isalnum(c); });
}

std::optional<Literal> parse_literal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && s[0] == '~') {
    neg = true;
    s.erase(s.begin());
  }
  if (!valid_atom(s)) return std::nullopt;
  return Literal{s, neg};
}

const char* validation_code_name(ValidationCode c) {
  switch (c) {
    case ValidationCode::DUPLICATE_NODE_ID: return "DUPLICATE_NODE_ID";
    case ValidationCode::EDGE_UNKNOWN_NODE: return "EDGE_UNKNOWN_NODE";
    case ValidationCode::CYCLE: return "CYCLE";
    case ValidationCode::NO_ROOT: return "NO_ROOT";
    case ValidationCode::MULTIPLE_ROOTS: return "MULTIPLE_ROOTS";
    case ValidationCode::PORT_WITH_CHILD: return "PORT_WITH_CHILD";
    case ValidationCode::CLUSTER_UNKNOWN_GATE: return "CLUSTER_UNKNOWN_GATE";
    case ValidationCode::CLUSTER_OVERLAP: return "CLUSTER_OVERLAP";
    case ValidationCode::HETEROGENEOUS_CLUSTER:
      return "HETEROGENEOUS_CLUSTER";
    case ValidationCode::BAD_CLUSTER_ID: return "BAD_CLUSTER_ID";
    case ValidationCode::RANK_UNKNOWN_CLUSTER: return "RANK_UNKNOWN_CLUSTER";
    case ValidationCode::RANK_COVERS_SELECTIONAL:
      return "RANK_COVERS_SELECTIONAL";
    case ValidationCode::RANK_MISSING_PARALLEL_CLUSTER:
      return "RANK_MISSING_PARALLEL_CLUSTER";
    case ValidationCode::HETEROGENEOUS_RANK: return "HETEROGENEOUS_RANK";
  }
  return "?";
}

static std::string violations_message(const std::vector<Violation>& v) {
  std::ostringstream os;
  os << "invalid cirquent:";
  for (auto& x : v)
    os << "\n  " << validation_code_name(x.code) << ": " << x.detail;
  return os.str();
}

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error(violations_message(v)), violations(std::move(v)) {}

namespace {

struct DocView {
  std::map<NodeId, const Node*> nodes;
  std::map<NodeId, std::vector<NodeId>> children;
  std::vector<Cluster> clusters;  // after defaulting
  std::vector<std::vector<ClusterId>> ranks;
  NodeId root = 0;
  std::vector<NodeId> topo;
};

// Fills `out` and reports problems. Returns false if the document is too
// broken to continue (duplicate ids, dangling edges, cycles).
bool analyze(const CirquentDoc& doc, DocView& out,
             std::vector<Violation>& bad) {
  bool structure_ok = true;
  for (const Node& n : doc.nodes) {
    if (!out.nodes.emplace(n.id, &n).second) {
      bad.push_back({ValidationCode::DUPLICATE_NODE_ID,
                     "node id " + std::to_string(n.id) + " appears twice"});
      structure_ok = false;
    }
    out.children[n.id];
  }
  std::map<NodeId, int> indegree;
  for (auto& [from, to] : doc.edges) {
    if (!out.nodes.count(from) || !out.nodes.count(to)) {
      bad.push_back({ValidationCode::EDGE_UNKNOWN_NODE,
                     "edge (" + std::to_string(from) + "," +
                         std::to_string(to) + ") references a missing node"});
      structure_ok = false;
      continue;
    }
    out.children[from].push_back(to);
    indegree[to]++;
  }
  if (!structure_ok) return false;

  // Kahn's algorithm; leftover nodes are on cycles.
  {
    std::vector<NodeId> order;
    std::map<NodeId, int> deg = indegree;
    std::vector<NodeId> stack;
    for (auto& [id, _] : out.nodes)
      if (deg[id] == 0) stack.push_back(id);
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      order.push_back(id);
      for (NodeId c : out.children[id])
        if (--deg[c] == 0) stack.push_back(c);
    }
    if (order.size() != out.nodes.size()) {
      std::string ids;
      for (auto& [id, _] : out.nodes)
        if (deg[id] > 0) ids += (ids.empty() ? "" : ",") + std::to_string(id);
      bad.push_back({ValidationCode::CYCLE, "cycle through nodes " + ids});
      return false;
    }
    // children-first order
    std::reverse(order.begin(), order.end());
    out.topo = order;
  }

  // Root: the unique node that is an ancestor of all others. With acyclicity
  // this is exactly a unique indegree-0 node from which everything is
  // reachable.
  {
    std::vector<NodeId> sources;
    for (auto& [id, _] : out.nodes)
      if (indegree.find(id) == indegree.end()) sources.push_back(id);
    if (sources.empty()) {
      bad.push_back({ValidationCode::NO_ROOT, "no node without parents"});
      return false;
    }
    if (sources.size() > 1) {
      std::string ids;
      for (NodeId s : sources) ids += (ids.empty() ? "" : ",") + std::to_string(s);
      bad.push_back(
          {ValidationCode::MULTIPLE_ROOTS, "parentless nodes " + ids});
      return false;
    }
    out.root = sources[0];
  }

  for (auto& [id, node] : out.nodes) {
    if (node->is_port() && !out.children[id].empty())
      bad.push_back({ValidationCode::PORT_WITH_CHILD,
                     "port " + std::to_string(id) + " has children"});
  }

  // Clusters: explicit ones plus default singletons for unlisted gates.
  std::set<NodeId> clustered;
  if (doc.clusters) {
    for (const Cluster& cl : *doc.clusters) {
      Cluster copy = cl;
      std::sort(copy.members.begin(), copy.members.end());
      bool usable = true;
      for (NodeId m : copy.members) {
        auto it = out.nodes.find(m);
        if (it == out.nodes.end() || !it->second->is_gate()) {
          bad.push_back({ValidationCode::CLUSTER_UNKNOWN_GATE,
                         "cluster " + std::to_string(cl.id) + " member " +
                             std::to_string(m) + " is not a gate"});
          usable = false;
          continue;
        }
        if (!clustered.insert(m).second) {
          bad.push_back({ValidationCode::CLUSTER_OVERLAP,
                         "gate " + std::to_string(m) +
                             " belongs to more than one cluster"});
          usable = false;
        }
      }
      if (copy.members.empty()) {
        bad.push_back({ValidationCode::CLUSTER_UNKNOWN_GATE,
                       "cluster " + std::to_string(cl.id) + " is empty"});
        usable = false;
      }
      if (!usable) continue;
      if (copy.id != copy.members.front())
        bad.push_back({ValidationCode::BAD_CLUSTER_ID,
                       "cluster " + std::to_string(cl.id) +
                           " must carry its smallest member id " +
                           std::to_string(copy.members.front())});
      GateKind kind = out.nodes[copy.members[0]]->kind();
      int deg = (int)out.children[copy.members[0]].size();
      for (NodeId m : copy.members) {
        if (out.nodes[m]->kind() != kind)
          bad.push_back({ValidationCode::HETEROGENEOUS_CLUSTER,
                         "cluster " + std::to_string(cl.id) +
                             " mixes gate labels (gate " + std::to_string(m) +
                             ")"});
        else if ((int)out.children[m].size() != deg)
          bad.push_back({ValidationCode::HETEROGENEOUS_CLUSTER,
                         "cluster " + std::to_string(cl.id) +
                             " mixes outdegrees (gate " + std::to_string(m) +
                             ")"});
      }
      out.clusters.push_back(std::move(copy));
    }
  }
  for (auto& [id, node] : out.nodes)
    if (node->is_gate() && !clustered.count(id))
      out.clusters.push_back(Cluster{id, {id}});
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.id < b.id; });

  std::map<ClusterId, GateKind> ckind;
  for (const Cluster& cl : out.clusters)
    ckind[cl.id] = out.nodes[cl.members[0]]->kind();

  // Ranks: explicit or defaulted (or-clusters lowest, and-clusters highest).
  std::vector<ClusterId> par_or, par_and;
  for (const Cluster& cl : out.clusters) {
    if (ckind[cl.id] == GateKind::ParOr) par_or.push_back(cl.id);
    if (ckind[cl.id] == GateKind::ParAnd) par_and.push_back(cl.id);
  }
  if (doc.ranks) {
    out.ranks = *doc.ranks;
    std::set<ClusterId> ranked;
    for (std::size_t i = 0; i < out.ranks.size(); ++i) {
      auto& rank = out.ranks[i];
      std::sort(rank.begin(), rank.end());
      std::optional<GateKind> kind;
      for (ClusterId c : rank) {
        auto it = ckind.find(c);
        if (it == ckind.end()) {
          bad.push_back({ValidationCode::RANK_UNKNOWN_CLUSTER,
                         "rank " + std::to_string(i + 1) +
                             " references missing cluster " +
                             std::to_string(c)});
          continue;
        }
        if (is_selectional(it->second)) {
          bad.push_back({ValidationCode::RANK_COVERS_SELECTIONAL,
                         "rank " + std::to_string(i + 1) +
                             " contains selectional cluster " +
                             std::to_string(c)});
          continue;
        }
        if (!ranked.insert(c).second)
          bad.push_back({ValidationCode::RANK_MISSING_PARALLEL_CLUSTER,
                         "cluster " + std::to_string(c) +
                             " appears in more than one rank"});
        if (kind && *kind != it->second)
          bad.push_back({ValidationCode::HETEROGENEOUS_RANK,
                         "rank " + std::to_string(i + 1) +
                             " mixes conjunctive and disjunctive clusters"});
        kind = it->second;
      }
    }
    for (ClusterId c : par_or)
      if (!ranked.count(c))
        bad.push_back({ValidationCode::RANK_MISSING_PARALLEL_CLUSTER,
                       "parallel cluster " + std::to_string(c) +
                           " is not ranked"});
    for (ClusterId c : par_and)
      if (!ranked.count(c))
        bad.push_back({ValidationCode::RANK_MISSING_PARALLEL_CLUSTER,
                       "parallel cluster " + std::to_string(c) +
                           " is not ranked"});
  } else {
    if (!par_or.empty()) out.ranks.push_back(par_or);
    if (!par_and.empty()) out.ranks.push_back(par_and);
  }
  return true;
}

}  // namespace

std::vector<Violation> validate_diagnostics(const CirquentDoc& doc) {
  DocView view;
  std::vector<Violation> bad;
  analyze(doc, view, bad);
  return bad;
}

Cirquent validate(const CirquentDoc& doc) {
  DocView view;
  std::vector<Violation> bad;
  analyze(doc, view, bad);
  if (!bad.empty()) throw ValidationError(std::move(bad));

  Cirquent c;
  c.nodes_.reserve(view.nodes.size());
  for (auto& [id, node] : view.nodes) {
    c.index_[id] = c.nodes_.size();
    c.nodes_.push_back(*node);
  }
  c.children_ = std::move(view.children);
  c.clusters_ = std::move(view.clusters);
  for (const Cluster& cl : c.clusters_)
    for (NodeId m : cl.members) c.cluster_of_[m] = cl.id;
  c.ranks_ = std::move(view.ranks);
  for (std::size_t i = 0; i < c.ranks_.size(); ++i)
    for (ClusterId cl : c.ranks_[i]) c.rank_of_[cl] = (int)i + 1;
  c.root_ = view.root;
  c.topo_ = std::move(view.topo);
  return c;
}

const Node& Cirquent::node(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw std::out_of_range("no node " + std::to_string(id));
  return nodes_[it->second];
}

const std::vector<NodeId>& Cirquent::children(NodeId id) const {
  auto it = children_.find(id);
  if (it == children_.end())
    throw std::out_of_range("no node " + std::to_string(id));
  return it->second;
}

const Cluster* Cirquent::cluster(ClusterId id) const {
  for (const Cluster& cl : clusters_)
    if (cl.id == id) return &cl;
  return nullptr;
}

ClusterId Cirquent::cluster_of(NodeId gate) const {
  auto it = cluster_of_.find(gate);
  if (it == cluster_of_.end())
    throw std::out_of_range("no cluster for node " + std::to_string(gate));
  return it->second;
}

GateKind Cirquent::cluster_kind(ClusterId id) const {
  const Cluster* cl = cluster(id);
  if (!cl) throw std::out_of_range("no cluster " + std::to_string(id));
  return node(cl->members[0]).kind();
}

int Cirquent::cluster_outdegree(ClusterId id) const {
  const Cluster* cl = cluster(id);
  if (!cl) throw std::out_of_range("no cluster " + std::to_string(id));
  return outdegree(cl->members[0]);
}

int Cirquent::rank_of(ClusterId id) const {
  auto it = rank_of_.find(id);
  return it == rank_of_.end() ? 0 : it->second;
}

std::vector<NodeId> Cirquent::port_ids() const {
  std::vector<NodeId> out;
  for (const Node& n : nodes_)
    if (n.is_port()) out.push_back(n.id);
  return out;
}

std::vector<NodeId> Cirquent::gate_ids() const {
  std::vector<NodeId> out;
  for (const Node& n : nodes_)
    if (n.is_gate()) out.push_back(n.id);
  return out;
}

std::vector<std::string> Cirquent::atoms(bool general) const {
  std::set<std::string> set;
  for (const Node& n : nodes_)
    if (n.is_port() && n.literal().general() == general)
      set.insert(n.literal().atom);
  return {set.begin(), set.end()};
}

bool Cirquent::has_general_ports() const {
  for (const Node& n : nodes_)
    if (n.is_port() && n.literal().general()) return true;
  return false;
}

bool Cirquent::has_toggling() const {
  for (const Node& n : nodes_)
    if (n.is_gate() && is_toggling(n.kind())) return true;
  return false;
}

CirquentDoc Cirquent::to_doc() const {
  CirquentDoc doc;
  doc.nodes = nodes_;
  for (const Node& n : nodes_)
    for (NodeId c : children(n.id)) doc.edges.emplace_back(n.id, c);
  doc.clusters = clusters_;
  doc.ranks = ranks_;
  return doc;
}

Cirquent load_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("PARSE_ERROR: ") + e.what());
  }
  CirquentDoc doc;
  try {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
      throw ParseError("PARSE_ERROR: expected object with nodes and edges");
    for (auto& jn : j.at("nodes")) {
      Node n;
      n.id = jn.at("id").get<int>();
      std::string label = jn.at("label").get<std::string>();
      if (auto kind = gate_kind_from_label(label)) {
        n.payload = *kind;
      } else if (auto lit = parse_literal(label)) {
        n.payload = *lit;
      } else {
        throw ParseError("PARSE_ERROR: bad node label '" + label + "'");
      }
      doc.nodes.push_back(std::move(n));
    }
    for (auto& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2)
        throw ParseError("PARSE_ERROR: edge must be [from,to]");
      doc.edges.emplace_back(je[0].get<int>(), je[1].get<int>());
    }
    if (j.contains("clusters")) {
      doc.clusters.emplace();
      for (auto& jc : j.at("clusters")) {
        Cluster cl;
        cl.id = jc.at("id").get<int>();
        for (auto& m : jc.at("members")) cl.members.push_back(m.get<int>());
        doc.clusters->push_back(std::move(cl));
      }
    }
    if (j.contains("ranks")) {
      doc.ranks.emplace();
      for (auto& jr : j.at("ranks"))
        doc.ranks->push_back(jr.get<std::vector<int>>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("PARSE_ERROR: ") + e.what());
  }
  return validate(doc);
}

std::string emit_json(const Cirquent& c) {
  json j;
  j["nodes"] = json::array();
  for (const Node& n : c.nodes()) {
    std::string label =
        n.is_gate() ? gate_label(n.kind()) : n.literal().text();
    j["nodes"].push_back({{"id", n.id}, {"label", label}});
  }
  j["edges"] = json::array();
  for (const Node& n : c.nodes())
    for (NodeId child : c.children(n.id))
      j["edges"].push_back({n.id, child});
  j["clusters"] = json::array();
  for (const Cluster& cl : c.clusters())
    j["clusters"].push_back({{"id", cl.id}, {"members", cl.members}});
  j["ranks"] = c.ranks();
  return j.dump(2) + "\n";
}

std::string emit_dot(const Cirquent& c) {
  auto gate_symbol = [](GateKind k) -> const char* {
    switch (k) {
      case GateKind::ParAnd: return "∧";
      case GateKind::ParOr: return "∨";
      case GateKind::ChoAnd: return "⊓";
      case GateKind::ChoOr: return "⊔";
      case GateKind::SeqAnd: return "▵";
      case GateKind::SeqOr: return "▿";
      case GateKind::TogAnd: return "∧|";
      case GateKind::TogOr: return "∨|";
    }
    return "?";
  };
  std::ostringstream os;
  os << "digraph cirquent {\n";
  os << "  rankdir=BT;\n  ordering=out;\n";
  for (const Node& n : c.nodes()) {
    if (n.is_port()) {
      os << "  n" << n.id << " [shape=none,label=\"" << n.literal().text()
         << "\"];\n";
    } else {
      ClusterId cl = c.cluster_of(n.id);
      os << "  n" << n.id << " [shape=circle,label=\""
         << gate_symbol(n.kind()) << " " << cl;
      if (int r = c.rank_of(cl)) os << "^" << r;
      os << "\"];\n";
    }
  }
  for (const Node& n : c.nodes()) {
    int order = 1;
    for (NodeId child : c.children(n.id))
      os << "  n" << n.id << " -> n" << child << " [label=\"" << order++
         << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

// Canonical renumbering: preorder over the first-visit DFS from the root,
// following edge order.
std::map<NodeId, int> canonical_ids(const Cirquent& c) {
  std::map<NodeId, int> out;
  std::vector<NodeId> stack{c.root()};
  int next = 1;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (out.count(id)) continue;
    out[id] = next++;
    const auto& kids = c.children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      if (!out.count(*it)) stack.push_back(*it);
  }
  return out;
}

struct CanonicalForm {
  std::vector<std::pair<int, std::string>> labels;
  std::vector<std::vector<int>> edges;
  std::set<std::vector<int>> clusters;
  std::vector<std::set<std::vector<int>>> ranks;
};

CanonicalForm canonical_form(const Cirquent& c) {
  auto ids = canonical_ids(c);
  CanonicalForm f;
  for (const Node& n : c.nodes()) {
    std::string label =
        n.is_gate() ? gate_label(n.kind()) : n.literal().text();
    f.labels.emplace_back(ids.at(n.id), label);
  }
  std::sort(f.labels.begin(), f.labels.end());
  f.edges.resize(c.nodes().size() + 1);
  for (const Node& n : c.nodes())
    for (NodeId child : c.children(n.id))
      f.edges[ids.at(n.id)].push_back(ids.at(child));
  std::map<ClusterId, std::vector<int>> mapped;
  for (const Cluster& cl : c.clusters()) {
    std::vector<int> members;
    for (NodeId m : cl.members) members.push_back(ids.at(m));
    std::sort(members.begin(), members.end());
    f.clusters.insert(members);
    mapped[cl.id] = members;
  }
  for (const auto& rank : c.ranks()) {
    std::set<std::vector<int>> r;
    for (ClusterId cl : rank) r.insert(mapped.at(cl));
    f.ranks.push_back(std::move(r));
  }
  return f;
}

}  // namespace

bool structural_equal(const Cirquent& a, const Cirquent& b) {
  if (a.nodes().size() != b.nodes().size()) return false;
  CanonicalForm fa = canonical_form(a), fb = canonical_form(b);
  return fa.labels == fb.labels && fa.edges == fb.edges &&
         fa.clusters == fb.clusters && fa.ranks == fb.ranks;
}

}  // namespace cirq
