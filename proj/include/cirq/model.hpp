#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cirq {

// The eight gate kinds. "Parallel" gates carry no moves; the other six are
// selectional (moves pick an outgoing edge).
enum class GateKind : std::uint8_t {
  ParAnd,
  ParOr,
  ChoAnd,
  ChoOr,
  SeqAnd,
  SeqOr,
  TogAnd,
  TogOr,
};

bool is_parallel(GateKind k);
bool is_selectional(GateKind k);
bool is_conjunctive(GateKind k);
inline bool is_disjunctive(GateKind k) { return !is_conjunctive(k); }
bool is_choice(GateKind k);
bool is_sequential(GateKind k);
bool is_toggling(GateKind k);
GateKind dual(GateKind k);

// Text labels used in the JSON format.
const char* gate_label(GateKind k);
std::optional<GateKind> gate_kind_from_label(const std::string& label);

// A literal: an atom, possibly negated. An atom is general iff its first
// alphabetic character is uppercase; elementary otherwise. The text form uses
// a `~` prefix for negation.
struct Literal {
  std::string atom;
  bool negated = false;

  bool general() const;
  bool elementary() const { return !general(); }
  Literal opposite() const { return Literal{atom, !negated}; }
  std::string text() const { return negated ? "~" + atom : atom; }

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

// Parses "p", "~P", etc. Atom must match [A-Za-z][A-Za-z0-9]*.
std::optional<Literal> parse_literal(const std::string& text);

using NodeId = int;
using ClusterId = int;

struct Node {
  NodeId id = 0;
  std::variant<Literal, GateKind> payload;

  bool is_port() const { return payload.index() == 0; }
  bool is_gate() const { return payload.index() == 1; }
  const Literal& literal() const { return std::get<Literal>(payload); }
  GateKind kind() const { return std::get<GateKind>(payload); }
};

struct Cluster {
  ClusterId id = 0;
  std::vector<NodeId> members;  // sorted ascending
};

// Raw, not-yet-validated cirquent data, as read from JSON or built by hand.
// `clusters` lists only the clusters given explicitly; gates not mentioned
// default to singleton clusters. An absent `ranks` defaults to or-clusters in
// rank 1 and and-clusters in rank 2 (a single rank if only one parallel type
// is present).
struct CirquentDoc {
  std::vector<Node> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::optional<std::vector<Cluster>> clusters;
  std::optional<std::vector<std::vector<ClusterId>>> ranks;
};

enum class ValidationCode {
  DUPLICATE_NODE_ID,
  EDGE_UNKNOWN_NODE,
  CYCLE,
  NO_ROOT,
  MULTIPLE_ROOTS,
  PORT_WITH_CHILD,
  CLUSTER_UNKNOWN_GATE,
  CLUSTER_OVERLAP,
  HETEROGENEOUS_CLUSTER,
  BAD_CLUSTER_ID,
  RANK_UNKNOWN_CLUSTER,
  RANK_COVERS_SELECTIONAL,
  RANK_MISSING_PARALLEL_CLUSTER,
  HETEROGENEOUS_RANK,
};

const char* validation_code_name(ValidationCode c);

struct Violation {
  ValidationCode code;
  std::string detail;  // includes the offending node/cluster ids
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<Violation> v);
  std::vector<Violation> violations;
};

// A validated, immutable cirquent. Construct through validate() only.
class Cirquent {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const;
  bool has_node(NodeId id) const { return index_.count(id) != 0; }
  // Dense position of the node in nodes(), for array-indexed evaluation.
  std::size_t node_index(NodeId id) const { return index_.at(id); }
  NodeId root() const { return root_; }

  // Out-edges in left-to-right order (order numbers 1..outdegree).
  const std::vector<NodeId>& children(NodeId id) const;
  int outdegree(NodeId id) const { return (int)children(id).size(); }

  const std::vector<Cluster>& clusters() const { return clusters_; }
  const Cluster* cluster(ClusterId id) const;
  // Cluster the gate belongs to.
  ClusterId cluster_of(NodeId gate) const;
  GateKind cluster_kind(ClusterId id) const;
  int cluster_outdegree(ClusterId id) const;

  // ranks()[i] is rank i+1 (rank 1 is lowest), each a sorted set of parallel
  // cluster ids.
  const std::vector<std::vector<ClusterId>>& ranks() const { return ranks_; }
  // 1-based rank of a parallel cluster, 0 if the cluster is selectional.
  int rank_of(ClusterId id) const;

  std::vector<NodeId> port_ids() const;
  std::vector<NodeId> gate_ids() const;
  // Sorted, deduplicated atom names of the given kind appearing on ports.
  std::vector<std::string> atoms(bool general) const;
  bool has_general_ports() const;
  bool has_toggling() const;

  // Nodes in an order where children precede parents.
  const std::vector<NodeId>& topo_order() const { return topo_; }

  CirquentDoc to_doc() const;

 private:
  friend Cirquent validate(const CirquentDoc&);
  std::vector<Node> nodes_;
  std::map<NodeId, std::size_t> index_;
  std::map<NodeId, std::vector<NodeId>> children_;
  std::vector<Cluster> clusters_;
  std::map<NodeId, ClusterId> cluster_of_;
  std::vector<std::vector<ClusterId>> ranks_;
  std::map<ClusterId, int> rank_of_;
  NodeId root_ = 0;
  std::vector<NodeId> topo_;
};

// Returns every violated invariant; empty means the document is valid.
std::vector<Violation> validate_diagnostics(const CirquentDoc& doc);
// Throws ValidationError listing all violations.
Cirquent validate(const CirquentDoc& doc);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON round trip. emit_json writes the canonical form: nodes sorted by id,
// edges grouped by source (per-source order preserved), all clusters and
// ranks explicit.
Cirquent load_json(const std::string& text);
std::string emit_json(const Cirquent& c);

// Deterministic DOT export in the figure style: literals at ports, gate
// symbol plus cluster id (and rank superscript for parallel gates).
std::string emit_dot(const Cirquent& c);

// True iff the two cirquents are identical up to renumbering of nodes: same
// shape under the canonical root-first traversal, same labels, same cluster
// partition and rank order.
bool structural_equal(const Cirquent& a, const Cirquent& b);

}  // namespace cirq
