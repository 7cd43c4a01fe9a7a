#ifndef SST_GRAPH_HPP_
#define SST_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace sst {

using NodeId = int;

// Node sets are kept as sorted, duplicate-free id lists.
using NodeSet = std::vector<NodeId>;

// Class traits carry string values; rank traits carry doubles.
using TraitValue = std::variant<std::string, double>;

std::string trait_value_to_string(const TraitValue& v);

struct InvalidChange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChangeKind { EdgeAddition, EdgeDeletion, NodeAddition, NodeDeletion };

const char* change_kind_name(ChangeKind k);

struct TraitAssignment {
  std::string trait;
  TraitValue value;
};

// One atomic change to a graph. Edge variants anchor on both endpoints; node
// variants anchor on the node and carry the incident edge list (the edges by
// which an added node connects, or the edges a deleted node loses).
struct GraphChange {
  ChangeKind kind;
  NodeId u = -1, v = -1;  // edge variants
  NodeId node = -1;       // node variants
  std::vector<std::pair<NodeId, NodeId>> incident_edges;
  std::vector<TraitAssignment> node_traits;  // traits for an added node
  std::vector<TraitAssignment> edge_traits;  // traits for an added edge (all incident edges for node additions)

  static GraphChange edge_addition(NodeId u, NodeId v,
                                   std::vector<TraitAssignment> traits = {});
  static GraphChange edge_deletion(NodeId u, NodeId v);
  static GraphChange node_addition(NodeId node,
                                   std::vector<std::pair<NodeId, NodeId>> edges,
                                   std::vector<TraitAssignment> node_traits = {},
                                   std::vector<TraitAssignment> edge_traits = {});
  static GraphChange node_deletion(NodeId node);

  std::vector<NodeId> anchors() const;
};

// Captures everything needed to restore a graph after apply_change.
struct UndoRecord {
  GraphChange change;
  std::vector<std::pair<NodeId, NodeId>> removed_edges;
  std::vector<std::pair<std::string, std::pair<NodeId, TraitValue>>> saved_node_traits;
  std::vector<std::pair<std::string, std::pair<std::pair<NodeId, NodeId>, TraitValue>>> saved_edge_traits;
  bool grew_node_table = false;
};

// Simple directed/undirected graph over dense integer node ids with per-trait
// value stores. No self-loops, no duplicate edges. Undirected graphs treat
// (u,v) and (v,u) as the same edge.
class Graph {
 public:
  explicit Graph(bool directed, int node_count = 0);

  bool directed() const { return directed_; }
  int node_table_size() const { return static_cast<int>(out_.size()); }
  int node_count() const { return active_count_; }
  std::size_t edge_count() const { return edge_count_; }

  bool has_node(NodeId v) const {
    return v >= 0 && v < node_table_size() && active_[v];
  }
  std::vector<NodeId> nodes() const;

  // Appends `count` fresh active nodes, returns the first new id.
  NodeId add_nodes(int count = 1);

  bool has_edge(NodeId u, NodeId v) const;
  void add_edge(NodeId u, NodeId v);
  void remove_edge(NodeId u, NodeId v);

  // Edge list in deterministic (u,v)-sorted order; undirected edges u < v.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Undirected: all neighbors. Directed: out-list only.
  std::span<const NodeId> out_neighbors(NodeId v) const { return check(v), out_[v]; }
  std::span<const NodeId> in_neighbors(NodeId v) const { return check(v), in_[v]; }
  std::span<const NodeId> neighbors(NodeId v) const { return out_neighbors(v); }
  // Union of in/out neighbors (sorted, deduped); identity for undirected.
  const std::vector<NodeId>& skeleton_neighbors(NodeId v) const;

  int degree(NodeId v) const;  // undirected degree / directed total degree
  int out_degree(NodeId v) const { return check(v), static_cast<int>(out_[v].size()); }
  int in_degree(NodeId v) const { return check(v), static_cast<int>(in_[v].size()); }

  // Trait stores.
  void set_node_trait(NodeId v, const std::string& trait, TraitValue value);
  std::optional<TraitValue> node_trait(NodeId v, const std::string& trait) const;
  void clear_node_trait(NodeId v, const std::string& trait);
  void set_edge_trait(NodeId u, NodeId v, const std::string& trait, TraitValue value);
  std::optional<TraitValue> edge_trait(NodeId u, NodeId v, const std::string& trait) const;
  void clear_edge_trait(NodeId u, NodeId v, const std::string& trait);

  // Deterministic full dump (nodes, edges, traits); equal strings iff equal graphs.
  std::string serialize() const;

  // BFS distances on the undirected skeleton, capped at max_hops (-1 beyond).
  std::vector<int> hop_distances(NodeId source, int max_hops) const;

 private:
  friend UndoRecord apply_change(Graph&, const GraphChange&);
  friend void revert_change(Graph&, const UndoRecord&);
  friend Graph induced_subgraph(const Graph&, const NodeSet&);

  void check(NodeId v) const {
    if (!has_node(v)) throw std::invalid_argument("unknown node id " + std::to_string(v));
  }
  void activate(NodeId v);
  void deactivate(NodeId v);
  std::uint64_t edge_key(NodeId u, NodeId v) const;
  void erase_edge_traits(NodeId u, NodeId v);

  bool directed_;
  int active_count_ = 0;
  std::vector<bool> active_;
  std::vector<std::vector<NodeId>> out_, in_;
  mutable std::vector<std::vector<NodeId>> skeleton_;  // lazy, directed only
  mutable std::vector<bool> skeleton_fresh_;
  std::size_t edge_count_ = 0;
  std::map<std::string, std::unordered_map<NodeId, TraitValue>> node_traits_;
  std::map<std::string, std::unordered_map<std::uint64_t, TraitValue>> edge_traits_;
};

// Subgraph induced by s: node set is exactly s (original ids), edges are those
// of g with both endpoints in s, trait values restricted to s.
Graph induced_subgraph(const Graph& g, const NodeSet& s);

struct ClassifiedPair {
  NodeId u, v;
  bool is_edge;
};

// All distinct pairs within k hops on the undirected skeleton. Undirected
// graphs yield unordered pairs (u < v); directed graphs yield both orders.
std::vector<ClassifiedPair> within_k_hops(const Graph& g, int k);

UndoRecord apply_change(Graph& g, const GraphChange& c);
void revert_change(Graph& g, const UndoRecord& undo);

}  // namespace sst

#endif  // SST_GRAPH_HPP_
