#ifndef SST_LABELER_HPP_
#define SST_LABELER_HPP_

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sst/graph.hpp"
#include "sst/traits.hpp"

namespace sst {

struct UnsupportedSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidContext : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A small graph over local indices 0..n-1 with node/edge color content keys
// and one uniquely marked element (the changed node or edge). Content keys
// are trait value combinations; the mark is folded into the element's color.
struct ColoredGraph {
  bool directed = false;
  int n = 0;
  std::vector<std::string> node_key;              // content key per node
  std::vector<std::pair<int, int>> edges;         // undirected entries have u < v
  std::vector<std::string> edge_key;              // parallel to edges
  int marked_node = -1;                           // local index, or
  int marked_edge = -1;                           // index into edges

  void add_edge(int u, int v, std::string key = "");
};

// Stable 1-WL colors (node colors refined by multisets of (neighbor color,
// edge color, direction) triples). Dense ids; canonical for isomorphic inputs.
std::vector<int> stable_colors(const ColoredGraph& cg);

// Canonical node ordering via individualization-refinement: position of each
// node in the lexicographically minimal serialization.
std::vector<int> canonical_ordering(const ColoredGraph& cg);

// The canonical label string H. Encodes directedness, node count, node color
// keys in canonical order, the edge list with edge color keys, and the marked
// element's position. Equal H iff the colored graphs are isomorphic by a
// mark- and color-preserving mapping.
std::string canonical_string(const ColoredGraph& cg);

// H <-> dense integer ids, shared across a run. Thread-safe.
class LabelRegistry {
 public:
  int intern(const std::string& h);
  std::optional<int> find(const std::string& h) const;
  const std::string& label_string(int id) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, int> ids_;
  std::vector<const std::string*> by_id_;
};

// Parsed form of a label string, for reports and rendering.
struct DecodedSst {
  bool directed = false;
  int n = 0;
  std::vector<std::string> node_keys;  // marked element keys keep their '*' prefix
  struct Edge {
    int u, v;
    std::string key;
    bool marked;
  };
  std::vector<Edge> edges;
  int marked_node = -1;
  std::pair<int, int> marked_edge{-1, -1};
};

DecodedSst decode_label(const std::string& h);
std::string describe_label(const std::string& h);
std::string label_to_dot(const std::string& h, const std::string& name);

// Labels the transition (g, c) restricted to the context s. Additions are
// labeled on the after-state subgraph, deletions on the before-state subgraph,
// so the marked element always exists in the encoded graph. Rank traits are
// projected to within-s ranks before coloring. g is passed in its before
// state and is not modified.
std::string label_transition(const Graph& g, const NodeSet& s, const GraphChange& c,
                             const std::vector<TraitSpec>& traits);

// Builds the colored graph for a context of `state` (the graph in which the
// marked element exists). Local indices follow the order of `ctx`.
ColoredGraph build_colored_graph(const Graph& state, const NodeSet& ctx,
                                 const GraphChange& c,
                                 const std::vector<TraitSpec>& traits);

inline constexpr int kMaxLabelNodes = 9;

}  // namespace sst

#endif  // SST_LABELER_HPP_
