#ifndef SST_COUNTER_HPP_
#define SST_COUNTER_HPP_

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sst/graph.hpp"
#include "sst/labeler.hpp"
#include "sst/traits.hpp"

namespace sst {

struct SstVectorEntry {
  int label_id;
  long count;
};

// Sparse multiset of SST labels for one graph change.
struct SstVector {
  std::vector<SstVectorEntry> entries;  // sorted by label_id, counts >= 1
  GraphChange change;
  int k = 0;
  long total_contexts = 0;
};

struct CounterConfig {
  int k = 3;  // SST size, 2..9
  std::vector<TraitSpec> traits;
};

// Enumerates every k-node set S containing the anchors whose induced subgraph
// (undirected skeleton) is connected, exactly once. Anchors must be present
// in g; with two anchors the pair is normally adjacent (an edge change in the
// state where the edge exists) — if not, emitted sets are connectivity
// checked. `visit` receives the context with anchors first (change order),
// remaining nodes ascending.
void enumerate_contexts(const Graph& g, const std::vector<NodeId>& anchors, int k,
                        const std::function<void(const NodeSet&)>& visit);

std::vector<NodeSet> enumerate_contexts(const Graph& g,
                                        const std::vector<NodeId>& anchors, int k);

// Counts the SSTs induced by one change. Owns per-run caches; not thread-safe
// (use one instance per worker). The graph is mutated while counting additions
// and restored before returning.
class TransitionCounter {
 public:
  explicit TransitionCounter(CounterConfig cfg);

  // H -> context count, deterministically ordered.
  std::map<std::string, long> count_labels(Graph& g, const GraphChange& c);

  // Counts contexts around the (present) edge (u,v) marked as the new edge.
  // Used by the temporal predictor for repeat interactions.
  std::map<std::string, long> count_labels_marked_edge(Graph& g, NodeId u, NodeId v);

  // Edge colors are memoized per change by default; pipelines whose edge
  // traits are stable across many changes can retain the memo and clear it
  // explicitly when an updater rewrites traits.
  void set_edge_colors_stable(bool stable) { edge_colors_stable_ = stable; }
  void clear_edge_color_cache() { edge_color_memo_.clear(); }

  const CounterConfig& config() const { return cfg_; }

 private:
  std::map<std::string, long> count_in_state(Graph& state, const GraphChange& c);
  const std::string* label_context(const Graph& state, const NodeSet& ctx,
                                   const GraphChange& c);
  int node_key_id(const Graph& state, NodeId v);
  int edge_color_id(const Graph& state, NodeId u, NodeId v);

  CounterConfig cfg_;
  bool has_rank_traits_ = false;
  std::vector<TraitSpec> node_class_specs_, edge_class_specs_;

  // per-run interners (ids are private to this counter; H strings are global)
  std::unordered_map<std::string, int> node_key_ids_, edge_key_ids_;
  std::vector<std::string> node_keys_, edge_keys_;
  std::unordered_map<std::string, std::string> h_cache_;  // packed context -> H

  // per-change memos
  std::vector<int> node_key_memo_, node_key_stamp_;
  int stamp_ = 0;
  std::unordered_map<std::uint64_t, int> edge_color_memo_;
  bool edge_colors_stable_ = false;

  // scratch
  std::string packed_;
  NodeSet ctx_scratch_;
};

// Convenience one-shot counting; label ids interned into `registry` in
// deterministic (H-sorted within change) order.
SstVector count_transitions(Graph& g, const GraphChange& c, const CounterConfig& cfg,
                            LabelRegistry& registry);

SstVector to_sst_vector(const std::map<std::string, long>& counts,
                        LabelRegistry& registry, const GraphChange& c, int k);

}  // namespace sst

#endif  // SST_COUNTER_HPP_
