#include "sst/counter.hpp"

#include <algorithm>

namespace sst {

namespace {

// ESU-style recursive extension (Wernicke's exclusive-neighborhood rule,
// seeded with the anchor set instead of a single root): every connected
// superset of the seed is generated exactly once.
class Enumerator {
 public:
  Enumerator(const Graph& g, const std::vector<NodeId>& anchors, int k,
             const std::function<void(const NodeSet&)>& visit)
      : g_(g), k_(k), visit_(visit), anchor_count_(anchors.size()),
        in_closure_(g.node_table_size(), false) {
    for (NodeId a : anchors) {
      current_.push_back(a);
      in_closure_[a] = true;
    }
    // a two-anchor seed that is not adjacent needs a final connectivity check
    needs_check_ = anchors.size() == 2 &&
                   !std::binary_search(g.skeleton_neighbors(anchors[0]).begin(),
                                       g.skeleton_neighbors(anchors[0]).end(),
                                       anchors[1]);
  }

  void run() {
    std::vector<NodeId> ext;
    for (std::size_t i = 0; i < anchor_count_; ++i)
      for (NodeId w : g_.skeleton_neighbors(current_[i]))
        if (!in_closure_[w]) {
          in_closure_[w] = true;
          ext.push_back(w);
        }
    std::sort(ext.begin(), ext.end());
    extend(ext);
  }

 private:
  void emit() {
    scratch_.assign(current_.begin(), current_.end());
    std::sort(scratch_.begin() + anchor_count_, scratch_.end());
    if (needs_check_ && !connected(scratch_)) return;
    visit_(scratch_);
  }

  bool connected(const NodeSet& ctx) const {
    std::vector<NodeId> stack{ctx[0]};
    std::vector<bool> seen(ctx.size(), false);
    seen[0] = true;
    std::size_t found = 1;
    auto idx = [&](NodeId v) -> int {
      for (std::size_t i = 0; i < ctx.size(); ++i)
        if (ctx[i] == v) return static_cast<int>(i);
      return -1;
    };
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g_.skeleton_neighbors(v)) {
        int i = idx(w);
        if (i >= 0 && !seen[i]) {
          seen[i] = true;
          ++found;
          stack.push_back(w);
        }
      }
    }
    return found == ctx.size();
  }

  void extend(const std::vector<NodeId>& ext) {
    if (static_cast<int>(current_.size()) == k_) {
      emit();
      return;
    }
    for (std::size_t i = 0; i < ext.size(); ++i) {
      NodeId w = ext[i];
      std::vector<NodeId> child(ext.begin() + i + 1, ext.end());
      const std::size_t added_from = fresh_.size();
      for (NodeId u : g_.skeleton_neighbors(w))
        if (!in_closure_[u]) {
          in_closure_[u] = true;
          fresh_.push_back(u);
          child.push_back(u);
        }
      current_.push_back(w);
      extend(child);
      current_.pop_back();
      while (fresh_.size() > added_from) {
        in_closure_[fresh_.back()] = false;
        fresh_.pop_back();
      }
    }
  }

  const Graph& g_;
  int k_;
  const std::function<void(const NodeSet&)>& visit_;
  std::size_t anchor_count_;
  std::vector<bool> in_closure_;
  std::vector<NodeId> current_, fresh_;
  NodeSet scratch_;
  bool needs_check_ = false;
};

}  // namespace

void enumerate_contexts(const Graph& g, const std::vector<NodeId>& anchors, int k,
                        const std::function<void(const NodeSet&)>& visit) {
  if (anchors.empty() || anchors.size() > 2)
    throw std::invalid_argument("one or two anchors required");
  if (k < static_cast<int>(anchors.size()))
    throw std::invalid_argument("k smaller than the anchor set");
  for (NodeId a : anchors)
    if (!g.has_node(a)) throw std::invalid_argument("anchor not in graph");
  if (static_cast<int>(anchors.size()) == k) {
    const bool adjacent =
        anchors.size() == 1 ||
        std::binary_search(g.skeleton_neighbors(anchors[0]).begin(),
                           g.skeleton_neighbors(anchors[0]).end(), anchors[1]);
    if (adjacent) visit(NodeSet(anchors.begin(), anchors.end()));
    return;
  }
  Enumerator e(g, anchors, k, visit);
  e.run();
}

std::vector<NodeSet> enumerate_contexts(const Graph& g,
                                        const std::vector<NodeId>& anchors, int k) {
  std::vector<NodeSet> out;
  enumerate_contexts(g, anchors, k, [&](const NodeSet& s) { out.push_back(s); });
  return out;
}

TransitionCounter::TransitionCounter(CounterConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.k < 2 || cfg_.k > kMaxLabelNodes)
    throw std::invalid_argument("SST size k must be in 2..9");
  std::sort(cfg_.traits.begin(), cfg_.traits.end(),
            [](const TraitSpec& a, const TraitSpec& b) { return a.name < b.name; });
  for (const auto& t : cfg_.traits) {
    validate_trait_spec(t);
    if (t.kind == TraitKind::Rank) has_rank_traits_ = true;
    else if (t.scope == TraitScope::Node) node_class_specs_.push_back(t);
    else edge_class_specs_.push_back(t);
  }
}

int TransitionCounter::node_key_id(const Graph& state, NodeId v) {
  if (node_key_stamp_.size() < static_cast<std::size_t>(state.node_table_size())) {
    node_key_stamp_.resize(state.node_table_size(), 0);
    node_key_memo_.resize(state.node_table_size(), 0);
  }
  if (node_key_stamp_[v] == stamp_) return node_key_memo_[v];
  std::string key;
  for (const auto& spec : node_class_specs_) {
    auto val = state.node_trait(v, spec.name);
    if (!val) continue;
    if (!key.empty()) key += ',';
    key += spec.name;
    key += '=';
    key += trait_value_to_string(*val);
  }
  auto [it, inserted] = node_key_ids_.try_emplace(key, static_cast<int>(node_keys_.size()));
  if (inserted) node_keys_.push_back(key);
  node_key_stamp_[v] = stamp_;
  node_key_memo_[v] = it->second;
  return it->second;
}

int TransitionCounter::edge_color_id(const Graph& state, NodeId u, NodeId v) {
  NodeId a = u, b = v;
  if (!state.directed() && a > b) std::swap(a, b);
  const std::uint64_t key64 =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
      static_cast<std::uint32_t>(b);
  auto mit = edge_color_memo_.find(key64);
  if (mit != edge_color_memo_.end()) return mit->second;
  std::string key;
  for (const auto& spec : edge_class_specs_) {
    auto val = state.edge_trait(u, v, spec.name);
    if (!val) continue;
    if (!key.empty()) key += ',';
    key += spec.name;
    key += '=';
    key += trait_value_to_string(*val);
  }
  auto [it, inserted] = edge_key_ids_.try_emplace(key, static_cast<int>(edge_keys_.size()));
  if (inserted) edge_keys_.push_back(key);
  edge_color_memo_.emplace(key64, it->second);
  return it->second;
}

const std::string* TransitionCounter::label_context(const Graph& state, const NodeSet& ctx,
                                                    const GraphChange& c) {
  if (has_rank_traits_) {
    // slow path: within-context rank projection, no structural caching
    NodeSet sorted = ctx;
    std::sort(sorted.begin(), sorted.end());
    ColoredGraph cg = build_colored_graph(state, sorted, c, cfg_.traits);
    auto [it, ignored] = h_cache_.try_emplace(canonical_string(cg), "");
    return &it->first;
  }

  const int n = static_cast<int>(ctx.size());
  packed_.clear();
  packed_.push_back(static_cast<char>(n));
  packed_.push_back(state.directed() ? 1 : 0);
  int key_ids[kMaxLabelNodes];
  for (int i = 0; i < n; ++i) {
    key_ids[i] = node_key_id(state, ctx[i]);
    packed_.push_back(static_cast<char>(key_ids[i] & 0xff));
    packed_.push_back(static_cast<char>((key_ids[i] >> 8) & 0xff));
  }
  int adj[kMaxLabelNodes][kMaxLabelNodes] = {};
  for (int i = 0; i < n; ++i)
    for (int j = (state.directed() ? 0 : i + 1); j < n; ++j) {
      if (i == j) continue;
      if (!state.has_edge(ctx[i], ctx[j])) continue;
      adj[i][j] = edge_color_id(state, ctx[i], ctx[j]) + 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = (state.directed() ? 0 : i + 1); j < n; ++j) {
      if (i == j) continue;
      packed_.push_back(static_cast<char>(adj[i][j] & 0xff));
      packed_.push_back(static_cast<char>((adj[i][j] >> 8) & 0xff));
    }
  const bool node_mark =
      c.kind == ChangeKind::NodeAddition || c.kind == ChangeKind::NodeDeletion;
  packed_.push_back(node_mark ? 'n' : 'e');

  auto it = h_cache_.find(packed_);
  if (it != h_cache_.end()) return &it->second;

  ColoredGraph cg;
  cg.directed = state.directed();
  cg.n = n;
  cg.node_key.resize(n);
  for (int i = 0; i < n; ++i) cg.node_key[i] = node_keys_[key_ids[i]];
  for (int i = 0; i < n; ++i)
    for (int j = (state.directed() ? 0 : i + 1); j < n; ++j)
      if (i != j && adj[i][j] != 0) cg.add_edge(i, j, edge_keys_[adj[i][j] - 1]);
  if (node_mark) {
    cg.marked_node = 0;  // ctx is anchors-first
  } else {
    // anchors occupy local 0 and 1; undirected storage normalizes to (0,1)
    for (std::size_t e = 0; e < cg.edges.size(); ++e)
      if (cg.edges[e] == std::make_pair(0, 1)) {
        cg.marked_edge = static_cast<int>(e);
        break;
      }
    if (cg.marked_edge < 0) throw std::logic_error("anchor edge missing from context");
  }
  auto [ins, ignored] = h_cache_.emplace(packed_, canonical_string(cg));
  return &ins->second;
}

std::map<std::string, long> TransitionCounter::count_in_state(Graph& state,
                                                              const GraphChange& c) {
  ++stamp_;
  if (!edge_colors_stable_) edge_color_memo_.clear();
  std::unordered_map<const std::string*, long> counts;
  enumerate_contexts(state, c.anchors(), cfg_.k, [&](const NodeSet& ctx) {
    ++counts[label_context(state, ctx, c)];
  });
  // aggregate by string value: distinct cache slots may hold equal H strings
  std::map<std::string, long> out;
  for (const auto& [h, n] : counts) out[*h] += n;
  return out;
}

std::map<std::string, long> TransitionCounter::count_labels(Graph& g, const GraphChange& c) {
  const bool addition =
      c.kind == ChangeKind::EdgeAddition || c.kind == ChangeKind::NodeAddition;
  if (addition) {
    UndoRecord undo = apply_change(g, c);
    std::map<std::string, long> out;
    try {
      out = count_in_state(g, c);
    } catch (...) {
      revert_change(g, undo);
      throw;
    }
    revert_change(g, undo);
    return out;
  }
  if (c.kind == ChangeKind::EdgeDeletion && !g.has_edge(c.u, c.v))
    throw InvalidChange("edge deletion requires a present edge");
  if (c.kind == ChangeKind::NodeDeletion && !g.has_node(c.node))
    throw InvalidChange("node deletion on missing node");
  return count_in_state(g, c);
}

std::map<std::string, long> TransitionCounter::count_labels_marked_edge(Graph& g,
                                                                        NodeId u, NodeId v) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("marked edge must be present");
  GraphChange c = GraphChange::edge_addition(u, v);
  return count_in_state(g, c);
}

SstVector to_sst_vector(const std::map<std::string, long>& counts,
                        LabelRegistry& registry, const GraphChange& c, int k) {
  SstVector vec;
  vec.change = c;
  vec.k = k;
  for (const auto& [h, n] : counts) {
    vec.entries.push_back({registry.intern(h), n});
    vec.total_contexts += n;
  }
  std::sort(vec.entries.begin(), vec.entries.end(),
            [](const SstVectorEntry& a, const SstVectorEntry& b) {
              return a.label_id < b.label_id;
            });
  return vec;
}

SstVector count_transitions(Graph& g, const GraphChange& c, const CounterConfig& cfg,
                            LabelRegistry& registry) {
  TransitionCounter counter(cfg);
  return to_sst_vector(counter.count_labels(g, c), registry, c, cfg.k);
}

}  // namespace sst
