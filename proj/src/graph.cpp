#include "sst/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <sstream>

namespace sst {

std::string trait_value_to_string(const TraitValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
  return buf;
}

const char* change_kind_name(ChangeKind k) {
  switch (k) {
    case ChangeKind::EdgeAddition: return "edge_addition";
    case ChangeKind::EdgeDeletion: return "edge_deletion";
    case ChangeKind::NodeAddition: return "node_addition";
    case ChangeKind::NodeDeletion: return "node_deletion";
  }
  return "?";
}

GraphChange GraphChange::edge_addition(NodeId u, NodeId v,
                                       std::vector<TraitAssignment> traits) {
  GraphChange c;
  c.kind = ChangeKind::EdgeAddition;
  c.u = u;
  c.v = v;
  c.edge_traits = std::move(traits);
  return c;
}

GraphChange GraphChange::edge_deletion(NodeId u, NodeId v) {
  GraphChange c;
  c.kind = ChangeKind::EdgeDeletion;
  c.u = u;
  c.v = v;
  return c;
}

GraphChange GraphChange::node_addition(NodeId node,
                                       std::vector<std::pair<NodeId, NodeId>> edges,
                                       std::vector<TraitAssignment> node_traits,
                                       std::vector<TraitAssignment> edge_traits) {
  GraphChange c;
  c.kind = ChangeKind::NodeAddition;
  c.node = node;
  c.incident_edges = std::move(edges);
  c.node_traits = std::move(node_traits);
  c.edge_traits = std::move(edge_traits);
  return c;
}

GraphChange GraphChange::node_deletion(NodeId node) {
  GraphChange c;
  c.kind = ChangeKind::NodeDeletion;
  c.node = node;
  return c;
}

std::vector<NodeId> GraphChange::anchors() const {
  if (kind == ChangeKind::EdgeAddition || kind == ChangeKind::EdgeDeletion)
    return {u, v};
  return {node};
}

Graph::Graph(bool directed, int node_count) : directed_(directed) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  add_nodes(node_count);
}

std::vector<NodeId> Graph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(active_count_);
  for (NodeId v = 0; v < node_table_size(); ++v)
    if (active_[v]) out.push_back(v);
  return out;
}

NodeId Graph::add_nodes(int count) {
  NodeId first = node_table_size();
  for (int i = 0; i < count; ++i) {
    active_.push_back(true);
    out_.emplace_back();
    in_.emplace_back();
    skeleton_.emplace_back();
    skeleton_fresh_.push_back(false);
    ++active_count_;
  }
  return first;
}

void Graph::activate(NodeId v) {
  if (v == node_table_size()) {
    add_nodes(1);
    return;
  }
  if (v < 0 || v > node_table_size()) throw std::invalid_argument("bad node id");
  if (active_[v]) throw std::invalid_argument("node already active");
  active_[v] = true;
  ++active_count_;
}

void Graph::deactivate(NodeId v) {
  check(v);
  if (!out_[v].empty() || !in_[v].empty())
    throw std::invalid_argument("deactivating node with incident edges");
  active_[v] = false;
  --active_count_;
  for (auto& [name, store] : node_traits_) store.erase(v);
}

std::uint64_t Graph::edge_key(NodeId u, NodeId v) const {
  if (!directed_ && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

static bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

static void sorted_insert(std::vector<NodeId>& v, NodeId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

static void sorted_erase(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check(u);
  check(v);
  return sorted_contains(out_[u], v);
}

void Graph::add_edge(NodeId u, NodeId v) {
  check(u);
  check(v);
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (sorted_contains(out_[u], v)) throw std::invalid_argument("duplicate edge");
  sorted_insert(out_[u], v);
  if (directed_) {
    sorted_insert(in_[v], u);
  } else {
    sorted_insert(out_[v], u);
  }
  skeleton_fresh_[u] = skeleton_fresh_[v] = false;
  ++edge_count_;
}

void Graph::remove_edge(NodeId u, NodeId v) {
  check(u);
  check(v);
  if (!sorted_contains(out_[u], v)) throw std::invalid_argument("edge not present");
  sorted_erase(out_[u], v);
  if (directed_) {
    sorted_erase(in_[v], u);
  } else {
    sorted_erase(out_[v], u);
  }
  skeleton_fresh_[u] = skeleton_fresh_[v] = false;
  erase_edge_traits(u, v);
  --edge_count_;
}

void Graph::erase_edge_traits(NodeId u, NodeId v) {
  const std::uint64_t key = edge_key(u, v);
  for (auto& [name, store] : edge_traits_) store.erase(key);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_table_size(); ++u) {
    if (!active_[u]) continue;
    for (NodeId v : out_[u]) {
      if (!directed_ && v < u) continue;
      out.emplace_back(u, v);
    }
  }
  return out;
}

const std::vector<NodeId>& Graph::skeleton_neighbors(NodeId v) const {
  check(v);
  if (!directed_) return out_[v];
  if (!skeleton_fresh_[v]) {
    auto& sk = skeleton_[v];
    sk.clear();
    sk.reserve(out_[v].size() + in_[v].size());
    std::merge(out_[v].begin(), out_[v].end(), in_[v].begin(), in_[v].end(),
               std::back_inserter(sk));
    sk.erase(std::unique(sk.begin(), sk.end()), sk.end());
    skeleton_fresh_[v] = true;
  }
  return skeleton_[v];
}

int Graph::degree(NodeId v) const {
  check(v);
  return static_cast<int>(out_[v].size() + (directed_ ? in_[v].size() : 0));
}

void Graph::set_node_trait(NodeId v, const std::string& trait, TraitValue value) {
  check(v);
  node_traits_[trait][v] = std::move(value);
}

std::optional<TraitValue> Graph::node_trait(NodeId v, const std::string& trait) const {
  check(v);
  auto it = node_traits_.find(trait);
  if (it == node_traits_.end()) return std::nullopt;
  auto jt = it->second.find(v);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

void Graph::clear_node_trait(NodeId v, const std::string& trait) {
  auto it = node_traits_.find(trait);
  if (it != node_traits_.end()) it->second.erase(v);
}

void Graph::set_edge_trait(NodeId u, NodeId v, const std::string& trait, TraitValue value) {
  if (!has_edge(u, v)) throw std::invalid_argument("edge trait on absent edge");
  edge_traits_[trait][edge_key(u, v)] = std::move(value);
}

std::optional<TraitValue> Graph::edge_trait(NodeId u, NodeId v, const std::string& trait) const {
  check(u);
  check(v);
  auto it = edge_traits_.find(trait);
  if (it == edge_traits_.end()) return std::nullopt;
  auto jt = it->second.find(edge_key(u, v));
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

void Graph::clear_edge_trait(NodeId u, NodeId v, const std::string& trait) {
  auto it = edge_traits_.find(trait);
  if (it != edge_traits_.end()) it->second.erase(edge_key(u, v));
}

std::string Graph::serialize() const {
  std::ostringstream os;
  os << (directed_ ? "directed" : "undirected") << "\nnodes:";
  for (NodeId v : nodes()) os << ' ' << v;
  os << "\nedges:";
  for (auto [u, v] : edges()) os << ' ' << u << (directed_ ? ">" : "-") << v;
  os << "\n";
  for (const auto& [name, store] : node_traits_) {
    std::vector<NodeId> keys;
    for (const auto& [v, val] : store)
      if (has_node(v)) keys.push_back(v);
    if (keys.empty()) continue;
    std::sort(keys.begin(), keys.end());
    os << "node_trait " << name << ":";
    for (NodeId v : keys)
      os << ' ' << v << '=' << trait_value_to_string(store.at(v));
    os << "\n";
  }
  for (const auto& [name, store] : edge_traits_) {
    std::vector<std::uint64_t> keys;
    for (const auto& [k, val] : store) keys.push_back(k);
    if (keys.empty()) continue;
    std::sort(keys.begin(), keys.end());
    os << "edge_trait " << name << ":";
    for (std::uint64_t k : keys) {
      NodeId u = static_cast<NodeId>(k >> 32), v = static_cast<NodeId>(k & 0xffffffffu);
      os << ' ' << u << ',' << v << '=' << trait_value_to_string(store.at(k));
    }
    os << "\n";
  }
  return os.str();
}

std::vector<int> Graph::hop_distances(NodeId source, int max_hops) const {
  check(source);
  std::vector<int> dist(node_table_size(), -1);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (dist[u] == max_hops) continue;
    for (NodeId w : skeleton_neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Graph induced_subgraph(const Graph& g, const NodeSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.has_node(s[i])) throw std::invalid_argument("unknown node id in node set");
    if (i > 0 && s[i] <= s[i - 1])
      throw std::invalid_argument("node set must be sorted and unique");
  }
  const int table = s.empty() ? 0 : s.back() + 1;
  Graph sub(g.directed(), table);
  std::vector<bool> member(table, false);
  for (NodeId v : s) member[v] = true;
  for (NodeId v = 0; v < table; ++v)
    if (!member[v]) sub.deactivate(v);
  for (NodeId u : s) {
    for (NodeId v : g.out_neighbors(u)) {
      if (v >= table || !member[v]) continue;
      if (!g.directed() && v < u) continue;
      sub.add_edge(u, v);
    }
  }
  for (const auto& [name, store] : g.node_traits_)
    for (NodeId v : s) {
      auto it = store.find(v);
      if (it != store.end()) sub.set_node_trait(v, name, it->second);
    }
  for (const auto& [name, store] : g.edge_traits_)
    for (auto [u, v] : sub.edges()) {
      auto it = store.find(g.edge_key(u, v));
      if (it != store.end()) sub.set_edge_trait(u, v, name, it->second);
    }
  return sub;
}

UndoRecord apply_change(Graph& g, const GraphChange& c) {
  UndoRecord undo;
  undo.change = c;
  switch (c.kind) {
    case ChangeKind::EdgeAddition: {
      if (!g.has_node(c.u) || !g.has_node(c.v))
        throw InvalidChange("edge addition endpoint missing");
      if (c.u == c.v || g.has_edge(c.u, c.v))
        throw InvalidChange("edge addition precondition violated");
      g.add_edge(c.u, c.v);
      for (const auto& t : c.edge_traits) g.set_edge_trait(c.u, c.v, t.trait, t.value);
      break;
    }
    case ChangeKind::EdgeDeletion: {
      if (!g.has_node(c.u) || !g.has_node(c.v) || !g.has_edge(c.u, c.v))
        throw InvalidChange("edge deletion requires a present edge");
      for (const auto& [name, store] : g.edge_traits_) {
        auto it = store.find(g.edge_key(c.u, c.v));
        if (it != store.end())
          undo.saved_edge_traits.push_back({name, {{c.u, c.v}, it->second}});
      }
      g.remove_edge(c.u, c.v);
      break;
    }
    case ChangeKind::NodeAddition: {
      if (c.node < 0 || c.node > g.node_table_size() ||
          (c.node < g.node_table_size() && g.has_node(c.node)))
        throw InvalidChange("node addition on an existing node");
      if (c.incident_edges.empty())
        throw InvalidChange("node addition must include its connecting edges");
      undo.grew_node_table = (c.node == g.node_table_size());
      g.activate(c.node);
      for (auto [a, b] : c.incident_edges) {
        if (a != c.node && b != c.node)
          throw InvalidChange("incident edge does not touch the added node");
        g.add_edge(a, b);
        for (const auto& t : c.edge_traits) g.set_edge_trait(a, b, t.trait, t.value);
      }
      for (const auto& t : c.node_traits) g.set_node_trait(c.node, t.trait, t.value);
      break;
    }
    case ChangeKind::NodeDeletion: {
      if (!g.has_node(c.node)) throw InvalidChange("node deletion on missing node");
      for (NodeId w : std::vector<NodeId>(g.out_neighbors(c.node).begin(),
                                          g.out_neighbors(c.node).end()))
        undo.removed_edges.emplace_back(c.node, w);
      if (g.directed())
        for (NodeId w : std::vector<NodeId>(g.in_neighbors(c.node).begin(),
                                            g.in_neighbors(c.node).end()))
          undo.removed_edges.emplace_back(w, c.node);
      for (const auto& [name, store] : g.node_traits_) {
        auto it = store.find(c.node);
        if (it != store.end())
          undo.saved_node_traits.push_back({name, {c.node, it->second}});
      }
      for (auto [a, b] : undo.removed_edges) {
        for (const auto& [name, store] : g.edge_traits_) {
          auto it = store.find(g.edge_key(a, b));
          if (it != store.end())
            undo.saved_edge_traits.push_back({name, {{a, b}, it->second}});
        }
        g.remove_edge(a, b);
      }
      g.deactivate(c.node);
      break;
    }
  }
  return undo;
}

void revert_change(Graph& g, const UndoRecord& undo) {
  const GraphChange& c = undo.change;
  switch (c.kind) {
    case ChangeKind::EdgeAddition:
      g.remove_edge(c.u, c.v);
      break;
    case ChangeKind::EdgeDeletion:
      g.add_edge(c.u, c.v);
      for (const auto& [name, kv] : undo.saved_edge_traits)
        g.set_edge_trait(kv.first.first, kv.first.second, name, kv.second);
      break;
    case ChangeKind::NodeAddition:
      for (auto [a, b] : c.incident_edges) g.remove_edge(a, b);
      for (const auto& t : c.node_traits) g.clear_node_trait(c.node, t.trait);
      g.deactivate(c.node);
      break;
    case ChangeKind::NodeDeletion:
      g.activate(c.node);
      for (auto [a, b] : undo.removed_edges) g.add_edge(a, b);
      for (const auto& [name, kv] : undo.saved_node_traits)
        g.set_node_trait(kv.first, name, kv.second);
      for (const auto& [name, kv] : undo.saved_edge_traits)
        g.set_edge_trait(kv.first.first, kv.first.second, name, kv.second);
      break;
  }
}

std::vector<ClassifiedPair> within_k_hops(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("hop count must be >= 1");
  std::vector<ClassifiedPair> out;
  for (NodeId u : g.nodes()) {
    std::vector<int> dist = g.hop_distances(u, k);
    for (NodeId v : g.nodes()) {
      if (v == u || dist[v] < 0) continue;
      if (!g.directed() && v < u) continue;
      out.push_back({u, v, g.has_edge(u, v)});
    }
  }
  return out;
}

}  // namespace sst
