#include "sst/labeler.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace sst {

void ColoredGraph::add_edge(int u, int v, std::string key) {
  if (u == v || u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("bad colored-graph edge");
  if (!directed && u > v) std::swap(u, v);
  edges.emplace_back(u, v);
  edge_key.push_back(std::move(key));
}

namespace {

struct Working {
  bool directed;
  int n;
  std::vector<int> adj;                 // n*n, edge color id + 1, 0 = absent
  std::vector<std::string> eff_node;    // content keys with mark folded in
  std::vector<std::string> ecolor_key;  // per dense edge color id
  int marked_node;
  int marked_u = -1, marked_v = -1;     // local endpoints of marked edge
};

Working prepare(const ColoredGraph& cg) {
  if (cg.n < 1) throw std::invalid_argument("empty colored graph");
  if (cg.n > 16) throw UnsupportedSize("colored graph too large");
  if (cg.edge_key.size() != cg.edges.size())
    throw std::invalid_argument("edge keys out of sync");
  Working w;
  w.directed = cg.directed;
  w.n = cg.n;
  w.marked_node = cg.marked_node;
  w.eff_node.resize(cg.n);
  for (int i = 0; i < cg.n; ++i)
    w.eff_node[i] = (i == cg.marked_node ? "*" : "") + cg.node_key[i];

  std::vector<std::string> eff_edge(cg.edges.size());
  for (std::size_t e = 0; e < cg.edges.size(); ++e)
    eff_edge[e] = (static_cast<int>(e) == cg.marked_edge ? "*" : "") + cg.edge_key[e];
  std::vector<std::string> uniq = eff_edge;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  w.ecolor_key = uniq;

  w.adj.assign(static_cast<std::size_t>(cg.n) * cg.n, 0);
  for (std::size_t e = 0; e < cg.edges.size(); ++e) {
    auto [u, v] = cg.edges[e];
    const int color =
        static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), eff_edge[e]) -
                         uniq.begin()) + 1;
    if (w.adj[u * cg.n + v] != 0) throw std::invalid_argument("duplicate edge");
    w.adj[u * cg.n + v] = color;
    if (!cg.directed) w.adj[v * cg.n + u] = color;
    if (static_cast<int>(e) == cg.marked_edge) {
      w.marked_u = u;
      w.marked_v = v;
    }
  }
  if (cg.marked_edge >= static_cast<int>(cg.edges.size()))
    throw std::invalid_argument("marked edge out of range");
  if (cg.marked_node >= cg.n)
    throw std::invalid_argument("marked node out of range");
  if (cg.marked_node >= 0 && cg.marked_edge >= 0)
    throw std::invalid_argument("only one element may be marked");
  return w;
}

std::vector<int> initial_colors(const Working& w) {
  std::vector<std::string> uniq = w.eff_node;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> colors(w.n);
  for (int i = 0; i < w.n; ++i)
    colors[i] = static_cast<int>(
        std::lower_bound(uniq.begin(), uniq.end(), w.eff_node[i]) - uniq.begin());
  return colors;
}

int class_count(const std::vector<int>& colors) {
  int mx = -1;
  for (int c : colors) mx = std::max(mx, c);
  return mx + 1;
}

// Renumbers colors to 0..k-1 preserving their relative order.
std::vector<int> densify(const std::vector<int>& colors) {
  std::vector<int> uniq = colors;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i)
    out[i] = static_cast<int>(
        std::lower_bound(uniq.begin(), uniq.end(), colors[i]) - uniq.begin());
  return out;
}

// One-dimensional WL with edge colors: a node's signature is its own color
// plus the sorted multiset of (neighbor color, edge color, direction) triples.
std::vector<int> refine(const Working& w, std::vector<int> colors) {
  const int n = w.n;
  colors = densify(colors);
  int classes = class_count(colors);
  std::vector<std::vector<std::uint64_t>> sig(n);
  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        if (int ec = w.adj[v * n + u]; ec != 0)
          s.push_back((static_cast<std::uint64_t>(colors[u]) << 24) |
                      (static_cast<std::uint64_t>(ec) << 4) | 0u);
        if (w.directed)
          if (int ec = w.adj[u * n + v]; ec != 0)
            s.push_back((static_cast<std::uint64_t>(colors[u]) << 24) |
                        (static_cast<std::uint64_t>(ec) << 4) | 1u);
      }
      std::sort(s.begin(), s.end());
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](int a, int b) {
      if (colors[a] != colors[b]) return colors[a] < colors[b];
      return sig[a] < sig[b];
    };
    auto equal = [&](int a, int b) {
      return colors[a] == colors[b] && sig[a] == sig[b];
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<int> next(n);
    int c = 0;
    next[order[0]] = 0;
    for (int i = 1; i < n; ++i) {
      if (!equal(order[i - 1], order[i])) ++c;
      next[order[i]] = c;
    }
    const int new_classes = c + 1;
    colors.swap(next);
    if (new_classes == classes) break;
    classes = new_classes;
  }
  return colors;
}

// Serializes with node order given by positions (pos[v] = rank of v).
std::string serialize(const Working& w, const std::vector<int>& pos) {
  const int n = w.n;
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::string out;
  out.reserve(16 + 12 * n);
  out += w.directed ? 'd' : 'u';
  out += '|';
  out += std::to_string(n);
  out += '|';
  for (int p = 0; p < n; ++p) {
    if (p) out += ';';
    out += w.eff_node[at[p]];
  }
  out += '|';
  std::vector<std::tuple<int, int, int>> es;  // (pi, pj, color)
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const int ec = w.adj[u * n + v];
      if (!ec) continue;
      int pi = pos[u], pj = pos[v];
      if (!w.directed) {
        if (pi > pj) continue;  // emit each undirected edge once
      }
      es.emplace_back(pi, pj, ec);
    }
  std::sort(es.begin(), es.end());
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ';';
    auto [pi, pj, ec] = es[i];
    out += std::to_string(pi);
    out += w.directed ? '>' : '-';
    out += std::to_string(pj);
    out += '{';
    out += w.ecolor_key[ec - 1];
    out += '}';
  }
  out += '|';
  if (w.marked_node >= 0) {
    out += "mn:";
    out += std::to_string(pos[w.marked_node]);
  } else if (w.marked_u >= 0) {
    int pi = pos[w.marked_u], pj = pos[w.marked_v];
    if (!w.directed && pi > pj) std::swap(pi, pj);
    out += "me:";
    out += std::to_string(pi);
    out += ',';
    out += std::to_string(pj);
  } else {
    out += "m-";
  }
  return out;
}

struct Best {
  std::string s;
  std::vector<int> pos;
};

// Individualization-refinement: split one node out of the smallest
// non-singleton class (placed below its peers), refine, recurse; keep the
// lexicographically minimal serialization.
void search(const Working& w, std::vector<int> colors, Best& best) {
  colors = refine(w, colors);
  const int n = w.n;
  const int classes = class_count(colors);
  if (classes == n) {
    std::string s = serialize(w, colors);
    if (best.s.empty() || s < best.s) best = {std::move(s), colors};
    return;
  }
  std::vector<int> size(classes, 0);
  for (int c : colors) ++size[c];
  int target = -1;
  for (int c = 0; c < classes; ++c)
    if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
  for (int v = 0; v < n; ++v) {
    if (colors[v] != target) continue;
    std::vector<int> child(n);
    for (int u = 0; u < n; ++u) child[u] = 2 * colors[u] + (u == v ? 0 : 1);
    search(w, std::move(child), best);
  }
}

Best canonical(const ColoredGraph& cg) {
  Working w = prepare(cg);
  Best best;
  search(w, initial_colors(w), best);
  return best;
}

}  // namespace

std::vector<int> stable_colors(const ColoredGraph& cg) {
  Working w = prepare(cg);
  return refine(w, initial_colors(w));
}

std::vector<int> canonical_ordering(const ColoredGraph& cg) {
  return canonical(cg).pos;
}

std::string canonical_string(const ColoredGraph& cg) {
  return canonical(cg).s;
}

int LabelRegistry::intern(const std::string& h) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = ids_.try_emplace(h, static_cast<int>(by_id_.size()));
  if (inserted) by_id_.push_back(&it->first);
  return it->second;
}

std::optional<int> LabelRegistry::find(const std::string& h) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(h);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& LabelRegistry::label_string(int id) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (id < 0 || id >= static_cast<int>(by_id_.size()))
    throw std::invalid_argument("unknown label id");
  return *by_id_[id];
}

std::size_t LabelRegistry::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return by_id_.size();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

}  // namespace

DecodedSst decode_label(const std::string& h) {
  auto parts = split(h, '|');
  if (parts.size() != 5) throw std::invalid_argument("malformed label: " + h);
  DecodedSst d;
  d.directed = parts[0] == "d";
  d.n = std::stoi(parts[1]);
  d.node_keys = split(parts[2], ';');
  if (static_cast<int>(d.node_keys.size()) != d.n)
    throw std::invalid_argument("malformed label nodes: " + h);
  if (!parts[3].empty()) {
    for (const auto& e : split(parts[3], ';')) {
      const char sep = d.directed ? '>' : '-';
      std::size_t mid = e.find(sep);
      std::size_t brace = e.find('{');
      if (mid == std::string::npos || brace == std::string::npos || e.back() != '}')
        throw std::invalid_argument("malformed label edge: " + h);
      DecodedSst::Edge edge;
      edge.u = std::stoi(e.substr(0, mid));
      edge.v = std::stoi(e.substr(mid + 1, brace - mid - 1));
      edge.key = e.substr(brace + 1, e.size() - brace - 2);
      edge.marked = !edge.key.empty() && edge.key[0] == '*';
      d.edges.push_back(std::move(edge));
    }
  }
  const std::string& m = parts[4];
  if (m.rfind("mn:", 0) == 0) {
    d.marked_node = std::stoi(m.substr(3));
  } else if (m.rfind("me:", 0) == 0) {
    auto xy = split(m.substr(3), ',');
    d.marked_edge = {std::stoi(xy[0]), std::stoi(xy[1])};
  }
  return d;
}

std::string describe_label(const std::string& h) {
  DecodedSst d = decode_label(h);
  std::ostringstream os;
  os << d.n << "-node " << (d.directed ? "directed" : "undirected") << " SST";
  if (d.marked_node >= 0) os << "; marked node " << d.marked_node;
  if (d.marked_edge.first >= 0)
    os << "; marked edge " << d.marked_edge.first
       << (d.directed ? "->" : "--") << d.marked_edge.second;
  os << "; nodes:";
  for (int i = 0; i < d.n; ++i) {
    os << ' ' << i;
    if (!d.node_keys[i].empty()) os << '[' << d.node_keys[i] << ']';
  }
  os << "; edges:";
  if (d.edges.empty()) os << " none";
  for (const auto& e : d.edges) {
    os << ' ' << e.u << (d.directed ? "->" : "--") << e.v;
    if (!e.key.empty()) os << '[' << e.key << ']';
  }
  return os.str();
}

std::string label_to_dot(const std::string& h, const std::string& name) {
  DecodedSst d = decode_label(h);
  std::ostringstream os;
  os << (d.directed ? "digraph" : "graph") << " \"" << name << "\" {\n";
  for (int i = 0; i < d.n; ++i) {
    os << "  n" << i << " [label=\"" << d.node_keys[i] << "\"";
    if (i == d.marked_node) os << ", shape=doublecircle, color=red";
    os << "];\n";
  }
  const char* arrow = d.directed ? " -> " : " -- ";
  for (const auto& e : d.edges) {
    os << "  n" << e.u << arrow << "n" << e.v << " [label=\"" << e.key << "\"";
    if (e.marked) os << ", color=red, penwidth=2.0, style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

bool context_connected(const Graph& state, const NodeSet& ctx) {
  if (ctx.empty()) return false;
  std::vector<NodeId> stack{ctx[0]};
  std::vector<bool> seen(ctx.size(), false);
  seen[0] = true;
  int found = 1;
  auto index_of = [&](NodeId v) -> int {
    auto it = std::lower_bound(ctx.begin(), ctx.end(), v);
    if (it == ctx.end() || *it != v) return -1;
    return static_cast<int>(it - ctx.begin());
  };
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : state.skeleton_neighbors(v)) {
      int i = index_of(w);
      if (i >= 0 && !seen[i]) {
        seen[i] = true;
        ++found;
        stack.push_back(w);
      }
    }
  }
  return found == static_cast<int>(ctx.size());
}

}  // namespace

ColoredGraph build_colored_graph(const Graph& state, const NodeSet& ctx,
                                 const GraphChange& c,
                                 const std::vector<TraitSpec>& traits) {
  const int n = static_cast<int>(ctx.size());
  std::vector<TraitSpec> specs = traits;
  std::sort(specs.begin(), specs.end(),
            [](const TraitSpec& a, const TraitSpec& b) { return a.name < b.name; });

  ColoredGraph cg;
  cg.directed = state.directed();
  cg.n = n;
  cg.node_key.assign(n, "");

  auto append_part = [](std::string& key, const std::string& part) {
    if (!key.empty()) key += ',';
    key += part;
  };

  for (const auto& spec : specs) {
    if (spec.scope != TraitScope::Node) continue;
    if (spec.kind == TraitKind::Class) {
      for (int i = 0; i < n; ++i) {
        auto val = state.node_trait(ctx[i], spec.name);
        if (!val) continue;
        const std::string sv = trait_value_to_string(*val);
        if (!spec.class_values.empty() &&
            std::find(spec.class_values.begin(), spec.class_values.end(), sv) ==
                spec.class_values.end())
          throw std::invalid_argument("class trait value outside declared set: " + sv);
        append_part(cg.node_key[i], spec.name + "=" + sv);
      }
    } else {
      std::vector<double> raw(n);
      for (int i = 0; i < n; ++i) {
        auto val = state.node_trait(ctx[i], spec.name);
        if (!val || !std::holds_alternative<double>(*val))
          throw std::invalid_argument("rank trait requires a numeric value on every node: " +
                                      spec.name);
        raw[i] = std::get<double>(*val);
      }
      std::vector<int> ranks = rank_projection(raw);
      for (int i = 0; i < n; ++i)
        append_part(cg.node_key[i], spec.name + "=r" + std::to_string(ranks[i]));
    }
  }

  // edges among ctx in the state graph
  struct RawEdge {
    int u, v;
    NodeId gu, gv;
  };
  std::vector<RawEdge> raw_edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!state.directed() && ctx[j] < ctx[i]) continue;
      if (state.has_edge(ctx[i], ctx[j])) raw_edges.push_back({i, j, ctx[i], ctx[j]});
    }

  std::vector<std::string> ekeys(raw_edges.size(), "");
  for (const auto& spec : specs) {
    if (spec.scope != TraitScope::Edge) continue;
    if (spec.kind == TraitKind::Class) {
      for (std::size_t e = 0; e < raw_edges.size(); ++e) {
        auto val = state.edge_trait(raw_edges[e].gu, raw_edges[e].gv, spec.name);
        if (!val) continue;
        const std::string sv = trait_value_to_string(*val);
        if (!spec.class_values.empty() &&
            std::find(spec.class_values.begin(), spec.class_values.end(), sv) ==
                spec.class_values.end())
          throw std::invalid_argument("class trait value outside declared set: " + sv);
        append_part(ekeys[e], spec.name + "=" + sv);
      }
    } else {
      std::vector<double> raw(raw_edges.size());
      for (std::size_t e = 0; e < raw_edges.size(); ++e) {
        auto val = state.edge_trait(raw_edges[e].gu, raw_edges[e].gv, spec.name);
        if (!val || !std::holds_alternative<double>(*val))
          throw std::invalid_argument("rank trait requires a numeric value on every edge: " +
                                      spec.name);
        raw[e] = std::get<double>(*val);
      }
      if (!raw.empty()) {
        std::vector<int> ranks = rank_projection(raw);
        for (std::size_t e = 0; e < raw_edges.size(); ++e)
          append_part(ekeys[e], spec.name + "=r" + std::to_string(ranks[e]));
      }
    }
  }
  for (std::size_t e = 0; e < raw_edges.size(); ++e)
    cg.add_edge(raw_edges[e].u, raw_edges[e].v, std::move(ekeys[e]));

  auto local_index = [&](NodeId v) -> int {
    auto it = std::find(ctx.begin(), ctx.end(), v);
    if (it == ctx.end()) throw std::invalid_argument("marked element outside context");
    return static_cast<int>(it - ctx.begin());
  };

  switch (c.kind) {
    case ChangeKind::NodeAddition:
    case ChangeKind::NodeDeletion:
      cg.marked_node = local_index(c.node);
      break;
    case ChangeKind::EdgeAddition:
    case ChangeKind::EdgeDeletion: {
      int lu = local_index(c.u), lv = local_index(c.v);
      if (!state.directed() && ctx[lu] > ctx[lv]) std::swap(lu, lv);
      for (std::size_t e = 0; e < cg.edges.size(); ++e)
        if (cg.edges[e] == std::make_pair(lu, lv)) {
          cg.marked_edge = static_cast<int>(e);
          break;
        }
      if (cg.marked_edge < 0)
        throw std::logic_error("marked edge not present in context state");
      break;
    }
  }
  return cg;
}

std::string label_transition(const Graph& g, const NodeSet& s, const GraphChange& c,
                             const std::vector<TraitSpec>& traits) {
  if (s.empty()) throw std::invalid_argument("empty context");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] <= s[i - 1]) throw std::invalid_argument("context must be sorted and unique");
  if (static_cast<int>(s.size()) > kMaxLabelNodes)
    throw UnsupportedSize("contexts beyond 9 nodes are not supported");
  for (NodeId a : c.anchors())
    if (!std::binary_search(s.begin(), s.end(), a))
      throw std::invalid_argument("context must contain every anchor node");

  const bool addition =
      c.kind == ChangeKind::EdgeAddition || c.kind == ChangeKind::NodeAddition;
  Graph scratch = g;
  if (addition) apply_change(scratch, c);
  if (!context_connected(scratch, s))
    throw InvalidContext("context subgraph is disconnected");
  ColoredGraph cg = build_colored_graph(scratch, s, c, traits);
  return canonical_string(cg);
}

}  // namespace sst
