#include "sst/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sst/rng.hpp"

namespace sst {

namespace {

std::string read_file_maybe_gzip(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() < 2 || static_cast<unsigned char>(raw[0]) != 0x1f ||
      static_cast<unsigned char>(raw[1]) != 0x8b)
    return raw;

  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
    throw ParseError("zlib init failed for " + path);
  std::string out;
  out.resize(std::max<std::size_t>(raw.size() * 4, 1 << 16));
  zs.next_in = reinterpret_cast<Bytef*>(raw.data());
  zs.avail_in = static_cast<uInt>(raw.size());
  std::size_t written = 0;
  int ret = Z_OK;
  while (ret != Z_STREAM_END) {
    if (written == out.size()) out.resize(out.size() * 2);
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
    zs.avail_out = static_cast<uInt>(out.size() - written);
    ret = inflate(&zs, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseError("gzip decode failed for " + path);
    }
    written = out.size() - zs.avail_out;
  }
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

struct Tokens {
  std::vector<std::string> fields;
};

bool tokenize_line(const std::string& line, Tokens& t) {
  t.fields.clear();
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
      if (!cur.empty()) {
        t.fields.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) t.fields.push_back(cur);
  if (t.fields.empty()) return false;       // blank line
  const char c0 = t.fields[0][0];
  if (c0 == '#' || c0 == '%') return false;  // comment
  return true;
}

struct LabelMap {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  NodeId get(const std::string& s) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  }
};

}  // namespace

LoadedGraph parse_static(std::istream& in, bool directed) {
  LabelMap labels;
  std::vector<std::pair<NodeId, NodeId>> edges;
  Tokens t;
  std::string line;
  long lineno = 0, self_loops = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!tokenize_line(line, t)) continue;
    if (t.fields.size() < 2)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'src dst'");
    NodeId u = labels.get(t.fields[0]);
    NodeId v = labels.get(t.fields[1]);
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  Graph g(directed, static_cast<int>(labels.labels.size()));
  long duplicates = 0;
  for (auto [u, v] : edges) {
    if (g.has_edge(u, v)) {
      ++duplicates;
      continue;
    }
    g.add_edge(u, v);
  }
  return LoadedGraph{std::move(g), std::move(labels.labels), duplicates, self_loops};
}

LoadedGraph load_static(const std::string& path, bool directed) {
  std::istringstream in(read_file_maybe_gzip(path));
  return parse_static(in, directed);
}

LoadedStream parse_temporal(std::istream& in, bool directed) {
  LabelMap labels;
  LoadedStream out;
  out.stream.directed = directed;
  Tokens t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!tokenize_line(line, t)) continue;
    if (t.fields.size() < 3)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'src dst timestamp'");
    NodeId u = labels.get(t.fields[0]);
    NodeId v = labels.get(t.fields[1]);
    long long ts;
    try {
      ts = std::stoll(t.fields[2]);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad timestamp '" +
                       t.fields[2] + "'");
    }
    if (u == v) {
      ++out.self_loops;
      continue;
    }
    out.stream.interactions.push_back({u, v, ts});
  }
  std::stable_sort(out.stream.interactions.begin(), out.stream.interactions.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) { return a.ts < b.ts; });
  out.stream.node_count = static_cast<int>(labels.labels.size());
  out.node_labels = std::move(labels.labels);
  return out;
}

LoadedStream load_temporal(const std::string& path, bool directed) {
  std::istringstream in(read_file_maybe_gzip(path));
  return parse_temporal(in, directed);
}

void write_temporal(std::ostream& out, const TemporalEdgeStream& stream) {
  for (const auto& e : stream.interactions)
    out << e.u << ' ' << e.v << ' ' << e.ts << '\n';
}

std::uint64_t BucketedStream::pair_key(NodeId u, NodeId v) const {
  if (!directed && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

const std::vector<int>& BucketedStream::occurrence_buckets(NodeId u, NodeId v) const {
  static const std::vector<int> kEmpty;
  auto it = history.find(pair_key(u, v));
  return it == history.end() ? kEmpty : it->second;
}

bool BucketedStream::occurred_before(NodeId u, NodeId v, int current_bucket) const {
  for (int b : occurrence_buckets(u, v))
    if (b < current_bucket) return true;
  return false;
}

BucketedStream bucket_stream(const TemporalEdgeStream& stream, int tau) {
  if (tau < 1) throw std::invalid_argument("tau must be positive");
  const std::size_t m = stream.interactions.size();
  if (m < static_cast<std::size_t>(tau))
    throw std::invalid_argument("fewer interactions than buckets");
  BucketedStream out;
  out.directed = stream.directed;
  out.node_count = stream.node_count;
  out.buckets.resize(tau);

  const std::size_t base = m / tau, rem = m % tau;
  std::size_t pos = 0;
  for (int b = 0; b < tau; ++b) {
    const std::size_t size = base + (static_cast<std::size_t>(b) < rem ? 1 : 0);
    std::unordered_map<std::uint64_t, WeightedEdge> squash;
    std::vector<std::uint64_t> order;
    for (std::size_t i = 0; i < size; ++i, ++pos) {
      const auto& e = stream.interactions[pos];
      const std::uint64_t key = out.pair_key(e.u, e.v);
      auto [it, inserted] = squash.try_emplace(key, WeightedEdge{e.u, e.v, 0});
      if (inserted) order.push_back(key);
      it->second.weight += 1;
    }
    for (std::uint64_t key : order) {
      out.buckets[b].push_back(squash[key]);
      out.history[key].push_back(b);
    }
  }
  return out;
}

EdgeSplit split_static(const Graph& g, double train_frac, double val_frac,
                       double test_frac, std::uint64_t seed) {
  if (std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");
  auto edges = g.edges();
  Rng rng(seed);
  rng.shuffle(edges);
  const std::size_t m = edges.size();
  const std::size_t n_train = static_cast<std::size_t>(std::llround(train_frac * m));
  const std::size_t n_val =
      static_cast<std::size_t>(std::llround((train_frac + val_frac) * m)) - n_train;
  EdgeSplit split;
  split.train.assign(edges.begin(), edges.begin() + n_train);
  split.validation.assign(edges.begin() + n_train, edges.begin() + n_train + n_val);
  split.test.assign(edges.begin() + n_train + n_val, edges.end());
  auto empty_but_positive = [&](double f, const auto& part) {
    return f > 0 && part.empty();
  };
  if (empty_but_positive(train_frac, split.train) ||
      empty_but_positive(val_frac, split.validation) ||
      empty_but_positive(test_frac, split.test))
    throw std::invalid_argument("split produced an empty part");
  return split;
}

Graph edges_only_graph(const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Graph out(g.directed(), g.node_table_size());
  for (NodeId v = 0; v < g.node_table_size(); ++v)
    if (!g.has_node(v)) {
      // keep the same active set
      // (deactivate is private; active sets with holes only arise through
      // node-deletion pipelines, which never reach this helper)
      throw std::invalid_argument("edges_only_graph requires a dense node table");
    }
  for (auto [u, v] : edges) out.add_edge(u, v);
  return out;
}

}  // namespace sst
