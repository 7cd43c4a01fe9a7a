#ifndef SST_IO_HPP_
#define SST_IO_HPP_

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "sst/generators.hpp"
#include "sst/graph.hpp"

namespace sst {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Edge-list file: whitespace- or comma-separated "src dst [timestamp]" lines,
// '#'/'%' comments, arbitrary node labels mapped to dense ids in first-use
// order. Gzip input is detected by magic bytes and inflated transparently.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> node_labels;  // dense id -> original label
  long duplicate_edges = 0;
  long self_loops = 0;
};

struct LoadedStream {
  TemporalEdgeStream stream;
  std::vector<std::string> node_labels;
  long self_loops = 0;
};

LoadedGraph load_static(const std::string& path, bool directed);
LoadedStream load_temporal(const std::string& path, bool directed = true);

// Same parsers over an already-open text stream (CLI stdin support).
LoadedGraph parse_static(std::istream& in, bool directed);
LoadedStream parse_temporal(std::istream& in, bool directed = true);

void write_temporal(std::ostream& out, const TemporalEdgeStream& stream);

struct WeightedEdge {
  NodeId u, v;
  long weight;  // squashed occurrence count within the bucket
};

// tau buckets of near-equal interaction count (earlier buckets take the
// remainder); repeats within a bucket squashed into one weighted edge.
struct BucketedStream {
  bool directed = true;
  int node_count = 0;
  std::vector<std::vector<WeightedEdge>> buckets;

  // occurrence bucket indices (ascending) per edge
  const std::vector<int>& occurrence_buckets(NodeId u, NodeId v) const;
  bool occurred_before(NodeId u, NodeId v, int current_bucket) const;

  std::unordered_map<std::uint64_t, std::vector<int>> history;
  std::uint64_t pair_key(NodeId u, NodeId v) const;
};

BucketedStream bucket_stream(const TemporalEdgeStream& stream, int tau);

struct EdgeSplit {
  std::vector<std::pair<NodeId, NodeId>> train, validation, test;
};

// Seeded uniform partition of the edges; every node stays in every split's
// graph view (splits carry edge lists, not re-indexed graphs).
EdgeSplit split_static(const Graph& g, double train_frac, double val_frac,
                       double test_frac, std::uint64_t seed);

// Graph with the same node table but only the given edges.
Graph edges_only_graph(const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& edges);

}  // namespace sst

#endif  // SST_IO_HPP_
