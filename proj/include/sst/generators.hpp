#ifndef SST_GENERATORS_HPP_
#define SST_GENERATORS_HPP_

#include <cstdint>
#include <vector>

#include "sst/graph.hpp"

namespace sst {

struct TemporalEdge {
  NodeId u, v;
  long long ts;
};

// Ordered interaction stream; timestamps non-decreasing.
struct TemporalEdgeStream {
  bool directed = true;
  int node_count = 0;
  std::vector<TemporalEdge> interactions;
};

// Preferential attachment: m isolated core nodes, each arriving node t emits
// m directed edges new->existing (degree-proportional, without replacement),
// all stamped t. The first arrival connects to the whole core.
TemporalEdgeStream barabasi_albert_stream(int n, int m, std::uint64_t seed);

}  // namespace sst

#endif  // SST_GENERATORS_HPP_
