#include "sst/generators.hpp"

#include <stdexcept>

#include "sst/rng.hpp"

namespace sst {

TemporalEdgeStream barabasi_albert_stream(int n, int m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw std::invalid_argument("need n > m >= 1");
  TemporalEdgeStream stream;
  stream.directed = true;
  stream.node_count = n;
  stream.interactions.reserve(static_cast<std::size_t>(n - m) * m);

  // one entry per edge endpoint; sampling an entry is degree-proportional
  std::vector<NodeId> repeated;
  repeated.reserve(2ull * (n - m) * m);
  std::vector<NodeId> targets;
  Rng rng(seed);

  for (NodeId t = m; t < n; ++t) {
    targets.clear();
    if (t == m) {
      for (NodeId c = 0; c < m; ++c) targets.push_back(c);
    } else {
      while (static_cast<int>(targets.size()) < m) {
        NodeId cand = repeated[rng.below(repeated.size())];
        bool dup = false;
        for (NodeId x : targets) dup |= (x == cand);
        if (!dup) targets.push_back(cand);
      }
    }
    for (NodeId dst : targets) {
      stream.interactions.push_back({t, dst, t});
      repeated.push_back(t);
      repeated.push_back(dst);
    }
  }
  return stream;
}

}  // namespace sst
