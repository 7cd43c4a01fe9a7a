#ifndef SST_METRICS_HPP_
#define SST_METRICS_HPP_

#include <span>
#include <utility>
#include <vector>

#include "sst/graph.hpp"
#include "sst/rng.hpp"

namespace sst {

struct ScoredCandidate {
  double score;
  bool positive;
};

// Rank-statistic AUC; tied scores contribute 1/2. Throws on single-class input.
double auc(std::span<const ScoredCandidate> scored);

struct PrPoint {
  double recall;
  double precision;
};

struct PrCurve {
  std::vector<PrPoint> points;  // achievable + integer-TP interpolated points
  double area = 0.0;
};

// Area under the precision-recall curve with Davis-Goadrich interpolation:
// between consecutive achievable points the false-positive count is linear in
// the true-positive count, FP(x) = FP_a + (FP_b-FP_a)(x-TP_a)/(TP_b-TP_a),
// and each hyperbolic segment is integrated in closed form. Equal scores are
// one threshold step. Requires at least one positive.
PrCurve aupr_davis_goadrich(std::span<const ScoredCandidate> scored);

struct Aupr3Candidates {
  // pairs to score; positives are the test edges that survive the 3-hop
  // filter, negatives every non-edge within 3 hops (never downsampled)
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<bool> positive;
  std::size_t n_pos = 0, n_neg = 0;
};

// Builds the AUPR_3 candidate set on g_eval: negatives are non-edges within
// `max_hops` skeleton hops (excluding test edges); positives are test edges
// whose endpoints stay within `max_hops` hops once the edge is removed.
Aupr3Candidates aupr3_candidates(const Graph& g_eval,
                                 std::span<const std::pair<NodeId, NodeId>> test_edges,
                                 int max_hops = 3);

// Undirected: |N(u) ∩ N(v)|. Directed: sum of the four wedge orientations
// u->w->v, u->w<-v, u<-w->v, u<-w<-v.
long common_neighbors_score(const Graph& g, NodeId u, NodeId v);

// Uniform score in [0,1) from the shared stream.
double random_score(Rng& rng);

}  // namespace sst

#endif  // SST_METRICS_HPP_
