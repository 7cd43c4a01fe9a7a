#include "sst/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace sst {

double auc(std::span<const ScoredCandidate> scored) {
  long p = 0, n = 0;
  for (const auto& s : scored) (s.positive ? p : n)++;
  if (p == 0 || n == 0) throw std::invalid_argument("auc needs both classes");
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored[a].score < scored[b].score;
  });
  // midrank sum over positives
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           scored[order[j + 1]].score == scored[order[i]].score)
      ++j;
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t t = i; t <= j; ++t)
      if (scored[order[t]].positive) rank_sum += midrank;
    i = j + 1;
  }
  return (rank_sum - 0.5 * static_cast<double>(p) * (p + 1)) /
         (static_cast<double>(p) * static_cast<double>(n));
}

namespace {

// Closed-form integral of precision over one DG segment, in TP units:
// integral of x / (c1*x + c0) dx over [a, b].
double segment_integral(double a, double b, double c1, double c0) {
  if (b <= a) return 0.0;
  if (std::abs(c0) < 1e-12) return (b - a) / c1;
  return (b - a) / c1 - (c0 / (c1 * c1)) * std::log((c1 * b + c0) / (c1 * a + c0));
}

}  // namespace

PrCurve aupr_davis_goadrich(std::span<const ScoredCandidate> scored) {
  long p_total = 0;
  for (const auto& s : scored) p_total += s.positive ? 1 : 0;
  if (p_total == 0) throw std::invalid_argument("aupr needs at least one positive");

  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scored[a].score > scored[b].score;
  });

  // achievable (TP, FP) after each distinct-score threshold, plus the origin
  std::vector<std::pair<long, long>> pts{{0, 0}};
  long tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           scored[order[j + 1]].score == scored[order[i]].score)
      ++j;
    for (std::size_t t = i; t <= j; ++t) (scored[order[t]].positive ? tp : fp)++;
    pts.emplace_back(tp, fp);
    i = j + 1;
  }

  PrCurve curve;
  const double P = static_cast<double>(p_total);
  for (std::size_t s = 1; s < pts.size(); ++s) {
    auto [tp_a, fp_a] = pts[s - 1];
    auto [tp_b, fp_b] = pts[s];
    if (tp_b == tp_a) {
      // recall flat; precision drops vertically, no area
      if (tp_b > 0)
        curve.points.push_back({tp_b / P, static_cast<double>(tp_b) / (tp_b + fp_b)});
      continue;
    }
    const double slope = static_cast<double>(fp_b - fp_a) / (tp_b - tp_a);
    const double c1 = 1.0 + slope;
    const double c0 = fp_a - slope * tp_a;
    curve.area += segment_integral(tp_a, tp_b, c1, c0) / P;
    // emit the interpolated integer-TP points (including the endpoint)
    for (long x = tp_a + 1; x <= tp_b; ++x) {
      const double fpx = fp_a + slope * (x - tp_a);
      curve.points.push_back({x / P, x / (x + fpx)});
    }
  }
  return curve;
}

Aupr3Candidates aupr3_candidates(const Graph& g_eval,
                                 std::span<const std::pair<NodeId, NodeId>> test_edges,
                                 int max_hops) {
  Aupr3Candidates out;
  std::unordered_set<std::uint64_t> test_set;
  auto key = [&](NodeId u, NodeId v) {
    if (!g_eval.directed() && u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  };
  for (auto [u, v] : test_edges) test_set.insert(key(u, v));

  // negatives: non-edges within max_hops, excluding test pairs
  for (const auto& pc : within_k_hops(g_eval, max_hops)) {
    if (pc.is_edge || test_set.count(key(pc.u, pc.v))) continue;
    out.pairs.emplace_back(pc.u, pc.v);
    out.positive.push_back(false);
    ++out.n_neg;
  }
  // positives: test edges whose endpoints stay close once the edge is removed
  // (BFS that refuses to traverse the direct u-v adjacency, unless the reverse
  // directed edge keeps the skeleton adjacency alive)
  for (auto [u, v] : test_edges) {
    const bool ban =
        !(g_eval.directed() && g_eval.has_node(u) && g_eval.has_node(v) &&
          g_eval.has_edge(v, u));
    std::vector<int> dist(g_eval.node_table_size(), -1);
    std::vector<NodeId> frontier{u}, next;
    dist[u] = 0;
    for (int d = 0; d < max_hops && !frontier.empty(); ++d) {
      next.clear();
      for (NodeId a : frontier)
        for (NodeId w : g_eval.skeleton_neighbors(a)) {
          if (ban && ((a == u && w == v) || (a == v && w == u))) continue;
          if (dist[w] < 0) {
            dist[w] = d + 1;
            next.push_back(w);
          }
        }
      frontier.swap(next);
    }
    if (dist[v] < 0) continue;
    out.pairs.emplace_back(u, v);
    out.positive.push_back(true);
    ++out.n_pos;
  }
  return out;
}

long common_neighbors_score(const Graph& g, NodeId u, NodeId v) {
  auto count_common = [](std::span<const NodeId> a, std::span<const NodeId> b) {
    long n = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else ++n, ++i, ++j;
    }
    return n;
  };
  if (!g.directed()) return count_common(g.neighbors(u), g.neighbors(v));
  return count_common(g.out_neighbors(u), g.in_neighbors(v)) +   // u->w->v
         count_common(g.out_neighbors(u), g.out_neighbors(v)) +  // u->w<-v
         count_common(g.in_neighbors(u), g.in_neighbors(v)) +    // u<-w->v
         count_common(g.in_neighbors(u), g.out_neighbors(v));    // u<-w<-v
}

double random_score(Rng& rng) { return rng.uniform(); }

}  // namespace sst
