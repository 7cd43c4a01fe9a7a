#ifndef SST_PREDICTOR_HPP_
#define SST_PREDICTOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "sst/counter.hpp"
#include "sst/generators.hpp"
#include "sst/io.hpp"
#include "sst/metrics.hpp"
#include "sst/svm.hpp"

namespace sst {

struct StaticTrainConfig {
  double alpha = 10.0;  // non-edge oversampling factor
  int k = 3;
  std::uint64_t seed = 1;
  double train_frac = 0.85, val_frac = 0.05, test_frac = 0.10;
  double C = 1.0;
  int epochs = 50;
  bool tune_C = false;  // pick C from {0.1, 1, 10} on the validation split
  int threads = 1;
  int auc_negative_factor = 10;
  bool compute_aupr3 = true;
};

struct TemporalTrainConfig {
  int tau = 10;
  int base_buckets = 8;  // training base graph = buckets 1..base_buckets
  int k = 3;
  std::uint64_t seed = 1;
  double C = 1.0;
  int epochs = 50;
  int threads = 1;
  int auc_negative_factor = 10;
  bool compute_aupr3 = true;
};

struct InterpretationRow {
  int rank;
  int label_id;
  double weight;  // component of the unit hyperplane direction
  long pos_count, neg_count;  // context totals in the training data
  std::string label;          // canonical string H
  std::string description;
};

struct EvaluationReport {
  std::string dataset, mode;
  int k = 0;
  std::uint64_t seed = 0;
  double auc = 0.0;
  std::optional<double> aupr3;
  long n_pos = 0, n_neg = 0;          // AUC candidate counts
  long aupr3_pos = 0, aupr3_neg = 0;  // AUPR_3 candidate counts
  double runtime_s = 0.0;
  double chosen_C = 1.0;
  std::vector<InterpretationRow> interpretation;
  PrCurve pr_curve;
};

// The trained predictor with everything reports and re-scoring need.
struct TrainedPredictor {
  LinearModel model;
  std::vector<std::string> labels_by_id;  // training-time registry contents
  std::vector<long> pos_counts, neg_counts;
};

// Uniformly sampled distinct non-edges (u != v, edge absent; ordered pairs on
// directed graphs). Pairs in `exclude` are never returned. Throws when more
// pairs are requested than exist.
std::vector<std::pair<NodeId, NodeId>> sample_nonedges(
    const Graph& g, std::size_t count, Rng& rng,
    const std::unordered_set<std::uint64_t>* exclude = nullptr);

std::vector<std::pair<NodeId, NodeId>> sample_nonedges(const Graph& g,
                                                       std::size_t count,
                                                       std::uint64_t seed);

std::uint64_t pair_key(const Graph& g, NodeId u, NodeId v);

struct TrainingSet {
  std::vector<SparseVec> vectors;
  std::vector<int> labels;  // +1 / -1
  std::vector<std::pair<NodeId, NodeId>> pairs;
};

// Positive rows: every edge of g_train, counted with the edge removed first
// ("what SSTs would adding it cause?"). Negative rows: alpha-times as many
// sampled non-edges, counted as-is. Undirected graphs run the degree
// disambiguation updater around each candidate.
TrainingSet build_static_training_set(const Graph& g_train, const StaticTrainConfig& cfg,
                                      LabelRegistry& registry);

// Ranked report rows from a trained predictor (|weight| descending).
std::vector<InterpretationRow> interpret(const TrainedPredictor& p);

struct StaticRunResult {
  EvaluationReport report;
  TrainedPredictor predictor;
};

StaticRunResult run_static_lp(const Graph& g, const StaticTrainConfig& cfg,
                              const std::string& dataset_name);

struct TemporalRunResult {
  EvaluationReport report;
  TrainedPredictor predictor;
};

TemporalRunResult run_temporal_lp(const TemporalEdgeStream& stream,
                                  const TemporalTrainConfig& cfg,
                                  const std::string& dataset_name);

// Baselines evaluated on the same candidate sets as the SST models.
struct BaselineReports {
  EvaluationReport random;
  EvaluationReport common_neighbors;
};

BaselineReports eval_static_baselines(const Graph& g, const StaticTrainConfig& cfg,
                                      const std::string& dataset_name);
BaselineReports eval_temporal_baselines(const TemporalEdgeStream& stream,
                                        const TemporalTrainConfig& cfg,
                                        const std::string& dataset_name);

// Base graph for predicting bucket `current` (exclusive): union of all edges
// in buckets < current over the full node universe, with recency/frequency
// traits computed from that history.
Graph build_base_graph(const BucketedStream& buckets, int current);

}  // namespace sst

#endif  // SST_PREDICTOR_HPP_
