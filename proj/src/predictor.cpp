#include "sst/predictor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>
#include <unordered_map>

namespace sst {

std::uint64_t pair_key(const Graph& g, NodeId u, NodeId v) {
  if (!g.directed() && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

std::vector<std::pair<NodeId, NodeId>> sample_nonedges(
    const Graph& g, std::size_t count, Rng& rng,
    const std::unordered_set<std::uint64_t>* exclude) {
  const std::vector<NodeId> nodes = g.nodes();
  const std::size_t n = nodes.size();
  const std::size_t all_pairs = g.directed() ? n * (n - 1) : n * (n - 1) / 2;
  const std::size_t excluded = exclude ? exclude->size() : 0;
  if (all_pairs < g.edge_count() + excluded ||
      count > all_pairs - g.edge_count() - excluded)
    throw std::invalid_argument("not enough non-edges to sample");

  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(count);
  std::unordered_set<std::uint64_t> taken;

  const std::size_t available = all_pairs - g.edge_count();
  if (count * 2 < available) {
    // rejection sampling
    std::size_t guard = 0;
    const std::size_t guard_limit = 200 * count + 10000;
    while (out.size() < count && guard++ < guard_limit) {
      NodeId u = nodes[rng.below(n)];
      NodeId v = nodes[rng.below(n)];
      if (u == v) continue;
      if (!g.directed() && u > v) std::swap(u, v);
      if (g.has_edge(u, v)) continue;
      const std::uint64_t key = pair_key(g, u, v);
      if (exclude && exclude->count(key)) continue;
      if (!taken.insert(key).second) continue;
      out.emplace_back(u, v);
    }
    if (out.size() == count) return out;
    out.clear();
    taken.clear();
  }
  // dense fallback: enumerate, shuffle, take
  std::vector<std::pair<NodeId, NodeId>> pool;
  for (NodeId u : nodes)
    for (NodeId v : nodes) {
      if (u == v) continue;
      if (!g.directed() && v < u) continue;
      if (g.has_edge(u, v)) continue;
      if (exclude && exclude->count(pair_key(g, u, v))) continue;
      pool.emplace_back(u, v);
    }
  if (pool.size() < count) throw std::invalid_argument("not enough non-edges to sample");
  rng.shuffle(pool);
  pool.resize(count);
  return pool;
}

std::vector<std::pair<NodeId, NodeId>> sample_nonedges(const Graph& g,
                                                       std::size_t count,
                                                       std::uint64_t seed) {
  Rng rng(seed);
  return sample_nonedges(g, count, rng, nullptr);
}

namespace {

struct CandidateTask {
  NodeId u, v;
  bool remove_first = false;     // static positives: pull the edge out first
  bool marked_existing = false;  // temporal repeats: mark the present edge
  std::string recency, frequency;  // traits for a newly added edge (temporal)
};

CounterConfig make_counter_config(int k, bool directed, bool temporal) {
  CounterConfig cfg;
  cfg.k = k;
  if (temporal) {
    cfg.traits = {recency_spec(), frequency_spec()};
  } else if (!directed) {
    cfg.traits = {deg_cmp_spec()};
  }
  return cfg;
}

UpdaterSet make_updaters(bool directed, bool temporal) {
  UpdaterSet u;
  if (!temporal && !directed) {
    u.add(degree_disambiguation_updater());
    u.add(degree_disambiguation_cleanup());
  }
  return u;
}

GraphChange make_change(const CandidateTask& t, bool temporal) {
  std::vector<TraitAssignment> traits;
  if (temporal && !t.marked_existing) {
    traits.push_back({kRecencyTrait, t.recency});
    traits.push_back({kFrequencyTrait, t.frequency});
  }
  return GraphChange::edge_addition(t.u, t.v, std::move(traits));
}

// Counts task label multisets and hands them to `consume` in ascending task
// order (so interning and scores stay deterministic whatever the thread
// count). Chunked to bound memory; worker graph copies and label caches
// persist across chunks.
class CandidateCounter {
 public:
  CandidateCounter(const Graph& base, const CounterConfig& ccfg, bool temporal,
                   int threads)
      : temporal_(temporal) {
    if (threads < 1) threads = 1;
    for (int i = 0; i < threads; ++i) workers_.push_back(std::make_unique<Worker>(base, ccfg, temporal));
  }

  void process(const std::vector<CandidateTask>& tasks,
               const std::function<void(std::size_t, std::map<std::string, long>&&)>& consume) {
    constexpr std::size_t kChunk = 2048;
    std::vector<std::map<std::string, long>> results(std::min(kChunk, tasks.size()));
    for (std::size_t begin = 0; begin < tasks.size(); begin += kChunk) {
      const std::size_t end = std::min(tasks.size(), begin + kChunk);
      const std::size_t len = end - begin;
      if (workers_.size() == 1) {
        for (std::size_t i = 0; i < len; ++i)
          results[i] = workers_[0]->count(tasks[begin + i]);
      } else {
        std::vector<std::thread> pool;
        const std::size_t per = (len + workers_.size() - 1) / workers_.size();
        for (std::size_t w = 0; w < workers_.size(); ++w) {
          const std::size_t b = std::min(len, w * per), e = std::min(len, b + per);
          if (b >= e) break;
          pool.emplace_back([&, w, b, e] {
            for (std::size_t i = b; i < e; ++i)
              results[i] = workers_[w]->count(tasks[begin + i]);
          });
        }
        for (auto& th : pool) th.join();
      }
      for (std::size_t i = 0; i < len; ++i) consume(begin + i, std::move(results[i]));
    }
  }

 private:
  struct Worker {
    Graph g;
    TransitionCounter counter;
    UpdaterSet updaters;
    bool temporal;

    Worker(const Graph& base, const CounterConfig& ccfg, bool is_temporal)
        : g(base), counter(ccfg), updaters(make_updaters(base.directed(), is_temporal)),
          temporal(is_temporal) {
      counter.set_edge_colors_stable(temporal);  // temporal traits are per-phase
    }

    std::map<std::string, long> count(const CandidateTask& t) {
      GraphChange change = make_change(t, temporal);
      if (t.remove_first) g.remove_edge(t.u, t.v);
      updaters.run(UpdaterPhase::PreLabel, g, change);
      std::map<std::string, long> out = t.marked_existing
                                            ? counter.count_labels_marked_edge(g, t.u, t.v)
                                            : counter.count_labels(g, change);
      updaters.run(UpdaterPhase::PostLabel, g, change);
      if (t.remove_first) g.add_edge(t.u, t.v);
      return out;
    }
  };

  bool temporal_;
  std::vector<std::unique_ptr<Worker>> workers_;
};

std::vector<std::map<std::string, long>> count_candidates(
    const Graph& base, const std::vector<CandidateTask>& tasks, const CounterConfig& ccfg,
    bool temporal, int threads) {
  std::vector<std::map<std::string, long>> results(tasks.size());
  CandidateCounter counter(base, ccfg, temporal, threads);
  counter.process(tasks, [&](std::size_t i, std::map<std::string, long>&& m) {
    results[i] = std::move(m);
  });
  return results;
}

SparseVec to_sparse(const std::map<std::string, long>& counts, LabelRegistry& registry) {
  SparseVec x;
  x.ix.reserve(counts.size());
  for (const auto& [h, c] : counts)
    x.add(registry.intern(h), static_cast<float>(c));
  std::sort(x.ix.begin(), x.ix.end());
  return x;
}

double score_counts(const std::map<std::string, long>& counts, const LinearModel& model,
                    const std::unordered_map<std::string, int>& label_ids) {
  SparseVec x;
  x.ix.reserve(counts.size());
  for (const auto& [h, c] : counts) {
    auto it = label_ids.find(h);
    if (it == label_ids.end()) continue;  // unseen at training time: weight 0
    x.add(it->second, static_cast<float>(c));
  }
  return model.score(x);
}

struct EvalSets {
  std::vector<CandidateTask> tasks;
  std::vector<std::size_t> auc_idx;
  std::vector<bool> auc_pos;
  std::vector<std::size_t> aupr3_idx;
  std::vector<bool> aupr3_pos;
  long auc_n_pos = 0, auc_n_neg = 0;
  long aupr3_n_pos = 0, aupr3_n_neg = 0;
};

class TaskDedup {
 public:
  explicit TaskDedup(const Graph& g, EvalSets& sets) : g_(g), sets_(sets) {}

  std::size_t get(const CandidateTask& t) {
    const std::uint64_t key = pair_key(g_, t.u, t.v);
    auto [it, inserted] = index_.try_emplace(key, sets_.tasks.size());
    if (inserted) sets_.tasks.push_back(t);
    return it->second;
  }

 private:
  const Graph& g_;
  EvalSets& sets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Scores every candidate once and assembles the metric inputs.
struct ScoredEval {
  double auc = 0.0;
  std::optional<double> aupr3;
  PrCurve pr;
};

ScoredEval evaluate_scores(const EvalSets& sets, const std::vector<double>& scores,
                           bool want_aupr3) {
  ScoredEval out;
  std::vector<ScoredCandidate> auc_set;
  auc_set.reserve(sets.auc_idx.size());
  for (std::size_t i = 0; i < sets.auc_idx.size(); ++i)
    auc_set.push_back({scores[sets.auc_idx[i]], static_cast<bool>(sets.auc_pos[i])});
  out.auc = auc(auc_set);
  if (want_aupr3 && !sets.aupr3_idx.empty()) {
    std::vector<ScoredCandidate> pr_set;
    pr_set.reserve(sets.aupr3_idx.size());
    for (std::size_t i = 0; i < sets.aupr3_idx.size(); ++i)
      pr_set.push_back({scores[sets.aupr3_idx[i]], static_cast<bool>(sets.aupr3_pos[i])});
    out.pr = aupr_davis_goadrich(pr_set);
    out.aupr3 = out.pr.area;
  }
  return out;
}

std::vector<InterpretationRow> build_interpretation(const TrainedPredictor& p) {
  const std::vector<double> unit = p.model.unit_weights();
  std::vector<int> order(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(unit[a]), mb = std::abs(unit[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  std::vector<InterpretationRow> rows;
  rows.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int id = order[r];
    InterpretationRow row;
    row.rank = static_cast<int>(r) + 1;
    row.label_id = id;
    row.weight = unit[id];
    row.pos_count = id < static_cast<int>(p.pos_counts.size()) ? p.pos_counts[id] : 0;
    row.neg_count = id < static_cast<int>(p.neg_counts.size()) ? p.neg_counts[id] : 0;
    row.label = p.labels_by_id[id];
    row.description = describe_label(row.label);
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_counts(TrainedPredictor& p, const TrainingSet& ts) {
  p.pos_counts.assign(p.labels_by_id.size(), 0);
  p.neg_counts.assign(p.labels_by_id.size(), 0);
  for (std::size_t i = 0; i < ts.vectors.size(); ++i) {
    auto& dst = ts.labels[i] > 0 ? p.pos_counts : p.neg_counts;
    for (const auto& [id, c] : ts.vectors[i].ix)
      if (id < static_cast<int>(dst.size())) dst[id] += static_cast<long>(c);
  }
}

std::unordered_map<std::string, int> registry_snapshot(const LabelRegistry& registry) {
  std::unordered_map<std::string, int> out;
  for (std::size_t id = 0; id < registry.size(); ++id)
    out.emplace(registry.label_string(static_cast<int>(id)), static_cast<int>(id));
  return out;
}

std::vector<std::string> registry_labels(const LabelRegistry& registry) {
  std::vector<std::string> out;
  out.reserve(registry.size());
  for (std::size_t id = 0; id < registry.size(); ++id)
    out.push_back(registry.label_string(static_cast<int>(id)));
  return out;
}

std::vector<double> score_all(const Graph& base, const EvalSets& sets,
                              const CounterConfig& ccfg, bool temporal, int threads,
                              const LinearModel& model,
                              const std::unordered_map<std::string, int>& label_ids) {
  std::vector<double> scores(sets.tasks.size());
  CandidateCounter cc(base, ccfg, temporal, threads);
  cc.process(sets.tasks, [&](std::size_t i, std::map<std::string, long>&& m) {
    scores[i] = score_counts(m, model, label_ids);
  });
  return scores;
}

}  // namespace

TrainingSet build_static_training_set(const Graph& g_train, const StaticTrainConfig& cfg,
                                      LabelRegistry& registry) {
  Rng master(cfg.seed);
  Rng neg_rng = master.split();
  TrainingSet ts;
  std::vector<CandidateTask> tasks;
  for (auto [u, v] : g_train.edges()) {
    tasks.push_back({u, v, /*remove_first=*/true});
    ts.labels.push_back(1);
  }
  const std::size_t n_neg =
      static_cast<std::size_t>(std::llround(cfg.alpha * static_cast<double>(tasks.size())));
  for (auto [u, v] : sample_nonedges(g_train, n_neg, neg_rng, nullptr)) {
    tasks.push_back({u, v});
    ts.labels.push_back(-1);
  }
  const CounterConfig ccfg = make_counter_config(cfg.k, g_train.directed(), false);
  ts.vectors.resize(tasks.size());
  CandidateCounter cc(g_train, ccfg, false, cfg.threads);
  cc.process(tasks, [&](std::size_t i, std::map<std::string, long>&& m) {
    ts.vectors[i] = to_sparse(m, registry);
  });
  ts.pairs.reserve(tasks.size());
  for (const auto& t : tasks) ts.pairs.emplace_back(t.u, t.v);
  return ts;
}

std::vector<InterpretationRow> interpret(const TrainedPredictor& p) {
  return build_interpretation(p);
}

namespace {

EvalSets build_static_eval(const Graph& g, const StaticTrainConfig& cfg,
                           Rng& auc_neg_rng,
                           const std::vector<std::pair<NodeId, NodeId>>& positives) {
  EvalSets sets;
  TaskDedup dedup(g, sets);
  for (auto [u, v] : positives) {
    const std::size_t i = dedup.get({u, v, /*remove_first=*/true});
    sets.auc_idx.push_back(i);
    sets.auc_pos.push_back(true);
    ++sets.auc_n_pos;
  }
  const std::size_t n_neg = positives.size() * cfg.auc_negative_factor;
  for (auto [u, v] : sample_nonedges(g, n_neg, auc_neg_rng, nullptr)) {
    const std::size_t i = dedup.get({u, v});
    sets.auc_idx.push_back(i);
    sets.auc_pos.push_back(false);
    ++sets.auc_n_neg;
  }
  if (cfg.compute_aupr3) {
    Aupr3Candidates cand = aupr3_candidates(g, positives);
    for (std::size_t c = 0; c < cand.pairs.size(); ++c) {
      auto [u, v] = cand.pairs[c];
      const bool pos = cand.positive[c];
      const std::size_t i = dedup.get({u, v, /*remove_first=*/pos});
      sets.aupr3_idx.push_back(i);
      sets.aupr3_pos.push_back(pos);
      (pos ? sets.aupr3_n_pos : sets.aupr3_n_neg)++;
    }
  }
  return sets;
}

}  // namespace

StaticRunResult run_static_lp(const Graph& g, const StaticTrainConfig& cfg,
                              const std::string& dataset_name) {
  const auto t0 = std::chrono::steady_clock::now();
  if (std::abs(cfg.train_frac + cfg.val_frac + cfg.test_frac - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");
  if (g.edge_count() < 20)
    throw std::invalid_argument("dataset too small for a split");

  Rng master(cfg.seed);
  const std::uint64_t split_seed = master.next_u64();
  Rng trainneg_rng = master.split();
  const std::uint64_t svm_seed = master.next_u64();
  Rng aucneg_rng = master.split();
  Rng valneg_rng = master.split();

  EdgeSplit split = split_static(g, cfg.train_frac, cfg.val_frac, cfg.test_frac, split_seed);
  Graph g_train = edges_only_graph(g, split.train);

  // training matrix
  LabelRegistry registry;
  const CounterConfig ccfg = make_counter_config(cfg.k, g.directed(), false);
  TrainingSet ts;
  {
    std::vector<CandidateTask> tasks;
    for (auto [u, v] : split.train) {
      tasks.push_back({u, v, /*remove_first=*/true});
      ts.labels.push_back(1);
    }
    const std::size_t n_neg = static_cast<std::size_t>(
        std::llround(cfg.alpha * static_cast<double>(split.train.size())));
    for (auto [u, v] : sample_nonedges(g_train, n_neg, trainneg_rng, nullptr)) {
      tasks.push_back({u, v});
      ts.labels.push_back(-1);
    }
    ts.vectors.resize(tasks.size());
    CandidateCounter cc(g_train, ccfg, false, cfg.threads);
    cc.process(tasks, [&](std::size_t i, std::map<std::string, long>&& m) {
      ts.vectors[i] = to_sparse(m, registry);
    });
    for (const auto& t : tasks) ts.pairs.emplace_back(t.u, t.v);
  }

  // optional C selection on the validation split
  double chosen_C = cfg.C;
  if (cfg.tune_C && !split.validation.empty()) {
    EvalSets val_sets;
    {
      StaticTrainConfig vcfg = cfg;
      vcfg.compute_aupr3 = false;
      val_sets = build_static_eval(g, vcfg, valneg_rng, split.validation);
    }
    auto val_counts = count_candidates(g, val_sets.tasks, ccfg, false, cfg.threads);
    double best = -1.0;
    for (double c_try : {0.1, 1.0, 10.0}) {
      LinearModel m = svm_train(ts.vectors, ts.labels, c_try, cfg.epochs, svm_seed);
      auto ids = registry_snapshot(registry);
      std::vector<double> scores(val_sets.tasks.size());
      for (std::size_t i = 0; i < val_counts.size(); ++i)
        scores[i] = score_counts(val_counts[i], m, ids);
      const double a = evaluate_scores(val_sets, scores, false).auc;
      if (a > best + 1e-12) {
        best = a;
        chosen_C = c_try;
      }
    }
  }

  StaticRunResult result;
  result.predictor.model = svm_train(ts.vectors, ts.labels, chosen_C, cfg.epochs, svm_seed);
  result.predictor.labels_by_id = registry_labels(registry);
  fill_counts(result.predictor, ts);

  // evaluation on the full graph
  EvalSets sets = build_static_eval(g, cfg, aucneg_rng, split.test);
  const auto ids = registry_snapshot(registry);
  const std::vector<double> scores =
      score_all(g, sets, ccfg, false, cfg.threads, result.predictor.model, ids);
  const ScoredEval ev = evaluate_scores(sets, scores, cfg.compute_aupr3);

  EvaluationReport& rep = result.report;
  rep.dataset = dataset_name;
  rep.mode = "static";
  rep.k = cfg.k;
  rep.seed = cfg.seed;
  rep.auc = ev.auc;
  rep.aupr3 = ev.aupr3;
  rep.pr_curve = ev.pr;
  rep.n_pos = sets.auc_n_pos;
  rep.n_neg = sets.auc_n_neg;
  rep.aupr3_pos = sets.aupr3_n_pos;
  rep.aupr3_neg = sets.aupr3_n_neg;
  rep.chosen_C = chosen_C;
  rep.interpretation = build_interpretation(result.predictor);
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

Graph build_base_graph(const BucketedStream& buckets, int current) {
  if (current < 1 || current > static_cast<int>(buckets.buckets.size()))
    throw std::invalid_argument("bad bucket index");
  Graph g(buckets.directed, buckets.node_count);
  for (int b = 0; b < current; ++b)
    for (const auto& e : buckets.buckets[b])
      if (!g.has_edge(e.u, e.v)) g.add_edge(e.u, e.v);
  for (auto [u, v] : g.edges()) {
    const auto& occ = buckets.occurrence_buckets(u, v);
    g.set_edge_trait(u, v, kRecencyTrait, recency_category(occ, current));
    g.set_edge_trait(u, v, kFrequencyTrait, frequency_category(occ, current));
  }
  return g;
}

namespace {

std::vector<std::pair<NodeId, NodeId>> bucket_pairs(const BucketedStream& buckets,
                                                    int index) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(buckets.buckets[index].size());
  for (const auto& e : buckets.buckets[index]) out.emplace_back(e.u, e.v);
  return out;
}

CandidateTask temporal_task(const Graph& base, const BucketedStream& buckets,
                            NodeId u, NodeId v, int current) {
  CandidateTask t{u, v};
  if (base.has_edge(u, v)) {
    t.marked_existing = true;  // repeat interaction: the edge carries its history
  } else {
    const auto& occ = buckets.occurrence_buckets(u, v);
    t.recency = recency_category(occ, current);
    t.frequency = frequency_category(occ, current);
  }
  return t;
}

EvalSets build_temporal_eval(const Graph& base, const BucketedStream& buckets,
                             const TemporalTrainConfig& cfg, int current,
                             Rng& neg_rng,
                             const std::vector<std::pair<NodeId, NodeId>>& positives) {
  EvalSets sets;
  TaskDedup dedup(base, sets);
  std::unordered_set<std::uint64_t> pos_keys;
  for (auto [u, v] : positives) pos_keys.insert(pair_key(base, u, v));
  for (auto [u, v] : positives) {
    const std::size_t i = dedup.get(temporal_task(base, buckets, u, v, current));
    sets.auc_idx.push_back(i);
    sets.auc_pos.push_back(true);
    ++sets.auc_n_pos;
  }
  const std::size_t n_neg = positives.size() * cfg.auc_negative_factor;
  for (auto [u, v] : sample_nonedges(base, n_neg, neg_rng, &pos_keys)) {
    const std::size_t i = dedup.get(temporal_task(base, buckets, u, v, current));
    sets.auc_idx.push_back(i);
    sets.auc_pos.push_back(false);
    ++sets.auc_n_neg;
  }
  if (cfg.compute_aupr3) {
    Aupr3Candidates cand = aupr3_candidates(base, positives);
    for (std::size_t c = 0; c < cand.pairs.size(); ++c) {
      auto [u, v] = cand.pairs[c];
      const std::size_t i =
          dedup.get(temporal_task(base, buckets, u, v, current));
      sets.aupr3_idx.push_back(i);
      sets.aupr3_pos.push_back(cand.positive[c]);
      (cand.positive[c] ? sets.aupr3_n_pos : sets.aupr3_n_neg)++;
    }
  }
  return sets;
}

}  // namespace

TemporalRunResult run_temporal_lp(const TemporalEdgeStream& stream,
                                  const TemporalTrainConfig& cfg,
                                  const std::string& dataset_name) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.tau < 3) throw std::invalid_argument("tau must be >= 3");
  if (cfg.base_buckets < 1 || cfg.base_buckets >= cfg.tau - 1)
    throw std::invalid_argument("base bucket count must be < tau-1");
  if (stream.interactions.size() < static_cast<std::size_t>(cfg.tau))
    throw std::invalid_argument("fewer interactions than buckets");

  Rng master(cfg.seed);
  Rng trainneg_rng = master.split();
  const std::uint64_t svm_seed = master.next_u64();
  Rng aucneg_rng = master.split();

  const BucketedStream buckets = bucket_stream(stream, cfg.tau);
  const CounterConfig ccfg = make_counter_config(cfg.k, stream.directed, true);

  // train: base = buckets [0, base_buckets), positives = bucket base_buckets
  const int train_bucket = cfg.base_buckets;
  Graph base_train = build_base_graph(buckets, train_bucket);
  const auto train_pos = bucket_pairs(buckets, train_bucket);
  if (train_pos.empty()) throw std::invalid_argument("empty training bucket");

  LabelRegistry registry;
  TrainingSet ts;
  {
    std::vector<CandidateTask> tasks;
    std::unordered_set<std::uint64_t> pos_keys;
    for (auto [u, v] : train_pos) pos_keys.insert(pair_key(base_train, u, v));
    for (auto [u, v] : train_pos) {
      tasks.push_back(temporal_task(base_train, buckets, u, v, train_bucket));
      ts.labels.push_back(1);
    }
    for (auto [u, v] : sample_nonedges(base_train, train_pos.size(), trainneg_rng, &pos_keys)) {
      tasks.push_back(temporal_task(base_train, buckets, u, v, train_bucket));
      ts.labels.push_back(-1);
    }
    ts.vectors.resize(tasks.size());
    CandidateCounter cc(base_train, ccfg, true, cfg.threads);
    cc.process(tasks, [&](std::size_t i, std::map<std::string, long>&& m) {
      ts.vectors[i] = to_sparse(m, registry);
    });
    for (const auto& t : tasks) ts.pairs.emplace_back(t.u, t.v);
  }

  TemporalRunResult result;
  result.predictor.model = svm_train(ts.vectors, ts.labels, cfg.C, cfg.epochs, svm_seed);
  result.predictor.labels_by_id = registry_labels(registry);
  fill_counts(result.predictor, ts);

  // test: base = buckets [0, tau-1), positives = bucket tau-1
  const int test_bucket = cfg.tau - 1;
  Graph base_test = build_base_graph(buckets, test_bucket);
  const auto test_pos = bucket_pairs(buckets, test_bucket);
  if (test_pos.empty()) throw std::invalid_argument("empty test bucket");

  EvalSets sets =
      build_temporal_eval(base_test, buckets, cfg, test_bucket, aucneg_rng, test_pos);
  const auto ids = registry_snapshot(registry);
  const std::vector<double> scores =
      score_all(base_test, sets, ccfg, true, cfg.threads, result.predictor.model, ids);
  const ScoredEval ev = evaluate_scores(sets, scores, cfg.compute_aupr3);

  EvaluationReport& rep = result.report;
  rep.dataset = dataset_name;
  rep.mode = "temporal";
  rep.k = cfg.k;
  rep.seed = cfg.seed;
  rep.auc = ev.auc;
  rep.aupr3 = ev.aupr3;
  rep.pr_curve = ev.pr;
  rep.n_pos = sets.auc_n_pos;
  rep.n_neg = sets.auc_n_neg;
  rep.aupr3_pos = sets.aupr3_n_pos;
  rep.aupr3_neg = sets.aupr3_n_neg;
  rep.chosen_C = cfg.C;
  rep.interpretation = build_interpretation(result.predictor);
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

namespace {

EvaluationReport baseline_report(const std::string& dataset, const std::string& mode,
                                 const std::string& model, int k, std::uint64_t seed,
                                 const EvalSets& sets, const std::vector<double>& scores,
                                 bool want_aupr3) {
  const ScoredEval ev = evaluate_scores(sets, scores, want_aupr3);
  EvaluationReport rep;
  rep.dataset = dataset + " [" + model + "]";
  rep.mode = mode;
  rep.k = k;
  rep.seed = seed;
  rep.auc = ev.auc;
  rep.aupr3 = ev.aupr3;
  rep.pr_curve = ev.pr;
  rep.n_pos = sets.auc_n_pos;
  rep.n_neg = sets.auc_n_neg;
  rep.aupr3_pos = sets.aupr3_n_pos;
  rep.aupr3_neg = sets.aupr3_n_neg;
  return rep;
}

BaselineReports baselines_from_sets(const Graph& g_eval, const EvalSets& sets,
                                    const std::string& dataset, const std::string& mode,
                                    int k, std::uint64_t seed, bool want_aupr3) {
  std::vector<double> cn(sets.tasks.size()), rnd(sets.tasks.size());
  Rng rng(seed ^ 0xba5e11fe5ULL);
  for (std::size_t i = 0; i < sets.tasks.size(); ++i) {
    cn[i] = static_cast<double>(
        common_neighbors_score(g_eval, sets.tasks[i].u, sets.tasks[i].v));
    rnd[i] = random_score(rng);
  }
  BaselineReports out;
  out.common_neighbors =
      baseline_report(dataset, mode, "common-neighbors", k, seed, sets, cn, want_aupr3);
  out.random = baseline_report(dataset, mode, "random", k, seed, sets, rnd, want_aupr3);
  return out;
}

}  // namespace

BaselineReports eval_static_baselines(const Graph& g, const StaticTrainConfig& cfg,
                                      const std::string& dataset_name) {
  Rng master(cfg.seed);
  const std::uint64_t split_seed = master.next_u64();
  Rng trainneg_rng = master.split();
  (void)master.next_u64();  // svm seed slot, keeps candidate sampling aligned
  Rng aucneg_rng = master.split();
  (void)trainneg_rng;

  EdgeSplit split = split_static(g, cfg.train_frac, cfg.val_frac, cfg.test_frac, split_seed);
  EvalSets sets = build_static_eval(g, cfg, aucneg_rng, split.test);
  return baselines_from_sets(g, sets, dataset_name, "static", cfg.k, cfg.seed,
                             cfg.compute_aupr3);
}

BaselineReports eval_temporal_baselines(const TemporalEdgeStream& stream,
                                        const TemporalTrainConfig& cfg,
                                        const std::string& dataset_name) {
  Rng master(cfg.seed);
  Rng trainneg_rng = master.split();
  (void)master.next_u64();
  Rng aucneg_rng = master.split();
  (void)trainneg_rng;

  const BucketedStream buckets = bucket_stream(stream, cfg.tau);
  const int test_bucket = cfg.tau - 1;
  Graph base_test = build_base_graph(buckets, test_bucket);
  const auto test_pos = bucket_pairs(buckets, test_bucket);
  EvalSets sets =
      build_temporal_eval(base_test, buckets, cfg, test_bucket, aucneg_rng, test_pos);
  return baselines_from_sets(base_test, sets, dataset_name, "temporal", cfg.k, cfg.seed,
                             cfg.compute_aupr3);
}

}  // namespace sst
