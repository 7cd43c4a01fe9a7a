#ifndef SST_TRAITS_HPP_
#define SST_TRAITS_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sst/graph.hpp"

namespace sst {

enum class TraitKind { Class, Rank };
enum class TraitScope { Node, Edge };

// Declaration of one trait. Class traits take values from a finite unordered
// set; rank traits take totally ordered values and enter labels only through
// within-subgraph ranks.
struct TraitSpec {
  std::string name;
  TraitKind kind;
  TraitScope scope;
  std::vector<std::string> class_values;  // class traits only

  static TraitSpec class_trait(std::string name, TraitScope scope,
                               std::vector<std::string> values);
  static TraitSpec rank_trait(std::string name, TraitScope scope);
};

// Throws if the name or a class value contains a label-delimiter character.
void validate_trait_spec(const TraitSpec& spec);

// Dense descending ranks, largest value -> 1, ties share a rank.
// <30, 4, 12, 4> -> <1, 3, 2, 3>.
std::vector<int> rank_projection(std::span<const double> values);

enum class UpdaterPhase { BeforeBatch, PreLabel, PostLabel, AfterBatch };

// Hook that rewrites trait values at a pipeline phase. Updaters must not
// change topology.
struct TraitUpdater {
  std::string name;
  UpdaterPhase phase;
  std::function<void(Graph&, const GraphChange&)> apply;
};

class UpdaterSet {
 public:
  void add(TraitUpdater updater) { updaters_.push_back(std::move(updater)); }
  // Runs the phase's updaters in registration order.
  void run(UpdaterPhase phase, Graph& g, const GraphChange& c) const {
    for (const auto& u : updaters_)
      if (u.phase == phase) u.apply(g, c);
  }
  bool empty() const { return updaters_.empty(); }

 private:
  std::vector<TraitUpdater> updaters_;
};

inline constexpr const char* kDegCmpTrait = "deg_cmp";
inline constexpr const char* kRecencyTrait = "recency";
inline constexpr const char* kFrequencyTrait = "frequency";

TraitSpec deg_cmp_spec();
TraitSpec recency_spec();
TraitSpec frequency_spec();

// Compares the endpoint degrees of an undirected edge addition and marks the
// endpoints "equal" or "higher"/"lesser"; other nodes keep the neutral default
// (absent value). Pair of pre-label assign and post-label clear hooks.
TraitUpdater degree_disambiguation_updater();
TraitUpdater degree_disambiguation_cleanup();

// Direct form used by tests and by the updater above.
void assign_degree_comparison(Graph& g, NodeId u, NodeId v);

// Occurrence history of an edge over time buckets (ascending bucket indices).
// Recency/frequency read only buckets strictly before `current_bucket`.
std::string recency_category(std::span<const int> occurrence_buckets, int current_bucket);
std::string frequency_category(std::span<const int> occurrence_buckets, int current_bucket);

}  // namespace sst

#endif  // SST_TRAITS_HPP_
