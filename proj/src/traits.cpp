#include "sst/traits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sst {

TraitSpec TraitSpec::class_trait(std::string name, TraitScope scope,
                                 std::vector<std::string> values) {
  TraitSpec s{std::move(name), TraitKind::Class, scope, std::move(values)};
  validate_trait_spec(s);
  return s;
}

TraitSpec TraitSpec::rank_trait(std::string name, TraitScope scope) {
  TraitSpec s{std::move(name), TraitKind::Rank, scope, {}};
  validate_trait_spec(s);
  return s;
}

void validate_trait_spec(const TraitSpec& spec) {
  auto ok = [](const std::string& s) {
    return !s.empty() && s.find_first_of("|;{}*=,") == std::string::npos;
  };
  if (!ok(spec.name)) throw std::invalid_argument("bad trait name: " + spec.name);
  for (const auto& v : spec.class_values)
    if (!ok(v)) throw std::invalid_argument("bad class value: " + v);
}

std::vector<int> rank_projection(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("rank_projection: empty input");
  for (double v : values)
    if (std::isnan(v)) throw std::invalid_argument("rank_projection: incomparable value");
  std::vector<double> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), values[i], std::greater<>());
    ranks[i] = static_cast<int>(it - distinct.begin()) + 1;
  }
  return ranks;
}

TraitSpec deg_cmp_spec() {
  return TraitSpec::class_trait(kDegCmpTrait, TraitScope::Node,
                                {"equal", "higher", "lesser"});
}

TraitSpec recency_spec() {
  return TraitSpec::class_trait(kRecencyTrait, TraitScope::Edge,
                                {"never", "newest", "new", "old"});
}

TraitSpec frequency_spec() {
  return TraitSpec::class_trait(kFrequencyTrait, TraitScope::Edge,
                                {"0", "1", "2", "3+"});
}

void assign_degree_comparison(Graph& g, NodeId u, NodeId v) {
  const int du = g.degree(u), dv = g.degree(v);
  if (du == dv) {
    g.set_node_trait(u, kDegCmpTrait, std::string("equal"));
    g.set_node_trait(v, kDegCmpTrait, std::string("equal"));
  } else if (du > dv) {
    g.set_node_trait(u, kDegCmpTrait, std::string("higher"));
    g.set_node_trait(v, kDegCmpTrait, std::string("lesser"));
  } else {
    g.set_node_trait(u, kDegCmpTrait, std::string("lesser"));
    g.set_node_trait(v, kDegCmpTrait, std::string("higher"));
  }
}

TraitUpdater degree_disambiguation_updater() {
  return {"degree_disambiguation", UpdaterPhase::PreLabel,
          [](Graph& g, const GraphChange& c) {
            if (c.kind != ChangeKind::EdgeAddition || g.directed()) return;
            assign_degree_comparison(g, c.u, c.v);
          }};
}

TraitUpdater degree_disambiguation_cleanup() {
  return {"degree_disambiguation_cleanup", UpdaterPhase::PostLabel,
          [](Graph& g, const GraphChange& c) {
            if (c.kind != ChangeKind::EdgeAddition || g.directed()) return;
            g.clear_node_trait(c.u, kDegCmpTrait);
            g.clear_node_trait(c.v, kDegCmpTrait);
          }};
}

static int last_occurrence_before(std::span<const int> buckets, int current) {
  int last = -1;
  for (int b : buckets)
    if (b < current) last = std::max(last, b);
  return last;
}

std::string recency_category(std::span<const int> buckets, int current) {
  const int last = last_occurrence_before(buckets, current);
  if (last < 0) return "never";
  if (last == current - 1) return "newest";
  if (last == current - 2) return "new";
  return "old";
}

std::string frequency_category(std::span<const int> buckets, int current) {
  int count = 0;
  for (int b : buckets)
    if (b < current) ++count;
  if (count >= 3) return "3+";
  return std::to_string(count);
}

}  // namespace sst
