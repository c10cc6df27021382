#include "hycosbm/deletion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hycosbm/errors.hpp"
#include "hycosbm/rng.hpp"

namespace hycosbm {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[std::max(a, b)] = std::min(a, b);
    --count_;
  }
  std::size_t count() const { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t count_;
};

}  // namespace

std::size_t count_components(const Hypergraph& graph, std::span<const std::size_t> edge_ids) {
  DisjointSets sets(graph.num_nodes());
  for (auto id : edge_ids) {
    const auto& nodes = graph.edge(id).nodes;
    for (std::size_t t = 1; t < nodes.size(); ++t) sets.unite(nodes[0], nodes[t]);
  }
  return sets.count();
}

DeletionResult delete_edges(const Hypergraph& graph, double keep_fraction, bool keep_connected,
                            std::uint64_t seed) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    throw ValidationError("keep fraction must lie in (0, 1]");
  const auto m = graph.num_edges();
  DeletionResult result;
  result.target = static_cast<std::size_t>(std::llround(keep_fraction * static_cast<double>(m)));

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<bool> alive(m, true);
  std::size_t remaining = m;
  const auto baseline = keep_connected ? count_components(graph, order) : 0;
  std::vector<std::size_t> trial;
  for (auto id : order) {
    if (remaining <= result.target) break;
    alive[id] = false;
    if (keep_connected) {
      trial.clear();
      for (std::size_t e = 0; e < m; ++e)
        if (alive[e]) trial.push_back(e);
      if (count_components(graph, trial) > baseline) {
        alive[id] = true;
        continue;
      }
    }
    --remaining;
  }
  for (std::size_t e = 0; e < m; ++e)
    if (alive[e]) result.kept.push_back(e);
  result.target_reached = result.kept.size() == result.target;
  return result;
}

}  // namespace hycosbm
