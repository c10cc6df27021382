#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hycosbm/hypergraph.hpp"

namespace hycosbm {

/// Connected components of the node-hyperedge incidence graph restricted to
/// the given edges (equivalently, of the union of cliques over those edges).
/// Isolated nodes count as components.
std::size_t count_components(const Hypergraph& graph, std::span<const std::size_t> edge_ids);

struct DeletionResult {
  std::vector<std::size_t> kept;  // surviving edge ids, increasing
  std::size_t target = 0;         // requested number of surviving edges
  bool target_reached = true;
};

/// Removes hyperedges in uniformly random order until round(keep_fraction
/// |E|) remain. With `keep_connected`, a removal that would increase the
/// number of components is skipped; if the target cannot be met the best
/// achievable subset is returned with target_reached = false.
DeletionResult delete_edges(const Hypergraph& graph, double keep_fraction, bool keep_connected,
                            std::uint64_t seed);

}  // namespace hycosbm
