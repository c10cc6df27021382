#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hycosbm {

using NodeId = std::size_t;

struct Hyperedge {
  std::vector<NodeId> nodes;  // sorted, distinct
  std::uint64_t weight = 1;
};

/// A hyperedge as read from disk: external node labels plus a count.
struct RawEdge {
  std::vector<std::string> nodes;
  std::uint64_t weight = 1;
};

/// Observed hypergraph A. Immutable once built.
///
/// Hyperedges are stored with sorted node lists and unique node sets;
/// duplicates are merged by summing weights. `max_size()` is the size D used
/// for the budget constant. Subgraphs taken for cross-validation keep the
/// parent's node universe and D so that every fold shares one objective.
class Hypergraph {
 public:
  Hypergraph(std::size_t num_nodes, std::vector<Hyperedge> edges,
             std::vector<std::string> node_ids = {});

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t max_size() const { return max_size_; }
  std::uint64_t total_weight() const { return total_weight_; }
  /// Sum of |e| over hyperedges.
  std::size_t total_incidences() const { return total_incidences_; }

  const std::vector<Hyperedge>& edges() const { return edges_; }
  const Hyperedge& edge(std::size_t id) const { return edges_[id]; }
  /// Node list of hyperedge `id` from one contiguous array; same content as
  /// edge(id).nodes.
  std::span<const NodeId> members(std::size_t id) const {
    return {flat_nodes_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  /// External labels, indexed by dense node id.
  const std::vector<std::string>& node_ids() const { return node_ids_; }

  /// Same node universe and D, restricted to the given hyperedge ids.
  Hypergraph subgraph(std::span<const std::size_t> edge_ids) const;

 private:
  Hypergraph() = default;
  void pack();

  std::size_t num_nodes_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> flat_nodes_;
  std::vector<std::string> node_ids_;
  std::size_t max_size_ = 0;
  std::uint64_t total_weight_ = 0;
  std::size_t total_incidences_ = 0;
};

/// Remaps string labels to dense ids (first appearance order, after any
/// `known_nodes`), merges duplicate node sets and validates every edge.
/// Nodes listed in `known_nodes` but absent from every edge stay isolated.
Hypergraph build_hypergraph(const std::vector<RawEdge>& raw_edges,
                            const std::vector<std::string>& known_nodes = {});

/// For each node, ids of the hyperedges containing it, in increasing order.
/// Stored CSR-style.
class IncidenceIndex {
 public:
  explicit IncidenceIndex(const Hypergraph& graph);

  std::span<const std::size_t> edges_of(NodeId node) const {
    return {edge_ids_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t total_length() const { return edge_ids_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> edge_ids_;
};

inline IncidenceIndex incidence_index(const Hypergraph& graph) { return IncidenceIndex(graph); }

/// One categorical covariate occupying a contiguous block of one-hot columns.
struct AttributeGroup {
  std::string name;
  std::size_t first_column = 0;
  std::vector<std::string> levels;  // column first_column + j encodes levels[j]
};

/// Binary node covariates X, N x Z.
class AttributeMatrix {
 public:
  AttributeMatrix() = default;
  AttributeMatrix(std::size_t num_nodes, std::vector<AttributeGroup> groups);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_columns() const { return num_columns_; }
  const std::vector<AttributeGroup>& groups() const { return groups_; }

  bool operator()(std::size_t node, std::size_t column) const {
    return values_[node * num_columns_ + column] != 0;
  }
  void set(std::size_t node, std::size_t column, bool value) {
    values_[node * num_columns_ + column] = value ? 1 : 0;
  }
  std::span<const std::uint8_t> row(std::size_t node) const {
    return {values_.data() + node * num_columns_, num_columns_};
  }

 private:
  std::size_t num_nodes_ = 0;
  std::size_t num_columns_ = 0;
  std::vector<AttributeGroup> groups_;
  std::vector<std::uint8_t> values_;
};

/// Per-node categorical covariates keyed by external node label.
struct AttributeTable {
  std::vector<std::string> covariates;
  std::vector<std::string> nodes;
  std::vector<std::vector<std::string>> values;  // values[row][covariate]
};

/// One-hot encodes `table` for the given node order. Levels of each covariate
/// are sorted lexicographically. Throws on rows for unknown nodes or on nodes
/// without a row or with an empty value.
AttributeMatrix one_hot_encode(const AttributeTable& table,
                               const std::vector<std::string>& node_ids);

}  // namespace hycosbm
