#include "hycosbm/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "hycosbm/errors.hpp"

namespace hycosbm {

Hypergraph::Hypergraph(std::size_t num_nodes, std::vector<Hyperedge> edges,
                       std::vector<std::string> node_ids)
    : num_nodes_(num_nodes), node_ids_(std::move(node_ids)) {
  if (num_nodes_ == 0) throw ValidationError("hypergraph needs at least one node");
  if (node_ids_.empty()) {
    node_ids_.reserve(num_nodes_);
    for (std::size_t i = 0; i < num_nodes_; ++i) node_ids_.push_back(std::to_string(i));
  } else if (node_ids_.size() != num_nodes_) {
    throw ValidationError("node id table has " + std::to_string(node_ids_.size()) +
                          " entries, expected " + std::to_string(num_nodes_));
  }

  std::map<std::vector<NodeId>, std::uint64_t> merged;
  std::vector<std::vector<NodeId>> order;
  for (auto& e : edges) {
    if (e.weight == 0) throw ValidationError("hyperedge weight must be positive");
    std::sort(e.nodes.begin(), e.nodes.end());
    if (e.nodes.size() < 2) throw ValidationError("hyperedge with fewer than 2 nodes");
    if (std::adjacent_find(e.nodes.begin(), e.nodes.end()) != e.nodes.end())
      throw ValidationError("hyperedge repeats a node");
    if (e.nodes.back() >= num_nodes_) throw ValidationError("hyperedge node index out of range");
    auto [it, inserted] = merged.try_emplace(e.nodes, 0);
    if (inserted) order.push_back(e.nodes);
    if (it->second > std::numeric_limits<std::uint64_t>::max() - e.weight)
      throw ValidationError("hyperedge weight overflow");
    it->second += e.weight;
  }

  edges_.reserve(order.size());
  for (auto& nodes : order) {
    const auto w = merged[nodes];
    max_size_ = std::max(max_size_, nodes.size());
    total_weight_ += w;
    total_incidences_ += nodes.size();
    edges_.push_back({std::move(nodes), w});
  }
  pack();
}

void Hypergraph::pack() {
  offsets_.assign(1, 0);
  offsets_.reserve(edges_.size() + 1);
  flat_nodes_.clear();
  flat_nodes_.reserve(total_incidences_);
  for (const auto& e : edges_) {
    flat_nodes_.insert(flat_nodes_.end(), e.nodes.begin(), e.nodes.end());
    offsets_.push_back(flat_nodes_.size());
  }
}

Hypergraph Hypergraph::subgraph(std::span<const std::size_t> edge_ids) const {
  Hypergraph sub;
  sub.num_nodes_ = num_nodes_;
  sub.node_ids_ = node_ids_;
  sub.max_size_ = max_size_;
  sub.edges_.reserve(edge_ids.size());
  for (auto id : edge_ids) {
    if (id >= edges_.size()) throw ValidationError("subgraph edge id out of range");
    sub.edges_.push_back(edges_[id]);
    sub.total_weight_ += edges_[id].weight;
    sub.total_incidences_ += edges_[id].nodes.size();
  }
  sub.pack();
  return sub;
}

Hypergraph build_hypergraph(const std::vector<RawEdge>& raw_edges,
                            const std::vector<std::string>& known_nodes) {
  if (raw_edges.empty()) throw ValidationError("no hyperedges in input");

  std::unordered_map<std::string, NodeId> index;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };
  for (const auto& label : known_nodes) intern(label);

  std::vector<Hyperedge> edges;
  edges.reserve(raw_edges.size());
  for (std::size_t line = 0; line < raw_edges.size(); ++line) {
    const auto& raw = raw_edges[line];
    if (raw.nodes.size() < 2)
      throw ValidationError("hyperedge " + std::to_string(line) + " has fewer than 2 nodes");
    if (raw.weight == 0)
      throw ValidationError("hyperedge " + std::to_string(line) + " has non-positive weight");
    Hyperedge e;
    e.weight = raw.weight;
    for (const auto& label : raw.nodes) {
      if (label.empty())
        throw ValidationError("hyperedge " + std::to_string(line) + " has an empty node id");
      e.nodes.push_back(intern(label));
    }
    std::set<NodeId> distinct(e.nodes.begin(), e.nodes.end());
    if (distinct.size() != e.nodes.size())
      throw ValidationError("hyperedge " + std::to_string(line) + " repeats a node");
    edges.push_back(std::move(e));
  }
  const auto n = labels.size();
  return Hypergraph(n, std::move(edges), std::move(labels));
}

IncidenceIndex::IncidenceIndex(const Hypergraph& graph) : offsets_(graph.num_nodes() + 1, 0) {
  for (const auto& e : graph.edges())
    for (auto i : e.nodes) ++offsets_[i + 1];
  for (std::size_t i = 0; i < graph.num_nodes(); ++i) offsets_[i + 1] += offsets_[i];
  edge_ids_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < graph.num_edges(); ++id)
    for (auto i : graph.edge(id).nodes) edge_ids_[cursor[i]++] = id;
}

AttributeMatrix::AttributeMatrix(std::size_t num_nodes, std::vector<AttributeGroup> groups)
    : num_nodes_(num_nodes), groups_(std::move(groups)) {
  for (const auto& g : groups_) {
    if (g.first_column != num_columns_)
      throw ValidationError("attribute groups must occupy contiguous column ranges");
    num_columns_ += g.levels.size();
  }
  values_.assign(num_nodes_ * num_columns_, 0);
}

AttributeMatrix one_hot_encode(const AttributeTable& table,
                               const std::vector<std::string>& node_ids) {
  const auto num_cov = table.covariates.size();
  if (num_cov == 0) throw ValidationError("attribute table has no covariate columns");

  std::unordered_map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < node_ids.size(); ++i) node_index.emplace(node_ids[i], i);

  std::vector<std::size_t> row_of(node_ids.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < table.nodes.size(); ++r) {
    auto it = node_index.find(table.nodes[r]);
    if (it == node_index.end())
      throw ValidationError("attribute row for unknown node '" + table.nodes[r] + "'");
    if (row_of[it->second] != std::numeric_limits<std::size_t>::max())
      throw ValidationError("duplicate attribute row for node '" + table.nodes[r] + "'");
    if (table.values[r].size() != num_cov)
      throw ValidationError("attribute row for node '" + table.nodes[r] + "' has " +
                            std::to_string(table.values[r].size()) + " values, expected " +
                            std::to_string(num_cov));
    row_of[it->second] = r;
  }

  std::vector<AttributeGroup> groups;
  std::size_t column = 0;
  for (std::size_t p = 0; p < num_cov; ++p) {
    std::set<std::string> levels;
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
      if (row_of[i] == std::numeric_limits<std::size_t>::max())
        throw ValidationError("missing attributes for node '" + node_ids[i] + "'");
      const auto& v = table.values[row_of[i]][p];
      if (v.empty())
        throw ValidationError("missing value of '" + table.covariates[p] + "' for node '" +
                              node_ids[i] + "'");
      levels.insert(v);
    }
    groups.push_back({table.covariates[p], column, {levels.begin(), levels.end()}});
    column += levels.size();
  }

  AttributeMatrix x(node_ids.size(), groups);
  for (std::size_t p = 0; p < num_cov; ++p) {
    const auto& g = x.groups()[p];
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
      const auto& v = table.values[row_of[i]][p];
      auto pos = std::lower_bound(g.levels.begin(), g.levels.end(), v) - g.levels.begin();
      x.set(i, g.first_column + static_cast<std::size_t>(pos), true);
    }
  }
  return x;
}

}  // namespace hycosbm
