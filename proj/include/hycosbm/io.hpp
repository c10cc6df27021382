#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hycosbm/em.hpp"
#include "hycosbm/evaluation.hpp"
#include "hycosbm/hypergraph.hpp"
#include "hycosbm/model.hpp"

namespace hycosbm {

// Hyperedge file: one hyperedge per line, comma-separated node ids,
// optionally followed by a tab and a positive integer weight. Lines starting
// with '#' and blank lines are skipped.
std::vector<RawEdge> parse_hyperedges(std::istream& in);
std::vector<RawEdge> read_hyperedge_file(const std::filesystem::path& path);
void write_hyperedges(std::ostream& out, const Hypergraph& graph);
void write_hyperedges(std::ostream& out, const Hypergraph& graph,
                      const std::vector<std::size_t>& edge_ids);
void write_hyperedge_file(const std::filesystem::path& path, const Hypergraph& graph);

// Attribute file: header `node,<cov1>,<cov2>,...`, then one row per node.
AttributeTable parse_attributes(std::istream& in);
AttributeTable read_attribute_file(const std::filesystem::path& path);
void write_attributes(std::ostream& out, const AttributeMatrix& x,
                      const std::vector<std::string>& node_ids);
void write_attribute_file(const std::filesystem::path& path, const AttributeMatrix& x,
                          const std::vector<std::string>& node_ids);

struct ParamsDocument {
  ModelParams params;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  double loglik = 0.0;
  std::vector<std::string> node_ids;
};

nlohmann::ordered_json params_to_json(const ParamsDocument& doc);
ParamsDocument params_from_json(const nlohmann::json& j);
ParamsDocument read_params_file(const std::filesystem::path& path);

/// Fit output: the params document plus restart summary and trace.
nlohmann::ordered_json fit_to_json(const FitResult& fit, const FitConfig& config,
                                   const std::vector<std::string>& node_ids);

/// iteration,L_A,L_X,L
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);
/// K,gamma,fold,auc rows followed by one summary row for the selected cell
/// whose fold column reads "mean".
void write_report_csv(std::ostream& out, const EvalReport& report);

/// Lower-case hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace hycosbm
