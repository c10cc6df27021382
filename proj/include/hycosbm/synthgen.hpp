#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hycosbm/hypergraph.hpp"
#include "hycosbm/model.hpp"
#include "hycosbm/rng.hpp"

namespace hycosbm {

struct GenConfig {
  std::size_t num_nodes = 500;
  std::size_t num_communities = 2;
  std::map<std::size_t, std::size_t> dim_seq;  // hyperedge size -> count
  std::optional<ModelParams> planted;          // random planted parameters when empty
  double rho_match = 1.0;                      // fraction of nodes keeping their true attribute
  std::uint64_t seed = 0;
  std::size_t pilot_samples = 1000;

  /// N = 500 and the 19-size sequence summing to 2720 hyperedges.
  static GenConfig benchmark(std::size_t num_communities, double rho_match, std::uint64_t seed);
  void validate() const;
};

struct SizeAcceptance {
  std::size_t size = 0;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  double lambda_max = 0.0;  // final envelope
};

struct GeneratedHypergraph {
  Hypergraph graph;
  ModelParams truth;  // u, w; beta is the K x K identity
  std::vector<SizeAcceptance> acceptance;
};

/// Planted parameters: each u row has one dominant entry in [0.7, 1] and the
/// others uniform in [0, 0.1]; w has diagonal uniform in [0.5, 1] and
/// off-diagonal entries uniform in [0, 0.1 min(w_kk, w_qq)].
ModelParams planted_params(std::size_t num_nodes, std::size_t num_communities, CounterRng& rng);

/// Rejection sampler: for each size d, uniform node sets are accepted with
/// probability lambda_e / lambda_max(d) until dim_seq[d] distinct sets are
/// accepted. lambda_max(d) starts as the maximum over a pilot sample and is
/// raised whenever a proposal exceeds it. Size d uses substream d of the
/// generator seeded with config.seed, so sizes are independent.
GeneratedHypergraph generate_hypergraph(const GenConfig& config);

/// One categorical covariate with Z levels. Every node starts at the argmax
/// of its u row (ties to the lowest index); a fraction 1 - rho_match of the
/// nodes, chosen uniformly without replacement, is redrawn uniformly.
AttributeMatrix generate_attributes(const Matrix& u_truth, double rho_match,
                                    std::size_t num_attributes, std::uint64_t seed);

/// argmax of each row, ties to the lowest index.
std::vector<std::size_t> dominant_community(const Matrix& u);

}  // namespace hycosbm
