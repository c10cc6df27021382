#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hycosbm/em.hpp"
#include "hycosbm/hypergraph.hpp"
#include "hycosbm/model.hpp"
#include "hycosbm/rng.hpp"

namespace hycosbm {

/// [#(pos > neg) + 0.5 #(pos == neg)] / |pos|, comparing entries pairwise.
double auc_from_scores(std::span<const double> positive, std::span<const double> negative);

/// log(lambda_e / kappa_e). Strictly increasing in P(A_e >= 1), so it ranks
/// same-size node sets exactly as the presence probability does, but without
/// the ties that 1 - exp(-mu) produces once mu is large.
double log_expected_count(std::span<const NodeId> edge, const ModelParams& params,
                          std::size_t num_nodes);

/// log P(A_e >= 1) under Pois(lambda_e / kappa_e), evaluated without
/// forming the (often subnormal) rate itself. -inf when lambda_e = 0.
double log_presence_probability(std::span<const NodeId> edge, const ModelParams& params,
                                std::size_t num_nodes);

struct AucResult {
  double auc = 0.0;
  std::size_t comparisons = 0;
  std::size_t resample_failures = 0;  // negatives kept although they matched an observed edge
};

/// Each test edge is compared with one node set of the same size drawn
/// uniformly at random. Draws that coincide with an edge of `context` or of
/// `test_edges` are redrawn up to 100 times.
AucResult auc_prediction(std::span<const Hyperedge> test_edges, const ModelParams& params,
                         const Hypergraph& context, std::uint64_t seed);

/// AUC against caller-supplied negatives, negatives[t] paired with test_edges[t].
AucResult auc_with_negatives(std::span<const Hyperedge> test_edges,
                             std::span<const std::vector<NodeId>> negatives,
                             const ModelParams& params, std::size_t num_nodes);

/// Uniform node set of the given size, sorted.
std::vector<NodeId> sample_node_set(std::size_t size, std::size_t num_nodes, CounterRng& rng);

/// Switch-one-out: for each edge swap one uniformly chosen member for one
/// uniformly chosen non-member.
std::vector<std::vector<NodeId>> soo_negatives(std::span<const Hyperedge> test_edges,
                                               std::size_t num_nodes, std::uint64_t seed);

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

/// Mean row cosine between two membership matrices. With `match_columns`,
/// the narrower matrix is zero-padded and its columns permuted to maximise
/// the mean (exhaustively for up to 8 columns, greedily beyond). Rows of
/// zeros contribute 0.
double cosine_similarity(const Matrix& a, const Matrix& b, bool match_columns = true);

/// Fold id for each of `num_edges` items; fold sizes differ by at most one.
std::vector<std::size_t> kfold_assignment(std::size_t num_edges, std::size_t folds,
                                          CounterRng& rng);

struct CVGrid {
  std::vector<std::size_t> ks;
  std::vector<double> gammas;
  std::size_t folds = 5;
  std::uint64_t seed = 0;

  /// K in 2..30, gamma in {0, 0.1, ..., 0.9, 0.95, 0.99, 0.995, 1}.
  static CVGrid defaults();
  void validate() const;
};

struct CellResult {
  std::size_t num_communities = 0;
  double gamma = 0.0;
  std::vector<double> fold_auc;
  double mean_auc = 0.0;
  double std_auc = 0.0;  // population standard deviation over folds
};

struct EvalReport {
  std::vector<CellResult> cells;
  std::size_t selected = 0;  // index into cells
  std::size_t folds = 0;
  std::size_t resample_failures = 0;

  const CellResult& best() const { return cells[selected]; }
};

/// Grid search over (K, gamma) with k-fold hyperedge hold-out. `base`
/// supplies restarts, iteration limits and threads; its K, gamma and seed are
/// replaced per cell. All cells share the fold split, the per-fold fit seed
/// and the per-fold negative-sampling seed. Selection maximises mean test
/// AUC, ties to smaller K then smaller gamma.
EvalReport kfold_cv(const Hypergraph& graph, const AttributeMatrix* attributes,
                    const CVGrid& grid, const FitConfig& base);

}  // namespace hycosbm
