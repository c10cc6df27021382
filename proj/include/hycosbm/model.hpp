#pragma once

#include <cstddef>
#include <span>

#include "hycosbm/errors.hpp"
#include "hycosbm/hypergraph.hpp"
#include "hycosbm/matrix.hpp"

namespace hycosbm {

/// Floor applied to every log argument in the likelihoods.
inline constexpr double kLogFloor = 1e-30;

/// Latent parameters: memberships u (N x K, entries in [0,1]), symmetric
/// affinity w (K x K, nonnegative) and attribute mixing beta (K x Z, columns
/// summing to one). beta is empty when no attributes are modelled.
struct ModelParams {
  Matrix u;
  Matrix w;
  Matrix beta;

  std::size_t num_nodes() const { return u.rows(); }
  std::size_t num_communities() const { return u.cols(); }
  std::size_t num_attributes() const { return beta.cols(); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws ValidationError if the parameter constraints are violated beyond `tol`.
void check_params(const ModelParams& params, double tol = 1e-9);

/// log of d(d-1)/2 * binom(N-2, d-2). Requires 2 <= d <= N.
double log_kappa(std::size_t edge_size, std::size_t num_nodes);
double kappa(std::size_t edge_size, std::size_t num_nodes);
double log_binomial(std::size_t n, std::size_t k);

/// C = sum_{d=2}^{D} binom(N-2, d-2) / kappa_d, returned in closed form
/// 2 (1 - 1/D). Requires 2 <= D <= N.
double budget_constant(std::size_t num_nodes, std::size_t max_size);
/// Same quantity evaluated term by term from binomials and kappa.
double budget_constant_sum(std::size_t num_nodes, std::size_t max_size);

/// N and D of a dataset with the derived budget constant.
struct StructuralConstants {
  std::size_t num_nodes = 0;
  std::size_t max_size = 0;
  double budget = 0.0;

  static StructuralConstants of(const Hypergraph& graph);
  static StructuralConstants of(std::size_t num_nodes, std::size_t max_size);
};

/// lambda_e = sum_{i<j in e} u_i^T w u_j via the aggregate
/// 1/2 (s^T w s - sum_i u_i^T w u_i), s = sum_{i in e} u_i.
double edge_intensity(std::span<const NodeId> edge, const Matrix& u, const Matrix& w);

/// Same, with the per-node self terms u_i^T w u_i supplied by the caller.
double edge_intensity(std::span<const NodeId> edge, const Matrix& u, const Matrix& w,
                      std::span<const double> self_terms, std::span<double> scratch);

/// u_i^T w u_i for every node.
std::vector<double> self_terms(const Matrix& u, const Matrix& w);

/// sum_{i<j in V} u_i^T w u_j in O(NK + K^2).
double all_pairs_intensity(const Matrix& u, const Matrix& w);

/// pi = u beta.
Matrix attribute_prob(const Matrix& u, const Matrix& beta);

double loglik_structure(const Hypergraph& graph, const Matrix& u, const Matrix& w,
                        const StructuralConstants& constants, Diagnostics* diag = nullptr);

double loglik_attributes(const AttributeMatrix& x, const Matrix& u, const Matrix& beta);

struct LogLikelihood {
  double structure = 0.0;
  double attributes = 0.0;
  double total = 0.0;
};

/// (1 - gamma) L_A + gamma L_X. `x` may be null only when gamma = 0, in
/// which case the attribute component is reported as 0.
LogLikelihood total_loglik(const Hypergraph& graph, const AttributeMatrix* x,
                           const ModelParams& params, double gamma,
                           const StructuralConstants& constants, Diagnostics* diag = nullptr);

}  // namespace hycosbm
