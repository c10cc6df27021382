#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hycosbm/errors.hpp"
#include "hycosbm/hypergraph.hpp"
#include "hycosbm/model.hpp"
#include "hycosbm/rng.hpp"

namespace hycosbm {

struct FitConfig {
  std::size_t num_communities = 2;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iters = 1000;
  std::size_t check_every = 10;
  double tol = 1e-2;
  std::size_t patience = 2;
  // Restarts run on up to this many threads. Each restart is sequential, so
  // the result does not depend on the thread count.
  std::size_t threads = 1;
  // Upper bound on K (K + Z) (N + |E|), the per-iteration work.
  double work_budget = 1e12;

  void validate() const;
};

struct TracePoint {
  std::size_t iteration = 0;
  LogLikelihood loglik;
};

struct RestartOutcome {
  std::size_t index = 0;
  double final_loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool aborted = false;
  std::string message;
};

struct FitResult {
  ModelParams params;
  double final_loglik = 0.0;
  std::size_t iterations_run = 0;
  std::size_t best_restart = 0;
  std::vector<TracePoint> trace;  // of the best restart
  std::vector<RestartOutcome> restarts;
  Diagnostics diagnostics;  // summed over restarts
};

/// Coefficients of a u^2 - (a + b + c) u + b = 0 for every (node, community).
struct QuadraticCoefficients {
  Matrix a;
  Matrix b;
  Matrix c;
};

/// Smallest root of a x^2 - (a + b + c) x + b = 0 for a, b, c >= 0.
///
/// Evaluated as 2b / ((a + b + c) + sqrt(disc)) with the discriminant
/// written as (a - b)^2 + c^2 + 2c(a + b), a sum of nonnegative terms, so the
/// result is free of cancellation and lies in [0, 1]. a = 0 reduces to the
/// linear solution b / (b + c) (0 when b = c = 0).
double smallest_root(double a, double b, double c, Diagnostics* diag = nullptr);

/// Per-hyperedge quantities shared by the u and w updates: the ratio
/// A_e / lambda_e and the membership sum s_e = sum_{i in e} u_i.
struct EdgeStatistics {
  std::vector<double> ratio;  // |E|
  Matrix member_sum;          // |E| x K
};

EdgeStatistics edge_statistics(const Hypergraph& graph, const Matrix& u, const Matrix& w,
                               Diagnostics* diag = nullptr);

/// Closed-form affinity update with the variational rho kept implicit:
/// w_kq <- w_kq * sum_e (A_e / lambda_e) sum_{i != j in e} u_ik u_jq
///                / (C sum_{i != j in V} u_ik u_jq).
Matrix update_w(const Hypergraph& graph, const Matrix& u, const Matrix& w_old,
                const StructuralConstants& constants, Diagnostics* diag = nullptr);

/// Closed-form beta update with h, h' kept implicit; columns renormalised.
Matrix update_beta(const AttributeMatrix& x, const Matrix& u, const Matrix& beta_old,
                   Diagnostics* diag = nullptr);

/// Coefficients of the membership quadratic from the current (snapshot) state.
/// `x` may be null only when gamma = 0.
QuadraticCoefficients u_coefficients(const Hypergraph& graph, const IncidenceIndex& index,
                                     const AttributeMatrix* x, const ModelParams& params,
                                     double gamma, const StructuralConstants& constants);

/// Jacobi sweep: every u_ik becomes the smallest root of its quadratic.
Matrix update_u_quadratic(const Hypergraph& graph, const IncidenceIndex& index,
                          const AttributeMatrix* x, const ModelParams& params, double gamma,
                          const StructuralConstants& constants, Diagnostics* diag = nullptr);

/// Structure-only update u_ik <- min(1, numerator / denominator); the clip is
/// the active bound constraint u_ik <= 1.
Matrix update_u_gamma0(const Hypergraph& graph, const IncidenceIndex& index,
                       const ModelParams& params, const StructuralConstants& constants,
                       Diagnostics* diag = nullptr);

/// Fixed data of one fitting problem plus the single-iteration driver.
class EmProblem {
 public:
  EmProblem(const Hypergraph& graph, const AttributeMatrix* attributes, double gamma);
  EmProblem(const Hypergraph& graph, const AttributeMatrix* attributes, double gamma,
            StructuralConstants constants);

  const Hypergraph& graph() const { return graph_; }
  const IncidenceIndex& index() const { return index_; }
  const AttributeMatrix* attributes() const { return attributes_; }
  double gamma() const { return gamma_; }
  const StructuralConstants& constants() const { return constants_; }

  /// u uniform in (0,1); w symmetric, entries uniform in (0,1); beta columns
  /// normalised uniform draws. Draw order: u row-major, upper triangle of w
  /// row-major, beta row-major.
  ModelParams random_init(std::size_t num_communities, CounterRng& rng) const;

  /// One pass of: u update, w update unless gamma = 1, beta update unless
  /// gamma = 0. Each family sees the values already updated in this pass.
  void step(ModelParams& params, Diagnostics* diag = nullptr) const;

  LogLikelihood loglik(const ModelParams& params, Diagnostics* diag = nullptr) const;

 private:
  const Hypergraph& graph_;
  IncidenceIndex index_;
  const AttributeMatrix* attributes_;
  double gamma_;
  StructuralConstants constants_;
};

/// Runs one restart from `init` until convergence or max_iters.
RestartOutcome em_run(const EmProblem& problem, const FitConfig& config, ModelParams& params,
                      std::vector<TracePoint>& trace, Diagnostics& diag);

/// Multi-restart EM; returns the restart with the highest final total
/// log-likelihood (lowest index on ties). Restart r draws its initial point
/// from CounterRng(seed).substream(r).
FitResult em_fit(const Hypergraph& graph, const AttributeMatrix* attributes,
                 const FitConfig& config);
/// Same, with the structural constants given explicitly (cross-validation
/// folds reuse the full dataset's D).
FitResult em_fit(const Hypergraph& graph, const AttributeMatrix* attributes,
                 const FitConfig& config, const StructuralConstants& constants);

}  // namespace hycosbm
