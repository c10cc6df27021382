#include "hycosbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hycosbm {

void check_params(const ModelParams& params, double tol) {
  const auto& u = params.u;
  const auto& w = params.w;
  const auto k = u.cols();
  if (k == 0) throw ValidationError("model needs at least one community");
  if (w.rows() != k || w.cols() != k) throw ValidationError("affinity matrix must be K x K");
  for (double v : u.data())
    if (!(v >= -tol && v <= 1.0 + tol)) throw ValidationError("membership outside [0,1]");
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!(w(a, b) >= -tol)) throw ValidationError("negative affinity entry");
      if (std::abs(w(a, b) - w(b, a)) > tol) throw ValidationError("affinity matrix not symmetric");
    }
  if (!params.beta.empty()) {
    if (params.beta.rows() != k) throw ValidationError("beta must have K rows");
    for (std::size_t z = 0; z < params.beta.cols(); ++z) {
      double s = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        if (!(params.beta(a, z) >= -tol)) throw ValidationError("negative beta entry");
        s += params.beta(a, z);
      }
      if (std::abs(s - 1.0) > tol) throw ValidationError("beta column does not sum to 1");
    }
  }
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw ValidationError("binomial with k > n");
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double log_kappa(std::size_t edge_size, std::size_t num_nodes) {
  if (edge_size < 2) throw ValidationError("kappa needs edge size >= 2");
  if (edge_size > num_nodes)
    throw ValidationError("kappa: edge size " + std::to_string(edge_size) + " exceeds N = " +
                          std::to_string(num_nodes));
  const auto d = static_cast<double>(edge_size);
  return std::log(d * (d - 1.0) / 2.0) + log_binomial(num_nodes - 2, edge_size - 2);
}

double kappa(std::size_t edge_size, std::size_t num_nodes) {
  return std::exp(log_kappa(edge_size, num_nodes));
}

namespace {
void check_budget_args(std::size_t num_nodes, std::size_t max_size) {
  if (max_size < 2) throw ValidationError("budget constant needs D >= 2");
  if (max_size > num_nodes)
    throw ValidationError("budget constant: D = " + std::to_string(max_size) + " exceeds N = " +
                          std::to_string(num_nodes));
}
}  // namespace

double budget_constant(std::size_t num_nodes, std::size_t max_size) {
  check_budget_args(num_nodes, max_size);
  return 2.0 * (1.0 - 1.0 / static_cast<double>(max_size));
}

double budget_constant_sum(std::size_t num_nodes, std::size_t max_size) {
  check_budget_args(num_nodes, max_size);
  double total = 0.0;
  for (std::size_t d = 2; d <= max_size; ++d)
    total += std::exp(log_binomial(num_nodes - 2, d - 2) - log_kappa(d, num_nodes));
  return total;
}

StructuralConstants StructuralConstants::of(std::size_t num_nodes, std::size_t max_size) {
  return {num_nodes, max_size, budget_constant(num_nodes, max_size)};
}

StructuralConstants StructuralConstants::of(const Hypergraph& graph) {
  return of(graph.num_nodes(), std::max<std::size_t>(graph.max_size(), 2));
}

std::vector<double> self_terms(const Matrix& u, const Matrix& w) {
  std::vector<double> out(u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i) out[i] = bilinear(u.row(i), w, u.row(i));
  return out;
}

double edge_intensity(std::span<const NodeId> edge, const Matrix& u, const Matrix& w,
                      std::span<const double> self, std::span<double> scratch) {
  std::fill(scratch.begin(), scratch.end(), 0.0);
  double diag = 0.0;
  for (auto i : edge) {
    const auto ui = u.row(i);
    for (std::size_t k = 0; k < scratch.size(); ++k) scratch[k] += ui[k];
    diag += self[i];
  }
  const double lambda = 0.5 * (bilinear(scratch, w, scratch) - diag);
  return std::max(lambda, 0.0);
}

double edge_intensity(std::span<const NodeId> edge, const Matrix& u, const Matrix& w) {
  if (edge.size() < 2) throw ValidationError("edge intensity needs at least 2 nodes");
  std::vector<double> s(u.cols(), 0.0);
  double diag = 0.0;
  for (auto i : edge) {
    const auto ui = u.row(i);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += ui[k];
    diag += bilinear(ui, w, ui);
  }
  return std::max(0.5 * (bilinear(s, w, s) - diag), 0.0);
}

double all_pairs_intensity(const Matrix& u, const Matrix& w) {
  std::vector<double> total(u.cols(), 0.0);
  double diag = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto ui = u.row(i);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += ui[k];
    diag += bilinear(ui, w, ui);
  }
  return std::max(0.5 * (bilinear(total, w, total) - diag), 0.0);
}

Matrix attribute_prob(const Matrix& u, const Matrix& beta) {
  Matrix pi(u.rows(), beta.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.cols(); ++k) {
      const double uik = u(i, k);
      if (uik == 0.0) continue;
      for (std::size_t z = 0; z < beta.cols(); ++z) pi(i, z) += uik * beta(k, z);
    }
  return pi;
}

double loglik_structure(const Hypergraph& graph, const Matrix& u, const Matrix& w,
                        const StructuralConstants& constants, Diagnostics* diag) {
  const auto self = self_terms(u, w);
  std::vector<double> scratch(u.cols());
  double observed = 0.0;
  for (std::size_t id = 0; id < graph.num_edges(); ++id) {
    double lambda = edge_intensity(graph.members(id), u, w, self, scratch);
    if (lambda < kLogFloor) {
      lambda = kLogFloor;
      if (diag) ++diag->clamped_intensities;
    }
    observed += static_cast<double>(graph.edge(id).weight) * std::log(lambda);
  }
  return -constants.budget * all_pairs_intensity(u, w) + observed;
}

double loglik_attributes(const AttributeMatrix& x, const Matrix& u, const Matrix& beta) {
  const auto pi = attribute_prob(u, beta);
  const auto z_count = beta.cols();
  std::vector<double> column_sum(z_count, 0.0);
  for (std::size_t k = 0; k < beta.rows(); ++k)
    for (std::size_t z = 0; z < z_count; ++z) column_sum[z] += beta(k, z);

  double total = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t z = 0; z < z_count; ++z) {
      // sum_k (1 - u_ik) beta_kz = colsum_z - pi_iz
      const double arg = x(i, z) ? pi(i, z) : column_sum[z] - pi(i, z);
      total += std::log(std::clamp(arg, kLogFloor, 1.0));
    }
  return total;
}

LogLikelihood total_loglik(const Hypergraph& graph, const AttributeMatrix* x,
                           const ModelParams& params, double gamma,
                           const StructuralConstants& constants, Diagnostics* diag) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0,1]");
  LogLikelihood ll;
  ll.structure = loglik_structure(graph, params.u, params.w, constants, diag);
  if (x != nullptr && !params.beta.empty()) {
    ll.attributes = loglik_attributes(*x, params.u, params.beta);
  } else if (gamma > 0.0) {
    throw ValidationError("gamma > 0 requires node attributes");
  }
  ll.total = (1.0 - gamma) * ll.structure + gamma * ll.attributes;
  return ll;
}

}  // namespace hycosbm
