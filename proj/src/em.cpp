#include "hycosbm/em.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace hycosbm {

void FitConfig::validate() const {
  if (num_communities < 1) throw ValidationError("K must be at least 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0,1]");
  if (restarts < 1) throw ValidationError("restarts must be positive");
  if (max_iters < 1) throw ValidationError("max_iters must be positive");
  if (check_every < 1) throw ValidationError("check_every must be positive");
  if (!(tol >= 0.0)) throw ValidationError("tol must be nonnegative");
  if (patience < 1) throw ValidationError("patience must be positive");
  if (threads < 1) throw ValidationError("threads must be positive");
}

double smallest_root(double a, double b, double c, Diagnostics* diag) {
  if (b <= 0.0) return 0.0;
  if (a <= 0.0) return b / (b + c);
  double disc = (a - b) * (a - b) + c * c + 2.0 * c * (a + b);
  if (disc < 0.0) {
    disc = 0.0;
    if (diag) ++diag->negative_discriminants;
  }
  const double root = 2.0 * b / ((a + b + c) + std::sqrt(disc));
  return std::clamp(root, 0.0, 1.0);
}

EdgeStatistics edge_statistics(const Hypergraph& graph, const Matrix& u, const Matrix& w,
                               Diagnostics* diag) {
  const auto k_count = u.cols();
  EdgeStatistics stats{std::vector<double>(graph.num_edges()), Matrix(graph.num_edges(), k_count)};
  const auto self = self_terms(u, w);
  for (std::size_t id = 0; id < graph.num_edges(); ++id) {
    auto s = stats.member_sum.row(id);
    double diag_sum = 0.0;
    for (auto i : graph.members(id)) {
      const auto ui = u.row(i);
      for (std::size_t k = 0; k < k_count; ++k) s[k] += ui[k];
      diag_sum += self[i];
    }
    double lambda = 0.5 * (bilinear(s, w, s) - diag_sum);
    if (!(lambda >= kLogFloor)) {
      lambda = kLogFloor;
      if (diag) ++diag->clamped_intensities;
    }
    stats.ratio[id] = static_cast<double>(graph.edge(id).weight) / lambda;
  }
  return stats;
}

Matrix update_w(const Hypergraph& graph, const Matrix& u, const Matrix& w_old,
                const StructuralConstants& constants, Diagnostics* diag) {
  const auto k_count = u.cols();
  const auto stats = edge_statistics(graph, u, w_old, diag);

  // Observed part: sum_e r_e (s_ek s_eq - sum_{i in e} u_ik u_iq). The self
  // terms are gathered per node through sum_{e ni i} r_e.
  Matrix observed(k_count, k_count);
  std::vector<double> node_ratio(u.rows(), 0.0);
  for (std::size_t id = 0; id < graph.num_edges(); ++id) {
    const double r = stats.ratio[id];
    const auto s = stats.member_sum.row(id);
    for (std::size_t k = 0; k < k_count; ++k) {
      const double rs = r * s[k];
      for (std::size_t q = k; q < k_count; ++q) observed(k, q) += rs * s[q];
    }
    for (auto i : graph.members(id)) node_ratio[i] += r;
  }

  Matrix pairs(k_count, k_count);
  std::vector<double> total(k_count, 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto ui = u.row(i);
    for (std::size_t k = 0; k < k_count; ++k) {
      total[k] += ui[k];
      const double rk = node_ratio[i] * ui[k];
      for (std::size_t q = k; q < k_count; ++q) {
        observed(k, q) -= rk * ui[q];
        pairs(k, q) += ui[k] * ui[q];
      }
    }
  }

  Matrix w_new(k_count, k_count);
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t q = k; q < k_count; ++q) {
      const double num = w_old(k, q) * std::max(observed(k, q), 0.0);
      const double den = constants.budget * (total[k] * total[q] - pairs(k, q));
      double value = 0.0;
      if (den > 0.0) {
        value = num / den;
      } else if (diag) {
        ++diag->zero_w_denominators;
      }
      w_new(k, q) = value;
      w_new(q, k) = value;
    }
  return w_new;
}

Matrix update_beta(const AttributeMatrix& x, const Matrix& u, const Matrix& beta_old,
                   Diagnostics* diag) {
  const auto k_count = beta_old.rows();
  const auto z_count = beta_old.cols();
  const auto pi = attribute_prob(u, beta_old);
  std::vector<double> column_sum(z_count, 0.0);
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t z = 0; z < z_count; ++z) column_sum[z] += beta_old(k, z);

  // numerator_kz = beta_kz sum_i [x u_ik / pi_iz + (1 - x)(1 - u_ik) / (1 - pi_iz)]
  Matrix acc(k_count, z_count);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto ui = u.row(i);
    for (std::size_t z = 0; z < z_count; ++z) {
      if (x(i, z)) {
        const double inv = 1.0 / std::max(pi(i, z), kLogFloor);
        for (std::size_t k = 0; k < k_count; ++k) acc(k, z) += ui[k] * inv;
      } else {
        const double inv = 1.0 / std::max(column_sum[z] - pi(i, z), kLogFloor);
        for (std::size_t k = 0; k < k_count; ++k) acc(k, z) += (1.0 - ui[k]) * inv;
      }
    }
  }

  Matrix beta(k_count, z_count);
  for (std::size_t z = 0; z < z_count; ++z) {
    double norm = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
      beta(k, z) = beta_old(k, z) * acc(k, z);
      norm += beta(k, z);
    }
    if (norm > 0.0 && std::isfinite(norm)) {
      for (std::size_t k = 0; k < k_count; ++k) beta(k, z) /= norm;
    } else {
      for (std::size_t k = 0; k < k_count; ++k) beta(k, z) = 1.0 / static_cast<double>(k_count);
      if (diag) ++diag->degenerate_beta_columns;
    }
  }
  return beta;
}

namespace {

// Structural parts shared by both u updates:
//   denominator_ik = C sum_q w_kq (S_q - u_iq)
//   numerator_ik   = u_ik [w sum_{e ni i} r_e (s_e - u_i)]_k
void structural_u_terms(const Hypergraph& graph, const IncidenceIndex& index, const Matrix& u,
                        const Matrix& w, const StructuralConstants& constants, Matrix& numerator,
                        Matrix& denominator) {
  const auto n = u.rows();
  const auto k_count = u.cols();
  const auto stats = edge_statistics(graph, u, w);

  std::vector<double> total(k_count, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < k_count; ++k) total[k] += u(i, k);

  numerator = Matrix(n, k_count);
  denominator = Matrix(n, k_count);
  std::vector<double> others(k_count), gathered(k_count), product(k_count);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = u.row(i);
    for (std::size_t q = 0; q < k_count; ++q) others[q] = std::max(total[q] - ui[q], 0.0);
    mat_vec(w, others, product);
    for (std::size_t k = 0; k < k_count; ++k) denominator(i, k) = constants.budget * product[k];

    std::fill(gathered.begin(), gathered.end(), 0.0);
    for (auto id : index.edges_of(i)) {
      const double r = stats.ratio[id];
      const auto s = stats.member_sum.row(id);
      for (std::size_t q = 0; q < k_count; ++q) gathered[q] += r * std::max(s[q] - ui[q], 0.0);
    }
    mat_vec(w, gathered, product);
    for (std::size_t k = 0; k < k_count; ++k) numerator(i, k) = ui[k] * product[k];
  }
}

}  // namespace

QuadraticCoefficients u_coefficients(const Hypergraph& graph, const IncidenceIndex& index,
                                     const AttributeMatrix* x, const ModelParams& params,
                                     double gamma, const StructuralConstants& constants) {
  const auto& u = params.u;
  const auto n = u.rows();
  const auto k_count = u.cols();
  QuadraticCoefficients coef{Matrix(n, k_count), Matrix(n, k_count), Matrix(n, k_count)};

  if (gamma < 1.0) {
    Matrix numerator, denominator;
    structural_u_terms(graph, index, u, params.w, constants, numerator, denominator);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < k_count; ++k) {
        coef.a(i, k) = (1.0 - gamma) * denominator(i, k);
        coef.b(i, k) = (1.0 - gamma) * numerator(i, k);
      }
  }

  if (gamma > 0.0) {
    if (x == nullptr || params.beta.empty())
      throw ValidationError("gamma > 0 requires node attributes");
    const auto& beta = params.beta;
    const auto z_count = beta.cols();
    const auto pi = attribute_prob(u, beta);
    std::vector<double> column_sum(z_count, 0.0);
    for (std::size_t k = 0; k < k_count; ++k)
      for (std::size_t z = 0; z < z_count; ++z) column_sum[z] += beta(k, z);

    // sum_z x h_izk = u_ik sum_z x beta_kz / pi_iz
    // sum_z (1 - x) h'_izk = (1 - u_ik) sum_z (1 - x) beta_kz / (1 - pi_iz)
    std::vector<double> present(k_count), absent(k_count);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(present.begin(), present.end(), 0.0);
      std::fill(absent.begin(), absent.end(), 0.0);
      for (std::size_t z = 0; z < z_count; ++z) {
        if ((*x)(i, z)) {
          const double inv = 1.0 / std::max(pi(i, z), kLogFloor);
          for (std::size_t k = 0; k < k_count; ++k) present[k] += beta(k, z) * inv;
        } else {
          const double inv = 1.0 / std::max(column_sum[z] - pi(i, z), kLogFloor);
          for (std::size_t k = 0; k < k_count; ++k) absent[k] += beta(k, z) * inv;
        }
      }
      for (std::size_t k = 0; k < k_count; ++k) {
        coef.b(i, k) += gamma * u(i, k) * present[k];
        coef.c(i, k) = gamma * (1.0 - u(i, k)) * absent[k];
      }
    }
  }
  return coef;
}

Matrix update_u_quadratic(const Hypergraph& graph, const IncidenceIndex& index,
                          const AttributeMatrix* x, const ModelParams& params, double gamma,
                          const StructuralConstants& constants, Diagnostics* diag) {
  const auto coef = u_coefficients(graph, index, x, params, gamma, constants);
  Matrix u(params.u.rows(), params.u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.cols(); ++k) {
      const double a = coef.a(i, k), b = coef.b(i, k), c = coef.c(i, k);
      if (diag && gamma > 0.0 && a > 0.0 && b > 0.0 && !(c > 0.0)) ++diag->root_precondition_misses;
      u(i, k) = smallest_root(a, b, c, diag);
    }
  return u;
}

Matrix update_u_gamma0(const Hypergraph& graph, const IncidenceIndex& index,
                       const ModelParams& params, const StructuralConstants& constants,
                       Diagnostics* diag) {
  Matrix numerator, denominator;
  structural_u_terms(graph, index, params.u, params.w, constants, numerator, denominator);
  Matrix u(params.u.rows(), params.u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < u.cols(); ++k) {
      const double num = numerator(i, k);
      const double den = denominator(i, k);
      if (num <= 0.0) {
        u(i, k) = 0.0;
      } else if (den <= 0.0) {
        u(i, k) = 1.0;
        if (diag) ++diag->saturated_u;
      } else {
        u(i, k) = std::min(1.0, num / den);
      }
    }
  return u;
}

EmProblem::EmProblem(const Hypergraph& graph, const AttributeMatrix* attributes, double gamma)
    : EmProblem(graph, attributes, gamma, StructuralConstants::of(graph)) {}

EmProblem::EmProblem(const Hypergraph& graph, const AttributeMatrix* attributes, double gamma,
                     StructuralConstants constants)
    : graph_(graph),
      index_(graph),
      attributes_(attributes != nullptr && attributes->num_columns() > 0 ? attributes : nullptr),
      gamma_(gamma),
      constants_(constants) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0,1]");
  if (gamma > 0.0 && attributes_ == nullptr)
    throw ValidationError("gamma > 0 requires node attributes");
  if (attributes_ != nullptr && attributes_->num_nodes() != graph.num_nodes())
    throw ValidationError("attribute matrix has " + std::to_string(attributes_->num_nodes()) +
                          " rows for " + std::to_string(graph.num_nodes()) + " nodes");
  if (constants_.num_nodes != graph.num_nodes())
    throw ValidationError("structural constants computed for a different node count");
  if (graph.max_size() > constants_.max_size)
    throw ValidationError("hyperedges larger than the budget constant's D");
}

ModelParams EmProblem::random_init(std::size_t num_communities, CounterRng& rng) const {
  const auto n = graph_.num_nodes();
  const auto k_count = num_communities;
  ModelParams p{Matrix(n, k_count), Matrix(k_count, k_count), Matrix()};
  for (auto& v : p.u.data()) v = rng.uniform_open();
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t q = k; q < k_count; ++q) {
      const double v = rng.uniform_open();
      p.w(k, q) = v;
      p.w(q, k) = v;
    }
  if (attributes_ != nullptr) {
    const auto z_count = attributes_->num_columns();
    p.beta = Matrix(k_count, z_count);
    for (std::size_t k = 0; k < k_count; ++k)
      for (std::size_t z = 0; z < z_count; ++z) p.beta(k, z) = rng.uniform_open();
    for (std::size_t z = 0; z < z_count; ++z) {
      double s = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) s += p.beta(k, z);
      for (std::size_t k = 0; k < k_count; ++k) p.beta(k, z) /= s;
    }
  }
  return p;
}

void EmProblem::step(ModelParams& params, Diagnostics* diag) const {
  if (gamma_ == 0.0) {
    params.u = update_u_gamma0(graph_, index_, params, constants_, diag);
  } else {
    params.u = update_u_quadratic(graph_, index_, attributes_, params, gamma_, constants_, diag);
  }
  if (gamma_ != 1.0) params.w = update_w(graph_, params.u, params.w, constants_, diag);
  if (gamma_ != 0.0) params.beta = update_beta(*attributes_, params.u, params.beta, diag);
}

LogLikelihood EmProblem::loglik(const ModelParams& params, Diagnostics* diag) const {
  return total_loglik(graph_, params.beta.empty() ? nullptr : attributes_, params, gamma_,
                      constants_, diag);
}

RestartOutcome em_run(const EmProblem& problem, const FitConfig& config, ModelParams& params,
                      std::vector<TracePoint>& trace, Diagnostics& diag) {
  RestartOutcome out;
  auto record = [&](std::size_t iteration) {
    const auto ll = problem.loglik(params, &diag);
    trace.push_back({iteration, ll});
    return ll.total;
  };

  double previous = record(0);
  std::size_t passing = 0;
  std::size_t iteration = 0;
  while (iteration < config.max_iters) {
    problem.step(params, &diag);
    ++iteration;
    if (iteration % config.check_every != 0 && iteration != config.max_iters) continue;
    const double current = record(iteration);
    if (!std::isfinite(current)) {
      out.aborted = true;
      out.message = "non-finite log-likelihood at iteration " + std::to_string(iteration);
      break;
    }
    passing = std::abs(current - previous) < config.tol ? passing + 1 : 0;
    previous = current;
    if (passing >= config.patience) {
      out.converged = true;
      break;
    }
  }
  out.iterations = iteration;
  out.final_loglik = trace.back().loglik.total;
  return out;
}

FitResult em_fit(const Hypergraph& graph, const AttributeMatrix* attributes,
                 const FitConfig& config) {
  return em_fit(graph, attributes, config, StructuralConstants::of(graph));
}

FitResult em_fit(const Hypergraph& graph, const AttributeMatrix* attributes,
                 const FitConfig& config, const StructuralConstants& constants) {
  config.validate();
  const auto z_count = attributes != nullptr ? attributes->num_columns() : 0;
  const double k = static_cast<double>(config.num_communities);
  const double work = k * (k + static_cast<double>(z_count)) *
                      static_cast<double>(graph.num_nodes() + graph.num_edges());
  if (work > config.work_budget)
    throw ValidationError("problem size K(K+Z)(N+|E|) = " + std::to_string(work) +
                          " exceeds the work budget");

  // Attributes are ignored entirely when gamma = 0.
  const EmProblem problem(graph, config.gamma > 0.0 ? attributes : nullptr, config.gamma,
                          constants);
  const CounterRng root(config.seed);

  struct Slot {
    ModelParams params;
    std::vector<TracePoint> trace;
    Diagnostics diag;
    RestartOutcome outcome;
  };
  std::vector<Slot> slots(config.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < slots.size(); r = next++) {
      auto rng = root.substream(r);
      auto& slot = slots[r];
      slot.params = problem.random_init(config.num_communities, rng);
      slot.outcome = em_run(problem, config, slot.params, slot.trace, slot.diag);
      slot.outcome.index = r;
    }
  };
  const auto workers = std::min(config.threads, config.restarts);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  FitResult result;
  bool found = false;
  for (auto& slot : slots) {
    result.restarts.push_back(slot.outcome);
    result.diagnostics += slot.diag;
    if (slot.outcome.aborted || !std::isfinite(slot.outcome.final_loglik)) continue;
    if (!found || slot.outcome.final_loglik > result.final_loglik) {
      found = true;
      result.final_loglik = slot.outcome.final_loglik;
      result.best_restart = slot.outcome.index;
      result.iterations_run = slot.outcome.iterations;
    }
  }
  if (!found) throw NumericalError("every EM restart produced a non-finite log-likelihood");
  result.params = std::move(slots[result.best_restart].params);
  result.trace = std::move(slots[result.best_restart].trace);
  return result;
}

}  // namespace hycosbm
