#include "hycosbm/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "hycosbm/errors.hpp"
#include "hycosbm/evaluation.hpp"

namespace hycosbm {

GenConfig GenConfig::benchmark(std::size_t num_communities, double rho_match,
                               std::uint64_t seed) {
  GenConfig c;
  c.num_nodes = 500;
  c.num_communities = num_communities;
  c.rho_match = rho_match;
  c.seed = seed;
  c.dim_seq = {{2, 300},  {3, 300},  {4, 200},  {5, 200},  {6, 150},  {7, 150},  {8, 150},
               {9, 150},  {10, 120}, {11, 120}, {12, 120}, {13, 120}, {14, 100}, {15, 100},
               {16, 100}, {17, 100}, {18, 80},  {19, 80},  {20, 80}};
  return c;
}

void GenConfig::validate() const {
  if (num_nodes < 2) throw ValidationError("generator needs at least 2 nodes");
  if (num_communities < 1) throw ValidationError("generator needs K >= 1");
  if (!(rho_match >= 0.0 && rho_match <= 1.0)) throw ValidationError("rho_match must lie in [0,1]");
  std::size_t total = 0;
  for (auto [size, count] : dim_seq) {
    if (size < 2 || size > num_nodes)
      throw ValidationError("hyperedge size " + std::to_string(size) + " outside [2, N]");
    if (log_binomial(num_nodes, size) < std::log(static_cast<double>(count)) - 1e-9)
      throw ValidationError("dim_seq asks for more size-" + std::to_string(size) +
                            " hyperedges than exist");
    total += count;
  }
  if (total == 0) throw ValidationError("dim_seq must request at least one hyperedge");
  if (planted) {
    if (planted->u.rows() != num_nodes || planted->u.cols() != num_communities)
      throw ValidationError("planted u must be N x K");
    check_params(ModelParams{planted->u, planted->w, Matrix()});
  }
  if (pilot_samples < 1) throw ValidationError("pilot sample size must be positive");
}

ModelParams planted_params(std::size_t num_nodes, std::size_t num_communities, CounterRng& rng) {
  const auto k_count = num_communities;
  ModelParams p{Matrix(num_nodes, k_count), Matrix(k_count, k_count), Matrix(k_count, k_count)};
  for (std::size_t i = 0; i < num_nodes; ++i) {
    const auto dominant = static_cast<std::size_t>(rng.below(k_count));
    for (std::size_t k = 0; k < k_count; ++k)
      p.u(i, k) = k == dominant ? 0.7 + 0.3 * rng.uniform() : 0.1 * rng.uniform();
  }
  for (std::size_t k = 0; k < k_count; ++k) p.w(k, k) = 0.5 + 0.5 * rng.uniform();
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t q = k + 1; q < k_count; ++q) {
      const double v = 0.1 * std::min(p.w(k, k), p.w(q, q)) * rng.uniform();
      p.w(k, q) = v;
      p.w(q, k) = v;
    }
  for (std::size_t k = 0; k < k_count; ++k) p.beta(k, k) = 1.0;
  return p;
}

GeneratedHypergraph generate_hypergraph(const GenConfig& config) {
  config.validate();
  const CounterRng root(config.seed);
  ModelParams truth;
  if (config.planted) {
    truth = *config.planted;
  } else {
    auto param_rng = root.substream(0);
    truth = planted_params(config.num_nodes, config.num_communities, param_rng);
  }
  if (truth.beta.empty()) {
    truth.beta = Matrix(config.num_communities, config.num_communities);
    for (std::size_t k = 0; k < config.num_communities; ++k) truth.beta(k, k) = 1.0;
  }

  constexpr double kMinAcceptance = 1e-6;
  constexpr std::size_t kMinProposalsBeforeAbort = 1'000'000;

  std::vector<Hyperedge> edges;
  std::vector<SizeAcceptance> stats;
  for (auto [size, count] : config.dim_seq) {
    if (count == 0) continue;
    auto rng = root.substream(1 + size);
    SizeAcceptance s;
    s.size = size;
    for (std::size_t t = 0; t < config.pilot_samples; ++t) {
      const auto e = sample_node_set(size, config.num_nodes, rng);
      s.lambda_max = std::max(s.lambda_max, edge_intensity(e, truth.u, truth.w));
    }
    if (!(s.lambda_max > 0.0))
      throw NumericalError("planted intensity is zero for every size-" + std::to_string(size) +
                           " pilot sample; increase the scale of w");

    std::set<std::vector<NodeId>> accepted;
    while (accepted.size() < count) {
      auto e = sample_node_set(size, config.num_nodes, rng);
      ++s.proposed;
      const double lambda = edge_intensity(e, truth.u, truth.w);
      if (lambda > s.lambda_max) s.lambda_max = lambda;
      if (rng.uniform() * s.lambda_max < lambda && !accepted.contains(e)) accepted.insert(e);
      if (s.proposed >= kMinProposalsBeforeAbort &&
          static_cast<double>(accepted.size()) < kMinAcceptance * static_cast<double>(s.proposed))
        throw NumericalError("acceptance rate below 1e-6 for size " + std::to_string(size) +
                             "; adjust the planted w scale");
    }
    s.accepted = accepted.size();
    stats.push_back(s);
    for (const auto& e : accepted) edges.push_back({e, 1});
  }

  return {Hypergraph(config.num_nodes, std::move(edges)), std::move(truth), std::move(stats)};
}

std::vector<std::size_t> dominant_community(const Matrix& u) {
  std::vector<std::size_t> out(u.rows(), 0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    const auto r = u.row(i);
    out[i] = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  }
  return out;
}

AttributeMatrix generate_attributes(const Matrix& u_truth, double rho_match,
                                    std::size_t num_attributes, std::uint64_t seed) {
  if (!(rho_match >= 0.0 && rho_match <= 1.0)) throw ValidationError("rho_match must lie in [0,1]");
  if (num_attributes < 1) throw ValidationError("need at least one attribute level");
  const auto n = u_truth.rows();
  auto label = dominant_community(u_truth);
  for (auto& l : label)
    if (l >= num_attributes) l %= num_attributes;

  CounterRng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  const auto shuffled =
      static_cast<std::size_t>(std::llround((1.0 - rho_match) * static_cast<double>(n)));
  for (std::size_t t = 0; t < shuffled; ++t)
    label[order[t]] = static_cast<std::size_t>(rng.below(num_attributes));

  AttributeGroup group{"community", 0, {}};
  for (std::size_t z = 0; z < num_attributes; ++z) group.levels.push_back(std::to_string(z));
  AttributeMatrix x(n, {group});
  for (std::size_t i = 0; i < n; ++i) x.set(i, label[i], true);
  return x;
}

}  // namespace hycosbm
