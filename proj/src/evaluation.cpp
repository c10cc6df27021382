#include "hycosbm/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

namespace hycosbm {

double auc_from_scores(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty()) throw ValidationError("AUC needs at least one comparison");
  if (positive.size() != negative.size())
    throw ValidationError("AUC needs one negative per positive");
  double wins = 0.0;
  for (std::size_t t = 0; t < positive.size(); ++t) {
    if (positive[t] > negative[t]) {
      wins += 1.0;
    } else if (positive[t] == negative[t]) {
      wins += 0.5;
    }
  }
  return wins / static_cast<double>(positive.size());
}

double log_expected_count(std::span<const NodeId> edge, const ModelParams& params,
                          std::size_t num_nodes) {
  const double lambda = edge_intensity(edge, params.u, params.w);
  if (lambda <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(lambda) - log_kappa(edge.size(), num_nodes);
}

double log_presence_probability(std::span<const NodeId> edge, const ModelParams& params,
                                std::size_t num_nodes) {
  const double log_rate = log_expected_count(edge, params, num_nodes);
  if (std::isinf(log_rate)) return log_rate;
  // log(1 - exp(-mu)); for tiny mu this is log(mu) - mu/2 + O(mu^2).
  if (log_rate < -20.0) return log_rate - 0.5 * std::exp(log_rate);
  return std::log(-std::expm1(-std::exp(log_rate)));
}

std::vector<NodeId> sample_node_set(std::size_t size, std::size_t num_nodes, CounterRng& rng) {
  if (size > num_nodes) throw ValidationError("cannot sample more nodes than exist");
  // Floyd's algorithm: exactly `size` draws.
  std::set<NodeId> chosen;
  for (std::size_t j = num_nodes - size; j < num_nodes; ++j) {
    const auto t = static_cast<NodeId>(rng.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

AucResult auc_with_negatives(std::span<const Hyperedge> test_edges,
                             std::span<const std::vector<NodeId>> negatives,
                             const ModelParams& params, std::size_t num_nodes) {
  if (test_edges.empty()) throw ValidationError("empty test set");
  if (negatives.size() != test_edges.size())
    throw ValidationError("need exactly one negative per test edge");
  if (params.num_nodes() != num_nodes)
    throw ValidationError("parameters are for " + std::to_string(params.num_nodes()) +
                          " nodes, data has " + std::to_string(num_nodes));
  std::vector<double> pos(test_edges.size()), neg(test_edges.size());
  for (std::size_t t = 0; t < test_edges.size(); ++t) {
    if (negatives[t].size() != test_edges[t].nodes.size())
      throw ValidationError("negative and positive edge sizes differ");
    pos[t] = log_expected_count(test_edges[t].nodes, params, num_nodes);
    neg[t] = log_expected_count(negatives[t], params, num_nodes);
  }
  return {auc_from_scores(pos, neg), test_edges.size(), 0};
}

AucResult auc_prediction(std::span<const Hyperedge> test_edges, const ModelParams& params,
                         const Hypergraph& context, std::uint64_t seed) {
  if (test_edges.empty()) throw ValidationError("empty test set");
  const auto n = context.num_nodes();
  std::set<std::vector<NodeId>> observed;
  for (const auto& e : context.edges()) observed.insert(e.nodes);
  for (const auto& e : test_edges) {
    auto nodes = e.nodes;
    std::sort(nodes.begin(), nodes.end());
    observed.insert(std::move(nodes));
  }

  constexpr std::size_t kMaxTries = 100;
  CounterRng rng(seed);
  std::vector<std::vector<NodeId>> negatives;
  negatives.reserve(test_edges.size());
  std::size_t failures = 0;
  for (const auto& e : test_edges) {
    std::vector<NodeId> candidate;
    std::size_t tries = 0;
    do {
      candidate = sample_node_set(e.nodes.size(), n, rng);
    } while (observed.contains(candidate) && ++tries < kMaxTries);
    if (tries == kMaxTries) ++failures;
    negatives.push_back(std::move(candidate));
  }
  auto result = auc_with_negatives(test_edges, negatives, params, n);
  result.resample_failures = failures;
  return result;
}

std::vector<std::vector<NodeId>> soo_negatives(std::span<const Hyperedge> test_edges,
                                               std::size_t num_nodes, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<std::vector<NodeId>> out;
  out.reserve(test_edges.size());
  for (const auto& e : test_edges) {
    const auto size = e.nodes.size();
    if (size >= num_nodes)
      throw ValidationError("switch-one-out needs a node outside the hyperedge");
    auto nodes = e.nodes;
    std::sort(nodes.begin(), nodes.end());
    const auto removed = static_cast<std::size_t>(rng.below(size));
    // j-th non-member in increasing order
    auto rank = static_cast<NodeId>(rng.below(num_nodes - size));
    NodeId added = rank;
    for (auto v : nodes) {
      if (v <= added) ++added;
    }
    nodes[removed] = added;
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::set<NodeId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t common = 0;
  for (auto v : sa) common += sb.count(v);
  const auto uni = sa.size() + sb.size() - common;
  return uni == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(uni);
}

namespace {

std::vector<double> row_normalised(const Matrix& m, std::size_t i, std::size_t width) {
  std::vector<double> out(width, 0.0);
  double norm = 0.0;
  for (std::size_t k = 0; k < m.cols(); ++k) norm += m(i, k) * m(i, k);
  if (norm <= 0.0) return out;
  norm = std::sqrt(norm);
  for (std::size_t k = 0; k < m.cols(); ++k) out[k] = m(i, k) / norm;
  return out;
}

}  // namespace

double cosine_similarity(const Matrix& a, const Matrix& b, bool match_columns) {
  if (a.rows() != b.rows()) throw ValidationError("cosine similarity needs equal row counts");
  const auto n = a.rows();
  if (n == 0) return 0.0;
  const auto width = std::max(a.cols(), b.cols());

  // With unit rows the mean cosine is (1/N) sum_c table(c, perm(c)), where
  // table(c, d) = sum_i a_hat(i, c) b_hat(i, d).
  Matrix table(width, width);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ra = row_normalised(a, i, width);
    const auto rb = row_normalised(b, i, width);
    for (std::size_t c = 0; c < width; ++c) {
      if (ra[c] == 0.0) continue;
      for (std::size_t d = 0; d < width; ++d) table(c, d) += ra[c] * rb[d];
    }
  }

  std::vector<std::size_t> perm(width);
  std::iota(perm.begin(), perm.end(), 0);
  auto score = [&](const std::vector<std::size_t>& p) {
    double s = 0.0;
    for (std::size_t c = 0; c < width; ++c) s += table(c, p[c]);
    return s;
  };

  double best = score(perm);
  if (match_columns) {
    if (width <= 8) {
      auto candidate = perm;
      while (std::next_permutation(candidate.begin(), candidate.end())) {
        const double s = score(candidate);
        if (s > best) best = s;
      }
    } else {
      // Greedy: repeatedly take the largest remaining table entry.
      std::vector<bool> row_used(width, false), col_used(width, false);
      for (std::size_t step = 0; step < width; ++step) {
        double top = -1.0;
        std::size_t bc = 0, bd = 0;
        for (std::size_t c = 0; c < width; ++c) {
          if (row_used[c]) continue;
          for (std::size_t d = 0; d < width; ++d)
            if (!col_used[d] && table(c, d) > top) {
              top = table(c, d);
              bc = c;
              bd = d;
            }
        }
        row_used[bc] = col_used[bd] = true;
        perm[bc] = bd;
      }
      best = std::max(best, score(perm));
    }
  }
  return std::clamp(best / static_cast<double>(n), 0.0, 1.0);
}

std::vector<std::size_t> kfold_assignment(std::size_t num_edges, std::size_t folds,
                                          CounterRng& rng) {
  if (folds < 2) throw ValidationError("need at least 2 folds");
  if (num_edges < folds) throw ValidationError("fewer hyperedges than folds");
  std::vector<std::size_t> order(num_edges);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::size_t> fold(num_edges);
  for (std::size_t r = 0; r < num_edges; ++r) fold[order[r]] = r % folds;
  return fold;
}

CVGrid CVGrid::defaults() {
  CVGrid g;
  for (std::size_t k = 2; k <= 30; ++k) g.ks.push_back(k);
  g.gammas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995, 1.0};
  return g;
}

void CVGrid::validate() const {
  if (ks.empty() || gammas.empty()) throw ValidationError("empty cross-validation grid");
  if (folds < 2) throw ValidationError("need at least 2 folds");
  for (auto k : ks)
    if (k < 1) throw ValidationError("K must be at least 1");
  for (auto g : gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw ValidationError("gamma must lie in [0,1]");
}

EvalReport kfold_cv(const Hypergraph& graph, const AttributeMatrix* attributes,
                    const CVGrid& grid, const FitConfig& base) {
  grid.validate();
  const bool needs_attributes =
      std::any_of(grid.gammas.begin(), grid.gammas.end(), [](double g) { return g > 0.0; });
  if (needs_attributes && (attributes == nullptr || attributes->num_columns() == 0))
    throw ValidationError("gamma > 0 in the grid requires node attributes");

  const auto constants = StructuralConstants::of(graph);
  const CounterRng root(grid.seed);
  auto split_rng = root.substream(0);
  const auto fold_of = kfold_assignment(graph.num_edges(), grid.folds, split_rng);

  std::vector<Hypergraph> train;
  std::vector<std::vector<Hyperedge>> test(grid.folds);
  std::vector<std::uint64_t> fit_seed(grid.folds), auc_seed(grid.folds);
  for (std::size_t f = 0; f < grid.folds; ++f) {
    std::vector<std::size_t> keep;
    for (std::size_t id = 0; id < graph.num_edges(); ++id) {
      if (fold_of[id] == f) {
        test[f].push_back(graph.edge(id));
      } else {
        keep.push_back(id);
      }
    }
    train.push_back(graph.subgraph(keep));
    fit_seed[f] = root.substream(1).substream(f)();
    auc_seed[f] = root.substream(2).substream(f)();
  }

  EvalReport report;
  report.folds = grid.folds;
  for (auto k : grid.ks)
    for (auto g : grid.gammas) {
      CellResult cell;
      cell.num_communities = k;
      cell.gamma = g;
      cell.fold_auc.assign(grid.folds, 0.0);
      report.cells.push_back(std::move(cell));
    }

  const auto tasks = report.cells.size() * grid.folds;
  std::vector<std::size_t> failures(tasks, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      auto& cell = report.cells[t / grid.folds];
      const auto f = t % grid.folds;
      FitConfig cfg = base;
      cfg.num_communities = cell.num_communities;
      cfg.gamma = cell.gamma;
      cfg.seed = fit_seed[f];
      cfg.threads = 1;
      const auto fit = em_fit(train[f], attributes, cfg, constants);
      const auto auc = auc_prediction(test[f], fit.params, graph, auc_seed[f]);
      cell.fold_auc[f] = auc.auc;
      failures[t] = auc.resample_failures;
    }
  };
  const auto workers = std::min(std::max<std::size_t>(base.threads, 1), tasks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (auto f : failures) report.resample_failures += f;
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    auto& cell = report.cells[c];
    const double n = static_cast<double>(cell.fold_auc.size());
    cell.mean_auc = std::accumulate(cell.fold_auc.begin(), cell.fold_auc.end(), 0.0) / n;
    double var = 0.0;
    for (double v : cell.fold_auc) var += (v - cell.mean_auc) * (v - cell.mean_auc);
    cell.std_auc = std::sqrt(var / n);

    const auto& best = report.cells[report.selected];
    const bool better =
        cell.mean_auc > best.mean_auc ||
        (cell.mean_auc == best.mean_auc &&
         (cell.num_communities < best.num_communities ||
          (cell.num_communities == best.num_communities && cell.gamma < best.gamma)));
    if (c == 0 || better) report.selected = c;
  }
  return report;
}

}  // namespace hycosbm
